"""Hot loops of the head election.

Two interchangeable backends: numba ``@njit`` loops, and a numpy path used
when numba is missing or ``WSNRECOVER_DISABLE_NUMBA=1`` is set. Both sum
costs strictly left to right, so the two produce bit-identical elections.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    numba = None
    NUMBA_AVAILABLE = False

_DISABLED = os.environ.get("WSNRECOVER_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")
USE_NUMBA = NUMBA_AVAILABLE and not _DISABLED


def set_cost_loop(dist, pool_ids, members, heads, factor, cost_alpha):
    total = 0.0
    for jj in range(members.shape[0]):
        j = members[jj]
        best = heads[0]
        best_d = dist[best, j]
        for hh in range(1, heads.shape[0]):
            h = heads[hh]
            d = dist[h, j]
            if d < best_d or (d == best_d and pool_ids[h] < pool_ids[best]):
                best = h
                best_d = d
        total += cost_alpha * best_d * factor[best]
    return total


def set_cost_numpy(dist, pool_ids, members, heads, factor, cost_alpha):
    if members.shape[0] == 0:
        return 0.0
    # argmin keeps the first minimum, so ordering rows by id gives the id tie-break
    rows = heads[np.argsort(pool_ids[heads], kind="stable")]
    sub = dist[np.ix_(rows, members)]
    pick = np.argmin(sub, axis=0)
    dmin = sub[pick, np.arange(members.shape[0])]
    terms = cost_alpha * dmin * factor[rows[pick]]
    # cumsum accumulates sequentially; np.sum would sum pairwise
    return float(np.cumsum(terms)[-1])


def propose_loop(state, nbr, nbr_count, draws, out):
    n = state.shape[0]
    for p in range(n):
        h = state[p]
        out[p] = h
        c = nbr_count[h]
        if c == 0:
            continue
        k = int(draws[p] * c)
        if k >= c:
            k = c - 1
        q = nbr[h, k]
        clash = False
        for r in range(n):
            if r != p and state[r] == q:
                clash = True
                break
        if not clash:
            for r in range(p):
                if out[r] == q:
                    clash = True
                    break
        if not clash:
            out[p] = q


def acceptance_probability(cn, cur, ck):
    if cn < cur:
        return 1.0
    if cn == cur:
        return 0.0
    return math.exp(-(cn - cur) / ck)


def _make_anneal(set_cost, propose, accept_p):
    def anneal(dist, pool_ids, members, factor, cost_alpha, nbr, nbr_count,
               state0, pick_draws, accept_draws, temps):
        state = state0.copy()
        cur = set_cost(dist, pool_ids, members, state, factor, cost_alpha)
        best = state.copy()
        best_cost = cur
        prop = np.empty_like(state)
        accepted = 0
        for it in range(accept_draws.shape[0]):
            propose(state, nbr, nbr_count, pick_draws[it], prop)
            cn = set_cost(dist, pool_ids, members, prop, factor, cost_alpha)
            if accept_draws[it] < accept_p(cn, cur, temps[it]):
                state[:] = prop
                cur = cn
                accepted += 1
                if cn < best_cost:
                    best[:] = prop
                    best_cost = cn
        return state, cur, best, best_cost, accepted

    return anneal


anneal_numpy = _make_anneal(set_cost_numpy, propose_loop, acceptance_probability)

if NUMBA_AVAILABLE:
    set_cost_numba = numba.njit(cache=True)(set_cost_loop)
    propose_numba = numba.njit(cache=True)(propose_loop)
    accept_numba = numba.njit(cache=True)(acceptance_probability)
    anneal_numba = numba.njit(cache=True)(_make_anneal(set_cost_numba, propose_numba, accept_numba))
else:  # pragma: no cover
    set_cost_numba = propose_numba = anneal_numba = None


def set_cost(*args, backend: str | None = None):
    if _pick(backend) == "numba":
        return set_cost_numba(*args)
    return set_cost_numpy(*args)


def anneal(*args, backend: str | None = None):
    if _pick(backend) == "numba":
        return anneal_numba(*args)
    return anneal_numpy(*args)


def _pick(backend):
    if backend is None:
        return "numba" if USE_NUMBA else "numpy"
    if backend == "numba" and not NUMBA_AVAILABLE:
        raise RuntimeError("numba backend requested but numba is not installed")
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend
