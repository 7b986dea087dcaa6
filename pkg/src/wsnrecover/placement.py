"""Cluster-head election by simulated annealing, and member assignment."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .model import SensorNode


class ElectionError(RuntimeError):
    """No alive node is left to serve as head."""


@dataclass(frozen=True)
class PlacementParams:
    n_heads: int = 10
    cost_alpha: float = 1e-7
    cost_beta: float = 1.0
    iter: int = 1000
    neighbor_k: int = 5

    def validate(self):
        if self.n_heads < 1 or self.iter < 1 or self.neighbor_k < 1:
            raise ValueError("n_heads, iter and neighbor_k must be >= 1")
        if not (self.cost_alpha > 0 and self.cost_beta > 0):
            raise ValueError("cost_alpha and cost_beta must be > 0")


@dataclass(frozen=True)
class HeadSet:
    """Election result.

    ``heads`` is the annealer's final state; ``best``/``best_cost`` record
    the cheapest set it visited along the way (diagnostic only).
    """

    heads: tuple[int, ...]
    cost: float
    best: tuple[int, ...] = ()
    best_cost: float = math.nan
    accepted: int = 0

    def __iter__(self):
        return iter(self.heads)

    def __len__(self):
        return len(self.heads)


def _coords(nodes: Sequence[SensorNode]) -> np.ndarray:
    return np.array([(n.pos.x, n.pos.y) for n in nodes], dtype=np.float64).reshape(-1, 2)


def _distances(src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    dx = src[:, 0][:, None] - dst[:, 0][None, :]
    dy = src[:, 1][:, None] - dst[:, 1][None, :]
    return np.sqrt(dx * dx + dy * dy)


def _factors(heads: Sequence[SensorNode], p_total: int, params: PlacementParams) -> np.ndarray:
    out = np.empty(len(heads))
    for i, h in enumerate(heads):
        if h.energy <= 0:
            raise ValueError(f"head {h.id} has no energy")
        share = h.head_count / p_total if p_total > 0 else 0.0
        out[i] = 1.0 + share + params.cost_beta / h.energy
    return out


def _alive_columns(nodes: Sequence[SensorNode]) -> np.ndarray:
    return np.array([j for j, n in enumerate(nodes) if n.alive], dtype=np.int64)


def placement_cost(
    heads: HeadSet | Iterable[int],
    nodes: Sequence[SensorNode],
    p_total: int,
    params: PlacementParams,
    backend: str | None = None,
) -> float:
    """Distance-and-fatigue cost of a head set against every alive node.

    Each alive node contributes ``cost_alpha * D * (1 + P/P_s + cost_beta/E)``
    where D is the plain distance to its nearest head and P, E belong to
    that head.
    """
    head_ids = list(heads.heads if isinstance(heads, HeadSet) else heads)
    if not head_ids:
        raise ValueError("empty head set")
    by_id = {n.id: n for n in nodes}
    head_nodes = [by_id[h] for h in head_ids]
    factor = _factors(head_nodes, p_total, params)
    dist = _distances(_coords(head_nodes), _coords(nodes))
    pool_ids = np.array(head_ids, dtype=np.int64)
    rows = np.arange(len(head_ids), dtype=np.int64)
    return _kernels.set_cost(dist, pool_ids, _alive_columns(nodes), rows, factor,
                             params.cost_alpha, backend=backend)


def candidate_pool(candidates: Iterable[int], nodes: Sequence[SensorNode], n_heads: int) -> list[int]:
    """Alive candidates, topped up with the richest other alive nodes if short."""
    by_id = {n.id: n for n in nodes}
    pool = sorted({c for c in candidates if by_id[c].alive})
    if len(pool) < n_heads:
        taken = set(pool)
        spare = sorted((n for n in nodes if n.alive and n.id not in taken),
                       key=lambda n: (-n.energy, n.id))
        pool = sorted(pool + [n.id for n in spare[: n_heads - len(pool)]])
    return pool


def neighbor_table(coords: np.ndarray, ids: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """The k nearest other pool members of each pool member (ties by id)."""
    m = coords.shape[0]
    kk = min(k, m - 1)
    nbr = np.full((m, max(kk, 1)), -1, dtype=np.int64)
    count = np.full(m, kk, dtype=np.int64)
    if kk == 0:
        return nbr, count
    d = _distances(coords, coords)
    for i in range(m):
        order = np.lexsort((ids, d[i]))
        order = order[order != i]
        nbr[i, :kk] = order[:kk]
    return nbr, count


def temperatures(iters: int) -> np.ndarray:
    return 1000.0 * np.exp(-np.arange(iters) / 20.0)


def select_heads(
    candidates: Iterable[int],
    nodes: Sequence[SensorNode],
    p_total: int,
    params: PlacementParams,
    rng: np.random.Generator,
    backend: str | None = None,
) -> HeadSet:
    """Anneal over head sets drawn from ``candidates``.

    Every iteration moves each head to a random one of its ``neighbor_k``
    nearest pool members (a move is dropped if it would duplicate a head),
    always accepts a cheaper set, never an equally cheap one, and accepts a
    costlier one with probability ``exp(-delta / ck)``,
    ``ck = 1000 * exp(-K / 20)``. The final state is returned, not the best
    visited.
    """
    pool = candidate_pool(candidates, nodes, params.n_heads)
    if not pool:
        raise ElectionError("no alive node can serve as head")
    by_id = {n.id: n for n in nodes}
    pool_nodes = [by_id[i] for i in pool]
    pool_ids = np.array(pool, dtype=np.int64)
    n = min(params.n_heads, len(pool))

    coords = _coords(pool_nodes)
    dist = _distances(coords, _coords(nodes))
    factor = _factors(pool_nodes, p_total, params)
    members = _alive_columns(nodes)
    nbr, nbr_count = neighbor_table(coords, pool_ids, params.neighbor_k)

    # every random number is drawn here so both backends consume the same stream
    state0 = rng.choice(len(pool), size=n, replace=False).astype(np.int64)
    pick_draws = rng.random((params.iter, n))
    accept_draws = rng.random(params.iter)
    temps = temperatures(params.iter)

    state, cost, best, best_cost, accepted = _kernels.anneal(
        dist, pool_ids, members, factor, params.cost_alpha, nbr, nbr_count,
        state0, pick_draws, accept_draws, temps, backend=backend)
    return HeadSet(
        heads=tuple(int(pool_ids[i]) for i in state),
        cost=float(cost),
        best=tuple(int(pool_ids[i]) for i in best),
        best_cost=float(best_cost),
        accepted=int(accepted),
    )


def assign_members(heads: HeadSet | Iterable[int], nodes: Sequence[SensorNode]) -> dict[int, int]:
    """Map every alive node to its nearest head; heads map to themselves."""
    head_ids = sorted(heads.heads if isinstance(heads, HeadSet) else heads)
    if not head_ids:
        raise ValueError("empty head set")
    by_id = {n.id: n for n in nodes}
    hpos = [(h, by_id[h].pos) for h in head_ids]
    head_set = set(head_ids)
    out = {}
    for n in nodes:
        if not n.alive:
            continue
        if n.id in head_set:
            out[n.id] = n.id
            continue
        best, best_d = None, math.inf
        for h, p in hpos:  # ascending id, strict < keeps the lowest on ties
            d = math.dist((n.pos.x, n.pos.y), (p.x, p.y))
            if d < best_d:
                best, best_d = h, d
        out[n.id] = best
    return out
