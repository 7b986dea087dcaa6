"""Round-based engine for the recovered cluster.

A round is: every alive member uplinks one packet to its head, every head
pushes one aggregate packet to the sink along its current route, dead nodes
are retired, heads are re-elected if needed, and routes are refreshed.
"""

from __future__ import annotations

import copy
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .config import SimConfig
from .eligibility import eligible_nodes, reelection_needed
from .model import SINK_ID, SensorNode, rx_energy, tx_energy
from .placement import ElectionError, HeadSet, assign_members, select_heads
from .routing import RoutingGraph, refresh


@dataclass
class ClusterState:
    nodes: list[SensorNode]
    head_set: HeadSet | None = None
    assignments: dict[int, int] = field(default_factory=dict)
    p_total: int = 0
    round: int = 0
    head_set_version: int = 0
    routing: RoutingGraph | None = None

    @property
    def by_id(self) -> dict[int, SensorNode]:
        return {n.id: n for n in self.nodes}

    @property
    def heads(self) -> list[SensorNode]:
        if self.head_set is None:
            return []
        by_id = self.by_id
        return [by_id[h] for h in sorted(self.head_set.heads)]

    @property
    def alive_count(self) -> int:
        return sum(1 for n in self.nodes if n.alive)

    @property
    def total_energy(self) -> float:
        return math.fsum(n.energy for n in self.nodes)

    @property
    def cluster_dead(self) -> bool:
        return self.alive_count == 0


@dataclass(frozen=True)
class RoundMetrics:
    """Observables after one round.

    min/max/mean are taken over alive nodes (all 0 once everyone is dead);
    ``total_energy`` covers the whole cluster. ``debited`` and ``clamped``
    form the round's energy ledger: energy actually removed from nodes, and
    the part of requested debits that exceeded what a dying node had left.
    """

    round: int
    alive_count: int
    total_energy: float
    min_energy: float
    max_energy: float
    mean_energy: float
    packets_delivered: int
    head_set_version: int
    uplinks_received: int = 0
    transmissions: int = 0
    elected: bool = False
    debited: float = 0.0
    clamped: float = 0.0


class _Ledger:
    def __init__(self):
        self.applied = []
        self.clamped = []
        self.transmissions = 0

    def debit(self, node: SensorNode, amount: float) -> bool:
        """Charge ``amount``; return whether the node still has energy."""
        if amount >= node.energy:
            self.applied.append(node.energy)
            self.clamped.append(amount - node.energy)
            node.energy = 0.0
            return False
        node.energy -= amount
        self.applied.append(amount)
        return node.energy > 0


def elect(state: ClusterState, config: SimConfig, rng: np.random.Generator,
          backend: str | None = None) -> None:
    """Run one election in place. Raises ElectionError if nobody is alive."""
    for n in state.nodes:
        n.is_head = False
    hs = select_heads(eligible_nodes(state.nodes), state.nodes, state.p_total,
                      config.placement, rng, backend=backend)
    by_id = state.by_id
    for h in hs.heads:
        by_id[h].is_head = True
        by_id[h].head_count += 1
    state.head_set = hs
    state.p_total += len(hs.heads)
    state.head_set_version += 1
    heads = set(hs.heads)
    state.assignments = {m: h for m, h in assign_members(hs, state.nodes).items() if m not in heads}
    state.routing = refresh(state.routing, state.heads, config.sink, config.energy)


def _metrics(state: ClusterState, delivered: int, ledger: _Ledger, uplinks: int,
             elected: bool) -> RoundMetrics:
    alive = [n.energy for n in state.nodes if n.alive]
    if alive:
        lo, hi, mean = min(alive), max(alive), math.fsum(alive) / len(alive)
    else:
        lo = hi = mean = 0.0
    return RoundMetrics(
        round=state.round,
        alive_count=len(alive),
        total_energy=state.total_energy,
        min_energy=lo,
        max_energy=hi,
        mean_energy=min(max(mean, lo), hi),
        packets_delivered=delivered,
        head_set_version=state.head_set_version,
        uplinks_received=uplinks,
        transmissions=ledger.transmissions,
        elected=elected,
        debited=math.fsum(ledger.applied),
        clamped=math.fsum(ledger.clamped),
    )


def step_round(state: ClusterState, config: SimConfig, rng: np.random.Generator,
               backend: str | None = None) -> tuple[ClusterState, RoundMetrics]:
    """Advance one round. Mutates and returns ``state``."""
    params = config.energy
    rx = rx_energy(params)
    ledger = _Ledger()
    by_id = state.by_id
    state.round += 1
    delivered = uplinks = 0

    if state.cluster_dead or state.head_set is None:
        return state, _metrics(state, 0, ledger, 0, False)

    # uplink, ascending id
    for m in sorted(state.assignments):
        member = by_id[m]
        if member.energy <= 0:
            continue
        head = by_id[state.assignments[m]]
        ledger.transmissions += 1
        if not ledger.debit(member, tx_energy(member.pos, head.pos, params)):
            continue
        if head.energy <= 0:
            continue
        if ledger.debit(head, rx):
            uplinks += 1

    # relay: each head's aggregate walks its next-hop chain
    routing = state.routing
    sink = config.sink
    for h in sorted(state.head_set.heads):
        sender = by_id[h]
        if sender.energy <= 0:
            continue
        while True:
            nxt = routing.next_hop[sender.id]
            dest = sink if nxt == SINK_ID else by_id[nxt].pos
            ledger.transmissions += 1
            if not ledger.debit(sender, tx_energy(sender.pos, dest, params)):
                break
            if nxt == SINK_ID:
                delivered += 1
                break
            relay = by_id[nxt]
            if relay.energy <= 0 or not ledger.debit(relay, rx):
                break
            sender = relay

    # deaths
    head_died = False
    for n in state.nodes:
        if n.energy <= 0:
            n.energy = 0.0
            if n.is_head:
                head_died = True
            n.alive = False
            n.is_head = False
    for m in [m for m in state.assignments if not by_id[m].alive]:
        del state.assignments[m]

    # re-election
    elected = False
    if not state.cluster_dead:
        alive_heads = [n for n in state.heads if n.alive]
        if head_died or not alive_heads or reelection_needed(alive_heads, state.nodes, config.eligibility):
            elect(state, config, rng, backend=backend)
            elected = True
        elif state.round % config.refresh_every_rounds == 0:
            state.routing = refresh(state.routing, state.heads, sink, params)
    else:
        state.head_set = None
        state.assignments = {}
        state.routing = None

    return state, _metrics(state, delivered, ledger, uplinks, elected)


def initial_state(topology: Sequence[SensorNode]) -> ClusterState:
    if not topology:
        raise ValueError("topology is empty")
    return ClusterState(nodes=copy.deepcopy(list(topology)))


def simulate(
    config: SimConfig,
    topology: Sequence[SensorNode],
    rng: np.random.Generator | None = None,
    on_round: Callable[[ClusterState, RoundMetrics], None] | None = None,
    backend: str | None = None,
) -> tuple[list[RoundMetrics], ClusterState]:
    """Recover the cluster, then run rounds until it dies or the horizon ends."""
    config.validate()
    if rng is None:
        rng = sim_rng(config.seed)
    state = initial_state(topology)
    trace: list[RoundMetrics] = []
    try:
        elect(state, config, rng, backend=backend)
    except ElectionError:
        return trace, state
    while state.round < config.max_rounds and not state.cluster_dead:
        state, m = step_round(state, config, rng, backend=backend)
        trace.append(m)
        if on_round is not None:
            on_round(state, m)
    return trace, state


def run(config: SimConfig, topology: Sequence[SensorNode], **kwargs) -> list[RoundMetrics]:
    return simulate(config, topology, **kwargs)[0]


def topology_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed).spawn(2)[0])


def sim_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed).spawn(2)[1])
