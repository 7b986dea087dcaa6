"""Energy-weighted routes from every head to the sink."""

from __future__ import annotations

import heapq
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

from .model import SINK_ID, EnergyParams, Position, SensorNode, edge_weight


@dataclass(frozen=True)
class RoutingGraph:
    """Directed graph over the alive heads plus the sink.

    ``weights[(i, j)]`` is the cost for ``i`` to send to ``j``. The sink
    never sends, so no key starts with ``SINK_ID``.
    """

    vertices: tuple[int, ...]
    weights: dict[tuple[int, int], float]
    positions: dict[int, Position] = field(repr=False, default_factory=dict)
    next_hop: dict[int, int] = field(default_factory=dict)
    path_cost: dict[int, float] = field(default_factory=dict)

    @property
    def heads(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if v != SINK_ID)

    def path(self, head: int) -> list[int]:
        out = [head]
        while out[-1] != SINK_ID:
            out.append(self.next_hop[out[-1]])
            if len(out) > len(self.vertices):
                raise RuntimeError(f"next-hop cycle from head {head}")
        return out


def build_graph(heads: Sequence[SensorNode], sink_pos: Position, params: EnergyParams) -> RoutingGraph:
    ordered = sorted(heads, key=lambda n: n.id)
    for h in ordered:
        if h.energy <= 0:
            raise ValueError(f"head {h.id} is dead")
    positions = {h.id: h.pos for h in ordered}
    positions[SINK_ID] = sink_pos
    weights = {}
    for i in ordered:
        for j, pos in positions.items():
            if j != i.id:
                weights[(i.id, j)] = edge_weight(i, pos, params)
    vertices = (SINK_ID,) + tuple(h.id for h in ordered)
    return RoutingGraph(vertices=vertices, weights=weights, positions=positions)


def shortest_paths(graph: RoutingGraph) -> RoutingGraph:
    """Dijkstra from the sink over reversed edges.

    Equal-cost alternatives resolve to the lower next-hop id (the sink, -1,
    is lowest).
    """
    inbound: dict[int, list[tuple[int, float]]] = {v: [] for v in graph.vertices}
    for (i, j), w in graph.weights.items():
        inbound[j].append((i, w))

    dist = {v: math.inf for v in graph.vertices}
    hop: dict[int, int] = {}
    dist[SINK_ID] = 0.0
    done = set()
    heap = [(0.0, SINK_ID)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for v, w in inbound[u]:
            if v in done:
                continue
            cand = w + d
            if cand < dist[v] or (cand == dist[v] and u < hop[v]):
                dist[v] = cand
                hop[v] = u
                heapq.heappush(heap, (cand, v))
    return RoutingGraph(
        vertices=graph.vertices,
        weights=graph.weights,
        positions=graph.positions,
        next_hop=hop,
        path_cost={v: dist[v] for v in graph.vertices if v != SINK_ID},
    )


def refresh(graph: RoutingGraph | None, heads: Sequence[SensorNode], sink_pos: Position,
            params: EnergyParams) -> RoutingGraph:
    # the previous graph carries nothing worth reusing at this size
    return shortest_paths(build_graph(heads, sink_pos, params))
