import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import bellman_ford, exact_weight
from wsnrecover.model import SINK_ID, EnergyParams, Position, SensorNode
from wsnrecover.routing import RoutingGraph, build_graph, refresh, shortest_paths

P = EnergyParams()
SINK = Position(0, 0)


def random_heads(seed, n=None):
    rng = np.random.default_rng(seed)
    n = n or int(rng.integers(3, 13))
    return [SensorNode(i, Position(*rng.uniform(0, 100, 2)), energy=float(rng.uniform(0.02, 1.0)))
            for i in range(n)]


def solve(heads, sink=SINK, params=P):
    return shortest_paths(build_graph(heads, sink, params))


def test_symmetric_weights_for_equal_energy():
    g = build_graph([SensorNode(0, Position(0, 10)), SensorNode(1, Position(10, 0))], SINK, P)
    assert g.weights[(0, 1)] == g.weights[(1, 0)]
    assert not any(i == SINK_ID for i, _ in g.weights)
    assert len(g.weights) == 2 * 2


def test_drained_sender_costs_one_and_a_half_times():
    g = build_graph([SensorNode(1, Position(3, 7), energy=1.0),
                     SensorNode(2, Position(40, 2), energy=0.5)], SINK, P)
    assert g.weights[(2, 1)] == pytest.approx(1.5 * g.weights[(1, 2)], rel=1e-12)


def test_table1_weight_table(table1_nodes):
    sink = Position(50, 110)
    g = build_graph(table1_nodes, sink, P)
    assert len(g.weights) == 10 * 10
    pos = {n.id: (n.pos.x, n.pos.y) for n in table1_nodes}
    pos[SINK_ID] = (sink.x, sink.y)
    for n in table1_nodes:
        for j, (x, y) in pos.items():
            if j == n.id:
                continue
            ref = exact_weight(n.pos.x, n.pos.y, n.energy, x, y)
            assert math.isclose(g.weights[(n.id, j)], float(ref), rel_tol=1e-12)


def test_table1_routes_match_oracle(table1_nodes):
    g = solve(table1_nodes, Position(50, 110))
    dist = bellman_ford(g.vertices, g.weights, SINK_ID)
    assert all(g.path_cost[h] == dist[h] for h in g.heads)
    for h in g.heads:
        assert g.path(h)[-1] == SINK_ID


def test_single_head_goes_direct():
    g = solve([SensorNode(0, Position(0, 50))])
    assert g.next_hop == {0: SINK_ID}
    assert g.path_cost[0] == pytest.approx(0.50002, abs=1e-12)


def test_far_head_relays_through_near_one():
    g = solve([SensorNode(1, Position(0, 50)), SensorNode(2, Position(0, 100))])
    assert g.next_hop == {1: SINK_ID, 2: 1}
    assert g.path_cost[2] == pytest.approx(1.00004, abs=1e-12)
    assert g.weights[(2, SINK_ID)] == pytest.approx(2.00002, abs=1e-12)


def test_theta_zero_equal_energy_is_pure_distance_routing():
    flat = EnergyParams(theta=0.0)
    for seed in range(20):
        heads = random_heads(seed)
        for h in heads:
            h.energy = 0.7
        g = solve(heads, params=flat)
        tx_only = {(i.id, j): (Fraction(i.pos.x) - Fraction(p.x)) ** 2 + (Fraction(i.pos.y) - Fraction(p.y)) ** 2
                   for i in heads for j, p in g.positions.items() if j != i.id}
        # exact squared-distance shortest paths by Bellman-Ford over rationals
        best = {v: None for v in g.vertices}
        best[SINK_ID] = Fraction(0)
        for _ in g.vertices:
            for (i, j), w in tx_only.items():
                if best[j] is not None:
                    cand = Fraction(flat.tx_alpha) * w * 1000 + Fraction(flat.tx_beta) * 1000 + best[j]
                    if best[i] is None or cand < best[i]:
                        best[i] = cand
        for h in g.heads:
            assert math.isclose(g.path_cost[h], float(best[h]), rel_tol=1e-9)


def test_equal_cost_tie_prefers_lower_next_hop():
    g = RoutingGraph(vertices=(SINK_ID, 0, 1, 2),
                     weights={(0, SINK_ID): 2.0, (0, 1): 1.0, (0, 2): 1.0,
                              (1, SINK_ID): 1.0, (1, 0): 5.0, (1, 2): 5.0,
                              (2, SINK_ID): 1.0, (2, 0): 5.0, (2, 1): 5.0})
    g = shortest_paths(g)
    assert g.next_hop[0] == SINK_ID
    g2 = shortest_paths(RoutingGraph(g.vertices, {**g.weights, (0, SINK_ID): 3.0}))
    assert g2.next_hop[0] == 1


def test_build_rejects_dead_head():
    with pytest.raises(ValueError):
        build_graph([SensorNode(0, Position(1, 1), energy=0.0)], SINK, P)


def test_refresh_is_stable_without_energy_change():
    heads = random_heads(3, 10)
    g1 = solve(heads)
    g2 = refresh(g1, heads, SINK, P)
    assert g1.next_hop == g2.next_hop and g1.path_cost == g2.path_cost


def test_draining_a_relay_reroutes_its_traffic():
    heads = [SensorNode(1, Position(0, 50)), SensorNode(2, Position(0, 100)),
             SensorNode(3, Position(30, 60))]
    g = solve(heads)
    assert g.next_hop[2] == 1
    heads[0].energy = 0.05
    g = refresh(g, heads, SINK, P)
    assert g.next_hop[2] != 1
    dist = bellman_ford(g.vertices, g.weights, SINK_ID)
    assert all(g.path_cost[h] == dist[h] for h in g.heads)


def test_uniform_drain_can_change_paths():
    changed = 0
    for seed in range(200):
        heads = random_heads(seed)
        before = solve(heads).next_hop
        for h in heads:
            h.energy *= 0.1
        g = solve(heads)
        dist = bellman_ford(g.vertices, g.weights, SINK_ID)
        assert all(g.path_cost[h] == dist[h] for h in g.heads)
        changed += g.next_hop != before
    assert changed > 0


def walk_ok(g):
    for h in g.heads:
        v, steps = h, 0
        while v != SINK_ID:
            v = g.next_hop[v]
            steps += 1
            if steps > len(g.vertices):
                return False
    return True


@given(st.integers(0, 2**32 - 1))
def test_paths_match_bellman_ford_and_are_acyclic(seed):
    g = solve(random_heads(seed), sink=Position(50, 110))
    dist = bellman_ford(g.vertices, g.weights, SINK_ID)
    assert walk_ok(g)
    for h in g.heads:
        assert g.path_cost[h] == dist[h]
        assert g.path_cost[h] <= g.weights[(h, SINK_ID)]
        nh = g.next_hop[h]
        assert g.path_cost[h] == g.weights[(h, nh)] + (0.0 if nh == SINK_ID else g.path_cost[nh])
        assert all(w > 0 for w in g.weights.values())


@given(st.integers(0, 2**32 - 1), st.floats(0.0, 1.0))
def test_lowering_an_edge_never_raises_costs(seed, factor):
    g = solve(random_heads(seed))
    edges = sorted(g.weights)
    edge = edges[seed % len(edges)]
    cheaper = RoutingGraph(g.vertices, {**g.weights, edge: g.weights[edge] * factor})
    g2 = shortest_paths(cheaper)
    assert all(g2.path_cost[h] <= g.path_cost[h] for h in g.heads)
