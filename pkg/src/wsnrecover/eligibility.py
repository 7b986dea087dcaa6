"""Which nodes may stand for election, and when heads must be replaced."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from .model import SensorNode


@dataclass(frozen=True)
class EligibilityParams:
    th_alpha: float = 0.9

    def validate(self):
        if not 0 < self.th_alpha <= 1:
            raise ValueError("th_alpha must lie in (0, 1]")


def _mean(values: list[float]) -> float:
    if not values:
        raise ValueError("average over an empty cluster")
    # clamped so that equal inputs give back exactly that value
    return min(max(math.fsum(values) / len(values), min(values)), max(values))


def average_energy(nodes: Sequence[SensorNode]) -> float:
    # dead nodes stay in the denominator
    return _mean([n.energy for n in nodes])


def average_head_count(nodes: Sequence[SensorNode]) -> float:
    return _mean([n.head_count for n in nodes])


def eligible_nodes(nodes: Sequence[SensorNode]) -> list[int]:
    """Ids of alive nodes above the mean energy that have served less than average.

    When every node has the same head count (e.g. before the first election)
    the head-count test cannot be passed by anyone, so it is dropped.
    """
    e_bar = average_energy(nodes)
    p_bar = average_head_count(nodes)
    first = nodes[0].head_count
    uniform_counts = all(n.head_count == first for n in nodes)
    out = []
    for n in nodes:
        if not n.alive or not n.energy > e_bar:
            continue
        if uniform_counts or n.head_count < p_bar:
            out.append(n.id)
    return out


def reelection_threshold(all_nodes: Sequence[SensorNode], params: EligibilityParams) -> float:
    e_bar = average_energy(all_nodes)
    return params.th_alpha * e_bar * e_bar


def reelection_needed(
    heads: Sequence[SensorNode],
    all_nodes: Sequence[SensorNode],
    params: EligibilityParams,
) -> bool:
    if not heads:
        raise ValueError("no heads to check")
    return min(h.energy for h in heads) < reelection_threshold(all_nodes, params)
