"""Topology CSV, seeded topology generation and metrics CSV."""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable, Sequence

import numpy as np

from .config import SimConfig
from .model import Position, SensorNode

TOPOLOGY_HEADER = ["id", "x", "y", "energy"]
METRICS_HEADER = ["round", "alive_count", "total_energy", "min_energy", "max_energy",
                  "mean_energy", "packets_delivered", "head_set_version"]


class TopologyError(ValueError):
    pass


def load_topology(text: str) -> list[SensorNode]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0]] != TOPOLOGY_HEADER:
        raise TopologyError("row 1: header must be exactly 'id,x,y,energy'")
    nodes = []
    seen = set()
    for rowno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 4:
            raise TopologyError(f"row {rowno}: expected 4 fields, got {len(row)}")
        try:
            nid = int(row[0])
            x, y, e = (float(c) for c in row[1:])
        except ValueError:
            raise TopologyError(f"row {rowno}: malformed value in {row}") from None
        if nid < 0:
            raise TopologyError(f"row {rowno}: negative id {nid}")
        if nid in seen:
            raise TopologyError(f"row {rowno}: duplicate id {nid}")
        if not all(math.isfinite(v) for v in (x, y, e)):
            raise TopologyError(f"row {rowno}: non-finite value")
        if e < 0:
            raise TopologyError(f"row {rowno}: negative energy {e}")
        seen.add(nid)
        nodes.append(SensorNode(id=nid, pos=Position(x, y), energy=e))
    if not nodes:
        raise TopologyError("topology has no nodes")
    return nodes


def dump_topology(nodes: Iterable[SensorNode]) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(TOPOLOGY_HEADER)
    for n in nodes:
        w.writerow([n.id, repr(n.pos.x), repr(n.pos.y), repr(n.energy)])
    return out.getvalue()


def generate_topology(config: SimConfig, rng: np.random.Generator) -> list[SensorNode]:
    xs = rng.uniform(0.0, config.area_width, config.node_count)
    ys = rng.uniform(0.0, config.area_height, config.node_count)
    return [SensorNode(id=i, pos=Position(float(x), float(y)), energy=1.0)
            for i, (x, y) in enumerate(zip(xs, ys))]


def write_metrics(trace: Sequence) -> str:
    lines = [",".join(METRICS_HEADER)]
    for m in trace:
        lines.append(
            f"{m.round},{m.alive_count},{m.total_energy:.9f},{m.min_energy:.9f},"
            f"{m.max_energy:.9f},{m.mean_energy:.9f},{m.packets_delivered},{m.head_set_version}"
        )
    return "\n".join(lines) + "\n"
