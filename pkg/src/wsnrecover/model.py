"""Node records and the radio energy model.

Energy is unitless: every node starts at 1.0 and all costs below are in the
same normalized units.
"""

from __future__ import annotations

from dataclasses import dataclass

SINK_ID = -1


@dataclass(frozen=True)
class Position:
    x: float
    y: float


@dataclass
class SensorNode:
    id: int
    pos: Position
    energy: float = 1.0
    head_count: int = 0
    alive: bool = True
    is_head: bool = False

    def __post_init__(self):
        if self.energy < 0:
            raise ValueError(f"node {self.id}: negative energy {self.energy}")
        self.alive = self.energy > 0
        if self.is_head and not self.alive:
            self.is_head = False


@dataclass(frozen=True)
class EnergyParams:
    tx_alpha: float = 1e-7
    tx_beta: float = 1e-8
    lam: float = 1.0
    rx_const: float = 1e-5
    theta: float = 1.0
    packet_bits: float = 1000.0

    def validate(self):
        for name in ("tx_alpha", "tx_beta", "lam", "rx_const", "theta", "packet_bits"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


def squared_distance(a: Position, b: Position) -> float:
    dx = a.x - b.x
    dy = a.y - b.y
    return dx * dx + dy * dy


def tx_energy(sender_pos: Position, receiver_pos: Position, params: EnergyParams) -> float:
    """Cost of sending one packet: ``a * (lam * d^2 * b) + beta * b``."""
    radio = params.lam * squared_distance(sender_pos, receiver_pos) * params.packet_bits
    return params.tx_alpha * radio + params.tx_beta * params.packet_bits


def rx_energy(params: EnergyParams) -> float:
    return params.rx_const


def edge_weight(sender: SensorNode, receiver_pos: Position, params: EnergyParams) -> float:
    """Directed link weight; grows as the sender drains.

    Only the sender's residual energy enters, so ``w(i, j) != w(j, i)`` in
    general.
    """
    if sender.energy <= 0:
        raise ValueError(f"node {sender.id} has no energy; dead senders have no edges")
    return tx_energy(sender.pos, receiver_pos, params) * (1.0 + params.theta / sender.energy)
