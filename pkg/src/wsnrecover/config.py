"""Flat ``key=value`` scenario configuration."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields

from .eligibility import EligibilityParams
from .model import EnergyParams, Position
from .placement import PlacementParams


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SimConfig:
    # radio model
    tx_alpha: float = 1e-7
    tx_beta: float = 1e-8
    lam: float = 1.0
    rx_const: float = 1e-5
    theta: float = 1.0
    packet_bits: float = 1000.0
    # election
    n_heads: int = 10
    cost_alpha: float = 1e-7
    cost_beta: float = 1.0
    iter: int = 1000
    neighbor_k: int = 5
    th_alpha: float = 0.9
    # scenario
    area_width: float = 100.0
    area_height: float = 100.0
    node_count: int = 100
    sink_x: float = 50.0
    sink_y: float = 110.0
    seed: int = 1
    max_rounds: int = 200_000
    refresh_every_rounds: int = 1

    @property
    def energy(self) -> EnergyParams:
        return EnergyParams(self.tx_alpha, self.tx_beta, self.lam, self.rx_const,
                            self.theta, self.packet_bits)

    @property
    def placement(self) -> PlacementParams:
        return PlacementParams(self.n_heads, self.cost_alpha, self.cost_beta,
                               self.iter, self.neighbor_k)

    @property
    def eligibility(self) -> EligibilityParams:
        return EligibilityParams(self.th_alpha)

    @property
    def sink(self) -> Position:
        return Position(self.sink_x, self.sink_y)

    def validate(self):
        try:
            self.energy.validate()
            self.placement.validate()
            self.eligibility.validate()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if not (self.area_width > 0 and self.area_height > 0):
            raise ConfigError("area dimensions must be > 0")
        if self.node_count < 1:
            raise ConfigError("node_count must be >= 1")
        if self.n_heads > self.node_count:
            raise ConfigError("n_heads cannot exceed node_count")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.max_rounds < 0:
            raise ConfigError("max_rounds must be >= 0")
        if self.refresh_every_rounds < 1:
            raise ConfigError("refresh_every_rounds must be >= 1")
        return self

    def replace(self, **changes) -> SimConfig:
        return dataclasses.replace(self, **changes).validate()


_FIELDS = {f.name: f for f in fields(SimConfig)}
_ALIASES = {"lambda": "lam"}


def parse_config(text: str) -> SimConfig:
    values = {}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        key = _ALIASES.get(key, key)
        if not sep or key not in _FIELDS:
            raise ConfigError(f"line {lineno}: unknown or malformed entry {raw.strip()!r}")
        kind = _FIELDS[key].type
        try:
            values[key] = int(value) if kind == "int" else float(value)
        except ValueError:
            raise ConfigError(f"line {lineno}: {key} expects a number, got {value!r}") from None
        lines[key] = lineno
    cfg = SimConfig(**values)
    try:
        return cfg.validate()
    except ConfigError as exc:
        bad = next((k for k in values if k in str(exc)), None)
        where = f"line {lines[bad]}: " if bad else ""
        raise ConfigError(f"{where}{exc}") from None


def format_config(cfg: SimConfig) -> str:
    return "".join(f"{f.name}={getattr(cfg, f.name)!r}\n" for f in fields(cfg))
