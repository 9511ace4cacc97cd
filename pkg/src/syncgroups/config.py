"""Run configuration, loadable from a JSON file."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .search import Budget

STRATEGY_KINDS = ("chromatic", "exact-cover", "classwise")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Strategy:
    """One colouring attempt for a non-separating graph.

    ``chromatic`` is exhaustive.  ``exact-cover`` looks for an H-invariant
    colouring with H cyclic of the given element order; ``classwise`` tries
    K = <g> for conjugacy-class representatives g of the given order, up to
    ``max_classes`` classes.  The last two can only find colourings.
    """

    kind: str
    order: int | None = None
    max_classes: int = 8

    def __post_init__(self):
        if self.kind not in STRATEGY_KINDS:
            raise ConfigError(f"unknown strategy {self.kind!r} (known: {', '.join(STRATEGY_KINDS)})")
        if self.kind != "chromatic" and (self.order is None or self.order < 1):
            raise ConfigError(f"strategy {self.kind!r} needs a positive element order")


@dataclass(frozen=True)
class Config:
    threads: int = 1
    node_budget: int = 50_000_000
    time_budget_s: int = 1800
    split_depth: int = 1
    hints: dict = field(default_factory=dict)
    library_dir: str | None = None
    strategies: tuple[Strategy, ...] = (Strategy("chromatic"),)
    record_timings: bool = False
    seed_library: bool = True

    def __post_init__(self):
        if self.threads < 1:
            raise ConfigError("threads must be at least 1")
        if self.node_budget < 1 or self.time_budget_s < 1:
            raise ConfigError("budgets must be positive")
        if self.split_depth < 0:
            raise ConfigError("split_depth must be non-negative")
        strategies = tuple(s if isinstance(s, Strategy) else Strategy(**s) for s in self.strategies)
        object.__setattr__(self, "strategies", strategies)

    def budget(self) -> Budget:
        return Budget(self.node_budget, float(self.time_budget_s))

    def hint_for(self, name: str | None, degree: int) -> dict:
        return dict(self.hints.get(f"{name}@{degree}", {}))

    def to_json(self) -> str:
        d = asdict(self)
        d["strategies"] = [asdict(s) for s in self.strategies]
        return json.dumps(d, indent=2, sort_keys=True) + "\n"


def load_config(path: str | Path | None = None, **overrides) -> Config:
    data = {}
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: top level must be an object")
    known = set(Config.__dataclass_fields__)
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    data.update({k: v for k, v in overrides.items() if v is not None})
    if "strategies" in data:
        data["strategies"] = tuple(data["strategies"])
    try:
        return Config(**data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
