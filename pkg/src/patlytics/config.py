"""Run configuration shared by CLI subcommands.

Values resolve in three layers: built-in defaults, then a JSON config
file, then command-line flags (a flag named like the key with dashes);
later layers win.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path

from patlytics import PatlyticsError


@dataclass
class RunConfig:
    store_path: str = "patlytics.db"
    alias_table_path: str | None = None
    model_path: str = "model.json"
    hash_dim: int = 16384
    ngram_orders: tuple[int, ...] = (1, 2)
    lambda_grid: tuple[float, ...] = (0.1, 1.0, 10.0)
    rounds_grid: tuple[int, ...] = (100, 200)
    alpha: float = 0.1
    split_seed: int = 0
    clock_origin: str = "filing_date"
    port: int = 8321
    trained_at: str | None = None

    def validate(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise PatlyticsError(f"alpha must be in (0,1): {self.alpha}")
        if self.clock_origin not in ("filing_date", "publication_date"):
            raise PatlyticsError(f"unknown clock_origin: {self.clock_origin!r}")
        if not self.store_path:
            raise PatlyticsError("store_path must not be empty")


_TUPLE_KEYS = {"ngram_orders", "lambda_grid", "rounds_grid"}


def _coerce(key: str, value):
    if key in _TUPLE_KEYS and value is not None:
        if isinstance(value, str):
            value = [v for v in value.split(",") if v.strip()]
        caster = float if key == "lambda_grid" else int
        return tuple(caster(v) for v in value)
    return value


def load_config(config_path: str | None, overrides: dict) -> RunConfig:
    """Merge defaults, the optional config file, and explicit overrides."""
    values: dict = {}
    known = {f.name for f in fields(RunConfig)}
    if config_path:
        path = Path(config_path)
        if not path.exists():
            raise PatlyticsError(f"config file not found: {path}")
        data = json.loads(path.read_text(encoding="utf-8"))
        unknown = set(data) - known
        if unknown:
            raise PatlyticsError(f"unknown config keys: {sorted(unknown)}")
        values.update(data)
    for key, value in overrides.items():
        if value is not None and key in known:
            values[key] = value
    cfg = RunConfig(**{k: _coerce(k, v) for k, v in values.items()})
    cfg.validate()
    return cfg
