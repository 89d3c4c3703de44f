"""Versioned feature-vector layout.

A schema pins the exact ordering and dimensionality of the assembled
vector; its id is a content hash, so any layout change (names, hash
dimension, n-gram orders) produces a new id and stale models refuse to
predict against it.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class FeatureSchema:
    engineered_names: tuple[str, ...]
    derived_names: tuple[str, ...]
    hash_dim: int = 16384
    ngram_orders: frozenset[int] = frozenset({1, 2})
    schema_id: str = field(init=False)

    def __post_init__(self):
        if self.hash_dim < 1 or self.hash_dim & (self.hash_dim - 1):
            raise ValueError(f"hash_dim must be a power of two: {self.hash_dim}")
        if not self.ngram_orders or not set(self.ngram_orders) <= {1, 2}:
            raise ValueError(f"ngram_orders must be a non-empty subset of {{1,2}}")
        layout = json.dumps(
            {
                "engineered": list(self.engineered_names),
                "derived": list(self.derived_names),
                "hash_dim": self.hash_dim,
                "ngram_orders": sorted(self.ngram_orders),
            },
            sort_keys=True,
            separators=(",", ":"),
        )
        digest = hashlib.sha256(layout.encode("utf-8")).hexdigest()[:16]
        object.__setattr__(self, "schema_id", digest)

    @property
    def total_dim(self) -> int:
        return len(self.engineered_names) + len(self.derived_names) + self.hash_dim

    def to_json_dict(self) -> dict:
        return {
            "schema_id": self.schema_id,
            "engineered_names": list(self.engineered_names),
            "derived_names": list(self.derived_names),
            "hash_dim": self.hash_dim,
            "ngram_orders": sorted(self.ngram_orders),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "FeatureSchema":
        schema = cls(
            engineered_names=tuple(data["engineered_names"]),
            derived_names=tuple(data["derived_names"]),
            hash_dim=data["hash_dim"],
            ngram_orders=frozenset(data["ngram_orders"]),
        )
        if "schema_id" in data and data["schema_id"] != schema.schema_id:
            raise ValueError(
                f"schema id mismatch: stored {data['schema_id']}, computed {schema.schema_id}"
            )
        return schema


def default_schema(hash_dim: int = 16384, ngram_orders=frozenset({1, 2})) -> FeatureSchema:
    from patlytics.features.pipeline import DERIVED_NAMES, ENGINEERED_NAMES

    return FeatureSchema(
        engineered_names=ENGINEERED_NAMES,
        derived_names=DERIVED_NAMES,
        hash_dim=hash_dim,
        ngram_orders=frozenset(ngram_orders),
    )
