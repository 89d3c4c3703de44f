from patlytics.store.names import (
    AliasTable,
    EntityKey,
    EntityKind,
    UnnameableEntity,
    canonicalize_name,
)
from patlytics.store.store import EntityNotFound, InvalidRange, PatentStore
from patlytics.store.aggregates import GrantLagStats, SummaryStats

__all__ = [
    "AliasTable",
    "EntityKey",
    "EntityKind",
    "UnnameableEntity",
    "canonicalize_name",
    "EntityNotFound",
    "InvalidRange",
    "PatentStore",
    "GrantLagStats",
    "SummaryStats",
]
