from patlytics.features.text import fnv1a64, hashed_text_features, tokenize
from patlytics.features.schema import FeatureSchema, default_schema
from patlytics.features.pipeline import (
    ENGINEERED_NAMES,
    DERIVED_NAMES,
    FeatureVector,
    assemble_features,
    derived_features,
    engineered_features,
)

__all__ = [
    "fnv1a64",
    "hashed_text_features",
    "tokenize",
    "FeatureSchema",
    "default_schema",
    "ENGINEERED_NAMES",
    "DERIVED_NAMES",
    "FeatureVector",
    "assemble_features",
    "derived_features",
    "engineered_features",
]
