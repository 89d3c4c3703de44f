"""Document-to-vector assembly: engineered, derived, and hashed text blocks."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from patlytics import PatlyticsError
from patlytics.documents import PatentDocument
from patlytics.features.schema import FeatureSchema
from patlytics.features.text import hashed_text_features, tokenize

CPC_SECTIONS = "ABCDEFGHY"

ENGINEERED_NAMES: tuple[str, ...] = (
    "n_claims",
    "n_independent_claims",
    "n_inventors",
    "n_assignees",
    "backward_citations",
    "abstract_tokens",
    "description_tokens",
    "title_tokens",
    "filing_year_offset",
    *(f"cpc_section_{s}" for s in CPC_SECTIONS),
    "has_assignee",
)

DERIVED_NAMES: tuple[str, ...] = (
    "mean_claim_token_length",
    "dependent_claim_ratio",
    "abstract_type_token_ratio",
    "mean_sentence_token_length",
    "claims_to_description_length_ratio",
)

DESCRIPTION_TOKEN_CAP = 50_000
_FILING_YEAR_BASE = 2005
_FILING_YEAR_SPAN = 30

_SENTENCE_SPLIT = re.compile(r"[.!?]")


@dataclass(frozen=True)
class FeatureVector:
    schema_id: str
    values: np.ndarray

    def __post_init__(self):
        if not np.all(np.isfinite(self.values)):
            raise PatlyticsError("feature vector contains non-finite values")


def engineered_features(doc: PatentDocument) -> np.ndarray:
    """Counting features, in the exact ENGINEERED_NAMES order."""
    values = [
        float(len(doc.claims)),
        float(sum(1 for c in doc.claims if c.is_independent)),
        float(len(doc.inventors)),
        float(len(doc.assignees)),
        float(doc.backward_citation_count),
        float(len(tokenize(doc.abstract_text))),
        float(min(len(tokenize(doc.description_text)), DESCRIPTION_TOKEN_CAP)),
        float(len(tokenize(doc.title))),
        float(min(max(doc.filing_date.year - _FILING_YEAR_BASE, 0), _FILING_YEAR_SPAN)),
    ]
    sections = {c[0] for c in doc.cpc_codes if c}
    values.extend(1.0 if s in sections else 0.0 for s in CPC_SECTIONS)
    values.append(1.0 if doc.assignees else 0.0)
    return np.array(values, dtype=np.float64)


def derived_features(doc: PatentDocument) -> np.ndarray:
    """Ratio features, in the exact DERIVED_NAMES order; 0 on empty inputs."""
    claim_lengths = [len(tokenize(c.text)) for c in doc.claims]
    mean_claim_len = sum(claim_lengths) / len(claim_lengths) if claim_lengths else 0.0
    dependent_ratio = (
        sum(1 for c in doc.claims if not c.is_independent) / len(doc.claims)
        if doc.claims
        else 0.0
    )

    abstract_tokens = tokenize(doc.abstract_text)
    type_token = len(set(abstract_tokens)) / len(abstract_tokens) if abstract_tokens else 0.0

    sentence_lengths = [
        len(toks)
        for part in _SENTENCE_SPLIT.split(doc.abstract_text)
        if (toks := tokenize(part))
    ]
    mean_sentence_len = (
        sum(sentence_lengths) / len(sentence_lengths) if sentence_lengths else 0.0
    )

    description_tokens = len(tokenize(doc.description_text))
    claims_to_desc = (
        sum(claim_lengths) / description_tokens if description_tokens else 0.0
    )
    return np.array(
        [mean_claim_len, dependent_ratio, type_token, mean_sentence_len, claims_to_desc],
        dtype=np.float64,
    )


def hashed_block_text(doc: PatentDocument) -> str:
    """The text feeding the hashed block: title, abstract, and claims."""
    parts = [doc.title, doc.abstract_text]
    parts.extend(c.text for c in doc.claims)
    return " ".join(p for p in parts if p)


def assemble_features(doc: PatentDocument, schema: FeatureSchema) -> FeatureVector:
    """Concatenate engineered, derived, and hashed blocks under the schema."""
    if tuple(schema.engineered_names) != ENGINEERED_NAMES or tuple(
        schema.derived_names
    ) != DERIVED_NAMES:
        raise PatlyticsError("schema names do not match this feature pipeline")
    hashed = hashed_text_features(tokenize(hashed_block_text(doc)), schema)
    values = np.concatenate([engineered_features(doc), derived_features(doc), hashed])
    return FeatureVector(schema_id=schema.schema_id, values=values)
