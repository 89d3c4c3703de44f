"""Training datasets built from stored grants."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from patlytics import PatlyticsError
from patlytics.documents import DocKind
from patlytics.features import assemble_features
from patlytics.features.schema import FeatureSchema
from patlytics.features.text import fnv1a64

MIN_ELIGIBLE_GRANTS = 50


class ClockOrigin(str, Enum):
    FILING_DATE = "filing_date"
    PUBLICATION_DATE = "publication_date"


class SplitLabel(str, Enum):
    TRAIN = "Train"
    CALIBRATE = "Calibrate"
    TEST = "Test"


_SPLIT_ORDER = (SplitLabel.TRAIN, SplitLabel.CALIBRATE, SplitLabel.TEST)


@dataclass
class Dataset:
    schema_id: str
    doc_numbers: list[str]
    X: np.ndarray
    y: np.ndarray
    split_labels: dict[str, SplitLabel] = field(default_factory=dict)

    def rows_for(self, label: SplitLabel) -> tuple[np.ndarray, np.ndarray]:
        idx = [i for i, num in enumerate(self.doc_numbers) if self.split_labels[num] is label]
        return self.X[idx], self.y[idx]

    def split_sizes(self) -> dict[SplitLabel, int]:
        sizes = {label: 0 for label in SplitLabel}
        for label in self.split_labels.values():
            sizes[label] += 1
        return sizes


def allocate_counts(n: int, fractions: tuple[float, float, float]) -> tuple[int, int, int]:
    """Largest-remainder allocation of n rows to the three splits.

    Every bucket lands within one document of its exact fractional share.
    """
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise PatlyticsError(f"split fractions must sum to 1: {fractions}")
    raw = [n * f for f in fractions]
    counts = [int(v) for v in raw]
    remainders = [v - c for v, c in zip(raw, counts)]
    short = n - sum(counts)
    for i in sorted(range(3), key=lambda i: (-remainders[i], i))[:short]:
        counts[i] += 1
    return tuple(counts)


def split_assignments(
    doc_numbers: list[str], seed: int, fractions: tuple[float, float, float]
) -> dict[str, SplitLabel]:
    """Deterministic split: order documents by a seeded hash, cut at the counts."""
    hashed = sorted(
        doc_numbers, key=lambda num: (fnv1a64(f"{seed}:{num}".encode("utf-8")), num)
    )
    counts = allocate_counts(len(doc_numbers), fractions)
    labels: dict[str, SplitLabel] = {}
    cursor = 0
    for label, count in zip(_SPLIT_ORDER, counts):
        for num in hashed[cursor : cursor + count]:
            labels[num] = label
        cursor += count
    return labels


def build_dataset(
    store,
    schema: FeatureSchema,
    clock_origin: ClockOrigin = ClockOrigin.FILING_DATE,
    split_seed: int = 0,
    fractions: tuple[float, float, float] = (0.7, 0.15, 0.15),
) -> Dataset:
    """Featurize every eligible grant and assign deterministic splits.

    Eligible means: a Grant with both the origin date and a grant date, and
    a non-negative lag. Fewer than MIN_ELIGIBLE_GRANTS eligible rows is an
    error; a model trained on less would be noise.
    """
    eligible = []
    for doc in store.iter_documents():
        if doc.doc_kind is not DocKind.GRANT or doc.grant_date is None:
            continue
        origin = (
            doc.filing_date
            if clock_origin is ClockOrigin.FILING_DATE
            else doc.publication_date
        )
        target = (doc.grant_date - origin).days
        if target < 0:
            continue
        eligible.append((doc, float(target)))

    if len(eligible) < MIN_ELIGIBLE_GRANTS:
        raise PatlyticsError(
            f"insufficient data: {len(eligible)} eligible grants < {MIN_ELIGIBLE_GRANTS}"
        )

    eligible.sort(key=lambda pair: pair[0].doc_number)
    doc_numbers = [doc.doc_number for doc, _ in eligible]
    X = np.stack([assemble_features(doc, schema).values for doc, _ in eligible])
    y = np.array([target for _, target in eligible], dtype=np.float64)
    labels = split_assignments(doc_numbers, split_seed, fractions)
    return Dataset(
        schema_id=schema.schema_id,
        doc_numbers=doc_numbers,
        X=X,
        y=y,
        split_labels=labels,
    )
