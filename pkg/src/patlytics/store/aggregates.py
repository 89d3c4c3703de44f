"""Aggregate statistics derived from stored patents."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from patlytics.store.names import EntityKey


def percentile(sorted_values: list[float], q: float) -> float:
    """Inclusive linear-interpolation percentile of pre-sorted values.

    Pinned method (position q*(n-1), interpolate between order statistics)
    so results are reproducible across implementations.
    """
    if not sorted_values:
        raise ValueError("percentile of empty sequence")
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"quantile out of range: {q}")
    pos = q * (len(sorted_values) - 1)
    lo = math.floor(pos)
    frac = pos - lo
    if frac == 0.0:
        return float(sorted_values[lo])
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo])


def median(values: list[float]) -> float:
    return percentile(sorted(values), 0.5)


@dataclass
class SummaryStats:
    entity: EntityKey
    display: str
    total_grants: int = 0
    total_pending_applications: int = 0
    per_year_filings: dict[int, int] = field(default_factory=dict)
    per_year_grants: dict[int, int] = field(default_factory=dict)
    cpc_section_histogram: dict[str, int] = field(default_factory=dict)
    top_collaborators: list[tuple[EntityKey, str, int]] = field(default_factory=list)
    median_grant_lag_days: float | None = None

    def to_json_dict(self) -> dict:
        out = {
            "entity": self.entity.to_json_dict(),
            "display": self.display,
            "total_grants": self.total_grants,
            "total_pending_applications": self.total_pending_applications,
            "per_year_filings": {str(y): c for y, c in sorted(self.per_year_filings.items())},
            "per_year_grants": {str(y): c for y, c in sorted(self.per_year_grants.items())},
            "cpc_section_histogram": {
                s: c for s, c in sorted(self.cpc_section_histogram.items())
            },
            "top_collaborators": [
                {**key.to_json_dict(), "display": display, "shared_count": count}
                for key, display, count in self.top_collaborators
            ],
        }
        if self.median_grant_lag_days is not None:
            out["median_grant_lag_days"] = self.median_grant_lag_days
        return out


@dataclass
class GrantLagStats:
    group_key: str
    n: int
    mean_days: float
    median_days: float
    p10_days: float
    p90_days: float

    @classmethod
    def from_lags(cls, group_key: str, lags: list[float]) -> "GrantLagStats":
        ordered = sorted(lags)
        return cls(
            group_key=group_key,
            n=len(ordered),
            mean_days=sum(ordered) / len(ordered),
            median_days=percentile(ordered, 0.5),
            p10_days=percentile(ordered, 0.1),
            p90_days=percentile(ordered, 0.9),
        )

    def to_json_dict(self) -> dict:
        return {
            "group_key": self.group_key,
            "n": self.n,
            "mean_days": self.mean_days,
            "median_days": self.median_days,
            "p10_days": self.p10_days,
            "p90_days": self.p90_days,
        }
