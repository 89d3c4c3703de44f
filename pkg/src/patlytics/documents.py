"""Normalized patent document model shared by every stage of the pipeline."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import date
from enum import Enum

from patlytics import PatlyticsError


class DocKind(str, Enum):
    GRANT = "Grant"
    APPLICATION = "Application"


class DocumentInvalid(PatlyticsError):
    """A document violates a PatentDocument invariant; callers quarantine it."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


# A claim is dependent iff it references another claim by number early in
# its text ("... of claim 1, wherein"). Cheap heuristic, pinned for
# reproducibility; only the first 200 characters are scanned.
_CLAIM_REF = re.compile(r"claim\s*\d", re.IGNORECASE)
_CLAIM_REF_WINDOW = 200


def normalize_whitespace(text: str) -> str:
    """Collapse runs of whitespace to single spaces and strip ends. Idempotent."""
    return " ".join(text.split())


def normalize_doc_number(raw: str) -> str:
    """Canonical document number: no whitespace, uppercase, leading zeros stripped."""
    cleaned = re.sub(r"\s+", "", raw).upper()
    return cleaned.lstrip("0")


def claim_is_independent(text: str) -> bool:
    return _CLAIM_REF.search(text[:_CLAIM_REF_WINDOW]) is None


@dataclass(frozen=True)
class Claim:
    number: int
    text: str
    is_independent: bool

    @classmethod
    def from_text(cls, number: int, text: str) -> "Claim":
        text = normalize_whitespace(text)
        return cls(number=number, text=text, is_independent=claim_is_independent(text))


@dataclass(frozen=True)
class PersonName:
    first: str
    last: str

    @property
    def full_name(self) -> str:
        return normalize_whitespace(f"{self.first} {self.last}")


@dataclass
class PatentDocument:
    doc_number: str
    doc_kind: DocKind
    kind_code: str
    title: str
    abstract_text: str
    claims: list[Claim]
    description_text: str
    filing_date: date
    publication_date: date
    grant_date: date | None = None
    inventors: list[PersonName] = field(default_factory=list)
    assignees: list[str] = field(default_factory=list)
    cpc_codes: list[str] = field(default_factory=list)
    backward_citation_count: int = 0

    def validate(self) -> None:
        """Raise DocumentInvalid if any cross-field invariant is broken."""
        if not self.doc_number:
            raise DocumentInvalid("missing required field: doc-number")
        seen = set()
        for claim in self.claims:
            if claim.number in seen:
                raise DocumentInvalid(f"duplicate claim number {claim.number}")
            seen.add(claim.number)
        if self.doc_kind is DocKind.GRANT:
            if self.grant_date is None:
                raise DocumentInvalid("missing required field: grant date")
            if not self.claims:
                raise DocumentInvalid("missing required field: claims")
            if self.grant_date < self.filing_date:
                raise DocumentInvalid("invalid date ordering")
        if self.backward_citation_count < 0:
            raise DocumentInvalid("negative citation count")

    @property
    def grant_lag_days(self) -> int | None:
        """Calendar days from filing to grant; None for ungranted documents."""
        if self.grant_date is None:
            return None
        return (self.grant_date - self.filing_date).days

    def to_json_dict(self) -> dict:
        """JSON-friendly dict; dates as YYYY-MM-DD, absent optional fields omitted."""
        out = {
            "doc_number": self.doc_number,
            "doc_kind": self.doc_kind.value,
            "kind_code": self.kind_code,
            "title": self.title,
            "abstract_text": self.abstract_text,
            "claims": [
                {"number": c.number, "text": c.text, "is_independent": c.is_independent}
                for c in self.claims
            ],
            "description_text": self.description_text,
            "filing_date": self.filing_date.isoformat(),
            "publication_date": self.publication_date.isoformat(),
        }
        if self.grant_date is not None:
            out["grant_date"] = self.grant_date.isoformat()
        out["inventors"] = [{"first": p.first, "last": p.last} for p in self.inventors]
        out["assignees"] = list(self.assignees)
        out["cpc_codes"] = list(self.cpc_codes)
        out["backward_citation_count"] = self.backward_citation_count
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "PatentDocument":
        grant = data.get("grant_date")
        return cls(
            doc_number=data["doc_number"],
            doc_kind=DocKind(data["doc_kind"]),
            kind_code=data["kind_code"],
            title=data["title"],
            abstract_text=data["abstract_text"],
            claims=[
                Claim(number=c["number"], text=c["text"], is_independent=c["is_independent"])
                for c in data["claims"]
            ],
            description_text=data["description_text"],
            filing_date=date.fromisoformat(data["filing_date"]),
            publication_date=date.fromisoformat(data["publication_date"]),
            grant_date=date.fromisoformat(grant) if grant else None,
            inventors=[PersonName(p["first"], p["last"]) for p in data["inventors"]],
            assignees=list(data["assignees"]),
            cpc_codes=list(data["cpc_codes"]),
            backward_citation_count=data["backward_citation_count"],
        )
