"""Canonical identities for inventors and organisations.

Raw names from the XML vary wildly ("IBM CORP.", "International Business
Machines Corporation", ...). Canonicalization is a fixed normalization
pipeline followed by a lookup in a hand-curated alias table; names the
table does not know fall back to a slug of their normalized form.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

from patlytics import PatlyticsError


class EntityKind(str, Enum):
    INVENTOR = "Inventor"
    ORGANISATION = "Organisation"


class Provenance(str, Enum):
    MANUAL = "Manual"
    RULE_DERIVED = "RuleDerived"


class UnnameableEntity(PatlyticsError):
    pass


# Trailing corporate-form tokens dropped during normalization, repeatedly,
# so "X Co., Ltd." reduces to "X". Fixed list; order is irrelevant.
_LEGAL_SUFFIXES = frozenset(
    "INC INCORPORATED CORP CORPORATION LLC LTD LIMITED CO COMPANY GMBH KK AG SA PLC".split()
)

_NON_ALNUM = re.compile(r"[^A-Z0-9]+")
_SLUG_SEP = re.compile(r"[^a-z0-9]+")


@dataclass(frozen=True)
class EntityKey:
    kind: EntityKind
    canonical_id: str

    def to_json_dict(self) -> dict:
        return {"kind": self.kind.value, "canonical_id": self.canonical_id}


def normalize_name(raw: str) -> str:
    """Uppercase, strip punctuation, collapse whitespace, drop legal suffixes."""
    text = _NON_ALNUM.sub(" ", raw.upper()).strip()
    tokens = text.split()
    while tokens and tokens[-1] in _LEGAL_SUFFIXES:
        tokens.pop()
    return " ".join(tokens)


def slugify(normalized: str) -> str:
    slug = _SLUG_SEP.sub("-", normalized.lower()).strip("-")
    return slug


class AliasTable:
    """Maps normalized raw names to curated canonical ids.

    File format: {"aliases": [{"match": str, "canonical_id": str, "display": str}]}.
    Matches are normalized through the same pipeline as lookups, so the file
    can hold natural spellings.
    """

    def __init__(self, entries: dict[str, str] | None = None, displays: dict[str, str] | None = None):
        self._entries = dict(entries or {})
        self._displays = dict(displays or {})
        self.provenance = {cid: Provenance.MANUAL for cid in self._entries.values()}

    @classmethod
    def from_file(cls, path: str | Path) -> "AliasTable":
        with open(path, encoding="utf-8") as fh:
            return cls._from_json(json.load(fh))

    @classmethod
    def bundled(cls) -> "AliasTable":
        """The alias table shipped with the package (major technology companies)."""
        data = resources.files("patlytics.store").joinpath("aliases.json").read_text("utf-8")
        return cls._from_json(json.loads(data))

    @classmethod
    def _from_json(cls, data: dict) -> "AliasTable":
        entries: dict[str, str] = {}
        displays: dict[str, str] = {}
        for item in data["aliases"]:
            normalized = normalize_name(item["match"])
            if not normalized:
                raise PatlyticsError(f"alias match normalizes to nothing: {item['match']!r}")
            entries[normalized] = item["canonical_id"]
            displays.setdefault(item["canonical_id"], item.get("display", item["match"]))
        return cls(entries, displays)

    def lookup(self, normalized: str) -> str | None:
        return self._entries.get(normalized)

    def display_for(self, canonical_id: str) -> str | None:
        return self._displays.get(canonical_id)

    def __len__(self) -> int:
        return len(self._entries)

    def manual_canonical_ids(self) -> set[str]:
        return set(self._entries.values())


_EMPTY_TABLE = AliasTable()


def canonicalize_name(
    raw: str,
    aliases: AliasTable | None = None,
    kind: EntityKind = EntityKind.ORGANISATION,
) -> EntityKey:
    """Resolve a raw name to its canonical entity key.

    Raises UnnameableEntity when nothing survives normalization (empty or
    punctuation-only input, or a name made purely of legal suffixes).
    """
    aliases = aliases if aliases is not None else _EMPTY_TABLE
    normalized = normalize_name(raw)
    if not normalized:
        raise UnnameableEntity(f"unnameable entity: {raw!r}")
    canonical = aliases.lookup(normalized)
    if canonical is None:
        canonical = slugify(normalized)
    return EntityKey(kind=kind, canonical_id=canonical)
