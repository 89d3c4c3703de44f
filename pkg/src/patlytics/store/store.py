"""Single-file patent store with in-memory indexes.

Records append to a versioned log ("PATSTORE" magic + version byte, then
one JSON line per upsert); the newest line per (doc_number, doc_kind) wins
when the file is replayed at open. `compact()` rewrites the log with only
live records. Desk-scale by design: everything is indexed in memory, one
writer at a time, readers see a consistent prefix of completed upserts.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from patlytics import PatlyticsError
from patlytics.documents import DocKind, PatentDocument
from patlytics.store.aggregates import GrantLagStats, SummaryStats, percentile
from patlytics.store.names import (
    AliasTable,
    EntityKey,
    EntityKind,
    UnnameableEntity,
    canonicalize_name,
)

_MAGIC = b"PATSTORE"
_VERSION = 1


class EntityNotFound(PatlyticsError):
    pass


class InvalidRange(PatlyticsError):
    pass


class GroupBy(str, Enum):
    FILING_YEAR = "filing_year"
    CPC_SECTION = "cpc_section"


RecordKey = tuple[str, DocKind]

MAX_PAGE_LIMIT = 500


@dataclass(frozen=True)
class Page:
    offset: int = 0
    limit: int = 100


def document_summary(doc: PatentDocument) -> dict:
    """Compact JSON row used by query results and entity pages."""
    out = {
        "doc_number": doc.doc_number,
        "doc_kind": doc.doc_kind.value,
        "kind_code": doc.kind_code,
        "title": doc.title,
        "filing_date": doc.filing_date.isoformat(),
        "publication_date": doc.publication_date.isoformat(),
    }
    if doc.grant_date is not None:
        out["grant_date"] = doc.grant_date.isoformat()
        out["grant_lag_days"] = doc.grant_lag_days
    out["cpc_sections"] = sorted({c[0] for c in doc.cpc_codes if c})
    out["n_claims"] = len(doc.claims)
    return out


class PatentStore:
    """Persist patents, resolve entities, and answer queries and aggregates."""

    def __init__(self, path: str | Path | None = None, aliases: AliasTable | None = None):
        self.path = Path(path) if path is not None else None
        self.aliases = aliases if aliases is not None else AliasTable.bundled()
        self._records: dict[RecordKey, PatentDocument] = {}
        self._links: dict[RecordKey, list[EntityKey]] = {}
        self._entity_docs: dict[EntityKey, set[RecordKey]] = {}
        self._displays: dict[EntityKey, str] = {}
        self._lock = threading.RLock()
        self._fh = None
        if self.path is not None:
            self._open_file()

    # -- persistence ------------------------------------------------------

    def _open_file(self) -> None:
        header = _MAGIC + bytes([_VERSION]) + b"\n"
        if self.path.exists() and self.path.stat().st_size > 0:
            with open(self.path, "rb") as fh:
                found = fh.read(len(header))
                if found != header:
                    raise PatlyticsError(f"not a patent store (bad header): {self.path}")
                for line in fh:
                    if not line.strip():
                        continue
                    doc = PatentDocument.from_json_dict(json.loads(line))
                    self._apply(doc)
        else:
            with open(self.path, "wb") as fh:
                fh.write(header)
        self._fh = open(self.path, "a", encoding="utf-8")

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def compact(self) -> None:
        """Rewrite the log keeping only the live record per key."""
        if self.path is None:
            return
        with self._lock:
            self.close()
            tmp = self.path.with_suffix(self.path.suffix + ".compact")
            with open(tmp, "wb") as fh:
                fh.write(_MAGIC + bytes([_VERSION]) + b"\n")
                for key in sorted(self._records, key=lambda k: (k[0], k[1].value)):
                    doc = self._records[key]
                    fh.write(
                        (json.dumps(doc.to_json_dict(), ensure_ascii=False) + "\n").encode()
                    )
            tmp.replace(self.path)
            self._fh = open(self.path, "a", encoding="utf-8")

    # -- entity linking ---------------------------------------------------

    def _doc_entities(self, doc: PatentDocument) -> list[EntityKey]:
        keys: list[EntityKey] = []
        for person in doc.inventors:
            try:
                key = canonicalize_name(person.full_name, kind=EntityKind.INVENTOR)
            except UnnameableEntity:
                continue
            keys.append(key)
            self._displays.setdefault(key, person.full_name)
        for raw in doc.assignees:
            try:
                key = canonicalize_name(raw, self.aliases, kind=EntityKind.ORGANISATION)
            except UnnameableEntity:
                continue
            keys.append(key)
            self._displays.setdefault(key, self.aliases.display_for(key.canonical_id) or raw)
        return keys

    def _apply(self, doc: PatentDocument) -> RecordKey:
        key: RecordKey = (doc.doc_number, doc.doc_kind)
        for entity in self._links.pop(key, []):
            members = self._entity_docs.get(entity)
            if members is not None:
                members.discard(key)
        self._records[key] = doc
        entities = self._doc_entities(doc)
        self._links[key] = entities
        for entity in entities:
            self._entity_docs.setdefault(entity, set()).add(key)
        return key

    # -- writes -----------------------------------------------------------

    def upsert(self, doc: PatentDocument) -> str:
        """Insert or replace by (doc_number, doc_kind); returns the record id.

        Invariant violations raise (callers quarantine); nothing is stored.
        """
        doc.validate()
        with self._lock:
            key = self._apply(doc)
            if self._fh is not None:
                self._fh.write(json.dumps(doc.to_json_dict(), ensure_ascii=False) + "\n")
                self._fh.flush()
        return f"{key[1].value}:{key[0]}"

    # -- reads ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self._records)

    def get(self, doc_number: str, doc_kind: DocKind) -> PatentDocument | None:
        return self._records.get((doc_number, doc_kind))

    def by_doc_number(self, doc_number: str) -> list[PatentDocument]:
        docs = [
            self._records[(doc_number, kind)]
            for kind in (DocKind.GRANT, DocKind.APPLICATION)
            if (doc_number, kind) in self._records
        ]
        return docs

    def iter_documents(self) -> list[PatentDocument]:
        with self._lock:
            return list(self._records.values())

    def entity_display(self, key: EntityKey) -> str:
        return self._displays.get(key) or self.aliases.display_for(key.canonical_id) or key.canonical_id

    def entity_known(self, key: EntityKey) -> bool:
        if key in self._entity_docs:
            return True
        return (
            key.kind is EntityKind.ORGANISATION
            and key.canonical_id in self.aliases.manual_canonical_ids()
        )

    def query_patents(
        self,
        doc_kind: DocKind | None = None,
        entity: EntityKey | None = None,
        cpc_section: str | None = None,
        year_range: tuple[int, int] | None = None,
        page: Page = Page(),
    ) -> tuple[list[dict], int]:
        """Filtered page of document summaries plus the filter-wide total.

        Order is pinned: filing_date descending, then doc_number ascending.
        """
        if page.limit < 1 or page.limit > MAX_PAGE_LIMIT or page.offset < 0:
            raise InvalidRange(f"invalid page: offset={page.offset} limit={page.limit}")
        if year_range is not None and year_range[0] > year_range[1]:
            raise InvalidRange(f"invalid range: {year_range[0]} > {year_range[1]}")

        if entity is not None:
            if entity not in self._entity_docs and not self.entity_known(entity):
                raise EntityNotFound(f"entity not found: {entity.canonical_id}")
            with self._lock:
                keys = self._entity_docs.get(entity, set())
                docs = [self._records[k] for k in keys if k in self._records]
        else:
            docs = self.iter_documents()

        if doc_kind is not None:
            docs = [d for d in docs if d.doc_kind is doc_kind]
        if cpc_section is not None:
            docs = [d for d in docs if any(c.startswith(cpc_section) for c in d.cpc_codes)]
        if year_range is not None:
            docs = [d for d in docs if year_range[0] <= d.filing_date.year <= year_range[1]]

        docs.sort(key=lambda d: (-d.filing_date.toordinal(), d.doc_number))
        total = len(docs)
        window = docs[page.offset : page.offset + page.limit]
        return [document_summary(d) for d in window], total

    # -- analytics --------------------------------------------------------

    def _entity_documents(self, key: EntityKey) -> list[PatentDocument]:
        if not self.entity_known(key):
            raise EntityNotFound(f"entity not found: {key.canonical_id}")
        with self._lock:
            keys = self._entity_docs.get(key, set())
            return [self._records[k] for k in keys if k in self._records]

    def entity_summary(self, key: EntityKey) -> SummaryStats:
        docs = self._entity_documents(key)
        stats = SummaryStats(entity=key, display=self.entity_display(key))
        grant_numbers = {d.doc_number for d in docs if d.doc_kind is DocKind.GRANT}
        lags: list[float] = []
        collaborators: dict[EntityKey, int] = {}
        for doc in docs:
            stats.per_year_filings[doc.filing_date.year] = (
                stats.per_year_filings.get(doc.filing_date.year, 0) + 1
            )
            for section in sorted({c[0] for c in doc.cpc_codes if c}):
                stats.cpc_section_histogram[section] = (
                    stats.cpc_section_histogram.get(section, 0) + 1
                )
            if doc.doc_kind is DocKind.GRANT:
                stats.total_grants += 1
                year = doc.grant_date.year
                stats.per_year_grants[year] = stats.per_year_grants.get(year, 0) + 1
                lags.append(float(doc.grant_lag_days))
            elif doc.doc_number not in grant_numbers:
                stats.total_pending_applications += 1
            # Collaborators are people: co-inventors for an inventor, the
            # inventors filing under it for an organisation. Shared-patent
            # counts are per distinct document.
            for other in set(self._links.get((doc.doc_number, doc.doc_kind), [])):
                if other == key or other.kind is not EntityKind.INVENTOR:
                    continue
                collaborators[other] = collaborators.get(other, 0) + 1
        ranked = sorted(collaborators.items(), key=lambda kv: (-kv[1], kv[0].canonical_id))
        stats.top_collaborators = [
            (k, self.entity_display(k), count) for k, count in ranked[:10]
        ]
        if lags:
            stats.median_grant_lag_days = percentile(sorted(lags), 0.5)
        return stats

    def grant_lag_aggregates(self, group_by: GroupBy) -> list[GrantLagStats]:
        """Grant-lag distribution per filing year or per CPC section.

        A grant with codes in several sections contributes its lag once per
        distinct section, matching the histogram convention.
        """
        groups: dict[str, list[float]] = {}
        for doc in self.iter_documents():
            if doc.doc_kind is not DocKind.GRANT:
                continue
            lag = float(doc.grant_lag_days)
            if group_by is GroupBy.FILING_YEAR:
                keys = [str(doc.filing_date.year)]
            else:
                keys = sorted({c[0] for c in doc.cpc_codes if c})
            for group_key in keys:
                groups.setdefault(group_key, []).append(lag)
        return [GrantLagStats.from_lags(k, lags) for k, lags in sorted(groups.items())]
