"""Parse one bulk-file chunk into a normalized PatentDocument.

Parsing is schema-tolerant: fields are located by element name, extra
elements are skipped, and DTDs are never fetched or validated. Modern
(2005+) grant and application root elements are supported; anything else
is reported as an unsupported document type.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from datetime import date

from patlytics import PatlyticsError
from patlytics.documents import (
    Claim,
    DocKind,
    PatentDocument,
    PersonName,
    normalize_doc_number,
    normalize_whitespace,
)
from patlytics.ingest.splitter import RawDocumentChunk

_ROOT_KINDS = {
    "us-patent-grant": DocKind.GRANT,
    "us-patent-application": DocKind.APPLICATION,
}

# Expat reports truncated input with one of these prefixes.
_TRUNCATION_MARKERS = ("no element found", "unclosed token", "unclosed CDATA section")


class ParseFailure(PatlyticsError):
    """A chunk could not be turned into a valid PatentDocument."""

    def __init__(self, reason: str, source_file: str = "<unknown>", byte_offset: int = 0):
        super().__init__(f"{source_file}@{byte_offset}: {reason}")
        self.reason = reason
        self.source_file = source_file
        self.byte_offset = byte_offset


def _text(elem: ET.Element | None) -> str:
    if elem is None:
        return ""
    return normalize_whitespace("".join(elem.itertext()))


def _parse_date(raw: str, chunk: RawDocumentChunk) -> date:
    if len(raw) != 8 or not raw.isdigit():
        raise ParseFailure(f"invalid date: {raw!r}", chunk.source_file, chunk.byte_offset)
    try:
        return date(int(raw[0:4]), int(raw[4:6]), int(raw[6:8]))
    except ValueError:
        raise ParseFailure(f"invalid date: {raw!r}", chunk.source_file, chunk.byte_offset)


def _find_bib(root: ET.Element) -> ET.Element | None:
    for name in ("us-bibliographic-data-grant", "us-bibliographic-data-application"):
        bib = root.find(name)
        if bib is not None:
            return bib
    return None


def _claims(root: ET.Element) -> list[Claim]:
    claims = []
    block = root.find("claims")
    if block is None:
        return claims
    for i, elem in enumerate(block.findall("claim")):
        num_attr = (elem.get("num") or "").lstrip("0")
        number = int(num_attr) if num_attr.isdigit() else i + 1
        claims.append(Claim.from_text(number, _text(elem)))
    return claims


def _inventors(bib: ET.Element) -> list[PersonName]:
    people = []
    for container in bib.iter("inventors"):
        for inv in container.findall("inventor"):
            first = _text(inv.find(".//first-name"))
            last = _text(inv.find(".//last-name"))
            if first or last:
                people.append(PersonName(first=first, last=last))
    if people:
        return people
    # Pre-2013 applications list inventors as applicants.
    for container in bib.iter("applicants"):
        for app in container.findall("applicant"):
            first = _text(app.find(".//first-name"))
            last = _text(app.find(".//last-name"))
            if first or last:
                people.append(PersonName(first=first, last=last))
    return people


def _assignees(bib: ET.Element) -> list[str]:
    names = []
    for container in bib.iter("assignees"):
        for assignee in container.findall("assignee"):
            org = _text(assignee.find(".//orgname"))
            if org:
                names.append(org)
    return names


def _cpc_codes(bib: ET.Element) -> list[str]:
    codes = []
    for cpc in bib.iter("classification-cpc"):
        parts = [_text(cpc.find(tag)) for tag in ("section", "class", "subclass", "main-group")]
        code = "".join(parts).replace(" ", "")
        if code:
            codes.append(code)
    return codes


def _citation_count(bib: ET.Element) -> int:
    return sum(1 for _ in bib.iter("patcit")) + sum(1 for _ in bib.iter("nplcit"))


def parse_patent_document(chunk: RawDocumentChunk) -> PatentDocument:
    """Extract a PatentDocument from one chunk, or raise ParseFailure.

    The failure reason distinguishes truncated input, malformed XML,
    unsupported root elements, missing required fields, bad dates, and
    invariant violations such as a grant dated before its filing.
    """
    try:
        root = ET.fromstring(chunk.xml_text.encode("utf-8"))
    except ET.ParseError as exc:
        msg = str(exc)
        if msg.startswith(_TRUNCATION_MARKERS):
            reason = "truncated document"
        else:
            reason = f"malformed XML: {msg}"
        raise ParseFailure(reason, chunk.source_file, chunk.byte_offset)

    kind = _ROOT_KINDS.get(root.tag)
    if kind is None:
        raise ParseFailure(
            f"unsupported document type: {root.tag}", chunk.source_file, chunk.byte_offset
        )

    bib = _find_bib(root)
    if bib is None:
        raise ParseFailure(
            "missing required field: bibliographic data", chunk.source_file, chunk.byte_offset
        )

    pub_id = bib.find("publication-reference/document-id")
    app_id = bib.find("application-reference/document-id")
    doc_number = normalize_doc_number(_text(pub_id.find("doc-number")) if pub_id is not None else "")
    if not doc_number:
        raise ParseFailure(
            "missing required field: doc-number", chunk.source_file, chunk.byte_offset
        )
    filing_raw = _text(app_id.find("date")) if app_id is not None else ""
    if not filing_raw:
        raise ParseFailure(
            "missing required field: filing date", chunk.source_file, chunk.byte_offset
        )
    pub_raw = _text(pub_id.find("date")) if pub_id is not None else ""
    if not pub_raw:
        raise ParseFailure(
            "missing required field: publication date", chunk.source_file, chunk.byte_offset
        )

    filing_date = _parse_date(filing_raw, chunk)
    publication_date = _parse_date(pub_raw, chunk)

    doc = PatentDocument(
        doc_number=doc_number,
        doc_kind=kind,
        kind_code=_text(pub_id.find("kind")),
        title=_text(bib.find("invention-title")),
        abstract_text=_text(root.find("abstract")),
        claims=_claims(root),
        description_text=_text(root.find("description")),
        filing_date=filing_date,
        publication_date=publication_date,
        grant_date=publication_date if kind is DocKind.GRANT else None,
        inventors=_inventors(bib),
        assignees=_assignees(bib),
        cpc_codes=_cpc_codes(bib),
        backward_citation_count=_citation_count(bib),
    )
    try:
        doc.validate()
    except PatlyticsError as exc:
        raise ParseFailure(str(exc), chunk.source_file, chunk.byte_offset)
    return doc
