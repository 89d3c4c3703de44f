from datetime import date

import pytest
from hypothesis import given, strategies as st

from patlytics.documents import DocKind, normalize_doc_number, normalize_whitespace
from patlytics.ingest import RawDocumentChunk, split_concatenated_xml
from patlytics.ingest.parser import ParseFailure, parse_patent_document


def chunk_of(xml: str) -> RawDocumentChunk:
    return RawDocumentChunk(source_file="inline.xml", byte_offset=0, xml_text=xml)


def load_fixture_docs(path):
    docs, failures = [], []
    with open(path, "rb") as fh:
        for chunk in split_concatenated_xml(fh, str(path)):
            try:
                docs.append(parse_patent_document(chunk))
            except ParseFailure as exc:
                failures.append(exc)
    return docs, failures


def test_reference_grant_fields(uspto_fixture_dir):
    docs, failures = load_fixture_docs(uspto_fixture_dir / "grants_a.xml")
    assert len(docs) == 3
    assert [f.reason for f in failures] == ["invalid date ordering"]

    doc = docs[0]
    assert doc.doc_number == "7654321"
    assert doc.doc_kind is DocKind.GRANT
    assert doc.kind_code == "B2"
    assert doc.title == "Adaptive cache prefetching for distributed storage"
    assert doc.filing_date == date(2015, 3, 1)
    assert doc.grant_date == date(2018, 6, 15)
    assert doc.publication_date == date(2018, 6, 15)
    assert doc.grant_lag_days == 1202
    assert [p.full_name for p in doc.inventors] == ["Mai Nguyen", "David Okafor"]
    assert doc.assignees == ["International Business Machines Corporation"]
    assert doc.cpc_codes == ["G06F17"]
    assert doc.backward_citation_count == 3
    assert [c.number for c in doc.claims] == [1, 2, 3]
    assert doc.claims[0].is_independent
    assert not doc.claims[1].is_independent  # "The method of claim 1, ..."
    assert doc.claims[2].is_independent
    assert doc.abstract_text.startswith("A method for prefetching cache blocks")
    # Internal whitespace collapsed across paragraph boundaries.
    assert "  " not in doc.description_text and "\n" not in doc.description_text


def test_application_has_no_grant_date(uspto_fixture_dir):
    docs, failures = load_fixture_docs(uspto_fixture_dir / "apps_c.xml")
    assert [f.reason for f in failures] == ["unsupported document type: sequence-cwu"]
    assert len(docs) == 3
    for doc in docs:
        assert doc.doc_kind is DocKind.APPLICATION
        assert doc.grant_date is None
        assert doc.grant_lag_days is None
    # Applications may legitimately have no claims and no CPC codes.
    kettle = next(d for d in docs if d.doc_number == "20170054321")
    assert kettle.claims == [] and kettle.cpc_codes == []


def test_grant_before_filing_is_invalid_date_ordering(uspto_fixture_dir):
    _, failures = load_fixture_docs(uspto_fixture_dir / "grants_a.xml")
    assert failures[0].reason == "invalid date ordering"
    assert failures[0].source_file.endswith("grants_a.xml")


APP_TEMPLATE = """<?xml version="1.0" encoding="UTF-8"?>
<us-patent-application>
<us-bibliographic-data-application>
<publication-reference><document-id><doc-number>{num}</doc-number><kind>A1</kind><date>{pub}</date></document-id></publication-reference>
<application-reference><document-id><date>{filed}</date></document-id></application-reference>
<invention-title>Thing</invention-title>
</us-bibliographic-data-application>
</us-patent-application>
"""


def app_xml(num="20160000001", pub="20160505", filed="20141120") -> str:
    return APP_TEMPLATE.format(num=num, pub=pub, filed=filed)


def test_unsupported_root_element():
    with pytest.raises(ParseFailure) as err:
        parse_patent_document(chunk_of('<?xml version="1.0"?>\n<mystery-doc/>\n'))
    assert err.value.reason.startswith("unsupported document type")


def test_missing_doc_number():
    xml = app_xml(num="")
    with pytest.raises(ParseFailure) as err:
        parse_patent_document(chunk_of(xml))
    assert err.value.reason == "missing required field: doc-number"


def test_missing_filing_date():
    xml = app_xml().replace("<application-reference><document-id><date>20141120</date></document-id></application-reference>", "")
    with pytest.raises(ParseFailure) as err:
        parse_patent_document(chunk_of(xml))
    assert err.value.reason == "missing required field: filing date"


@pytest.mark.parametrize("bad", ["2015030", "20151301", "20150230", "2015030a"])
def test_malformed_dates(bad):
    with pytest.raises(ParseFailure) as err:
        parse_patent_document(chunk_of(app_xml(filed=bad)))
    assert err.value.reason.startswith("invalid date")


def test_error_carries_source_location():
    chunk = RawDocumentChunk("somewhere.xml", 4242, "<?xml version='1.0'?><broken>")
    with pytest.raises(ParseFailure) as err:
        parse_patent_document(chunk)
    assert err.value.source_file == "somewhere.xml"
    assert err.value.byte_offset == 4242


def test_doc_number_normalization():
    assert normalize_doc_number("07654321") == "7654321"
    assert normalize_doc_number(" d0 653 232 ") == "D0653232"
    assert normalize_doc_number("RE046310") == "RE046310"


@given(st.text(max_size=300))
def test_whitespace_normalization_idempotent(text):
    once = normalize_whitespace(text)
    assert normalize_whitespace(once) == once
