import json
from datetime import date, timedelta

import numpy as np
import pytest

from patlytics import PatlyticsError
from patlytics.documents import Claim, DocKind, PatentDocument, PersonName
from patlytics.store import EntityKey, EntityKind, EntityNotFound, InvalidRange, PatentStore
from patlytics.store.aggregates import percentile
from patlytics.store.store import GroupBy, Page


def make_doc(
    num: str,
    kind: DocKind = DocKind.GRANT,
    filed: date = date(2015, 3, 1),
    granted: date | None = date(2018, 6, 15),
    inventors=("Mai Nguyen",),
    assignees=("Acme Widgets Company",),
    cpc=("G06F17",),
    title: str = "Widget",
) -> PatentDocument:
    if kind is DocKind.APPLICATION:
        granted = None
    return PatentDocument(
        doc_number=num,
        doc_kind=kind,
        kind_code="B2" if kind is DocKind.GRANT else "A1",
        title=title,
        abstract_text="An abstract.",
        claims=[Claim.from_text(1, "A method comprising steps.")],
        description_text="A description.",
        filing_date=filed,
        publication_date=granted or (filed + timedelta(days=547)),
        grant_date=granted,
        inventors=[PersonName(*n.split(" ", 1)) for n in inventors],
        assignees=list(assignees),
        cpc_codes=list(cpc),
    )


@pytest.fixture
def store(tmp_path) -> PatentStore:
    return PatentStore(tmp_path / "s.db")


def test_upsert_idempotent(store):
    doc = make_doc("7654321")
    store.upsert(doc)
    store.upsert(doc)
    assert len(store) == 1


def test_same_number_distinct_kinds(store):
    store.upsert(make_doc("7654321", DocKind.APPLICATION))
    store.upsert(make_doc("7654321", DocKind.GRANT))
    assert len(store) == 2
    assert {d.doc_kind for d in store.by_doc_number("7654321")} == set(DocKind)


def test_empty_doc_number_rejected(store):
    doc = make_doc("7654321")
    doc.doc_number = ""
    with pytest.raises(PatlyticsError) as err:
        store.upsert(doc)
    assert "missing required field" in str(err.value)
    assert len(store) == 0


def test_reopen_restores_state(tmp_path):
    path = tmp_path / "s.db"
    store = PatentStore(path)
    store.upsert(make_doc("7654321"))
    store.upsert(make_doc("8000001", filed=date(2012, 1, 5), granted=date(2014, 2, 3)))
    store.close()

    reopened = PatentStore(path)
    assert len(reopened) == 2
    assert reopened.get("7654321", DocKind.GRANT).title == "Widget"


def test_bad_header_refused(tmp_path):
    path = tmp_path / "junk.db"
    path.write_bytes(b"NOTASTORE\n")
    with pytest.raises(PatlyticsError):
        PatentStore(path)


def test_compact_preserves_live_records(tmp_path):
    path = tmp_path / "s.db"
    store = PatentStore(path)
    doc = make_doc("7654321")
    for title in ("One", "Two", "Three"):
        doc.title = title
        store.upsert(doc)
    size_before = path.stat().st_size
    store.compact()
    assert path.stat().st_size < size_before
    store.close()
    assert PatentStore(path).get("7654321", DocKind.GRANT).title == "Three"


def test_query_empty_store(store):
    rows, total = store.query_patents()
    assert rows == [] and total == 0


def test_query_offset_beyond_total(store):
    store.upsert(make_doc("7654321"))
    rows, total = store.query_patents(page=Page(offset=50, limit=10))
    assert rows == [] and total == 1


def test_query_rejects_bad_ranges(store):
    with pytest.raises(InvalidRange):
        store.query_patents(year_range=(2015, 2010))
    with pytest.raises(InvalidRange):
        store.query_patents(page=Page(offset=0, limit=0))
    with pytest.raises(InvalidRange):
        store.query_patents(page=Page(offset=0, limit=501))


def test_query_unknown_entity(store):
    with pytest.raises(EntityNotFound):
        store.query_patents(entity=EntityKey(EntityKind.INVENTOR, "nobody-here"))


def test_query_order_pinned(store):
    store.upsert(make_doc("9", filed=date(2015, 3, 1)))
    store.upsert(make_doc("10", filed=date(2015, 3, 1)))
    store.upsert(make_doc("8", filed=date(2016, 1, 1), granted=date(2018, 1, 1)))
    rows, _ = store.query_patents()
    assert [r["doc_number"] for r in rows] == ["8", "10", "9"]


def test_inventor_median_lag_is_1202(store):
    store.upsert(make_doc("7654321", filed=date(2015, 3, 1), granted=date(2018, 6, 15)))
    key = EntityKey(EntityKind.INVENTOR, "mai-nguyen")
    stats = store.entity_summary(key)
    assert stats.total_grants == 1
    assert stats.median_grant_lag_days == 1202
    assert stats.per_year_filings == {2015: 1}
    assert stats.per_year_grants == {2018: 1}


def test_org_with_alias_but_no_patents(store):
    stats = store.entity_summary(EntityKey(EntityKind.ORGANISATION, "ibm"))
    assert stats.total_grants == 0
    assert stats.total_pending_applications == 0
    assert stats.median_grant_lag_days is None
    assert stats.per_year_filings == {}


def test_unknown_entity_summary(store):
    with pytest.raises(EntityNotFound):
        store.entity_summary(EntityKey(EntityKind.ORGANISATION, "no-such-org"))


def test_pending_counts_exclude_granted_numbers(store):
    store.upsert(make_doc("555", DocKind.APPLICATION, filed=date(2014, 1, 1)))
    store.upsert(make_doc("555", DocKind.GRANT, filed=date(2014, 1, 1), granted=date(2016, 1, 1)))
    store.upsert(make_doc("556", DocKind.APPLICATION, filed=date(2014, 6, 1)))
    stats = store.entity_summary(EntityKey(EntityKind.INVENTOR, "mai-nguyen"))
    assert stats.total_grants == 1
    assert stats.total_pending_applications == 1


def test_collaborators_ranked(store):
    store.upsert(make_doc("1", inventors=("Mai Nguyen", "Wei Zhang")))
    store.upsert(make_doc("2", inventors=("Mai Nguyen", "Wei Zhang"), filed=date(2014, 1, 1), granted=date(2016, 1, 1)))
    store.upsert(make_doc("3", inventors=("Mai Nguyen", "Priya Raman"), filed=date(2013, 1, 1), granted=date(2015, 1, 1)))
    stats = store.entity_summary(EntityKey(EntityKind.INVENTOR, "mai-nguyen"))
    names = [(k.canonical_id, count) for k, _, count in stats.top_collaborators]
    assert names == [("wei-zhang", 2), ("priya-raman", 1)]
    # The organisation's significant inventors, most-shared first.
    org = store.entity_summary(EntityKey(EntityKind.ORGANISATION, "acme-widgets"))
    org_names = [(k.canonical_id, c) for k, _, c in org.top_collaborators]
    assert org_names == [("mai-nguyen", 3), ("wei-zhang", 2), ("priya-raman", 1)]


def test_singleton_grant_lag_group(store):
    store.upsert(make_doc("7654321"))
    (group,) = store.grant_lag_aggregates(GroupBy.FILING_YEAR)
    assert group.group_key == "2015" and group.n == 1
    assert group.mean_days == group.median_days == group.p10_days == group.p90_days == 1202


def test_symmetric_lag_set(store):
    for i, lag in enumerate((100, 200, 300, 400)):
        store.upsert(
            make_doc(str(i), filed=date(2015, 1, 1), granted=date(2015, 1, 1) + timedelta(days=lag))
        )
    (group,) = store.grant_lag_aggregates(GroupBy.FILING_YEAR)
    assert group.median_days == 250 and group.mean_days == 250
    assert group.p10_days == 130 and group.p90_days == 370


def test_empty_store_aggregates(store):
    assert store.grant_lag_aggregates(GroupBy.FILING_YEAR) == []
    assert store.grant_lag_aggregates(GroupBy.CPC_SECTION) == []


def test_percentile_matches_numpy():
    rng = np.random.default_rng(11)
    values = sorted(rng.uniform(0, 1000, size=257).tolist())
    for q in (0.0, 0.1, 0.25, 0.5, 0.9, 1.0):
        assert percentile(values, q) == pytest.approx(
            float(np.percentile(values, q * 100)), abs=1e-9
        )


@pytest.fixture(scope="module")
def synth_store(tmp_path_factory, synth_documents):
    store = PatentStore(tmp_path_factory.mktemp("store") / "synth.db")
    for doc in synth_documents:
        store.upsert(doc)
    return store


def test_year_range_query_matches_linear_scan(synth_store, synth_documents):
    rows, total = synth_store.query_patents(year_range=(2010, 2012), page=Page(0, 500))
    expected = sum(1 for d in synth_documents if 2010 <= d.filing_date.year <= 2012)
    assert total == expected
    assert len(rows) == min(expected, 500)


def test_per_year_filings_match_linear_scan(synth_store, synth_documents):
    key = EntityKey(EntityKind.ORGANISATION, "ibm")
    stats = synth_store.entity_summary(key)
    expected: dict[int, int] = {}
    for doc in synth_documents:
        if any("International Business Machines" in a for a in doc.assignees):
            expected[doc.filing_date.year] = expected.get(doc.filing_date.year, 0) + 1
    assert stats.per_year_filings == expected


def test_group_means_match_linear_scan(synth_store, synth_documents):
    by_year: dict[str, list[float]] = {}
    for doc in synth_documents:
        if doc.grant_date is not None:
            by_year.setdefault(str(doc.filing_date.year), []).append(float(doc.grant_lag_days))
    result = {g.group_key: g for g in synth_store.grant_lag_aggregates(GroupBy.FILING_YEAR)}
    assert set(result) == set(by_year)
    for year, lags in by_year.items():
        group = result[year]
        assert group.n == len(lags)
        assert group.mean_days == pytest.approx(float(np.mean(lags)), rel=1e-9)
        assert group.median_days == pytest.approx(float(np.percentile(lags, 50)), abs=1e-9)
        assert group.p10_days == pytest.approx(float(np.percentile(lags, 10)), abs=1e-9)
        assert group.p90_days == pytest.approx(float(np.percentile(lags, 90)), abs=1e-9)


def test_query_determinism(synth_store):
    a = json.dumps(synth_store.query_patents(year_range=(2008, 2015), page=Page(5, 50)))
    b = json.dumps(synth_store.query_patents(year_range=(2008, 2015), page=Page(5, 50)))
    assert a == b
