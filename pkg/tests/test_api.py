import json

import pytest
from fastapi.testclient import TestClient

from patlytics.api import AppState, create_app
from patlytics.model.bundle import save_bundle
from patlytics.store import EntityKey, EntityKind, PatentStore
from patlytics.store.store import GroupBy

INLINE_DOC = {
    "title": "Adaptive prefetch window",
    "abstract_text": "A cache prefetcher adapts its window from observed hit rates.",
    "claims": ["A method comprising adapting a prefetch window."],
    "description_text": "The window grows until hit rate saturates.",
    "filing_date": "2016-04-01",
    "cpc_codes": ["G06F17"],
    "inventors": ["Mai Nguyen"],
    "assignees": ["International Business Machines Corporation"],
}


@pytest.fixture(scope="module")
def client(trained_state):
    store, bundle = trained_state
    return TestClient(create_app(AppState(store=store, bundle=bundle)), raise_server_exceptions=False)


@pytest.fixture(scope="module")
def bare_client(tmp_path_factory):
    store = PatentStore(tmp_path_factory.mktemp("bare") / "s.db")
    return TestClient(create_app(AppState(store=store, bundle=None)), raise_server_exceptions=False)


def test_inline_predict_contract(client):
    resp = client.post("/v1/predict", json={"inline": INLINE_DOC})
    assert resp.status_code == 200
    body = resp.json()
    assert set(body) == {
        "point_days",
        "interval_low_days",
        "interval_high_days",
        "confidence",
        "band",
        "model_id",
    }
    assert body["interval_low_days"] <= body["point_days"] <= body["interval_high_days"]
    assert 0.0 < body["confidence"] <= 1.0
    assert body["band"] in {"Green", "Amber", "Red"}
    assert round(body["confidence"], 4) == body["confidence"]


def test_predict_requires_exactly_one_variant(client):
    both = client.post("/v1/predict", json={"doc_number": "7000001", "inline": INLINE_DOC})
    assert both.status_code == 400
    assert both.json()["code"] == "invalid_payload"
    neither = client.post("/v1/predict", json={})
    assert neither.status_code == 400
    body = neither.json()
    assert set(body) == {"status", "code", "message"}


def test_predict_without_model_is_503(bare_client):
    resp = bare_client.post("/v1/predict", json={"inline": INLINE_DOC})
    assert resp.status_code == 503
    assert resp.json()["code"] == "no_model_loaded"


def test_predict_unknown_doc_number(client):
    resp = client.post("/v1/predict", json={"doc_number": "99999999999"})
    assert resp.status_code == 404
    assert resp.json()["code"] == "entity_not_found"


def test_predict_stored_document(client, trained_state):
    store, _ = trained_state
    doc = store.iter_documents()[0]
    resp = client.post("/v1/predict", json={"doc_number": doc.doc_number})
    assert resp.status_code == 200


def test_inline_predict_invalid_date(client):
    bad = dict(INLINE_DOC, filing_date="not-a-date")
    resp = client.post("/v1/predict", json=bad)
    assert resp.status_code == 400


def test_query_patents_pagination(client, trained_state):
    store, _ = trained_state
    resp = client.get("/v1/patents", params={"year_from": 2010, "year_to": 2012, "limit": 10})
    assert resp.status_code == 200
    body = resp.json()
    expected_total = sum(
        1 for d in store.iter_documents() if 2010 <= d.filing_date.year <= 2012
    )
    assert body["total"] == expected_total
    assert len(body["items"]) == min(10, expected_total)
    dates = [row["filing_date"] for row in body["items"]]
    assert dates == sorted(dates, reverse=True)


def test_query_patents_bad_limit(client):
    assert client.get("/v1/patents", params={"limit": 0}).status_code == 400
    assert client.get("/v1/patents", params={"limit": 501}).status_code == 400
    assert client.get("/v1/patents", params={"year_from": 2015, "year_to": 2010}).status_code == 400


def test_get_patent_by_number(client, trained_state):
    store, _ = trained_state
    doc = store.iter_documents()[0]
    resp = client.get(f"/v1/patents/{doc.doc_number}")
    assert resp.status_code == 200
    body = resp.json()
    assert body["doc_number"] == doc.doc_number
    assert body["records"][0]["title"] == doc.title
    assert client.get("/v1/patents/00000000042x").status_code == 404


def test_inventor_summary_matches_store(client, trained_state):
    store, bundle = trained_state
    key = next(iter(k for k in store._entity_docs if k.kind is EntityKind.INVENTOR))
    resp = client.get(f"/v1/inventors/{key.canonical_id}/summary")
    assert resp.status_code == 200
    body = resp.json()
    oracle = store.entity_summary(key).to_json_dict()
    for field in ("total_grants", "per_year_filings", "per_year_grants", "cpc_section_histogram"):
        assert body[field] == oracle[field]
    assert body["patents"], "inventor pages list patents"
    for row in body["patents"]:
        assert "predicted_days" in row and "band" in row and "confidence" in row
        if "grant_date" in row:
            assert "grant_lag_days" in row  # actual days for predicted-vs-actual


def test_inventor_rows_without_model_omit_predictions(trained_state):
    store, _ = trained_state
    client = TestClient(create_app(AppState(store=store, bundle=None)))
    key = next(iter(k for k in store._entity_docs if k.kind is EntityKind.INVENTOR))
    body = client.get(f"/v1/inventors/{key.canonical_id}/summary").json()
    assert body["patents"]
    assert all("predicted_days" not in row for row in body["patents"])


def test_unknown_inventor_404(client):
    resp = client.get("/v1/inventors/nobody-at-all/summary")
    assert resp.status_code == 404
    assert resp.json()["code"] == "entity_not_found"


def test_org_batch_mixed_known_unknown(client):
    resp = client.get("/v1/orgs/summary", params={"ids": "ibm,totally-unknown-org"})
    assert resp.status_code == 200
    entries = resp.json()["summaries"]
    assert entries[0]["id"] == "ibm" and "summary" in entries[0]
    assert entries[1]["id"] == "totally-unknown-org" and entries[1]["error"]["code"] == "entity_not_found"


def test_org_batch_requires_ids(client):
    assert client.get("/v1/orgs/summary", params={"ids": ""}).status_code == 400


def test_stats_match_store_aggregates(client, trained_state):
    store, _ = trained_state
    resp = client.get("/v1/stats/grant-lag", params={"group_by": "filing_year"})
    assert resp.status_code == 200
    body = resp.json()
    oracle = [g.to_json_dict() for g in store.grant_lag_aggregates(GroupBy.FILING_YEAR)]
    assert body == oracle
    keys = [g["group_key"] for g in body]
    assert keys == sorted(keys)


def test_stats_bad_group_by(client):
    resp = client.get("/v1/stats/grant-lag", params={"group_by": "moon_phase"})
    assert resp.status_code == 400
    assert resp.json()["code"] == "invalid_payload"


def test_stats_empty_store(bare_client):
    resp = bare_client.get("/v1/stats/grant-lag", params={"group_by": "cpc_section"})
    assert resp.status_code == 200
    assert resp.json() == []


def test_model_info_passthrough(client, trained_state, tmp_path):
    _, bundle = trained_state
    resp = client.get("/v1/models/current")
    assert resp.status_code == 200
    body = resp.json()
    assert body["model_id"] == bundle.model_id
    # Response metrics equal the bundle file's metrics after canonicalization.
    path = tmp_path / "bundle.json"
    save_bundle(bundle, path)
    file_metrics = json.loads(path.read_text())["metrics"]
    assert json.dumps(body["metrics"], sort_keys=True) == json.dumps(file_metrics, sort_keys=True)


def test_model_info_without_model(bare_client):
    assert bare_client.get("/v1/models/current").status_code == 503


def test_admin_load_swaps_model(tmp_path, trained_state):
    store, bundle = trained_state
    client = TestClient(create_app(AppState(store=store, bundle=None)), raise_server_exceptions=False)
    assert client.post("/v1/predict", json={"inline": INLINE_DOC}).status_code == 503
    path = tmp_path / "bundle.json"
    save_bundle(bundle, path)
    resp = client.post("/v1/admin/models/load", json={"path": str(path)})
    assert resp.status_code == 200
    assert resp.json()["model_id"] == bundle.model_id
    assert client.post("/v1/predict", json={"inline": INLINE_DOC}).status_code == 200
    missing = client.post("/v1/admin/models/load", json={"path": str(tmp_path / "nope.json")})
    assert missing.status_code == 400


def test_identical_requests_identical_bytes(client):
    a = client.post("/v1/predict", json={"inline": INLINE_DOC})
    b = client.post("/v1/predict", json={"inline": INLINE_DOC})
    assert a.content == b.content
    c = client.get("/v1/stats/grant-lag", params={"group_by": "filing_year"})
    d = client.get("/v1/stats/grant-lag", params={"group_by": "filing_year"})
    assert c.content == d.content
