from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def uspto_fixture_dir() -> Path:
    return FIXTURES / "uspto"


@pytest.fixture(scope="session")
def mini_fixture_dir() -> Path:
    return FIXTURES / "mini"


@pytest.fixture(scope="session")
def synth_corpus_dir(tmp_path_factory) -> Path:
    """1000-document synthetic corpus, generated once per session."""
    from synthgen import write_synth_corpus

    out = tmp_path_factory.mktemp("synth_corpus")
    write_synth_corpus(out, n_docs=1000, seed=7)
    return out


@pytest.fixture(scope="session")
def synth_documents(synth_corpus_dir):
    """Parsed documents of the synthetic corpus, in ingest order."""
    from patlytics.ingest import ingest_path

    docs = []
    report = ingest_path(synth_corpus_dir, docs.append)
    assert report.documents_quarantined == 0
    return docs


@pytest.fixture(scope="session")
def trained_state(synth_documents, tmp_path_factory):
    """Store + trained bundle over the synthetic corpus (small, fast grid)."""
    from patlytics.features import default_schema
    from patlytics.model import build_dataset, train_grid
    from patlytics.store import PatentStore

    store = PatentStore(tmp_path_factory.mktemp("api_store") / "s.db")
    for doc in synth_documents:
        store.upsert(doc)
    schema = default_schema(hash_dim=128)
    dataset = build_dataset(store, schema, split_seed=7)
    outcome = train_grid(
        dataset,
        schema,
        lambda_grid=(1.0,),
        rounds_grid=(20,),
        alpha=0.1,
        trained_at="2019-06-01T00:00:00Z",
    )
    return store, outcome.bundle
