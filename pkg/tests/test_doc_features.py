import re
from datetime import date, timedelta

import numpy as np
import pytest

from patlytics.documents import Claim, DocKind, PatentDocument, PersonName
from patlytics.features import (
    DERIVED_NAMES,
    ENGINEERED_NAMES,
    assemble_features,
    default_schema,
    derived_features,
    engineered_features,
)
from patlytics.features.pipeline import CPC_SECTIONS


def doc_with(
    claims=(),
    inventors=1,
    assignees=("Acme",),
    citations=0,
    abstract="",
    description="",
    title="",
    filed=date(2015, 6, 1),
    cpc=(),
    kind=DocKind.APPLICATION,
) -> PatentDocument:
    return PatentDocument(
        doc_number="1",
        doc_kind=kind,
        kind_code="A1",
        title=title,
        abstract_text=abstract,
        claims=[Claim.from_text(i + 1, text) for i, text in enumerate(claims)],
        description_text=description,
        filing_date=filed,
        publication_date=filed + timedelta(days=500),
        grant_date=filed + timedelta(days=500) if kind is DocKind.GRANT else None,
        inventors=[PersonName("P", str(i)) for i in range(inventors)],
        assignees=list(assignees),
        cpc_codes=list(cpc),
        backward_citation_count=citations,
    )


def test_engineered_reference_doc():
    doc = doc_with(
        claims=(
            "A method comprising sampling traces.",
            "The method of claim 1, with decay.",
            "A system with a processor.",
        ),
        inventors=2,
        filed=date(2015, 3, 1),
        cpc=("G06F17",),
    )
    values = dict(zip(ENGINEERED_NAMES, engineered_features(doc)))
    assert values["n_claims"] == 3
    assert values["n_independent_claims"] == 2
    assert values["n_inventors"] == 2
    assert values["filing_year_offset"] == 10
    assert values["cpc_section_G"] == 1.0
    assert values["has_assignee"] == 1.0


def test_engineered_degenerate_application():
    doc = doc_with(assignees=())
    values = dict(zip(ENGINEERED_NAMES, engineered_features(doc)))
    assert values["n_claims"] == 0
    assert values["n_independent_claims"] == 0
    assert all(values[f"cpc_section_{s}"] == 0.0 for s in CPC_SECTIONS)
    assert values["has_assignee"] == 0.0


def test_filing_year_clamped():
    early = doc_with(filed=date(1999, 1, 1))
    late = doc_with(filed=date(2099, 1, 1))
    assert dict(zip(ENGINEERED_NAMES, engineered_features(early)))["filing_year_offset"] == 0
    assert dict(zip(ENGINEERED_NAMES, engineered_features(late)))["filing_year_offset"] == 30


def test_mean_claim_token_length():
    claims = (
        " ".join(["token"] * 10),
        " ".join(["token"] * 20),
    )
    doc = doc_with(claims=claims)
    values = dict(zip(DERIVED_NAMES, derived_features(doc)))
    assert values["mean_claim_token_length"] == 15.0
    assert values["dependent_claim_ratio"] == 0.0


def test_no_claims_ratios_are_zero():
    values = dict(zip(DERIVED_NAMES, derived_features(doc_with())))
    assert values["mean_claim_token_length"] == 0.0
    assert values["dependent_claim_ratio"] == 0.0
    assert values["claims_to_description_length_ratio"] == 0.0


def test_type_token_ratio():
    doc = doc_with(abstract="alpha beta alpha")
    values = dict(zip(DERIVED_NAMES, derived_features(doc)))
    assert values["abstract_type_token_ratio"] == pytest.approx(2 / 3)


def _oracle_tokens(text):
    toks = re.findall(r"[a-z0-9]+", text.lower())
    return ["<num>" if t.isdigit() else t for t in toks if len(t) >= 2]


def _oracle_engineered(doc):
    out = [
        len(doc.claims),
        sum(1 for c in doc.claims if c.is_independent),
        len(doc.inventors),
        len(doc.assignees),
        doc.backward_citation_count,
        len(_oracle_tokens(doc.abstract_text)),
        min(len(_oracle_tokens(doc.description_text)), 50000),
        len(_oracle_tokens(doc.title)),
        min(max(doc.filing_date.year - 2005, 0), 30),
    ]
    sections = {c[0] for c in doc.cpc_codes if c}
    out += [1 if s in sections else 0 for s in "ABCDEFGHY"]
    out.append(1 if doc.assignees else 0)
    return [float(v) for v in out]


def _oracle_derived(doc):
    lengths = [len(_oracle_tokens(c.text)) for c in doc.claims]
    mean_claim = sum(lengths) / len(lengths) if lengths else 0.0
    dep = sum(1 for c in doc.claims if not c.is_independent) / len(doc.claims) if doc.claims else 0.0
    ab = _oracle_tokens(doc.abstract_text)
    ttr = len(set(ab)) / len(ab) if ab else 0.0
    sent = [len(_oracle_tokens(s)) for s in re.split(r"[.!?]", doc.abstract_text)]
    sent = [n for n in sent if n > 0]
    msl = sum(sent) / len(sent) if sent else 0.0
    desc = len(_oracle_tokens(doc.description_text))
    ratio = sum(lengths) / desc if desc else 0.0
    return [mean_claim, dep, ttr, msl, ratio]


def test_features_match_straight_line_oracle(synth_documents):
    for doc in synth_documents[:100]:
        np.testing.assert_allclose(engineered_features(doc), _oracle_engineered(doc), rtol=0, atol=0)
        np.testing.assert_allclose(derived_features(doc), _oracle_derived(doc), rtol=1e-12)


def test_assembled_layout_and_determinism(synth_documents):
    schema = default_schema(hash_dim=512)
    doc = synth_documents[0]
    fv1 = assemble_features(doc, schema)
    fv2 = assemble_features(doc, schema)
    assert fv1.schema_id == schema.schema_id
    assert len(fv1.values) == schema.total_dim
    assert fv1.values.tobytes() == fv2.values.tobytes()
    hashed = fv1.values[len(ENGINEERED_NAMES) + len(DERIVED_NAMES):]
    assert abs(float(np.linalg.norm(hashed)) - 1.0) < 1e-12


def test_assembled_empty_text_doc():
    schema = default_schema(hash_dim=256)
    fv = assemble_features(doc_with(), schema)
    hashed = fv.values[len(ENGINEERED_NAMES) + len(DERIVED_NAMES):]
    assert not hashed.any()
    assert np.all(np.isfinite(fv.values))


def test_all_vectors_finite(synth_documents):
    schema = default_schema(hash_dim=256)
    for doc in synth_documents[:200]:
        fv = assemble_features(doc, schema)
        assert np.all(np.isfinite(fv.values))
