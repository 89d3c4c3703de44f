"""HTTP layer: the prediction API and the patent data API.

All routes live under /v1 and speak JSON. Error bodies always carry
{status, code, message} with a machine-readable code from a pinned set.
The service holds an immutable store snapshot and a swappable model
bundle; identical requests against identical state produce identical
bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from patlytics import PatlyticsError
from patlytics.documents import Claim, DocKind, DocumentInvalid, PatentDocument, PersonName
from patlytics.features import assemble_features
from patlytics.model.bundle import (
    SchemaMismatch,
    TrainedModelBundle,
    load_bundle,
    predict_grant_lag,
)
from patlytics.store import EntityKey, EntityKind, EntityNotFound, InvalidRange, PatentStore
from patlytics.store.store import GroupBy, Page, document_summary


class ApiException(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"status": status, "code": code, "message": message},
    )


@dataclass
class AppState:
    store: PatentStore
    bundle: TrainedModelBundle | None = None

    def require_bundle(self) -> TrainedModelBundle:
        bundle = self.bundle  # snapshot: swaps must not tear a request
        if bundle is None:
            raise ApiException(503, "no_model_loaded", "no model bundle is loaded")
        return bundle


class InlineDocument(BaseModel):
    title: str = ""
    abstract_text: str = ""
    claims: list[str] = []
    description_text: str = ""
    filing_date: str
    cpc_codes: list[str] = []
    inventors: list[str] = []
    assignees: list[str] = []


class PredictRequest(BaseModel):
    doc_number: Optional[str] = None
    inline: Optional[InlineDocument] = None


class LoadModelRequest(BaseModel):
    path: str


_ENTITY_KINDS = {"inventor": EntityKind.INVENTOR, "org": EntityKind.ORGANISATION}


def inline_to_document(inline: InlineDocument) -> PatentDocument:
    """Validate a draft through the normal document rules.

    Drafts are treated as unpublished applications: placeholder number,
    publication date pinned to the filing date, no grant date.
    """
    try:
        filing = date.fromisoformat(inline.filing_date)
    except ValueError:
        raise ApiException(400, "invalid_payload", f"invalid filing_date: {inline.filing_date!r}")
    doc = PatentDocument(
        doc_number="INLINE",
        doc_kind=DocKind.APPLICATION,
        kind_code="A1",
        title=inline.title,
        abstract_text=inline.abstract_text,
        claims=[Claim.from_text(i + 1, text) for i, text in enumerate(inline.claims)],
        description_text=inline.description_text,
        filing_date=filing,
        publication_date=filing,
        grant_date=None,
        inventors=[PersonName(first="", last=name) for name in inline.inventors],
        assignees=list(inline.assignees),
        cpc_codes=list(inline.cpc_codes),
    )
    try:
        doc.validate()
    except DocumentInvalid as exc:
        raise ApiException(400, "invalid_payload", exc.reason)
    return doc


def _predict_payload(state: AppState, doc: PatentDocument) -> dict:
    bundle = state.require_bundle()
    features = assemble_features(doc, bundle.schema)
    result = predict_grant_lag(bundle, features)
    return {**result.to_json_dict(), "model_id": bundle.model_id}


def _row_prediction(bundle: TrainedModelBundle, doc: PatentDocument) -> dict:
    features = assemble_features(doc, bundle.schema)
    result = predict_grant_lag(bundle, features)
    return {
        "predicted_days": result.point_days,
        "confidence": round(result.confidence, 4),
        "band": result.band.value,
    }


def create_app(state: AppState) -> FastAPI:
    app = FastAPI(title="patlytics", docs_url=None, redoc_url=None)

    @app.exception_handler(ApiException)
    async def on_api_error(request: Request, exc: ApiException):
        return _error_response(exc.status, exc.code, exc.message)

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return _error_response(400, "invalid_payload", str(exc.errors()[:1]))

    @app.exception_handler(Exception)
    async def on_internal_error(request: Request, exc: Exception):
        return _error_response(500, "internal", f"{type(exc).__name__}: {exc}")

    @app.post("/v1/predict")
    def handle_predict(payload: PredictRequest):
        has_number = payload.doc_number is not None
        has_inline = payload.inline is not None
        if has_number == has_inline:
            raise ApiException(
                400, "invalid_payload", "provide exactly one of doc_number or inline"
            )
        if has_inline:
            doc = inline_to_document(payload.inline)
        else:
            records = state.store.by_doc_number(payload.doc_number.strip().upper().lstrip("0"))
            if not records:
                raise ApiException(
                    404, "entity_not_found", f"no document {payload.doc_number!r}"
                )
            # Prefer the application record: that is the thing being predicted.
            apps = [d for d in records if d.doc_kind is DocKind.APPLICATION]
            doc = apps[0] if apps else records[0]
        try:
            return _predict_payload(state, doc)
        except SchemaMismatch as exc:
            raise ApiException(409, "schema_mismatch", str(exc))

    @app.get("/v1/patents")
    def handle_query(
        doc_kind: Optional[str] = None,
        entity: Optional[str] = None,
        cpc_section: Optional[str] = None,
        year_from: Optional[int] = None,
        year_to: Optional[int] = None,
        offset: int = 0,
        limit: int = 100,
    ):
        kind = None
        if doc_kind is not None:
            try:
                kind = DocKind(doc_kind)
            except ValueError:
                raise ApiException(400, "invalid_payload", f"unknown doc_kind: {doc_kind!r}")
        entity_key = None
        if entity is not None:
            prefix, _, ident = entity.partition(":")
            if prefix not in _ENTITY_KINDS or not ident:
                raise ApiException(
                    400, "invalid_payload", "entity must look like inventor:<id> or org:<id>"
                )
            entity_key = EntityKey(_ENTITY_KINDS[prefix], ident)
        year_range = None
        if year_from is not None or year_to is not None:
            year_range = (year_from if year_from is not None else 1800,
                          year_to if year_to is not None else 9999)
        try:
            rows, total = state.store.query_patents(
                doc_kind=kind,
                entity=entity_key,
                cpc_section=cpc_section,
                year_range=year_range,
                page=Page(offset=offset, limit=limit),
            )
        except EntityNotFound as exc:
            raise ApiException(404, "entity_not_found", str(exc))
        except InvalidRange as exc:
            raise ApiException(400, "invalid_payload", str(exc))
        return {"items": rows, "total": total, "offset": offset, "limit": limit}

    @app.get("/v1/patents/{doc_number}")
    def handle_get_patent(doc_number: str):
        records = state.store.by_doc_number(doc_number.strip().upper().lstrip("0"))
        if not records:
            raise ApiException(404, "entity_not_found", f"no document {doc_number!r}")
        return {
            "doc_number": records[0].doc_number,
            "records": [d.to_json_dict() for d in records],
        }

    def entity_summary_payload(kind: EntityKind, ident: str) -> dict:
        key = EntityKey(kind, ident)
        try:
            stats = state.store.entity_summary(key)
        except EntityNotFound as exc:
            raise ApiException(404, "entity_not_found", str(exc))
        payload = stats.to_json_dict()
        if kind is EntityKind.INVENTOR:
            rows, _ = state.store.query_patents(entity=key, page=Page(offset=0, limit=500))
            bundle = state.bundle
            if bundle is not None:
                enriched = []
                for row in rows:
                    doc = state.store.get(row["doc_number"], DocKind(row["doc_kind"]))
                    enriched.append({**row, **_row_prediction(bundle, doc)})
                rows = enriched
            payload["patents"] = rows
        return payload

    @app.get("/v1/inventors/{ident}/summary")
    def handle_inventor_summary(ident: str):
        return entity_summary_payload(EntityKind.INVENTOR, ident)

    @app.get("/v1/orgs/summary")
    def handle_org_batch(ids: str = ""):
        idents = [i.strip() for i in ids.split(",") if i.strip()]
        if not idents or len(idents) > 10:
            raise ApiException(400, "invalid_payload", "ids must list 1 to 10 organisations")
        out = []
        for ident in idents:
            try:
                out.append({"id": ident, "summary": entity_summary_payload(EntityKind.ORGANISATION, ident)})
            except ApiException as exc:
                out.append(
                    {"id": ident,
                     "error": {"status": exc.status, "code": exc.code, "message": exc.message}}
                )
        return {"summaries": out}

    @app.get("/v1/orgs/{ident}/summary")
    def handle_org_summary(ident: str):
        return entity_summary_payload(EntityKind.ORGANISATION, ident)

    @app.get("/v1/stats/grant-lag")
    def handle_stats(group_by: str = "filing_year"):
        try:
            grouping = GroupBy(group_by)
        except ValueError:
            raise ApiException(400, "invalid_payload", f"unknown group_by: {group_by!r}")
        return [g.to_json_dict() for g in state.store.grant_lag_aggregates(grouping)]

    @app.get("/v1/models/current")
    def handle_model_info():
        bundle = state.require_bundle()
        return {
            "model_id": bundle.model_id,
            "schema_id": bundle.schema_id,
            "metrics": bundle.metrics,
            "trained_at": bundle.trained_at,
        }

    @app.post("/v1/admin/models/load")
    def handle_model_load(payload: LoadModelRequest):
        try:
            bundle = load_bundle(payload.path)
        except (PatlyticsError, ValueError) as exc:
            raise ApiException(400, "invalid_payload", str(exc))
        state.bundle = bundle  # single assignment: requests see old or new, never a mix
        return {
            "model_id": bundle.model_id,
            "schema_id": bundle.schema_id,
            "metrics": bundle.metrics,
            "trained_at": bundle.trained_at,
        }

    return app
