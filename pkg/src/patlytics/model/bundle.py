"""Deployable model bundle: point model + calibration + schema + metrics."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from patlytics import PatlyticsError
from patlytics.features.pipeline import FeatureVector
from patlytics.features.schema import FeatureSchema
from patlytics.model.boosting import BoostedTreesModel
from patlytics.model.conformal import ConformalCalibration
from patlytics.model.ridge import RidgeModel

_MAGIC = "PATMODEL"
_VERSION = 1

GREEN_THRESHOLD = 0.6
AMBER_THRESHOLD = 0.4


class SchemaMismatch(PatlyticsError):
    pass


class Band(str, Enum):
    GREEN = "Green"
    AMBER = "Amber"
    RED = "Red"


def band_for(confidence: float) -> Band:
    if confidence >= GREEN_THRESHOLD:
        return Band.GREEN
    if confidence >= AMBER_THRESHOLD:
        return Band.AMBER
    return Band.RED


@dataclass(frozen=True)
class PredictionResult:
    point_days: float
    interval_low_days: float
    interval_high_days: float
    confidence: float
    band: Band

    def to_json_dict(self) -> dict:
        return {
            "point_days": self.point_days,
            "interval_low_days": self.interval_low_days,
            "interval_high_days": self.interval_high_days,
            "confidence": round(self.confidence, 4),
            "band": self.band.value,
        }


def _point_model_from_json(data: dict):
    kind = data.get("kind")
    if kind == "ridge":
        return RidgeModel.from_json_dict(data)
    if kind == "boosted_trees":
        return BoostedTreesModel.from_json_dict(data)
    raise PatlyticsError(f"unknown point model kind: {kind!r}")


@dataclass
class TrainedModelBundle:
    model_id: str
    schema: FeatureSchema
    point_model: RidgeModel | BoostedTreesModel
    calibration: ConformalCalibration
    metrics: dict
    trained_at: str

    @property
    def schema_id(self) -> str:
        return self.schema.schema_id

    def to_json_dict(self) -> dict:
        return {
            "magic": _MAGIC,
            "version": _VERSION,
            "model_id": self.model_id,
            "schema_id": self.schema_id,
            "schema": self.schema.to_json_dict(),
            "point_model": self.point_model.to_json_dict(),
            "calibration": self.calibration.to_json_dict(),
            "metrics": self.metrics,
            "trained_at": self.trained_at,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "TrainedModelBundle":
        if data.get("magic") != _MAGIC:
            raise PatlyticsError("not a model bundle (bad magic)")
        if data.get("version") != _VERSION:
            raise PatlyticsError(f"unsupported bundle version: {data.get('version')}")
        return cls(
            model_id=data["model_id"],
            schema=FeatureSchema.from_json_dict(data["schema"]),
            point_model=_point_model_from_json(data["point_model"]),
            calibration=ConformalCalibration.from_json_dict(data["calibration"]),
            metrics=dict(data["metrics"]),
            trained_at=data["trained_at"],
        )


def compute_model_id(
    schema: FeatureSchema, point_model, calibration: ConformalCalibration
) -> str:
    """Content-derived id, stable across retrains on identical inputs."""
    payload = json.dumps(
        {
            "schema_id": schema.schema_id,
            "point_model": point_model.to_json_dict(),
            "calibration": calibration.to_json_dict(),
        },
        sort_keys=True,
        separators=(",", ":"),
    )
    return "m-" + hashlib.sha256(payload.encode("utf-8")).hexdigest()[:12]


def predict_grant_lag(bundle: TrainedModelBundle, features: FeatureVector) -> PredictionResult:
    """Point estimate, calibrated interval, confidence, and colour band.

    Refuses to predict on a schema mismatch; silent feature misalignment
    would produce garbage with full confidence.
    """
    if features.schema_id != bundle.schema_id:
        raise SchemaMismatch(
            f"feature schema mismatch: vector {features.schema_id}, "
            f"model {bundle.schema_id}"
        )
    x = features.values.reshape(1, -1)
    point = max(0.0, float(bundle.point_model.predict(x)[0]))
    half_width = float(bundle.calibration.half_width(x)[0])
    confidence = bundle.calibration.tau / (bundle.calibration.tau + half_width)
    return PredictionResult(
        point_days=point,
        interval_low_days=max(0.0, point - half_width),
        interval_high_days=point + half_width,
        confidence=confidence,
        band=band_for(confidence),
    )


def save_bundle(bundle: TrainedModelBundle, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(bundle.to_json_dict(), indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def load_bundle(path: str | Path) -> TrainedModelBundle:
    path = Path(path)
    if not path.exists():
        raise PatlyticsError(f"model bundle not found: {path}")
    return TrainedModelBundle.from_json_dict(json.loads(path.read_text(encoding="utf-8")))
