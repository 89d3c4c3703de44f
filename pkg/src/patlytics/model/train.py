"""Grid training and best-model selection."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone

from patlytics import PatlyticsError
from patlytics.features.schema import FeatureSchema
from patlytics.model.boosting import BoostParams, train_boosted_trees
from patlytics.model.bundle import TrainedModelBundle, compute_model_id
from patlytics.model.conformal import fit_conformal
from patlytics.model.dataset import Dataset, SplitLabel
from patlytics.model.metrics import evaluate_model
from patlytics.model.ridge import train_ridge

DEFAULT_LAMBDA_GRID = (0.1, 1.0, 10.0)
DEFAULT_ROUNDS_GRID = (100, 200)


@dataclass
class _Candidate:
    name: str
    bundle: TrainedModelBundle

    @property
    def mae(self) -> float:
        return self.bundle.metrics["mae_days"]


@dataclass
class TrainingOutcome:
    bundle: TrainedModelBundle
    selected: str
    candidates: list[dict] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "selected": self.selected,
            "model_id": self.bundle.model_id,
            "schema_id": self.bundle.schema_id,
            "metrics": self.bundle.metrics,
            "trained_at": self.bundle.trained_at,
            "candidates": self.candidates,
        }


def train_grid(
    dataset: Dataset,
    schema: FeatureSchema,
    lambda_grid: tuple[float, ...] = DEFAULT_LAMBDA_GRID,
    rounds_grid: tuple[int, ...] = DEFAULT_ROUNDS_GRID,
    alpha: float = 0.1,
    boost_base: BoostParams | None = None,
    trained_at: str | None = None,
) -> TrainingOutcome:
    """Train every grid candidate and keep the one with the lowest test MAE.

    Candidates run in a fixed order (ridge by lambda, then trees by round
    count) and ties keep the earlier candidate, so selection is
    deterministic.
    """
    if schema.schema_id != dataset.schema_id:
        raise PatlyticsError("dataset was built with a different schema")
    X_train, y_train = dataset.rows_for(SplitLabel.TRAIN)
    X_calib, y_calib = dataset.rows_for(SplitLabel.CALIBRATE)
    X_test, y_test = dataset.rows_for(SplitLabel.TEST)
    if trained_at is None:
        trained_at = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")

    candidates: list[_Candidate] = []
    point_models = [(f"ridge(lambda={lam:g})", train_ridge(X_train, y_train, lam)) for lam in lambda_grid]
    base = boost_base or BoostParams()
    for rounds in rounds_grid:
        params = BoostParams(
            max_depth=base.max_depth,
            rounds=rounds,
            min_leaf=base.min_leaf,
            learning_rate=base.learning_rate,
        )
        point_models.append(
            (f"boosted_trees(rounds={rounds})", train_boosted_trees(X_train, y_train, params))
        )

    for name, point_model in point_models:
        calibration = fit_conformal(point_model, X_calib, y_calib, alpha)
        probe = TrainedModelBundle(
            model_id=compute_model_id(schema, point_model, calibration),
            schema=schema,
            point_model=point_model,
            calibration=calibration,
            metrics={},
            trained_at=trained_at,
        )
        probe.metrics = evaluate_model(probe, X_test, y_test)
        candidates.append(_Candidate(name=name, bundle=probe))

    best = min(candidates, key=lambda c: c.mae)
    return TrainingOutcome(
        bundle=best.bundle,
        selected=best.name,
        candidates=[{"name": c.name, "metrics": c.bundle.metrics} for c in candidates],
    )
