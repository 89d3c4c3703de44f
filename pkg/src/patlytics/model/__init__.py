from patlytics.model.dataset import ClockOrigin, Dataset, SplitLabel, build_dataset
from patlytics.model.ridge import RankDeficient, RidgeModel, train_ridge
from patlytics.model.boosting import BoostParams, BoostedTreesModel, train_boosted_trees
from patlytics.model.conformal import ConformalCalibration, fit_conformal
from patlytics.model.bundle import (
    Band,
    PredictionResult,
    SchemaMismatch,
    TrainedModelBundle,
    load_bundle,
    predict_grant_lag,
    save_bundle,
)
from patlytics.model.metrics import evaluate_model
from patlytics.model.train import TrainingOutcome, train_grid

__all__ = [
    "ClockOrigin",
    "Dataset",
    "SplitLabel",
    "build_dataset",
    "RankDeficient",
    "RidgeModel",
    "train_ridge",
    "BoostParams",
    "BoostedTreesModel",
    "train_boosted_trees",
    "ConformalCalibration",
    "fit_conformal",
    "Band",
    "PredictionResult",
    "SchemaMismatch",
    "TrainedModelBundle",
    "load_bundle",
    "predict_grant_lag",
    "save_bundle",
    "evaluate_model",
    "TrainingOutcome",
    "train_grid",
]
