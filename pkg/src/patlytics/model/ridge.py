"""Ridge regression by normal equations.

The baseline learner: closed-form, deterministic, and cheap to verify
against an independent minimizer. Features are standardized internally
(training mean 0, variance 1; constant columns stay at 0) and the
standardization is folded back into the returned weights, so the model
predicts directly from raw features. The intercept is never penalized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from patlytics import PatlyticsError


class RankDeficient(PatlyticsError):
    pass


@dataclass
class RidgeModel:
    weights: np.ndarray
    intercept: float
    lam: float

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(X, dtype=np.float64) @ self.weights + self.intercept

    def to_json_dict(self) -> dict:
        return {
            "kind": "ridge",
            "weights": self.weights.tolist(),
            "intercept": self.intercept,
            "lambda": self.lam,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "RidgeModel":
        return cls(
            weights=np.array(data["weights"], dtype=np.float64),
            intercept=float(data["intercept"]),
            lam=float(data["lambda"]),
        )


def train_ridge(X: np.ndarray, y: np.ndarray, lam: float) -> RidgeModel:
    """Minimize ||y - Xs v - b||^2 + lam ||v||^2 over standardized features Xs.

    Solved by normal equations; the solution is mapped back to raw-feature
    weights. lam = 0 on a rank-deficient design raises RankDeficient.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise PatlyticsError("ridge needs at least two rows")
    if lam < 0:
        raise PatlyticsError("lambda must be non-negative")

    mu = X.mean(axis=0)
    sigma = X.std(axis=0)
    scale = np.where(sigma > 0.0, sigma, 1.0)
    Xs = (X - mu) / scale
    y_bar = float(y.mean())
    yc = y - y_bar

    gram = Xs.T @ Xs + lam * np.eye(X.shape[1])
    rhs = Xs.T @ yc
    try:
        v = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError:
        raise RankDeficient("rank deficient; increase lambda")
    if not np.all(np.isfinite(v)):
        raise RankDeficient("rank deficient; increase lambda")

    weights = v / scale
    intercept = y_bar - float(weights @ mu)
    return RidgeModel(weights=weights, intercept=intercept, lam=lam)
