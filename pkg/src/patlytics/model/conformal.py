"""Normalized split-conformal calibration.

Plain split conformal gives every prediction the same half-width; scaling
the residual quantile by a per-input difficulty estimate lets intervals
widen on hard patents and narrow on easy ones, which is what the
green-to-red confidence presentation needs. The difficulty model is a
ridge regressor over the same features, trained to predict absolute
residual magnitude and floored so scores stay finite.

The difficulty penalty is chosen by generalized cross-validation on the
calibration set. Calibration sets are small next to the (hashed) feature
dimension, so a fixed weak penalty would interpolate the residuals,
compress every calibration score toward 1, and silently destroy test
coverage; GCV keeps the effective degrees of freedom honest at any
feature width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from patlytics import PatlyticsError
from patlytics.model.ridge import RidgeModel, train_ridge
from patlytics.store.aggregates import percentile

# Difficulty predictions are clipped below at one day; tau at a hair above
# zero only to keep the confidence formula well-defined when residuals
# vanish entirely.
DIFFICULTY_FLOOR_DAYS = 1.0
_TAU_FLOOR = 1e-12
MIN_CALIBRATION_ROWS = 20

# Pinned GCV grid; ties take the larger (safer) penalty.
_GCV_LAMBDA_GRID = tuple(2.0**k for k in range(-6, 21))


def _select_difficulty_lambda(X: np.ndarray, r: np.ndarray) -> float:
    """Penalty minimizing ridge GCV for predicting residuals r from X.

    Works on the same standardized design train_ridge uses internally.
    Closed form via the gram eigendecomposition, so the cost is O(n^2 d)
    once, independent of the grid size.
    """
    n = X.shape[0]
    mu = X.mean(axis=0)
    sigma = X.std(axis=0)
    scale = np.where(sigma > 0.0, sigma, 1.0)
    Xs = (X - mu) / scale
    rc = r - r.mean()

    gram = Xs @ Xs.T
    eigvals, eigvecs = np.linalg.eigh(gram)
    eigvals = np.maximum(eigvals, 0.0)
    coords = eigvecs.T @ rc  # residuals in the left-singular basis
    total = float(rc @ rc)

    best_lambda = _GCV_LAMBDA_GRID[-1]
    best_score = None
    for lam in reversed(_GCV_LAMBDA_GRID):  # descending: ties keep the safer penalty
        shrink = eigvals / (eigvals + lam)
        rss = float(np.sum(coords**2 * (1.0 - shrink) ** 2))
        rss += max(total - float(coords @ coords), 0.0)
        dof = float(np.sum(shrink)) + 1.0  # +1 for the unpenalized intercept
        denom = max(n - dof, 1e-9)
        score = n * rss / denom**2
        if best_score is None or score < best_score - 1e-12 * max(1.0, best_score):
            best_score = score
            best_lambda = lam
    return best_lambda


@dataclass
class ConformalCalibration:
    alpha: float
    q_hat: float
    tau: float
    difficulty_model: RidgeModel

    def difficulty(self, X: np.ndarray) -> np.ndarray:
        return np.maximum(self.difficulty_model.predict(X), DIFFICULTY_FLOOR_DAYS)

    def half_width(self, X: np.ndarray) -> np.ndarray:
        return self.q_hat * self.difficulty(X)

    def to_json_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "q_hat": self.q_hat,
            "tau": self.tau,
            "difficulty_model": self.difficulty_model.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ConformalCalibration":
        return cls(
            alpha=float(data["alpha"]),
            q_hat=float(data["q_hat"]),
            tau=float(data["tau"]),
            difficulty_model=RidgeModel.from_json_dict(data["difficulty_model"]),
        )


def conformal_rank(n: int, alpha: float) -> int:
    """The k in 'k-th smallest score': ceil((n+1)(1-alpha))."""
    return math.ceil((n + 1) * (1.0 - alpha))


def fit_conformal(
    point_model, X_calib: np.ndarray, y_calib: np.ndarray, alpha: float = 0.1
) -> ConformalCalibration:
    """Calibrate interval widths on held-out rows.

    Scores are residuals normalized by predicted difficulty; q_hat is their
    ceil((n+1)(1-alpha))-th smallest value (a surrogate of 10x the max when
    the rank exceeds n). tau records the median calibrated half-width and
    anchors the confidence formula at 0.5 for median-difficulty inputs.
    """
    X_calib = np.asarray(X_calib, dtype=np.float64)
    y_calib = np.asarray(y_calib, dtype=np.float64)
    n = X_calib.shape[0]
    if n < MIN_CALIBRATION_ROWS:
        raise PatlyticsError(
            f"insufficient calibration data: {n} rows < {MIN_CALIBRATION_ROWS}"
        )
    if not 0.0 < alpha < 1.0:
        raise PatlyticsError(f"alpha must be in (0,1): {alpha}")

    residuals = np.abs(y_calib - point_model.predict(X_calib))
    difficulty_model = train_ridge(
        X_calib, residuals, _select_difficulty_lambda(X_calib, residuals)
    )
    d_hat = np.maximum(difficulty_model.predict(X_calib), DIFFICULTY_FLOOR_DAYS)
    scores = residuals / d_hat

    k = conformal_rank(n, alpha)
    ordered = np.sort(scores)
    if k > n:
        q_hat = float(ordered[-1]) * 10.0
    else:
        q_hat = float(ordered[k - 1])

    half_widths = (q_hat * d_hat).tolist()
    tau = max(percentile(sorted(half_widths), 0.5), _TAU_FLOOR)
    return ConformalCalibration(
        alpha=alpha, q_hat=q_hat, tau=tau, difficulty_model=difficulty_model
    )
