"""Test-set metrics for a calibrated bundle."""

from __future__ import annotations

import numpy as np

from patlytics import PatlyticsError


def evaluate_model(bundle, X_test: np.ndarray, y_test: np.ndarray) -> dict:
    """MAE, RMSE, interval coverage, and mean interval width on held-out rows.

    Uses the same clipping as prediction (points and interval floors at 0),
    so the numbers describe exactly what the API would have served.
    """
    X_test = np.asarray(X_test, dtype=np.float64)
    y_test = np.asarray(y_test, dtype=np.float64)
    if X_test.shape[0] == 0:
        raise PatlyticsError("no test data")

    point = np.maximum(bundle.point_model.predict(X_test), 0.0)
    half_width = bundle.calibration.half_width(X_test)
    low = np.maximum(point - half_width, 0.0)
    high = point + half_width

    errors = y_test - point
    return {
        "mae_days": float(np.mean(np.abs(errors))),
        "rmse_days": float(np.sqrt(np.mean(errors**2))),
        "coverage": float(np.mean((y_test >= low) & (y_test <= high))),
        "mean_interval_width_days": float(np.mean(high - low)),
    }
