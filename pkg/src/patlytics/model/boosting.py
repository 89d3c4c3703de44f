"""Gradient-boosted regression trees, squared loss, exact greedy splits.

Each round fits one tree to the current residuals. Split search scans the
midpoints between consecutive distinct sorted feature values and keeps the
split with the largest variance reduction; ties break to the lowest
feature index, then the lowest threshold, so training is deterministic
regardless of evaluation order. Leaf values are mean residuals; every
round therefore weakly decreases training RMSE for learning rates in
(0, 1].
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from patlytics import PatlyticsError

# Features are scanned in fixed-size column blocks to bound the working set
# on wide (hashed) designs.
_FEATURE_BLOCK = 1024


@dataclass
class TreeNode:
    feature: int | None = None
    threshold: float = 0.0
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    value: float = 0.0

    @property
    def is_leaf(self) -> bool:
        return self.feature is None

    def to_json_dict(self) -> dict:
        if self.is_leaf:
            return {"leaf_value": self.value}
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "left": self.left.to_json_dict(),
            "right": self.right.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "TreeNode":
        if "leaf_value" in data:
            return cls(value=float(data["leaf_value"]))
        return cls(
            feature=int(data["feature"]),
            threshold=float(data["threshold"]),
            left=cls.from_json_dict(data["left"]),
            right=cls.from_json_dict(data["right"]),
        )


@dataclass
class BoostParams:
    max_depth: int = 3
    rounds: int = 200
    min_leaf: int = 20
    learning_rate: float = 0.1

    def __post_init__(self):
        if not 0.0 < self.learning_rate <= 1.0:
            raise PatlyticsError(f"learning rate must be in (0,1]: {self.learning_rate}")
        if self.max_depth < 1 or self.rounds < 1 or self.min_leaf < 1:
            raise PatlyticsError("max_depth, rounds, and min_leaf must be positive")

    def to_json_dict(self) -> dict:
        return {
            "max_depth": self.max_depth,
            "rounds": self.rounds,
            "min_leaf": self.min_leaf,
            "learning_rate": self.learning_rate,
        }


@dataclass
class BoostedTreesModel:
    initial_prediction: float
    trees: list[TreeNode] = field(default_factory=list)
    learning_rate: float = 0.1
    params: BoostParams = field(default_factory=BoostParams)

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        out = np.full(X.shape[0], self.initial_prediction, dtype=np.float64)
        idx = np.arange(X.shape[0])
        for tree in self.trees:
            contrib = np.empty(X.shape[0], dtype=np.float64)
            _apply_tree(tree, X, idx, contrib)
            out += self.learning_rate * contrib
        return out

    def staged_predict(self, X: np.ndarray):
        """Yield predictions after the initial guess and after each tree."""
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        out = np.full(X.shape[0], self.initial_prediction, dtype=np.float64)
        idx = np.arange(X.shape[0])
        yield out.copy()
        for tree in self.trees:
            contrib = np.empty(X.shape[0], dtype=np.float64)
            _apply_tree(tree, X, idx, contrib)
            out += self.learning_rate * contrib
            yield out.copy()

    def to_json_dict(self) -> dict:
        return {
            "kind": "boosted_trees",
            "initial_prediction": self.initial_prediction,
            "learning_rate": self.learning_rate,
            "params": self.params.to_json_dict(),
            "trees": [t.to_json_dict() for t in self.trees],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "BoostedTreesModel":
        return cls(
            initial_prediction=float(data["initial_prediction"]),
            trees=[TreeNode.from_json_dict(t) for t in data["trees"]],
            learning_rate=float(data["learning_rate"]),
            params=BoostParams(**data["params"]),
        )


def _apply_tree(node: TreeNode, X: np.ndarray, idx: np.ndarray, out: np.ndarray) -> None:
    if node.is_leaf:
        out[idx] = node.value
        return
    mask = X[idx, node.feature] < node.threshold
    _apply_tree(node.left, X, idx[mask], out)
    _apply_tree(node.right, X, idx[~mask], out)


def _best_split(
    X: np.ndarray, resid: np.ndarray, min_leaf: int
) -> tuple[float, int, float] | None:
    """Largest variance-reduction split, or None if no valid positive gain.

    Returns (gain, feature, threshold); ties resolve to the lowest feature
    index then the lowest threshold because blocks and positions are
    scanned in ascending order and only strictly larger gains replace the
    incumbent.
    """
    m, d = X.shape
    if m < 2 * min_leaf:
        return None
    total = float(resid.sum())
    parent_term = total * total / m
    n_left = np.arange(1, m, dtype=np.float64)
    n_right = m - n_left
    size_ok = (n_left >= min_leaf) & (n_right >= min_leaf)

    best: tuple[float, int, float] | None = None
    for start in range(0, d, _FEATURE_BLOCK):
        cols = slice(start, min(start + _FEATURE_BLOCK, d))
        block = X[:, cols]
        order = np.argsort(block, axis=0, kind="stable")
        xs = np.take_along_axis(block, order, axis=0)
        rs = np.cumsum(resid[order], axis=0)
        sum_left = rs[:-1]
        sum_right = total - sum_left
        gain = (
            sum_left * sum_left / n_left[:, None]
            + sum_right * sum_right / n_right[:, None]
            - parent_term
        )
        valid = (xs[1:] != xs[:-1]) & size_ok[:, None]
        gain[~valid] = -np.inf
        flat = np.argmax(gain.T.ravel())
        feature_off, pos = divmod(int(flat), m - 1)
        g = float(gain[pos, feature_off])
        if g <= 0.0:
            continue
        if best is None or g > best[0]:
            lo = float(xs[pos, feature_off])
            hi = float(xs[pos + 1, feature_off])
            threshold = (lo + hi) / 2.0
            if threshold <= lo:  # midpoint rounded down to the left value
                threshold = hi
            best = (g, start + feature_off, threshold)
    return best


def _build_tree(
    X: np.ndarray, resid: np.ndarray, idx: np.ndarray, depth: int, params: BoostParams
) -> TreeNode:
    node = TreeNode(value=float(resid[idx].mean()))
    if depth >= params.max_depth:
        return node
    found = _best_split(X[idx], resid[idx], params.min_leaf)
    if found is None:
        return node
    _, feature, threshold = found
    mask = X[idx, feature] < threshold
    node.feature = feature
    node.threshold = threshold
    node.left = _build_tree(X, resid, idx[mask], depth + 1, params)
    node.right = _build_tree(X, resid, idx[~mask], depth + 1, params)
    return node


def _canonical_row_order(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Content-derived row order, identical for any permutation of the input.

    Floating-point sums depend on evaluation order, so training must not
    see rows in caller order; sorting by a digest of each (x, y) pair makes
    the fit a pure function of the training multiset.
    """
    digests = [
        hashlib.sha256(X[i].tobytes() + y[i].tobytes()).digest() for i in range(X.shape[0])
    ]
    return np.array(sorted(range(X.shape[0]), key=digests.__getitem__), dtype=np.intp)


def train_boosted_trees(
    X: np.ndarray, y: np.ndarray, params: BoostParams | None = None
) -> BoostedTreesModel:
    """Fit params.rounds trees to squared-loss residuals.

    Degenerate all-equal targets produce a model with zero trees (the
    initial mean prediction alone). Rows are reordered canonically first,
    so permuting the training set cannot change the result.
    """
    params = params or BoostParams()
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise PatlyticsError("X and y shapes disagree")
    if X.shape[0] < 2 * params.min_leaf:
        raise PatlyticsError(
            f"need at least {2 * params.min_leaf} rows for min_leaf={params.min_leaf}"
        )
    canon = _canonical_row_order(X, y)
    X = X[canon]
    y = y[canon]

    initial = float(y.mean())
    model = BoostedTreesModel(
        initial_prediction=initial,
        trees=[],
        learning_rate=params.learning_rate,
        params=params,
    )
    predictions = np.full(y.shape[0], initial, dtype=np.float64)
    all_rows = np.arange(y.shape[0])
    for _ in range(params.rounds):
        resid = y - predictions
        if not np.any(resid):
            break
        tree = _build_tree(X, resid, all_rows, 0, params)
        contrib = np.empty(y.shape[0], dtype=np.float64)
        _apply_tree(tree, X, all_rows, contrib)
        predictions += params.learning_rate * contrib
        model.trees.append(tree)
    return model
