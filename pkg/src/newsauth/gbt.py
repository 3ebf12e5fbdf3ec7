"""Gradient-boosted regression trees with a binary logistic objective.

Each round fits one tree to the gradient/hessian of the logistic loss
(g = p - y, h = p(1-p)) by exact greedy split search.  A split's score
is

    gain = 1/2 * [ G_L^2/(H_L+lambda) + G_R^2/(H_R+lambda)
                   - (G_L+G_R)^2/(H_L+H_R+lambda) ]

over all (feature, midpoint-threshold) pairs, and a leaf's weight is
-G/(H+lambda).  Tie-breaks are deterministic: lowest feature index,
then lowest threshold.  Rounds stop early when validation log-loss has
not improved for ``early_stop_rounds`` rounds, keeping the best round.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from ._kernels import gbt_split_scan
from .errors import DimensionMismatch, NonFiniteFeature, SingleClassTraining
from .numerics import log_loss, sigmoid


@dataclass(frozen=True)
class GbtConfig:
    learning_rate: float = 0.02
    max_depth: int = 4
    num_rounds: int = 500
    early_stop_rounds: int = 30
    min_child_weight: float = 1.0
    lambda_l2: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.learning_rate <= 1.0:
            raise ValueError("learning_rate must be in (0, 1]")
        if self.max_depth < 1 or self.num_rounds < 1:
            raise ValueError("max_depth and num_rounds must be >= 1")


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


@dataclass
class GbtEnsemble:
    config: GbtConfig
    base_score: float
    trees: list[TreeNode] = field(default_factory=list)
    n_features: int = 0
    best_round: int = 0
    training_log: list[dict] = field(default_factory=list)
    preprocessing: dict = field(default_factory=dict)

    def save(self, path: str | Path) -> None:
        payload = {
            "format_version": 1,
            "model": "gbt",
            "config": asdict(self.config),
            "base_score": self.base_score,
            "n_features": self.n_features,
            "best_round": self.best_round,
            "preprocessing": self.preprocessing,
            "trees": [_serialize_tree(t) for t in self.trees],
        }
        Path(path).write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n", "utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "GbtEnsemble":
        payload = json.loads(Path(path).read_text("utf-8"))
        if payload.get("model") != "gbt" or payload.get("format_version") != 1:
            raise ValueError(f"{path}: not a gbt model file")
        ensemble = cls(
            config=GbtConfig(**payload["config"]),
            base_score=payload["base_score"],
            n_features=payload["n_features"],
            best_round=payload["best_round"],
            preprocessing=payload.get("preprocessing", {}),
        )
        ensemble.trees = [_deserialize_tree(iter(t)) for t in payload["trees"]]
        return ensemble


def _serialize_tree(node: TreeNode) -> list:
    """Flatten to a pre-order node list."""
    out: list = []

    def walk(n: TreeNode) -> None:
        if n.is_leaf:
            out.append({"leaf": n.value})
        else:
            out.append({"feature": n.feature, "threshold": n.threshold})
            walk(n.left)
            walk(n.right)

    walk(node)
    return out


def _deserialize_tree(nodes) -> TreeNode:
    record = next(nodes)
    if "leaf" in record:
        return TreeNode(value=record["leaf"])
    node = TreeNode(feature=record["feature"], threshold=record["threshold"])
    node.left = _deserialize_tree(nodes)
    node.right = _deserialize_tree(nodes)
    return node


def _find_split(X, grad, hess, rows, lam, min_child_weight):
    """Best (gain, feature, threshold) over all features for these rows."""
    best = (-math.inf, -1, 0.0)
    for j in range(X.shape[1]):
        column = X[rows, j]
        order = np.argsort(column, kind="stable")
        gain, threshold, _ = gbt_split_scan(
            np.ascontiguousarray(grad[rows][order]),
            np.ascontiguousarray(hess[rows][order]),
            np.ascontiguousarray(column[order]),
            lam,
            min_child_weight,
        )
        if gain > best[0]:
            best = (gain, j, threshold)
    return best


def _build_tree(X, grad, hess, rows, depth, config) -> TreeNode:
    lam = config.lambda_l2
    g_sum = float(grad[rows].sum())
    h_sum = float(hess[rows].sum())
    leaf = TreeNode(value=-g_sum / (h_sum + lam))
    if depth >= config.max_depth or rows.size < 2:
        return leaf
    gain, feature, threshold = _find_split(X, grad, hess, rows, lam, config.min_child_weight)
    if gain <= 0.0:
        return leaf
    mask = X[rows, feature] < threshold
    node = TreeNode(feature=feature, threshold=threshold)
    node.left = _build_tree(X, grad, hess, rows[mask], depth + 1, config)
    node.right = _build_tree(X, grad, hess, rows[~mask], depth + 1, config)
    return node


def _tree_margin(node: TreeNode, X) -> np.ndarray:
    out = np.empty(X.shape[0], dtype=np.float64)

    def walk(n: TreeNode, rows: np.ndarray) -> None:
        if n.is_leaf:
            out[rows] = n.value
            return
        mask = X[rows, n.feature] < n.threshold
        walk(n.left, rows[mask])
        walk(n.right, rows[~mask])

    walk(node, np.arange(X.shape[0]))
    return out


def _validate_features(X):
    if not np.isfinite(X).all():
        raise NonFiniteFeature("feature matrix contains non-finite values")


def train_gbt(X_train, y_train, X_valid=None, y_valid=None,
              config: GbtConfig = GbtConfig()) -> GbtEnsemble:
    X_train = np.asarray(X_train, dtype=np.float64)
    y_train = np.asarray(y_train, dtype=np.float64)
    _validate_features(X_train)
    classes = np.unique(y_train)
    if classes.size < 2:
        raise SingleClassTraining("training labels contain a single class")
    has_valid = X_valid is not None and y_valid is not None and len(y_valid) > 0
    if has_valid:
        X_valid = np.asarray(X_valid, dtype=np.float64)
        y_valid = np.asarray(y_valid, dtype=np.float64)
        _validate_features(X_valid)

    prevalence = float(y_train.mean())
    base_score = math.log(prevalence / (1.0 - prevalence))
    ensemble = GbtEnsemble(config=config, base_score=base_score, n_features=X_train.shape[1])

    margins = np.full(y_train.shape[0], base_score)
    valid_margins = np.full(y_valid.shape[0], base_score) if has_valid else None
    best_valid = math.inf
    best_round = 0
    all_rows = np.arange(X_train.shape[0])

    for round_index in range(1, config.num_rounds + 1):
        p = sigmoid(margins)
        grad = p - y_train
        hess = p * (1.0 - p)
        tree = _build_tree(X_train, grad, hess, all_rows, 0, config)
        ensemble.trees.append(tree)
        margins += config.learning_rate * _tree_margin(tree, X_train)
        entry = {"round": round_index, "train_loss": log_loss(y_train, sigmoid(margins))}
        if has_valid:
            valid_margins += config.learning_rate * _tree_margin(tree, X_valid)
            valid_loss = log_loss(y_valid, sigmoid(valid_margins))
            entry["valid_loss"] = valid_loss
            if valid_loss < best_valid:
                best_valid = valid_loss
                best_round = round_index
            elif round_index - best_round >= config.early_stop_rounds:
                ensemble.training_log.append(entry)
                break
        else:
            best_round = round_index
        ensemble.training_log.append(entry)

    ensemble.trees = ensemble.trees[:best_round]
    ensemble.best_round = best_round
    return ensemble


def predict_margin(ensemble: GbtEnsemble, X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != ensemble.n_features:
        raise DimensionMismatch(
            f"expected (n, {ensemble.n_features}) features, got {X.shape}"
        )
    _validate_features(X)
    margins = np.full(X.shape[0], ensemble.base_score)
    for tree in ensemble.trees:
        margins += ensemble.config.learning_rate * _tree_margin(tree, X)
    return margins


def predict_gbt(ensemble: GbtEnsemble, x) -> float:
    """Probability (strictly inside (0,1)) that a vector is positive-class."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != ensemble.n_features:
        raise DimensionMismatch(f"expected {ensemble.n_features} features, got {x.shape}")
    return float(predict_proba(ensemble, x[None, :])[0])


def predict_proba(ensemble: GbtEnsemble, X) -> np.ndarray:
    # saturated margins would round to exactly 0/1 in float64; keep the
    # advertised open interval
    return np.clip(sigmoid(predict_margin(ensemble, X)), 1e-15, 1.0 - 1e-15)
