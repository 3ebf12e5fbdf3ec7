"""Feed-forward classifier: two ReLU hidden layers into a sigmoid unit.

Forward pass and gradients are written out by hand; parameters live in
a flat name->array dict so the optimizer and the serializer stay
model-agnostic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch
from ..numerics import bce_from_logits, sigmoid


@dataclass(frozen=True)
class MlpConfig:
    n_inputs: int = 13
    hidden1: int = 16
    hidden2: int = 8


def _glorot(rng, fan_in, fan_out):
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


class MlpModel:
    def __init__(self, config: MlpConfig = MlpConfig()):
        self.config = config

    def init_params(self, seed: int) -> dict[str, np.ndarray]:
        rng = np.random.default_rng(seed)
        c = self.config
        return {
            "w1": _glorot(rng, c.n_inputs, c.hidden1),
            "b1": np.zeros(c.hidden1),
            "w2": _glorot(rng, c.hidden1, c.hidden2),
            "b2": np.zeros(c.hidden2),
            "w3": _glorot(rng, c.hidden2, 1).reshape(c.hidden2),
            "b3": np.zeros(1),
        }

    def _check_input(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.config.n_inputs:
            raise DimensionMismatch(
                f"expected (n, {self.config.n_inputs}) inputs, got {X.shape}"
            )
        return X

    def forward(self, params, X) -> np.ndarray:
        X = self._check_input(X)
        h1 = np.maximum(X @ params["w1"] + params["b1"], 0.0)
        h2 = np.maximum(h1 @ params["w2"] + params["b2"], 0.0)
        return h2 @ params["w3"] + params["b3"][0]

    logits = forward

    def predict_proba(self, params, X) -> np.ndarray:
        return sigmoid(self.logits(params, X))

    def loss_and_grads(self, params, X, y, masks=None):
        """Mean binary cross-entropy and its gradients for one batch."""
        X = self._check_input(X)
        y = np.asarray(y, dtype=np.float64)
        n = X.shape[0]

        z1 = X @ params["w1"] + params["b1"]
        h1 = np.maximum(z1, 0.0)
        z2 = h1 @ params["w2"] + params["b2"]
        h2 = np.maximum(z2, 0.0)
        logits = h2 @ params["w3"] + params["b3"][0]
        loss = bce_from_logits(logits, y)

        dlogits = (sigmoid(logits) - y) / n
        grads = {
            "w3": h2.T @ dlogits,
            "b3": np.array([dlogits.sum()]),
        }
        dh2 = np.outer(dlogits, params["w3"])
        dz2 = dh2 * (z2 > 0.0)
        grads["w2"] = h1.T @ dz2
        grads["b2"] = dz2.sum(axis=0)
        dh1 = dz2 @ params["w2"].T
        dz1 = dh1 * (z1 > 0.0)
        grads["w1"] = X.T @ dz1
        grads["b1"] = dz1.sum(axis=0)
        return loss, grads


def mlp_forward(params, vector) -> float:
    """Probability for a single 13-feature vector."""
    vector = np.asarray(vector, dtype=np.float64)
    if vector.ndim != 1:
        raise DimensionMismatch(f"expected a flat vector, got shape {vector.shape}")
    config = MlpConfig(
        n_inputs=params["w1"].shape[0],
        hidden1=params["w1"].shape[1],
        hidden2=params["w2"].shape[1],
    )
    return float(MlpModel(config).predict_proba(params, vector[None, :])[0])
