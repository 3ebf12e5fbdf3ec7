"""Mini-batch training loop shared by the feed-forward and BiLSTM models."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DivergenceDetected, SingleClassTraining
from ..numerics import bce_from_logits
from .optim import Adam


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 1e-3
    batch_size: int = 32
    epochs: int = 50
    patience: int = 5
    seed: int = 0

    def __post_init__(self):
        if min(self.learning_rate, self.batch_size, self.epochs, self.patience) <= 0:
            raise ValueError("all training settings must be positive")


def _evaluate(model, params, X, y) -> tuple[float, float]:
    logits = model.forward(params, X) if hasattr(model, "forward") else model.logits(params, X)
    loss = bce_from_logits(logits, y)
    predicted = (logits >= 0.0).astype(np.float64)  # sigmoid(0) = 0.5 ties go positive
    return loss, float(np.mean(predicted == np.asarray(y, dtype=np.float64)))


def train_model(model, X_train, y_train, X_valid=None, y_valid=None,
                config: TrainConfig = TrainConfig()):
    """Adam-optimized training with early stopping on validation loss.

    Returns (params, log); params are the best-validation-loss snapshot
    when a validation set is given, otherwise the final parameters.
    """
    y_train = np.asarray(y_train, dtype=np.float64)
    if np.unique(y_train).size < 2:
        raise SingleClassTraining("training labels contain a single class")
    has_valid = X_valid is not None and y_valid is not None and len(y_valid) > 0

    rng = np.random.default_rng(config.seed)
    params = model.init_params(seed=config.seed)
    optimizer = Adam(params, learning_rate=config.learning_rate)
    uses_masks = hasattr(model, "make_masks")

    n = len(y_train)
    best_loss = math.inf
    best_params = None
    epochs_since_best = 0
    log: list[dict] = []

    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(n)
        total_loss = 0.0
        for start in range(0, n, config.batch_size):
            batch = order[start:start + config.batch_size]
            masks = model.make_masks(rng, batch.size) if uses_masks else None
            loss, grads = model.loss_and_grads(
                params, X_train[batch], y_train[batch], masks=masks
            )
            if not math.isfinite(loss):
                raise DivergenceDetected(f"non-finite training loss at epoch {epoch}")
            total_loss += loss * batch.size
            optimizer.step(params, grads)
        entry = {"epoch": epoch, "train_loss": total_loss / n}

        if has_valid:
            valid_loss, valid_accuracy = _evaluate(model, params, X_valid, y_valid)
            if not math.isfinite(valid_loss):
                raise DivergenceDetected(f"non-finite validation loss at epoch {epoch}")
            entry["valid_loss"] = valid_loss
            entry["valid_accuracy"] = valid_accuracy
            log.append(entry)
            if valid_loss < best_loss:
                best_loss = valid_loss
                best_params = {k: v.copy() for k, v in params.items()}
                epochs_since_best = 0
            else:
                epochs_since_best += 1
                if epochs_since_best >= config.patience:
                    break
        else:
            log.append(entry)

    if has_valid and best_params is not None:
        params = best_params
    return params, log
