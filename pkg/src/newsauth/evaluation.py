"""Evaluation reports and the model-vs-baseline comparison table.

Classification threshold is 0.5 with ties going to the positive (llm)
class.  The comparison table always renders the published baseline
accuracies as static reference rows next to this run's numbers; those
constants are display-only and never asserted against.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import LLM, label_to_int
from .errors import SplitLeakage

# published baseline accuracies rendered as reference rows
REFERENCE_ACCURACIES = (
    ("bilstm", 0.9157),
    ("mlp", 0.8315),
    ("gbt", 0.8105),
    ("humans", 0.5778),
)

THRESHOLD = 0.5


def classify(probability: float) -> int:
    """Ties at the threshold go to the positive class."""
    return 1 if probability >= THRESHOLD else 0


@dataclass(frozen=True)
class EvalReport:
    model_name: str
    accuracy: float
    confusion: dict[str, int]  # tp/fp/tn/fn with llm as positive
    predictions: tuple[dict, ...]
    fingerprint: str
    seed: int
    config: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "model": self.model_name,
            "accuracy": self.accuracy,
            "confusion": self.confusion,
            "fingerprint": self.fingerprint,
            "seed": self.seed,
            "config": self.config,
            "predictions": list(self.predictions),
        }
        return json.dumps(payload, sort_keys=True, indent=1) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), "utf-8")


def fingerprint_file(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def evaluate(
    model_name: str,
    probabilities,
    test_ids: list[str],
    labels: list[str],
    manifest=None,
    fingerprint: str = "",
    seed: int = 0,
    config: dict | None = None,
) -> EvalReport:
    """Score per-article probabilities against true labels.

    When a manifest is given, any test id that also appears in its train
    or validation sets raises SplitLeakage before anything is scored.
    """
    if manifest is not None:
        leaked = set(test_ids) & (set(manifest.train_ids) | set(manifest.validation_ids))
        if leaked:
            raise SplitLeakage(f"test ids present in training manifest: {sorted(leaked)[:5]}")
    probabilities = np.asarray(probabilities, dtype=np.float64)
    y = np.array([label_to_int(label) for label in labels])
    predicted = np.array([classify(p) for p in probabilities])
    tp = int(np.sum((predicted == 1) & (y == 1)))
    tn = int(np.sum((predicted == 0) & (y == 0)))
    fp = int(np.sum((predicted == 1) & (y == 0)))
    fn = int(np.sum((predicted == 0) & (y == 1)))
    predictions = tuple(
        {
            "id": article_id,
            "label": label,
            "probability": float(p),
            "predicted": LLM if guess == 1 else "human",
        }
        for article_id, label, p, guess in zip(test_ids, labels, probabilities, predicted)
    )
    return EvalReport(
        model_name=model_name,
        accuracy=(tp + tn) / len(test_ids),
        confusion={"tp": tp, "fp": fp, "tn": tn, "fn": fn},
        predictions=predictions,
        fingerprint=fingerprint,
        seed=seed,
        config=config or {},
    )


def recount_accuracy(report: EvalReport) -> float:
    """Recompute accuracy from the stored per-article predictions."""
    correct = sum(p["label"] == p["predicted"] for p in report.predictions)
    return correct / len(report.predictions)


def comparison_table(reports: list[EvalReport]) -> str:
    """Tab-separated accuracy table: this run's models plus reference rows."""
    lines = ["model\taccuracy\tsource"]
    for report in reports:
        lines.append(f"{report.model_name}\t{report.accuracy:.4f}\tthis run")
    for name, accuracy in REFERENCE_ACCURACIES:
        lines.append(f"{name}\t{accuracy:.4f}\treference")
    return "\n".join(lines) + "\n"
