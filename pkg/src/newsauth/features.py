"""Stylometric feature vectors: 13 lexical/syntactic statistics per document.

Feature order is fixed: punctuation ratio, stopword ratio, average
tokens per sentence, average token length, then nine part-of-speech
class ratios (adjective, noun, conjunction, preposition, adverb, WH,
modal, determiner, verb).  All POS ratios share the total tag count as
denominator, so their sum never exceeds 1.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import isfinite
from pathlib import Path

import numpy as np

from .errors import EmptyDocument, TooFewVectors
from .textproc import TaggedDocument

FEATURE_NAMES = (
    "punctuation_ratio",
    "stopword_ratio",
    "avg_tokens_per_sentence",
    "avg_token_length",
    "adjective_ratio",
    "noun_ratio",
    "conjunction_ratio",
    "preposition_ratio",
    "adverb_ratio",
    "wh_ratio",
    "modal_ratio",
    "determiner_ratio",
    "verb_ratio",
)

N_FEATURES = len(FEATURE_NAMES)

# the 32 ASCII punctuation characters; a token counts as punctuation
# only when every character belongs to this set
PUNCTUATION_CHARS = frozenset(string.punctuation)

TAG_CLASSES: dict[str, frozenset[str]] = {
    "adjective_ratio": frozenset({"JJ", "JJR", "JJS"}),
    "noun_ratio": frozenset({"NN", "NNS", "NNP", "NNPS"}),
    "conjunction_ratio": frozenset({"CC"}),
    "preposition_ratio": frozenset({"IN"}),
    "adverb_ratio": frozenset({"RB", "RBR", "RBS"}),
    "wh_ratio": frozenset({"WDT", "WP", "WP$", "WRB"}),
    "modal_ratio": frozenset({"MD"}),
    "determiner_ratio": frozenset({"DT", "PDT"}),
    "verb_ratio": frozenset({"VB", "VBD", "VBG", "VBN", "VBP", "VBZ"}),
}


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    """The shipped closed English stopword list (matched case-insensitively)."""
    text = (resources.files(__package__) / "textproc" / "data" / "stopwords.txt").read_text("utf-8")
    return frozenset(
        line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")
    )


@dataclass(frozen=True)
class FeatureVector:
    values: tuple[float, ...]
    article_id: str
    label: str

    def __post_init__(self):
        if len(self.values) != N_FEATURES:
            raise ValueError(f"expected {N_FEATURES} features, got {len(self.values)}")
        if not all(isfinite(v) for v in self.values):
            raise ValueError("feature values must be finite")


def is_punctuation_token(token: str) -> bool:
    return bool(token) and all(ch in PUNCTUATION_CHARS for ch in token)


def extract(doc: TaggedDocument, article_id: str = "", label: str = "") -> FeatureVector:
    """Compute the 13 features of a tagged document."""
    n_tokens = len(doc.tokens)
    if n_tokens == 0 or doc.n_sentences == 0:
        raise EmptyDocument("cannot featurize a document without tokens or sentences")
    stops = stopwords()
    punct = sum(is_punctuation_token(t) for t in doc.tokens)
    stop = sum(t.lower() in stops for t in doc.tokens)
    chars = sum(len(t) for t in doc.tokens)
    values = [
        punct / n_tokens,
        stop / n_tokens,
        n_tokens / doc.n_sentences,
        chars / n_tokens,
    ]
    n_tags = len(doc.tags)
    for name in FEATURE_NAMES[4:]:
        members = TAG_CLASSES[name]
        values.append(sum(t in members for t in doc.tags) / n_tags)
    return FeatureVector(tuple(values), article_id, label)


@dataclass(frozen=True)
class FeatureScaler:
    """Per-feature min-max bounds fitted on the training split only."""

    mins: tuple[float, ...]
    maxs: tuple[float, ...]


def fit_scaler(train_vectors: list[FeatureVector]) -> FeatureScaler:
    if len(train_vectors) < 2:
        raise TooFewVectors("scaler needs at least 2 training vectors")
    matrix = np.array([v.values for v in train_vectors], dtype=np.float64)
    return FeatureScaler(tuple(matrix.min(axis=0)), tuple(matrix.max(axis=0)))


def apply_scaler(scaler: FeatureScaler, vector: FeatureVector) -> FeatureVector:
    """Scale into [0, 1]; out-of-range values clip, degenerate features map to 0.5."""
    scaled = []
    for value, lo, hi in zip(vector.values, scaler.mins, scaler.maxs):
        if hi == lo:
            scaled.append(0.5)
        else:
            scaled.append(min(1.0, max(0.0, (value - lo) / (hi - lo))))
    return FeatureVector(tuple(scaled), vector.article_id, vector.label)


def to_matrix(vectors: list[FeatureVector]) -> tuple[np.ndarray, np.ndarray]:
    """Stack vectors into (X, y) with llm mapped to 1."""
    from .corpus import label_to_int

    X = np.array([v.values for v in vectors], dtype=np.float64)
    y = np.array([label_to_int(v.label) for v in vectors], dtype=np.float64)
    return X, y


def write_matrix(vectors: list[FeatureVector], path: str | Path) -> None:
    """Tab-separated export: 13 feature columns plus id and label."""
    lines = ["\t".join(FEATURE_NAMES + ("id", "label"))]
    for v in vectors:
        lines.append("\t".join([f"{x:.12g}" for x in v.values] + [v.article_id, v.label]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_matrix(path: str | Path) -> list[FeatureVector]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    header = tuple(lines[0].split("\t"))
    if header != FEATURE_NAMES + ("id", "label"):
        raise ValueError(f"{path}: unexpected feature matrix header")
    vectors = []
    for line in lines[1:]:
        parts = line.split("\t")
        vectors.append(
            FeatureVector(tuple(float(x) for x in parts[:N_FEATURES]), parts[-2], parts[-1])
        )
    return vectors
