"""News corpus ingestion, persistence, deterministic splitting and stats.

Articles live in line-delimited JSON (one object per line with id,
source, label, title, text) or CSV with a mandatory header.  Labels are
the strings "human" / "llm" on disk; "llm" is the positive class.
"""

from __future__ import annotations

import csv
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import (
    BadFractions,
    DuplicateId,
    EmptyText,
    ParseError,
    TooFewArticles,
    UnknownId,
)
from .textproc import tokenize

HUMAN = "human"
LLM = "llm"
LABELS = (HUMAN, LLM)

REQUIRED_FIELDS = ("id", "source", "label", "title", "text")

DEFAULT_FRACTIONS = (Fraction(70, 100), Fraction(15, 100), Fraction(15, 100))


def label_to_int(label: str) -> int:
    """Map a label to its class index (llm = positive = 1)."""
    if label == LLM:
        return 1
    if label == HUMAN:
        return 0
    raise ValueError(f"unknown label {label!r}")


@dataclass(frozen=True)
class NewsArticle:
    id: str
    source: str
    label: str
    title: str
    text: str
    word_count: int

    @classmethod
    def build(cls, id: str, source: str, label: str, title: str, text: str) -> "NewsArticle":
        """Validate fields and derive the token count."""
        if label not in LABELS:
            raise ValueError(f"label must be one of {LABELS}, got {label!r}")
        if not text.strip():
            raise EmptyText(f"article {id!r} has empty text")
        return cls(id=id, source=source, label=label, title=title, text=text,
                   word_count=len(tokenize(text)))


def _article_from_record(record: dict, line: int) -> NewsArticle:
    missing = [f for f in REQUIRED_FIELDS if f not in record or record[f] is None]
    if missing:
        raise ParseError(f"missing fields {missing}", line=line)
    try:
        return NewsArticle.build(
            id=str(record["id"]),
            source=str(record["source"]),
            label=str(record["label"]),
            title=str(record["title"]),
            text=str(record["text"]),
        )
    except ValueError as exc:
        raise ParseError(str(exc), line=line) from exc


def ingest(path: str | Path, format: str = "jsonl") -> list[NewsArticle]:
    """Load and validate articles; duplicate ids and empty texts are rejected."""
    path = Path(path)
    articles: list[NewsArticle] = []
    seen: set[str] = set()

    def add(article: NewsArticle, line: int) -> None:
        if article.id in seen:
            raise DuplicateId(f"line {line}: duplicate article id {article.id!r}")
        seen.add(article.id)
        articles.append(article)

    if format == "jsonl":
        with open(path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, start=1):
                if not raw.strip():
                    continue
                try:
                    record = json.loads(raw)
                except json.JSONDecodeError as exc:
                    raise ParseError(f"invalid JSON: {exc.msg}", line=lineno) from exc
                if not isinstance(record, dict):
                    raise ParseError("record must be a JSON object", line=lineno)
                add(_article_from_record(record, lineno), lineno)
    elif format == "csv":
        with open(path, encoding="utf-8", newline="") as handle:
            reader = csv.DictReader(handle)
            if reader.fieldnames is None or not set(REQUIRED_FIELDS) <= set(reader.fieldnames):
                raise ParseError(f"CSV header must contain {REQUIRED_FIELDS}", line=1)
            for record in reader:
                add(_article_from_record(record, reader.line_num), reader.line_num)
    else:
        raise ValueError(f"unknown corpus format {format!r}")
    return articles


def write_articles(articles: list[NewsArticle], path: str | Path) -> None:
    """Line-delimited JSON export; text round-trips byte-identically."""
    with open(path, "w", encoding="utf-8") as handle:
        for a in articles:
            record = {"id": a.id, "source": a.source, "label": a.label,
                      "title": a.title, "text": a.text}
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")


def _as_fraction(value) -> Fraction:
    # via str() so that e.g. float 0.7 means the decimal 7/10
    if isinstance(value, Fraction):
        return value
    return Fraction(str(value))


@dataclass(frozen=True)
class SplitManifest:
    train_ids: tuple[str, ...]
    validation_ids: tuple[str, ...]
    test_ids: tuple[str, ...]
    seed: int
    fractions: tuple[Fraction, Fraction, Fraction]

    @property
    def all_ids(self) -> frozenset[str]:
        return frozenset(self.train_ids) | frozenset(self.validation_ids) | frozenset(self.test_ids)

    def split_of(self, article_id: str) -> str:
        if article_id in set(self.train_ids):
            return "train"
        if article_id in set(self.validation_ids):
            return "validation"
        if article_id in set(self.test_ids):
            return "test"
        raise UnknownId(article_id)

    def save(self, path: str | Path) -> None:
        payload = {
            "seed": self.seed,
            "fractions": [str(f) for f in self.fractions],
            "train_ids": list(self.train_ids),
            "validation_ids": list(self.validation_ids),
            "test_ids": list(self.test_ids),
        }
        Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", "utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "SplitManifest":
        payload = json.loads(Path(path).read_text("utf-8"))
        fractions = tuple(Fraction(f) for f in payload["fractions"])
        return cls(
            train_ids=tuple(payload["train_ids"]),
            validation_ids=tuple(payload["validation_ids"]),
            test_ids=tuple(payload["test_ids"]),
            seed=payload["seed"],
            fractions=fractions,
        )


def split(
    articles: list[NewsArticle],
    fractions=DEFAULT_FRACTIONS,
    seed: int = 0,
) -> SplitManifest:
    """Shuffle under the seed, then assign contiguously.

    Sizes follow floor(train_fraction*N), floor(validation_fraction*N),
    remainder to test; fractions are treated as exact rationals so that
    e.g. N=1000 at 70% yields exactly 700.
    """
    fracs = tuple(_as_fraction(f) for f in fractions)
    if len(fracs) != 3 or any(f < 0 for f in fracs) or sum(fracs) != 1:
        raise BadFractions(f"fractions must be 3 non-negative rationals summing to 1, got {fractions}")
    if len(articles) < 3:
        raise TooFewArticles(f"need at least 3 articles, got {len(articles)}")
    ids = [a.id for a in articles]
    random.Random(seed).shuffle(ids)
    n = len(ids)
    n_train = math.floor(fracs[0] * n)
    n_valid = math.floor(fracs[1] * n)
    return SplitManifest(
        train_ids=tuple(ids[:n_train]),
        validation_ids=tuple(ids[n_train:n_train + n_valid]),
        test_ids=tuple(ids[n_train + n_valid:]),
        seed=seed,
        fractions=fracs,
    )


@dataclass(frozen=True)
class CorpusStats:
    """Token-count distribution of each split."""

    per_split: dict[str, dict[str, float]]

    def to_table(self) -> str:
        header = "split\tcount\tmin\tq1\tmedian\tq3\tmax"
        rows = [header]
        for name in ("train", "validation", "test"):
            s = self.per_split[name]
            rows.append(
                f"{name}\t{s['count']:.0f}\t{s['min']:.6g}\t{s['q1']:.6g}"
                f"\t{s['median']:.6g}\t{s['q3']:.6g}\t{s['max']:.6g}"
            )
        return "\n".join(rows) + "\n"


def stats(articles: list[NewsArticle], manifest: SplitManifest) -> CorpusStats:
    """Per-split size distribution (token counts via the package tokenizer)."""
    by_id = {a.id: a for a in articles}
    missing = manifest.all_ids - set(by_id)
    if missing:
        raise UnknownId(f"manifest references unknown ids: {sorted(missing)[:5]}")
    uncovered = set(by_id) - manifest.all_ids
    if uncovered:
        raise UnknownId(f"articles missing from manifest: {sorted(uncovered)[:5]}")
    per_split = {}
    for name, ids in (
        ("train", manifest.train_ids),
        ("validation", manifest.validation_ids),
        ("test", manifest.test_ids),
    ):
        counts = np.array([by_id[i].word_count for i in ids], dtype=np.float64)
        if counts.size == 0:
            per_split[name] = {k: float("nan") for k in ("count", "min", "q1", "median", "q3", "max")}
            per_split[name]["count"] = 0.0
            continue
        q0, q1, q2, q3, q4 = np.percentile(counts, [0, 25, 50, 75, 100])
        per_split[name] = {
            "count": float(counts.size),
            "min": float(q0), "q1": float(q1), "median": float(q2),
            "q3": float(q3), "max": float(q4),
        }
    return CorpusStats(per_split=per_split)
