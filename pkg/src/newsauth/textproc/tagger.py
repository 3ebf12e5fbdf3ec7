"""Greedy averaged-perceptron part-of-speech tagger.

Training walks each sentence left to right, scores every known tag for
the current token from sparse context features (word shape, 1-3 char
suffixes, the two previously *predicted* tags, and the surrounding
words), and on a wrong guess moves weight from the guessed tag to the
gold tag.  The shipped weights are the per-step average of the weight
vector over the whole training run, which is what makes the greedy
decoder stable on held-out text.

Ties are broken toward the lexicographically smallest tag so that
training and tagging are fully deterministic.
"""

from __future__ import annotations

import random
import struct
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import CorpusFormatError, EmptyCorpus, ModelNotLoaded

MODEL_MAGIC = b"NAPT"
MODEL_VERSION = 1

_START_TAG = "-START-"
_START2_TAG = "-START2-"
_START_WORD = "-START-"
_END_WORD = "-END-"


def word_shape(word: str) -> str:
    """Collapse a word to an X/x/d pattern ("Hello" -> "Xx")."""
    shape = []
    for ch in word:
        if ch.isupper():
            code = "X"
        elif ch.islower():
            code = "x"
        elif ch.isdigit():
            code = "d"
        else:
            code = ch
        if not shape or shape[-1] != code:
            shape.append(code)
    return "".join(shape)


def context_features(tokens: list[str], i: int, prev_tag: str, prev2_tag: str) -> list[str]:
    """Feature strings for position i given the two previous tag guesses."""
    word = tokens[i]
    lower = word.lower()
    prev_word = tokens[i - 1].lower() if i > 0 else _START_WORD
    next_word = tokens[i + 1].lower() if i + 1 < len(tokens) else _END_WORD
    return [
        "bias",
        f"word={lower}",
        f"suffix1={lower[-1:]}",
        f"suffix2={lower[-2:]}",
        f"suffix3={lower[-3:]}",
        f"shape={word_shape(word)}",
        f"prev_tag={prev_tag}",
        f"prev2_tag={prev2_tag}",
        f"prev_word={prev_word}",
        f"next_word={next_word}",
    ]


@dataclass
class TaggerModel:
    """Averaged feature weights plus the tag vocabulary."""

    weights: dict[str, dict[str, float]] = field(default_factory=dict)
    tags: list[str] = field(default_factory=list)
    version: int = MODEL_VERSION

    def score(self, features: list[str]) -> dict[str, float]:
        scores = dict.fromkeys(self.tags, 0.0)
        for feature in features:
            for tag, weight in self.weights.get(feature, {}).items():
                scores[tag] += weight
        return scores

    def predict(self, features: list[str]) -> str:
        scores = self.score(features)
        return min(scores, key=lambda tag: (-scores[tag], tag))

    def save(self, path: str | Path) -> None:
        """Write the length-prefixed binary model file."""
        out = bytearray()
        out += MODEL_MAGIC
        out += struct.pack("<I", self.version)
        out += struct.pack("<I", len(self.tags))
        for tag in self.tags:
            raw = tag.encode("utf-8")
            out += struct.pack("<I", len(raw)) + raw
        tag_index = {tag: k for k, tag in enumerate(self.tags)}
        entries = [
            (feature, tag, weight)
            for feature, per_tag in self.weights.items()
            for tag, weight in per_tag.items()
            if weight != 0.0
        ]
        entries.sort(key=lambda e: (e[0], e[1]))
        out += struct.pack("<Q", len(entries))
        for feature, tag, weight in entries:
            raw = feature.encode("utf-8")
            out += struct.pack("<I", len(raw)) + raw
            out += struct.pack("<I", tag_index[tag])
            out += struct.pack("<d", weight)
        Path(path).write_bytes(bytes(out))

    @classmethod
    def load(cls, path: str | Path) -> "TaggerModel":
        data = Path(path).read_bytes()
        if data[:4] != MODEL_MAGIC:
            raise ModelNotLoaded(f"{path}: not a tagger model file")
        offset = 4
        version, tag_count = struct.unpack_from("<II", data, offset)
        offset += 8
        if version != MODEL_VERSION:
            raise ModelNotLoaded(f"{path}: unsupported model version {version}")
        tags = []
        for _ in range(tag_count):
            (length,) = struct.unpack_from("<I", data, offset)
            offset += 4
            tags.append(data[offset:offset + length].decode("utf-8"))
            offset += length
        (entry_count,) = struct.unpack_from("<Q", data, offset)
        offset += 8
        weights: dict[str, dict[str, float]] = {}
        for _ in range(entry_count):
            (length,) = struct.unpack_from("<I", data, offset)
            offset += 4
            feature = data[offset:offset + length].decode("utf-8")
            offset += length
            tag_idx, weight = struct.unpack_from("<Id", data, offset)
            offset += 12
            weights.setdefault(feature, {})[tags[tag_idx]] = weight
        return cls(weights=weights, tags=tags, version=version)


def read_tagged_corpus(path: str | Path) -> list[list[tuple[str, str]]]:
    """Parse a token<TAB>tag file with blank lines between sentences."""
    sentences: list[list[tuple[str, str]]] = []
    current: list[tuple[str, str]] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                if current:
                    sentences.append(current)
                    current = []
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise CorpusFormatError("expected token<TAB>tag", line=lineno)
            current.append((parts[0], parts[1]))
    if current:
        sentences.append(current)
    if not sentences:
        raise EmptyCorpus(f"{path}: no tagged sentences")
    return sentences


class _AveragingWeights:
    """Perceptron weights with lazily maintained per-step running sums.

    The averaged value of a weight is the mean of its value after each
    of the 1..total_steps token steps.
    """

    def __init__(self):
        self.current: dict[str, dict[str, float]] = {}
        self._totals: dict[tuple[str, str], float] = {}
        self._stamps: dict[tuple[str, str], int] = {}

    def add(self, feature: str, tag: str, delta: float, step: int) -> None:
        per_tag = self.current.setdefault(feature, {})
        old = per_tag.get(tag, 0.0)
        key = (feature, tag)
        # old value was in effect from its stamp up to the previous step
        self._totals[key] = self._totals.get(key, 0.0) + old * (step - self._stamps.get(key, 1))
        self._stamps[key] = step
        per_tag[tag] = old + delta

    def averaged(self, total_steps: int) -> dict[str, dict[str, float]]:
        result: dict[str, dict[str, float]] = {}
        for feature, per_tag in self.current.items():
            for tag, weight in per_tag.items():
                key = (feature, tag)
                total = self._totals.get(key, 0.0)
                total += weight * (total_steps - self._stamps.get(key, 1) + 1)
                value = total / total_steps
                if value != 0.0:
                    result.setdefault(feature, {})[tag] = value
        return result


def train_tagger(
    corpus: str | Path | list[list[tuple[str, str]]],
    iterations: int = 5,
    seed: int = 1,
) -> TaggerModel:
    """Train on a tagged corpus (path or in-memory sentences)."""
    if isinstance(corpus, (str, Path)):
        sentences = read_tagged_corpus(corpus)
    else:
        sentences = list(corpus)
    if not sentences:
        raise EmptyCorpus("no tagged sentences")

    tags = sorted({tag for sentence in sentences for _, tag in sentence})
    model = TaggerModel(tags=tags)
    weights = _AveragingWeights()
    model.weights = weights.current

    rng = random.Random(seed)
    order = list(range(len(sentences)))
    step = 0
    for _ in range(iterations):
        rng.shuffle(order)
        for index in order:
            sentence = sentences[index]
            tokens = [token for token, _ in sentence]
            prev_tag, prev2_tag = _START_TAG, _START2_TAG
            for i, (_, gold) in enumerate(sentence):
                step += 1
                features = context_features(tokens, i, prev_tag, prev2_tag)
                guess = model.predict(features)
                if guess != gold:
                    for feature in features:
                        weights.add(feature, gold, +1.0, step)
                        weights.add(feature, guess, -1.0, step)
                prev2_tag, prev_tag = prev_tag, guess

    model.weights = weights.averaged(step)
    return model


def tag(model: TaggerModel, tokens: list[str]) -> list[str]:
    """Assign one tag per token, greedily left to right."""
    if model is None or not model.tags:
        raise ModelNotLoaded("tagger model is empty")
    result: list[str] = []
    prev_tag, prev2_tag = _START_TAG, _START2_TAG
    for i in range(len(tokens)):
        guess = model.predict(context_features(tokens, i, prev_tag, prev2_tag))
        result.append(guess)
        prev2_tag, prev_tag = prev_tag, guess
    return result


def accuracy(model: TaggerModel, sentences: list[list[tuple[str, str]]]) -> float:
    """Token-level tagging accuracy on already-tagged sentences."""
    correct = 0
    total = 0
    for sentence in sentences:
        tokens = [token for token, _ in sentence]
        predicted = tag(model, tokens)
        for (_, gold), guess in zip(sentence, predicted):
            correct += guess == gold
            total += 1
    return correct / total if total else 0.0
