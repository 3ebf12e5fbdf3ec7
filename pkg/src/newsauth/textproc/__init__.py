"""Tokenization, sentence segmentation and part-of-speech tagging."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .sentences import split_sentences
from .tagger import TaggerModel, accuracy, read_tagged_corpus, tag, train_tagger
from .tokenizer import tokenize, tokenize_sentence

__all__ = [
    "TaggedDocument",
    "TaggerModel",
    "accuracy",
    "analyze",
    "default_tagger",
    "read_tagged_corpus",
    "split_sentences",
    "tag",
    "tokenize",
    "tokenize_sentence",
    "train_tagger",
]


@dataclass(frozen=True)
class TaggedDocument:
    """Tokens with aligned tags and contiguous sentence spans."""

    tokens: tuple[str, ...]
    tags: tuple[str, ...]
    sentence_bounds: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.tokens) != len(self.tags):
            raise ValueError("tokens and tags must align")
        expected_start = 0
        for start, end in self.sentence_bounds:
            if start != expected_start or end <= start:
                raise ValueError("sentence bounds must partition the token range")
            expected_start = end
        if expected_start != len(self.tokens):
            raise ValueError("sentence bounds must cover all tokens")

    @property
    def n_sentences(self) -> int:
        return len(self.sentence_bounds)


def analyze(text: str, model: TaggerModel | None = None) -> TaggedDocument:
    """Sentence-split, tokenize and tag raw text into a TaggedDocument."""
    if model is None:
        model = default_tagger()
    tokens: list[str] = []
    tags: list[str] = []
    bounds: list[tuple[int, int]] = []
    for sentence in split_sentences(text):
        sentence_tokens = tokenize_sentence(sentence)
        if not sentence_tokens:
            continue
        start = len(tokens)
        tokens.extend(sentence_tokens)
        tags.extend(tag(model, sentence_tokens))
        bounds.append((start, len(tokens)))
    return TaggedDocument(tuple(tokens), tuple(tags), tuple(bounds))


@lru_cache(maxsize=1)
def default_tagger() -> TaggerModel:
    """The pretrained model shipped with the package."""
    data = resources.files(__package__) / "data" / "tagger.model"
    with resources.as_file(data) as path:
        return TaggerModel.load(path)
