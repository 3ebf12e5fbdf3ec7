"""Fixed-length integer encodings of POS-tag sequences.

Index 0 is reserved for left padding and 1 for tags unseen during
vocabulary construction; real tags are numbered from 2 in first
occurrence order over the training split.  Sequences shorter than the
target length are padded with zeros on the left; longer ones keep their
final ``length`` tags.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyDocument, EmptyTrainingSet
from .textproc import TaggedDocument

PAD_INDEX = 0
UNKNOWN_INDEX = 1
DEFAULT_LENGTH = 200


@dataclass(frozen=True)
class TagVocabulary:
    index: dict[str, int]

    def __len__(self) -> int:
        return len(self.index)

    @property
    def size_with_reserved(self) -> int:
        return len(self.index) + 2

    def save(self, path: str | Path) -> None:
        ordered = sorted(self.index.items(), key=lambda kv: kv[1])
        Path(path).write_text(json.dumps({"tags": [t for t, _ in ordered]}) + "\n", "utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "TagVocabulary":
        tags = json.loads(Path(path).read_text("utf-8"))["tags"]
        return cls({tag: i + 2 for i, tag in enumerate(tags)})


@dataclass(frozen=True)
class TagSequence:
    values: tuple[int, ...]
    article_id: str
    label: str


def build_vocab(train_docs: list[TaggedDocument]) -> TagVocabulary:
    """Tags indexed from 2 in first-occurrence order over the training docs."""
    if not train_docs:
        raise EmptyTrainingSet("vocabulary needs at least one training document")
    index: dict[str, int] = {}
    for doc in train_docs:
        for tag in doc.tags:
            if tag not in index:
                index[tag] = len(index) + 2
    return TagVocabulary(index)


def encode(
    vocab: TagVocabulary,
    doc: TaggedDocument,
    article_id: str = "",
    label: str = "",
    length: int = DEFAULT_LENGTH,
) -> TagSequence:
    """Left-zero-padded, tail-keeping, fixed-length integer encoding."""
    if not doc.tags:
        raise EmptyDocument("cannot encode a document without tags")
    encoded = [vocab.index.get(tag, UNKNOWN_INDEX) for tag in doc.tags]
    if len(encoded) > length:
        encoded = encoded[-length:]
    else:
        encoded = [PAD_INDEX] * (length - len(encoded)) + encoded
    return TagSequence(tuple(encoded), article_id, label)


def write_sequences(sequences: list[TagSequence], path: str | Path) -> None:
    """One JSON record per line: {id, label, values}."""
    with open(path, "w", encoding="utf-8") as handle:
        for seq in sequences:
            handle.write(json.dumps(
                {"id": seq.article_id, "label": seq.label, "values": list(seq.values)}
            ) + "\n")


def read_sequences(path: str | Path) -> list[TagSequence]:
    sequences = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                record = json.loads(line)
                sequences.append(TagSequence(tuple(record["values"]), record["id"], record["label"]))
    return sequences
