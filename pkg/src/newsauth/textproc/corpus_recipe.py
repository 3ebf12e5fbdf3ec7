"""Recipe for the shipped tagger training corpus.

Sentences are generated from tag templates filled with lexicon words,
so every token's tag is correct by construction.  The shipped
``data/tagger_corpus.tsv`` and the pretrained ``data/tagger.model``
were produced by ``main`` below; rerunning it reproduces them
byte-identically.
"""

import argparse
import random
from pathlib import Path

from .lexicon import LEXICON

# each entry is either a bare tag (slot filled from the lexicon) or a
# fixed (token, tag) pair
TEMPLATES: list[list[str | tuple[str, str]]] = [
    ["DT", "NN", "VBD", "IN", "DT", "NN", (".", ".")],
    ["DT", "JJ", "NN", "VBZ", "DT", "JJ", "NN", (".", ".")],
    ["NNP", "VBD", "DT", "NN", "CC", "DT", "NN", (".", ".")],
    ["PRP", "MD", "VB", "DT", "NN", (".", ".")],
    ["DT", "NNS", "VBP", "RB", (".", ".")],
    ["WP", "VBZ", "DT", "NN", ("?", ".")],
    ["EX", "VBZ", "DT", "NN", "IN", "DT", "NN", (".", ".")],
    ["NNP", "POS", "NN", "VBD", "JJ", (".", ".")],
    ["DT", "JJS", "NN", "VBZ", "IN", "DT", "NN", (".", ".")],
    ["PRP", "VBD", "DT", "NN", "WDT", "VBZ", "JJ", (".", ".")],
    ["IN", "DT", "NN", (",", ","), "DT", "NN", "VBD", (".", ".")],
    ["DT", "NN", "VBZ", "JJR", "IN", "DT", "NN", (".", ".")],
    ["PRP", "RB", "VBP", "DT", "NNS", (".", ".")],
    ["NNP", "CC", "NNP", "VBD", "IN", "NNP", (".", ".")],
    ["DT", "NN", "MD", "RB", "VB", "DT", "NN", (".", ".")],
    ["WRB", "DT", "NN", "VBD", (",", ","), "PRP", "VBD", "RB", (".", ".")],
    ["PRP$", "NN", "VBZ", "JJ", "CC", "PRP$", "NNS", "VBP", "JJ", (".", ".")],
    ["CD", "NNS", "VBD", "IN", "DT", "NN", (".", ".")],
    ["DT", "NN", "VBD", ("``", "``"), "JJ", ("''", "''"), (".", ".")],
    ["PDT", "DT", "NNS", "VBP", "VBG", "RB", (".", ".")],
    [("It", "PRP"), ("'s", "VBZ"), "JJ", (".", ".")],
    [("They", "PRP"), ("do", "VBP"), ("n't", "RB"), "VB", "DT", "NN", (".", ".")],
    ["DT", "NN", (",", ","), "WDT", "VBD", "JJ", (",", ","), "VBD", "RB", (".", ".")],
    ["NNP", "VBZ", "VBG", "DT", "JJ", "NN", "IN", "NNP", (".", ".")],
    ["PRP", "VBD", "DT", "NN", "TO", "VB", "DT", "NN", (".", ".")],
    ["RB", (",", ","), "DT", "NN", "VBD", (".", ".")],
    ["DT", "NN", "VBN", "IN", "DT", "NN", "VBD", "JJ", (".", ".")],
    ["PRP", "MD", "VB", "JJR", "NNS", "IN", "DT", "NN", (".", ".")],
    ["WRB", "MD", "PRP", "VB", "DT", "NN", ("?", ".")],
    ["DT", "JJ", (",", ","), "JJ", "NN", "VBD", "DT", "NN", "IN", "DT", "NN", (".", ".")],
    ["NNS", "IN", "DT", "NN", "VBP", "JJ", (".", ".")],
    ["PRP", "VBZ", "IN", "VBG", "DT", "NN", (".", ".")],
    ["DT", "NN", "POS", "NN", "VBZ", "RB", "JJ", (".", ".")],
    ["NNP", "VBD", (":", ":"), ("``", "``"), "DT", "NN", "VBZ", "JJ", ("''", "''"), (".", ".")],
    ["CD", "IN", "DT", "NNS", "VBD", "DT", "NN", ("!", ".")],
    ["DT", "NN", "VBD", "RBR", "IN", "DT", "NN", (".", ".")],
    ["PRP", "VBP", "DT", "RBS", "JJ", "NN", "IN", "DT", "NN", (".", ".")],
    ["NNPS", "VBP", "DT", "NNS", "IN", "DT", "NN", (".", ".")],
    ["WP$", "NN", "VBD", "DT", "NN", ("?", ".")],
]

DEFAULT_SENTENCES = 700
DEFAULT_SEED = 20240601


def generate_sentence(template, rng: random.Random) -> list[tuple[str, str]]:
    sentence = []
    for slot in template:
        if isinstance(slot, tuple):
            sentence.append(slot)
        else:
            sentence.append((rng.choice(LEXICON[slot]), slot))
    token, tag = sentence[0]
    if token[:1].isalpha():
        sentence[0] = (token[0].upper() + token[1:], tag)
    return sentence


def generate_corpus(
    n_sentences: int = DEFAULT_SENTENCES, seed: int = DEFAULT_SEED
) -> list[list[tuple[str, str]]]:
    """Deterministic training corpus cycling through all templates."""
    rng = random.Random(seed)
    return [
        generate_sentence(TEMPLATES[i % len(TEMPLATES)], rng)
        for i in range(n_sentences)
    ]


def write_corpus(sentences: list[list[tuple[str, str]]], path: str | Path) -> None:
    lines = []
    for sentence in sentences:
        lines.extend(f"{token}\t{tag}" for token, tag in sentence)
        lines.append("")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True, help="output corpus path")
    parser.add_argument("--sentences", type=int, default=DEFAULT_SENTENCES)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = parser.parse_args(argv)
    write_corpus(generate_corpus(args.sentences, args.seed), args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
