"""Treebank-style word tokenizer.

Reimplementation of Robert McIntyre's classic tokenizer.sed rule set:
most punctuation is split into separate tokens, double quotes become
paired `` / '' tokens, and English contractions are split into their
component morphemes (do n't, she 'll, cat 's, ...).

The sed rules assume one sentence at a time (the final-period rule is
anchored at end of input), so :func:`tokenize` first runs the sentence
splitter and tokenizes each sentence independently.
"""

import re

from .sentences import split_sentences

_STARTING_QUOTES = [
    (re.compile(r'^"'), r"``"),
    (re.compile(r"(``)"), r" \1 "),
    (re.compile(r"([ (\[{<])(\"|\'{2})"), r"\1 `` "),
]

_PUNCTUATION = [
    (re.compile(r"([:,])([^\d])"), r" \1 \2"),
    (re.compile(r"([:,])$"), r" \1 "),
    (re.compile(r"\.\.\."), r" ... "),
    (re.compile(r"[;@#$%&]"), r" \g<0> "),
    # final sentence period, keeping abbreviation dots ("U.S.") intact
    (re.compile(r'([^\.])(\.)([\]\)}>"\']*)\s*$'), r"\1 \2\3 "),
    (re.compile(r"[?!]"), r" \g<0> "),
    (re.compile(r"([^'])' "), r"\1 ' "),
]

_PARENS_BRACKETS = [
    (re.compile(r"[\]\[\(\)\{\}\<\>]"), r" \g<0> "),
    (re.compile(r"--"), r" -- "),
]

_ENDING_QUOTES = [
    (re.compile(r'"'), " '' "),
    (re.compile(r"(\S)(\'\')"), r"\1 \2 "),
    (re.compile(r"([^' ])('[sS]|'[mM]|'[dD]|') "), r"\1 \2 "),
    (re.compile(r"([^' ])('ll|'LL|'re|'RE|'ve|'VE|n't|N'T) "), r"\1 \2 "),
]

_CONTRACTIONS = [
    re.compile(r"(?i)\b(can)(not)\b"),
    re.compile(r"(?i)\b(d)('ye)\b"),
    re.compile(r"(?i)\b(gim)(me)\b"),
    re.compile(r"(?i)\b(gon)(na)\b"),
    re.compile(r"(?i)\b(got)(ta)\b"),
    re.compile(r"(?i)\b(lem)(me)\b"),
    re.compile(r"(?i)\b(mor)('n)\b"),
    re.compile(r"(?i)\b(wan)(na) "),
    re.compile(r"(?i) ('t)(is)\b"),
    re.compile(r"(?i) ('t)(was)\b"),
]


def tokenize_sentence(sentence: str) -> list[str]:
    """Tokenize a single sentence with the Treebank rules."""
    text = sentence
    for pattern, sub in _STARTING_QUOTES:
        text = pattern.sub(sub, text)
    for pattern, sub in _PUNCTUATION:
        text = pattern.sub(sub, text)
    for pattern, sub in _PARENS_BRACKETS:
        text = pattern.sub(sub, text)
    text = " " + text + " "
    for pattern, sub in _ENDING_QUOTES:
        text = pattern.sub(sub, text)
    for pattern in _CONTRACTIONS:
        text = pattern.sub(r" \1 \2 ", text)
    return text.split()


def tokenize(text: str) -> list[str]:
    """Tokenize running text; empty or whitespace-only input gives []."""
    if not text.strip():
        return []
    tokens: list[str] = []
    for sentence in split_sentences(text):
        tokens.extend(tokenize_sentence(sentence))
    return tokens
