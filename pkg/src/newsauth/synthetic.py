"""Synthetic benchmark corpus: two writing styles with disjoint signatures.

Style A ("human" class) writes long, determiner- and adjective-heavy
sentences with commas; style B ("llm" class) writes short, emphatic
sentences full of pronouns, modals and adverbs.  The styles therefore
separate on punctuation ratio, stopword ratio, sentence length and
several POS-class ratios at once, and their tag sequences follow
clearly different grammars.
"""

from __future__ import annotations

import random

from .corpus import HUMAN, LLM, NewsArticle
from .textproc.lexicon import LEXICON

# sentence templates as tag lists; final punctuation is part of the template
_STYLE_A_TEMPLATES = [
    ["DT", "JJ", "NN", "IN", "DT", "JJ", "NN", "VBD", "DT", "JJ", "NN", "."],
    ["DT", "NN", "IN", "DT", "NN", ",", "DT", "JJ", "NN", ",", "VBD", "DT", "NN", "."],
    ["DT", "JJ", ",", "JJ", "NN", "VBD", "IN", "DT", "NN", "IN", "DT", "NN", "."],
    ["DT", "NN", "POS", "NN", "IN", "DT", "JJ", "NN", "VBD", "DT", "NN", "."],
    ["IN", "DT", "JJ", "NN", ",", "DT", "NN", "VBD", "DT", "JJ", "NN", "."],
    ["DT", "JJS", "NN", "IN", "DT", "NN", "VBD", "DT", "JJ", "NN", "IN", "DT", "NN", "."],
    ["DT", "NN", "CC", "DT", "NN", "VBD", "IN", "DT", "JJ", "NN", "."],
    ["DT", "JJ", "NN", "VBN", "IN", "DT", "NN", "VBD", "JJR", "IN", "DT", "NN", "."],
]

_STYLE_B_TEMPLATES = [
    ["PRP", "MD", "RB", "VB", "NNS", "!"],
    ["NNP", "RB", "VBZ", "VBG", "NNS", "!"],
    ["PRP", "RB", "VBP", "RB", "!"],
    ["WRB", "MD", "PRP", "VB", "?"],
    ["PRP", "MD", "VB", "RB", "!"],
    ["NNP", "VBZ", "RB", "!"],
    ["PRP", "RB", "VBZ", "NNS", "!"],
    ["WP", "VBZ", "RB", "VBG", "?"],
]

_TITLE_TAGS = ["JJ", "NN", "NNS"]


def _sentence(template: list[str], rng: random.Random) -> str:
    tokens = []
    for tag in template:
        if tag in {".", "!", "?", ",", ":"}:
            tokens.append(tag)
        else:
            tokens.append(rng.choice(LEXICON[tag]))
    if tokens[0][:1].isalpha():
        tokens[0] = tokens[0][0].upper() + tokens[0][1:]
    text = ""
    for token in tokens:
        if token in {".", "!", "?", ",", ":"}:
            text += token
        else:
            text = f"{text} {token}" if text else token
    return text


def _article_text(style: str, rng: random.Random) -> str:
    if style == "a":
        templates = _STYLE_A_TEMPLATES
        n_sentences = rng.randint(8, 13)
    else:
        templates = _STYLE_B_TEMPLATES
        n_sentences = rng.randint(18, 28)
    return " ".join(_sentence(rng.choice(templates), rng) for _ in range(n_sentences))


def make_synthetic_corpus(n_articles: int = 1000, seed: int = 7) -> list[NewsArticle]:
    """Half style-A articles labelled human, half style-B labelled llm."""
    rng = random.Random(seed)
    articles = []
    n_human = n_articles // 2
    for k in range(n_articles):
        style = "a" if k < n_human else "b"
        label = HUMAN if style == "a" else LLM
        title = " ".join(rng.choice(LEXICON[t]) for t in _TITLE_TAGS).capitalize()
        articles.append(
            NewsArticle.build(
                id=f"syn-{style}-{k:04d}",
                source=f"synthetic-{style}",
                label=label,
                title=title,
                text=_article_text(style, rng),
            )
        )
    return articles
