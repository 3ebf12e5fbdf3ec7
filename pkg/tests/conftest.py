import json

import pytest

from newsauth.corpus import NewsArticle
from newsauth.textproc import TaggedDocument

# acceptance criterion outcomes, filled by tests/test_acceptance.py
ACCEPTANCE_RESULTS: list[tuple[str, bool, float, float]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, passed, elapsed, budget in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(
            f"[{status}] {name} ({elapsed:.2f}s / budget {budget:g}s)"
        )


def make_doc(tokens, tags, bounds=None) -> TaggedDocument:
    """TaggedDocument literal for oracle tests (single sentence by default)."""
    if bounds is None:
        bounds = ((0, len(tokens)),)
    return TaggedDocument(tuple(tokens), tuple(tags), tuple(bounds))


def write_jsonl(path, records) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record) + "\n")


def article_record(article_id, label, text, source="test", title="t"):
    return {"id": article_id, "source": source, "label": label, "title": title, "text": text}


@pytest.fixture
def tiny_articles():
    return [
        NewsArticle.build("a1", "s", "human", "One", "The cat sat on the mat."),
        NewsArticle.build("a2", "s", "llm", "Two", "They will quickly build houses!"),
        NewsArticle.build("a3", "s", "human", "Three", "A big dog ran into the garden."),
        NewsArticle.build("a4", "s", "llm", "Four", "She must never walk slowly!"),
        NewsArticle.build("a5", "s", "human", "Five", "The old market opened a new bridge."),
    ]
