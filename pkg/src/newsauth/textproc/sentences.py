"""Rule-based sentence segmentation.

A sentence boundary is a run of ``.``, ``!`` or ``?`` (optionally
followed by closing quotes/brackets) that is followed by whitespace and
an upper-case or quote-opening character, unless the terminator belongs
to a known abbreviation.  Non-empty text always yields at least one
sentence.
"""

import re

# words whose trailing period does not end a sentence; entries that
# collide with ordinary sentence-final words (sat., sun., no., ...) are
# deliberately left out
ABBREVIATIONS = frozenset(
    {
        "mr.", "mrs.", "ms.", "dr.", "prof.", "rev.", "hon.", "st.",
        "sr.", "jr.", "gen.", "col.", "sgt.", "capt.", "lt.", "gov.",
        "sen.", "rep.", "pres.", "vs.", "etc.", "e.g.", "i.e.", "cf.",
        "inc.", "ltd.", "co.", "corp.", "dept.", "fig.", "vol.",
        "approx.", "jan.", "feb.", "apr.", "jun.", "jul.", "aug.",
        "sep.", "sept.", "oct.", "nov.", "dec.",
        "u.s.", "u.k.", "u.n.", "p.m.", "a.m.",
    }
)

_BOUNDARY = re.compile(r"[.!?]+[\"'”’)\]]*\s+(?=[\"'“‘(\[]?[A-Z0-9])")
_WORD_BEFORE = re.compile(r"(\S+)$")


def _ends_with_abbreviation(prefix: str) -> bool:
    match = _WORD_BEFORE.search(prefix)
    if match is None:
        return False
    word = match.group(1).lower()
    if word in ABBREVIATIONS:
        return True
    # single capital initials such as "J." in "J. Smith"
    return bool(re.fullmatch(r"[a-z]\.", word))


def split_sentences(text: str) -> list[str]:
    """Split text into sentence strings; whitespace-only input gives []."""
    stripped = text.strip()
    if not stripped:
        return []
    sentences = []
    start = 0
    for match in _BOUNDARY.finditer(stripped):
        boundary = match.end()
        terminator_start = match.start()
        if stripped[terminator_start] == "." and _ends_with_abbreviation(
            stripped[start:terminator_start + 1]
        ):
            continue
        sentences.append(stripped[start:boundary].strip())
        start = boundary
    tail = stripped[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences
