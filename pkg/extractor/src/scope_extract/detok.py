"""Rebuild running text from word sequences, keeping char offsets.

Corpus words arrive pre-tokenized (contractions already fused into one
word by the corpus format).  The rules here are deliberately plain:
words are joined with single spaces, closing punctuation attaches to
the left, opening brackets to the right.  Every word stays one
contiguous character span, which is what the piece alignment needs.
"""

from __future__ import annotations

import re

_NO_SPACE_BEFORE = re.compile(r"^[.,!?;:%)\]}']+$|^''$|^n't$")
_NO_SPACE_AFTER = re.compile(r"^[([{$]+$|^``$")


def detokenize(words: list[str]) -> tuple[str, list[tuple[int, int]]]:
    """Join words into text; return the text and per-word char spans."""
    text = []
    spans = []
    pos = 0
    prev = None
    for word in words:
        if text and not _NO_SPACE_BEFORE.match(word) and not (
                prev is not None and _NO_SPACE_AFTER.match(prev)):
            text.append(" ")
            pos += 1
        text.append(word)
        spans.append((pos, pos + len(word)))
        pos += len(word)
        prev = word
    return "".join(text), spans
