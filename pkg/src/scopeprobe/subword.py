"""Project token-level zones onto model tokenizations.

Tokenizer output maps each piece to the orthographic word it came from
(contractions are one word, so a piece like ``don'`` that straddles the
split tokens ``do``/``n't`` still has a single source word).  A masked
position maps to no word at all.

Positions are signed distances counted in pieces: every piece of the
negation complex (or of an arbitrary anchor word in the control
setups) has position 0, pieces to the left count -1, -2, ... and
pieces to the right 1, 2, ...
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .scopes import NOT
from .treebank import ParsedSentence


class AlignmentError(ValueError):
    """Piece-to-word map is inconsistent with the sentence."""


@dataclass(frozen=True, slots=True)
class SubwordSentence:
    """One sentence under one tokenization scheme."""

    id: str
    pieces: tuple[tuple[str, int | None], ...]
    model_tag: str = "unknown"


@dataclass(frozen=True, slots=True)
class ZonedToken:
    """One piece with its zone, signed distance and input eligibility."""

    index: int
    word: int | None
    zone: str | None
    position: int
    eligible: bool = True


def validate_alignment(sub: SubwordSentence, n_words: int) -> None:
    last = -1
    for i, (text, word) in enumerate(sub.pieces):
        if word is None:
            continue
        if not 0 <= word < n_words:
            raise AlignmentError(
                f"{sub.id}: piece {i} ({text!r}) maps to word {word}, "
                f"sentence has {n_words} words")
        if word < last:
            raise AlignmentError(
                f"{sub.id}: piece {i} ({text!r}) maps backwards (word {word} after {last})")
        last = word


def piece_positions(sub: SubwordSentence, anchor_words: set[int]) -> list[int]:
    """Signed piece distances to the anchor-word pieces (position 0)."""
    zero = [i for i, (_, w) in enumerate(sub.pieces) if w in anchor_words]
    if not zero:
        raise AlignmentError(f"{sub.id}: no piece maps to anchor words {sorted(anchor_words)}")
    lo, hi = min(zero), max(zero)
    if len(zero) != hi - lo + 1:
        raise AlignmentError(
            f"{sub.id}: anchor pieces are not contiguous at piece span [{lo}, {hi}]")
    return [0 if lo <= i <= hi else (i - lo if i < lo else i - hi)
            for i in range(len(sub.pieces))]


def project_zones(s: ParsedSentence, word_zones: list[str],
                  sub: SubwordSentence) -> list[ZonedToken]:
    """Zone and position of every piece under the sentence's annotation.

    ``word_zones`` is the per-word zone sequence (see
    scopes.word_zone_labels); the negation complex is recovered from it
    as the words labeled NOT.  A masked piece keeps ``zone=None``.
    """
    n_words = len(s.word_groups())
    if len(word_zones) != n_words:
        raise AlignmentError(
            f"{s.id}: {len(word_zones)} word zones for {n_words} words")
    validate_alignment(sub, n_words)
    not_words = {w for w, z in enumerate(word_zones) if z == NOT}
    positions = piece_positions(sub, not_words)
    out = []
    for i, (text, word) in enumerate(sub.pieces):
        zone = word_zones[word] if word is not None else None
        out.append(ZonedToken(index=i, word=word, zone=zone, position=positions[i]))
    return mark_eligible(out)


def mark_eligible(tokens: list[ZonedToken]) -> list[ZonedToken]:
    """Input-token eligibility: position-0 pieces and the mask are out."""
    return [replace(t, eligible=(t.position != 0 and t.word is not None))
            for t in tokens]


def eligible_indices(sub: SubwordSentence, anchor_words: set[int] | None) -> list[int]:
    """Piece indices that may serve as input tokens.

    Without an anchor (sentence has no negation / target word), only
    masked pieces are excluded.
    """
    if anchor_words:
        positions = piece_positions(sub, anchor_words)
        return [i for i, (_, w) in enumerate(sub.pieces)
                if w is not None and positions[i] != 0]
    return [i for i, (_, w) in enumerate(sub.pieces) if w is not None]


# ---------------------------------------------------------------------------
# JSON-lines interchange with the tokenizer side


def subword_to_record(sub: SubwordSentence) -> dict:
    return {
        "id": sub.id,
        "pieces": [{"text": t, "word": w} for t, w in sub.pieces],
        "model_tag": sub.model_tag,
    }


def subword_from_record(rec: dict) -> SubwordSentence:
    return SubwordSentence(
        id=rec["id"],
        pieces=tuple((p["text"], p["word"]) for p in rec["pieces"]),
        model_tag=rec.get("model_tag", "unknown"),
    )


def write_subwords(subs, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for sub in subs:
            f.write(json.dumps(subword_to_record(sub), ensure_ascii=False) + "\n")


def read_subwords(path) -> dict[str, SubwordSentence]:
    out = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.strip():
                sub = subword_from_record(json.loads(line))
                out[sub.id] = sub
    return out


def whitespace_pieces(s: ParsedSentence, model_tag: str = "word-identity") -> SubwordSentence:
    """Trivial one-piece-per-word tokenization, used as a test scheme."""
    words = s.word_surfaces()
    return SubwordSentence(
        id=s.id,
        pieces=tuple((w, i) for i, w in enumerate(words)),
        model_tag=model_tag,
    )


def mask_word(sub: SubwordSentence, word: int, mask_text: str = "[MASK]") -> SubwordSentence:
    """Replace all pieces of one word by a single mask piece."""
    pieces = []
    inserted = False
    for text, w in sub.pieces:
        if w == word:
            if not inserted:
                pieces.append((mask_text, None))
                inserted = True
            continue
        pieces.append((text, w))
    if not inserted:
        raise AlignmentError(f"{sub.id}: no piece maps to word {word}")
    return replace(sub, pieces=tuple(pieces))
