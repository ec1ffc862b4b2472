"""Negation patterns, scopes, zones and clause extraction.

Three constituency templates identify a verb-modifying ``not`` that can
license a negative polarity item; the matched sibling constituent is
the *licensing span*.  The *negation scope* is approximated on the
dependency side as the subtree of the negated head, minus conjunct,
parataxis, mark and discourse dependents.  Every token then falls into
one of five zones:

    PRE      before both scopes
    PRE_IN   inside the negation scope, left of the licensing span
    NOT      the negation complex (not/n't plus its auxiliary)
    IN       inside the licensing span
    POST     after the licensing span

The zones drive all downstream accuracy breakdowns, so their
assignment is deliberately strict: anything that cannot be assigned
cleanly is flagged rather than silently relabeled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .treebank import ConstTree, ParsedSentence, ROOT

PRE = "PRE"
PRE_IN = "PRE_IN"
NOT = "NOT"
IN = "IN"
POST = "POST"
ZONES = (PRE, PRE_IN, NOT, IN, POST)

NEGATION_SURFACES = frozenset({"not", "n't"})

NPI_SURFACES = frozenset(
    {"any", "anybody", "anyone", "anything", "anytime", "anywhere"})

# Closed class of auxiliaries/modals that can host a contracted negation,
# including the clitic forms they take when split off their host ('m, ca, wo)
# so that surfaces seen in pre-tokenized text are covered.
AUX_SURFACES = frozenset({
    "be", "am", "is", "are", "was", "were",
    "do", "does", "did",
    "have", "has", "had",
    "can", "could", "will", "would", "shall", "should",
    "may", "might", "must", "need", "dare", "ought",
    "ai", "ca", "wo", "sha",
    "'m", "'s", "'re", "'ve", "'d", "'ll",
})

EXCLUDED_DEPRELS = frozenset({"conj", "parataxis", "mark", "discourse"})


@dataclass(frozen=True)
class PatternSpec:
    """One licensing template over constituency trees.

    The template matches a ``frame`` node having, as consecutive
    children, an optional verb preterminal, the (RB not) preterminal,
    and a sibling constituent whose category is in ``scope_cats``; the
    sibling's span is the licensing span.
    """

    id: str
    verb_cats: frozenset[str]
    scope_cats: frozenset[str]
    frame: frozenset[str]

    def verb_matches(self, pos: str) -> bool:
        return pos.startswith("VB") or pos in self.verb_cats


P12 = PatternSpec(id="P12", verb_cats=frozenset({"MD"}),
                  scope_cats=frozenset({"VP"}), frame=frozenset({"VP"}))
P3 = PatternSpec(id="P3", verb_cats=frozenset(),
                 scope_cats=frozenset({"NP", "PP", "ADJP"}), frame=frozenset({"VP"}))
P5 = PatternSpec(id="P5", verb_cats=frozenset(),
                 scope_cats=frozenset({"VP"}), frame=frozenset({"S"}))
PATTERNS = (P12, P3, P5)


@dataclass(frozen=True, slots=True)
class ScopeAnnotation:
    """Scopes and zones of one sentence, anchored at one negation."""

    pattern: str
    not_index: int
    licensing_span: tuple[int, int]
    neg_scope: frozenset[int]
    neg_complex: frozenset[int]
    npi_indices: tuple[int, ...]


def _norm(surface: str) -> str:
    return surface.replace("’", "'").lower()


def is_negation(surface: str) -> bool:
    return _norm(surface) in NEGATION_SURFACES


def match_neg_patterns(s: ParsedSentence):
    """All licensing-template matches, linearly ordered.

    Returns (pattern id, token index of not, licensing span) triples.
    Additional siblings around the matched triple are permitted; the
    verb, not, and scope constituent themselves must be consecutive.
    """
    if s.consttree is None:
        raise ValueError(f"{s.id}: sentence has no constituency tree")
    matches = []
    for node in s.consttree.iter_nodes():
        if node.is_leaf():
            continue
        for spec in PATTERNS:
            if node.label not in spec.frame:
                continue
            matches.extend(_match_in_node(s, node, spec))
    matches.sort(key=lambda m: (m[1], PATTERNS.index(_SPEC_BY_ID[m[0]])))
    return matches


def _match_in_node(s, node, spec):
    out = []
    kids = node.children
    if spec is P5:
        for j in range(len(kids) - 1):
            if (_is_not_leaf(kids[j]) and not kids[j + 1].is_leaf()
                    and kids[j + 1].label in spec.scope_cats):
                out.append((spec.id, kids[j].leaf, kids[j + 1].span))
        return out
    for j in range(len(kids) - 2):
        verb, rb, scope = kids[j], kids[j + 1], kids[j + 2]
        if not (verb.is_leaf() and spec.verb_matches(verb.label)):
            continue
        if _is_not_leaf(rb) and not scope.is_leaf() and scope.label in spec.scope_cats:
            out.append((spec.id, rb.leaf, scope.span))
    return out


def _is_not_leaf(node: ConstTree) -> bool:
    return node.is_leaf() and node.label == "RB" and is_negation(node.surface or "")


_SPEC_BY_ID = {p.id: p for p in PATTERNS}


def neg_complex(s: ParsedSentence, not_index: int) -> frozenset[int]:
    """The not/n't token plus an immediately preceding auxiliary or modal."""
    if not is_negation(s.tokens[not_index].surface):
        raise ValueError(f"{s.id}: token {not_index} is not a negation token")
    members = {not_index}
    if not_index > 0 and _norm(s.tokens[not_index - 1].surface) in AUX_SURFACES:
        members.add(not_index - 1)
    return frozenset(members)


def neg_scope(s: ParsedSentence, not_index: int) -> frozenset[int]:
    """Dependency approximation of the negation scope.

    Takes the subtree of the negated head, keeping only dependents not
    attached via conj, parataxis, mark or discourse, and removes the
    negation complex itself.
    """
    tok = s.tokens[not_index]
    if not is_negation(tok.surface):
        raise ValueError(f"{s.id}: token {not_index} is not a negation token")
    if tok.head == ROOT:
        raise ValueError(f"{s.id}: negation token {not_index} has no dependency head")
    head = tok.head
    scope = {head}
    for child in s.children(head):
        if child.index == not_index:
            continue
        if child.deprel.split(":")[0].lower() in EXCLUDED_DEPRELS:
            continue
        scope |= s.subtree(child.index)
    return frozenset(scope - {not_index} - set(neg_complex(s, not_index)))


def annotate(s: ParsedSentence) -> ScopeAnnotation | None:
    """Primary scope annotation of a sentence, or None without a match."""
    matches = match_neg_patterns(s)
    if not matches:
        return None
    pattern, not_index, span = matches[0]
    scope = neg_scope(s, not_index)
    complex_ = neg_complex(s, not_index)
    npi = tuple(i for i in range(*span) if _norm(s.tokens[i].surface) in NPI_SURFACES)
    return ScopeAnnotation(
        pattern=pattern, not_index=not_index, licensing_span=span,
        neg_scope=scope, neg_complex=complex_, npi_indices=npi)


def zone_labels(s: ParsedSentence, ann: ScopeAnnotation):
    """Zone of every token, plus the indices whose zone had to be forced.

    Forced cases are tokens of the negation scope lying right of the
    licensing span (labeled POST) and out-of-scope tokens wedged
    between in-scope ones on the left (labeled PRE); both are reported
    in the returned flag set and must not be treated as ground truth.
    """
    n = len(s.tokens)
    labels: list[str | None] = [None] * n
    complex_ = set(ann.neg_complex)
    span_start, span_end = ann.licensing_span
    if set(range(span_start, span_end)) & complex_:
        raise AssertionError(f"{s.id}: licensing span overlaps the negation complex")
    first_complex = min(complex_)
    last_complex = max(complex_)
    if span_start != last_complex + 1:
        raise AssertionError(
            f"{s.id}: licensing span does not start right after the negation complex")

    flagged = set()
    for i in range(n):
        if i in complex_:
            labels[i] = NOT
        elif span_start <= i < span_end:
            labels[i] = IN
        elif i < first_complex:
            labels[i] = PRE_IN if i in ann.neg_scope else PRE
        else:
            labels[i] = POST
            if i in ann.neg_scope:
                flagged.add(i)
    # out-of-scope tokens to the right of an in-scope one break the
    # canonical PRE* PRE_IN* NOT+ IN+ POST* order; flag them
    seen_prein = False
    for i in range(first_complex):
        if labels[i] == PRE_IN:
            seen_prein = True
        elif seen_prein:
            flagged.add(i)
    return labels, frozenset(flagged)


def word_zone_labels(s: ParsedSentence, labels: list[str]) -> list[str]:
    """Collapse token zones onto orthographic word groups.

    A word containing any negation-complex token is NOT as a whole;
    otherwise the word takes the zone of its first token.
    """
    out = []
    for a, b in s.word_groups():
        group = labels[a:b]
        out.append(NOT if NOT in group else group[0])
    return out


def clause_of(s: ParsedSentence, target_index: int) -> frozenset[int]:
    """Token indices of the clause containing ``target_index``.

    The clause is the dependency subtree of the closest verbal head:
    the target itself when verbal, else the nearest verbal ancestor,
    else the sentence root.
    """
    cur = target_index
    anchor = None
    while True:
        if _is_verbal(s.tokens[cur].pos):
            anchor = cur
            break
        if s.tokens[cur].head == ROOT:
            break
        cur = s.tokens[cur].head
    if anchor is None:
        anchor = s.root_index()
    return frozenset(s.subtree(anchor))


def _is_verbal(pos: str) -> bool:
    return pos.startswith("VB") or pos == "MD"


def count_prein_npi(annotated: Iterable[tuple[ParsedSentence, ScopeAnnotation | None]]):
    """Count pattern-matching sentences by where their any* tokens sit.

    Returns (total, in_only, prein_only, both) over sentences with at
    least one pattern match.
    """
    total = in_only = prein_only = both = 0
    for s, ann in annotated:
        if ann is None:
            continue
        total += 1
        labels, _ = zone_labels(s, ann)
        has_in = has_prein = False
        for tok in s.tokens:
            if _norm(tok.surface) in NPI_SURFACES:
                if labels[tok.index] == IN:
                    has_in = True
                elif labels[tok.index] == PRE_IN:
                    has_prein = True
        if has_in and has_prein:
            both += 1
        elif has_in:
            in_only += 1
        elif has_prein:
            prein_only += 1
    return total, in_only, prein_only, both


# ---------------------------------------------------------------------------
# Line-delimited annotation records


def annotation_to_record(s: ParsedSentence, ann: ScopeAnnotation) -> dict:
    labels, flagged = zone_labels(s, ann)
    secondary = [
        [p, i, list(span)] for p, i, span in match_neg_patterns(s)
        if (p, i) != (ann.pattern, ann.not_index)
    ]
    flags = {}
    if flagged:
        flags["forced_zone"] = sorted(flagged)
    if ann.npi_indices and ann.licensing_span[1] - ann.licensing_span[0] < 2:
        flags["short_span"] = True
    return {
        "id": s.id,
        "pattern": ann.pattern,
        "not_index": ann.not_index,
        "licensing_span": list(ann.licensing_span),
        "neg_scope": sorted(ann.neg_scope),
        "neg_complex": sorted(ann.neg_complex),
        "zones": labels,
        "npi_indices": list(ann.npi_indices),
        "secondary": secondary,
        "flags": flags,
    }


def annotation_from_record(rec: dict) -> ScopeAnnotation:
    return ScopeAnnotation(
        pattern=rec["pattern"],
        not_index=rec["not_index"],
        licensing_span=tuple(rec["licensing_span"]),
        neg_scope=frozenset(rec["neg_scope"]),
        neg_complex=frozenset(rec["neg_complex"]),
        npi_indices=tuple(rec["npi_indices"]),
    )
