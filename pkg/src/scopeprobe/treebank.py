"""Ingest, validate and index tokenized sentences with their parses.

Sentences carry two aligned structures over one shared tokenization:
a dependency tree (one head/relation per token) and a Penn-style
constituency tree whose leaves reproduce the token sequence.  Both
parses must be produced from the same pre-tokenized input; this module
validates the alignment but never re-tokenizes.

Contractions such as ``don't`` arrive split into two tokens (``do`` +
``n't``); the original orthographic word is remembered as a *word
group* so that downstream subword alignment can map tokenizer pieces
back to it.
"""

from __future__ import annotations

import hashlib
import io
import itertools
import json
import re
from dataclasses import dataclass, field

ROOT = -1

# function tags and coindexation are stripped from nonterminals: NP-SBJ-1 -> NP
_FUNC_TAG = re.compile(r"^([^-=]+)(?:[-=].*)?$")
_TRACE_LEAF = re.compile(r"^(\*.*|0)$")


class ParseError(ValueError):
    """Malformed CoNLL-U or bracketed-tree input."""


class ValidationError(ValueError):
    """Structurally invalid sentence (bad indices, cyclic heads, ...)."""


class AlignmentError(ValueError):
    """Dependency and constituency parses do not cover the same tokens."""


@dataclass(frozen=True, slots=True)
class Token:
    """One word-level token with its dependency attachment.

    ``head`` is the 0-based index of the parent token, or ``ROOT``.
    ``word`` is the index of the orthographic word group this token
    belongs to (contraction parts share one group).
    """

    index: int
    surface: str
    pos: str
    head: int
    deprel: str
    word: int = 0


@dataclass(slots=True)
class ConstTree:
    """Constituency node. Preterminals are stored as leaf nodes.

    ``span`` is the [start, end) token range covered by the node; for a
    leaf node ``leaf`` is the token index and ``label`` its POS tag.
    """

    label: str
    children: list["ConstTree"] = field(default_factory=list)
    span: tuple[int, int] = (0, 0)
    leaf: int | None = None
    surface: str | None = None

    def is_leaf(self) -> bool:
        return self.leaf is not None

    def leaves(self) -> list["ConstTree"]:
        if self.is_leaf():
            return [self]
        out = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    def iter_nodes(self):
        yield self
        for child in self.children:
            yield from child.iter_nodes()


@dataclass(slots=True)
class ParsedSentence:
    """Tokens plus (optionally) both parses for one sentence."""

    id: str
    tokens: list[Token]
    consttree: ConstTree | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        validate_tokens(self.tokens, self.id)
        if self.consttree is not None:
            _check_leaves(self.tokens, self.consttree, self.id)

    @property
    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    def word_groups(self) -> list[tuple[int, int]]:
        """Token ranges [start, end) of the orthographic words, in order."""
        groups = []
        for tok in self.tokens:
            if groups and self.tokens[groups[-1][0]].word == tok.word:
                groups[-1][1] = tok.index + 1
            else:
                groups.append([tok.index, tok.index + 1])
        return [(a, b) for a, b in groups]

    def word_surfaces(self) -> list[str]:
        return ["".join(self.tokens[i].surface for i in range(a, b))
                for a, b in self.word_groups()]

    def root_index(self) -> int:
        return next(t.index for t in self.tokens if t.head == ROOT)

    def children(self, index: int) -> list[Token]:
        return [t for t in self.tokens if t.head == index]

    def subtree(self, index: int) -> set[int]:
        """Token indices of the full dependency subtree rooted at ``index``."""
        kids = {}
        for t in self.tokens:
            kids.setdefault(t.head, []).append(t.index)
        out = set()
        stack = [index]
        while stack:
            i = stack.pop()
            out.add(i)
            stack.extend(kids.get(i, ()))
        return out


def validate_tokens(tokens: list[Token], sent_id: str = "?") -> None:
    """Check index contiguity, single root, and acyclic head links."""
    if not tokens:
        raise ValidationError(f"{sent_id}: sentence has no tokens")
    for i, tok in enumerate(tokens):
        if tok.index != i:
            raise ValidationError(
                f"{sent_id}: token index {tok.index} at position {i} is not contiguous")
    n = len(tokens)
    roots = [t.index for t in tokens if t.head == ROOT]
    if len(roots) != 1:
        raise ValidationError(f"{sent_id}: expected exactly one root token, got {roots}")
    for tok in tokens:
        if tok.head != ROOT and not 0 <= tok.head < n:
            raise ValidationError(f"{sent_id}: token {tok.index} has head {tok.head} out of range")
    for tok in tokens:
        seen = set()
        cur = tok.index
        while cur != ROOT:
            if cur in seen:
                raise ValidationError(f"{sent_id}: cyclic head links through token {cur}")
            seen.add(cur)
            cur = tokens[cur].head


def _check_leaves(tokens: list[Token], tree: ConstTree, sent_id: str) -> None:
    leaves = tree.leaves()
    if len(leaves) != len(tokens):
        raise ValidationError(
            f"{sent_id}: constituency tree has {len(leaves)} leaves for {len(tokens)} tokens")
    for tok, leaf in zip(tokens, leaves):
        if leaf.surface != tok.surface:
            raise AlignmentError(
                f"{sent_id}: surface mismatch at index {tok.index}: "
                f"{tok.surface!r} vs {leaf.surface!r}")


# ---------------------------------------------------------------------------
# CoNLL-U


def read_conllu(stream) -> list[ParsedSentence]:
    """Parse CoNLL-U text into sentences (dependency structure only).

    Multiword-token ranges (``i-j`` ids) are not tokens; they only
    record which contiguous tokens spell one orthographic word.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    sentences = []
    rows: list[tuple[int, list[str]]] = []
    comments: dict[str, str] = {}
    mwt_spans: list[tuple[int, int]] = []
    n_sent = 0

    def flush():
        nonlocal rows, comments, mwt_spans, n_sent
        if rows:
            n_sent += 1
            sent_id = comments.get("sent_id", f"s{n_sent}")
            meta = {k: v for k, v in comments.items() if k not in ("sent_id",)}
            sentences.append(_build_sentence(sent_id, rows, mwt_spans, meta))
        rows, comments, mwt_spans = [], {}, []

    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, value = body.split("=", 1)
                comments[key.strip()] = value.strip()
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ParseError(f"line {lineno}: expected 10 tab-separated columns, got {len(cols)}")
        tok_id = cols[0]
        if "-" in tok_id:
            try:
                a, b = tok_id.split("-")
                mwt_spans.append((int(a), int(b)))
            except ValueError as exc:
                raise ParseError(f"line {lineno}: bad multiword-token id {tok_id!r}") from exc
            continue
        if "." in tok_id:
            continue  # empty nodes of enhanced dependencies
        try:
            idx = int(tok_id)
            head = int(cols[6])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: non-numeric id or head in {line!r}") from exc
        rows.append((idx, [cols[1], cols[4] if cols[4] != "_" else cols[3], cols[7], str(head)]))
    flush()
    return sentences


def _build_sentence(sent_id, rows, mwt_spans, meta) -> ParsedSentence:
    rows = sorted(rows, key=lambda r: r[0])
    group_end = {a: b for a, b in mwt_spans}  # 1-based id -> inclusive end
    tokens = []
    word = -1
    group_until = 0
    for pos_in_sent, (idx, (surf, xpos, deprel, head)) in enumerate(rows):
        if idx != pos_in_sent + 1:
            raise ValidationError(f"{sent_id}: token ids not contiguous at {idx}")
        if idx > group_until:
            word += 1
            group_until = group_end.get(idx, idx)
        head = int(head)
        tokens.append(Token(
            index=idx - 1,
            surface=surf,
            pos=xpos,
            head=head - 1 if head != 0 else ROOT,
            deprel=deprel,
            word=word,
        ))
    return ParsedSentence(id=sent_id, tokens=tokens, meta=meta)


# ---------------------------------------------------------------------------
# Bracketed trees


_PTB_TOKEN = re.compile(r"\(|\)|[^()\s]+")


def read_ptb(stream) -> list[ConstTree]:
    """Read Penn-style bracketed trees, one per top-level paren group.

    Nonterminal labels are normalized (function tags and coindexation
    stripped) and trace/empty leaves are removed before spans are
    computed.
    """
    text = stream if isinstance(stream, str) else stream.read()
    trees = []
    # stack entries: [label, kept children, surface, raw child count]
    stack = []
    for m in _PTB_TOKEN.finditer(text):
        tok = m.group()
        if tok == "(":
            stack.append([None, [], None, 0])
        elif tok == ")":
            if not stack:
                raise ParseError(
                    f"unbalanced parentheses: unmatched ')' at offset {m.start()}")
            node = _finish_node(*stack.pop())
            if stack:
                stack[-1][3] += 1
                if node is not None:
                    stack[-1][1].append(node)
            elif node is None:
                raise ParseError("tree is empty after removing trace nodes")
            else:
                trees.append(_assign_leaves_and_spans(node))
        else:
            if not stack:
                raise ParseError(f"stray token {tok!r} outside parentheses")
            entry = stack[-1]
            if entry[0] is None and entry[2] is None and entry[3] == 0:
                entry[0] = tok
            elif entry[2] is None and entry[3] == 0:
                entry[2] = tok
            else:
                raise ParseError(f"node {entry[0]!r} mixes terminals and subtrees")
    if stack:
        raise ParseError("unbalanced parentheses: unexpected end of input")
    return trees


def _finish_node(label, children, surface, raw_children):
    if surface is not None and children:
        raise ParseError(f"node {label!r} mixes a terminal with subtrees")
    if surface is not None:
        if label == "-NONE-" or _TRACE_LEAF.match(surface):
            return None  # trace/empty element
        return ConstTree(label=label or "", surface=surface, leaf=-1)
    if children:
        # unary wrapper with empty label collapses to its child
        if label is None and len(children) == 1:
            return children[0]
        return ConstTree(label=_normalize_label(label or ""), children=children)
    if raw_children == 0:
        raise ParseError(f"empty node {label!r}")
    return None  # all children were trace nodes


def _normalize_label(label: str) -> str:
    if label.startswith("-"):  # -LRB-, -NONE- and friends keep their name
        return label
    m = _FUNC_TAG.match(label)
    return m.group(1) if m else label


def _assign_leaves_and_spans(root: ConstTree) -> ConstTree:
    counter = itertools.count()

    def walk(node):
        if node.leaf is not None:
            node.leaf = next(counter)
            node.span = (node.leaf, node.leaf + 1)
        else:
            spans = [walk(child) for child in node.children]
            for (_, b), (c, _) in zip(spans, spans[1:]):
                if b != c:
                    raise ValidationError(f"non-contiguous children under {node.label!r}")
            node.span = (spans[0][0], spans[-1][1])
        return node.span

    walk(root)
    return root


def print_ptb(tree: ConstTree) -> str:
    """Serialize a tree in normalized single-line bracketed form."""
    if tree.is_leaf():
        return f"({tree.label} {tree.surface})"
    inner = " ".join(print_ptb(c) for c in tree.children)
    return f"({tree.label} {inner})"


# ---------------------------------------------------------------------------
# Merging the two parses


def align_parses(dep: ParsedSentence, tree: ConstTree) -> ParsedSentence:
    """Attach a constituency tree to a dependency-parsed sentence.

    Both parses must tokenize identically; the first diverging index is
    reported otherwise.
    """
    leaves = tree.leaves()
    if len(leaves) != len(dep.tokens):
        raise AlignmentError(
            f"{dep.id}: token count mismatch: {len(dep.tokens)} dependency tokens "
            f"vs {len(leaves)} tree leaves")
    for tok, leaf in zip(dep.tokens, leaves):
        if tok.surface != leaf.surface:
            raise AlignmentError(
                f"{dep.id}: surface mismatch at index {tok.index}: "
                f"{tok.surface!r} vs {leaf.surface!r}")
    return ParsedSentence(id=dep.id, tokens=dep.tokens, consttree=tree, meta=dep.meta)


# ---------------------------------------------------------------------------
# Line-delimited corpus records


def sentence_to_record(s: ParsedSentence) -> dict:
    return {
        "id": s.id,
        "tokens": [{"surface": t.surface, "pos": t.pos, "word": t.word} for t in s.tokens],
        "deptree": [{"head": t.head, "deprel": t.deprel} for t in s.tokens],
        "consttree": print_ptb(s.consttree) if s.consttree is not None else None,
        "meta": s.meta,
    }


def sentence_from_record(rec: dict) -> ParsedSentence:
    tokens = [
        Token(index=i, surface=t["surface"], pos=t["pos"],
              head=d["head"], deprel=d["deprel"], word=t.get("word", i))
        for i, (t, d) in enumerate(zip(rec["tokens"], rec["deptree"]))
    ]
    tree = read_ptb(rec["consttree"])[0] if rec.get("consttree") else None
    return ParsedSentence(id=rec["id"], tokens=tokens, consttree=tree, meta=rec.get("meta", {}))


def write_corpus(sentences, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for s in sentences:
            f.write(json.dumps(sentence_to_record(s), ensure_ascii=False) + "\n")


def read_corpus(path) -> list[ParsedSentence]:
    out = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.strip():
                out.append(sentence_from_record(json.loads(line)))
    return out


def corpus_hash(path) -> str:
    """Stable fingerprint of a corpus file, recorded in manifests."""
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def ingest(conllu_stream, ptb_stream, meta: dict | None = None) -> list[ParsedSentence]:
    """Read matched CoNLL-U and bracketed-tree files and merge them."""
    deps = read_conllu(conllu_stream)
    trees = read_ptb(ptb_stream)
    if len(deps) != len(trees):
        raise AlignmentError(
            f"{len(deps)} dependency sentences vs {len(trees)} constituency trees")
    merged = []
    for dep, tree in zip(deps, trees):
        if meta:
            dep.meta.update(meta)
        merged.append(align_parses(dep, tree))
    return merged
