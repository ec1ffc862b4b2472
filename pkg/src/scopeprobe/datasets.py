"""Balanced probing datasets over annotated, tokenized corpora.

Five families are built here:

  NEG     presence of a negation in the sentence (balanced train/test)
  POL     polarity of a masked polarity item (balanced per genre/pair)
  NOTNPI  evaluation-only records for sentences whose negation
          licenses a polarity item, every eligible piece kept
  TARGET  presence of an arbitrary target word (control)
  CLAUSE  per-piece clause membership around a target word (control)

Examples reference their input vector by (sentence id, piece index)
into an embedding file; builders never touch vectors themselves.
All sampling is driven by one seed and is reproducible byte for byte.
"""

from __future__ import annotations

import json
import random
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import scopes, subword
from .scopes import is_negation
from .treebank import ParsedSentence

TRAIN_FRACTION = 0.8
LABEL_NEGATED = 1
LABEL_PLAIN = 0
LABEL_NPI = 1
LABEL_PPI = 0


class DatasetError(ValueError):
    """Requested dataset cannot be built from this corpus."""


@dataclass
class ProbeExample:
    """One (input piece, label) record; the vector is attached later."""

    sentence_id: str
    piece: int
    label: int
    meta: dict = field(default_factory=dict)
    embedding: np.ndarray | None = None

    def to_record(self) -> dict:
        return {"sentence": self.sentence_id, "piece": self.piece,
                "label": self.label, "meta": self.meta}

    @classmethod
    def from_record(cls, rec: dict) -> "ProbeExample":
        return cls(rec["sentence"], rec["piece"], rec["label"], rec.get("meta", {}))


@dataclass
class DatasetManifest:
    family: str
    label_counts: dict
    split_sizes: dict
    seed: int
    corpus_hash: str
    params: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({
            "family": self.family,
            "label_counts": self.label_counts,
            "split_sizes": self.split_sizes,
            "seed": self.seed,
            "corpus_hash": self.corpus_hash,
            "params": self.params,
        }, sort_keys=True)


def write_examples(examples, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for ex in examples:
            f.write(json.dumps(ex.to_record(), sort_keys=True) + "\n")


def read_examples(path) -> list[ProbeExample]:
    out = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.strip():
                out.append(ProbeExample.from_record(json.loads(line)))
    return out


def attach_embeddings(examples, store):
    """Design matrix and label vector for a list of examples."""
    X = np.stack([store.get(ex.sentence_id, ex.piece) for ex in examples])
    y = np.array([ex.label for ex in examples], dtype=np.int64)
    return X.astype(np.float64), y


# ---------------------------------------------------------------------------
# shared helpers


def negation_indices(s: ParsedSentence) -> list[int]:
    return [t.index for t in s.tokens if is_negation(t.surface)]


def negation_anchor_words(s: ParsedSentence) -> set[int]:
    """Word groups at position 0: every negation complex in the sentence."""
    words = set()
    for i in negation_indices(s):
        for j in scopes.neg_complex(s, i):
            words.add(s.tokens[j].word)
    return words


def _first_surface_token(s: ParsedSentence, word: str) -> int | None:
    needle = word.lower()
    for t in s.tokens:
        if t.surface.lower() == needle:
            return t.index
    return None


def _split(items, rng, train_fraction):
    items = list(items)
    rng.shuffle(items)
    k = round(train_fraction * len(items))
    return items[:k], items[k:]


def _count_labels(examples):
    out = {}
    for ex in examples:
        split = ex.meta.get("split", "all")
        out.setdefault(split, {})
        out[split][str(ex.label)] = out[split].get(str(ex.label), 0) + 1
    return out


def _draw_example(rng, s, sub, anchor_words, label, extra_meta):
    eligible = subword.eligible_indices(sub, anchor_words)
    if not eligible:
        return None
    piece = rng.choice(eligible)
    meta = {"genre": s.meta.get("genre", "all")}
    meta.update(extra_meta)
    if anchor_words:
        positions = subword.piece_positions(sub, anchor_words)
        meta["position"] = positions[piece]
    return ProbeExample(s.id, piece, label, meta)


# ---------------------------------------------------------------------------
# NEG family


def build_neg(corpus, subwords, n_pos, n_neg, seed,
              corpus_hash="", train_fraction=TRAIN_FRACTION):
    """Balanced presence-of-negation dataset, one input piece per sentence.

    Positive sentences contain exactly one not/n't; negatives contain
    none.  Requested sizes shrink together when the corpus is smaller
    than asked, preserving the balance.
    """
    if n_pos != n_neg:
        raise DatasetError(f"positive and negative requests differ: {n_pos} vs {n_neg}")
    rng = random.Random(seed)
    pos_pool, neg_pool = [], []
    for s in corpus:
        sub = subwords.get(s.id)
        if sub is None:
            continue
        negs = negation_indices(s)
        if len(negs) == 1:
            anchors = negation_anchor_words(s)
            if subword.eligible_indices(sub, anchors):
                pos_pool.append((s, sub, anchors))
        elif not negs:
            if subword.eligible_indices(sub, None):
                neg_pool.append((s, sub, set()))
    if not pos_pool or not neg_pool:
        raise DatasetError(
            f"cannot balance: {len(pos_pool)} negated vs {len(neg_pool)} plain sentences")
    n = min(n_pos, len(pos_pool), len(neg_pool))
    if n < n_pos:
        warnings.warn(f"requested {n_pos}+{n_neg} sentences, only {n}+{n} available")
    chosen_pos = rng.sample(pos_pool, n)
    chosen_neg = rng.sample(neg_pool, n)

    examples = []
    for label, chosen in ((LABEL_NEGATED, chosen_pos), (LABEL_PLAIN, chosen_neg)):
        train, test = _split(chosen, rng, train_fraction)
        for split_name, bucket in (("train", train), ("test", test)):
            for s, sub, anchors in bucket:
                ex = _draw_example(rng, s, sub, anchors, label, {"split": split_name})
                if ex is not None:
                    examples.append(ex)
    manifest = DatasetManifest(
        family="NEG", label_counts=_count_labels(examples),
        split_sizes={k: sum(v.values()) for k, v in _count_labels(examples).items()},
        seed=seed, corpus_hash=corpus_hash,
        params={"n_pos": n_pos, "n_neg": n_neg, "train_fraction": train_fraction})
    return manifest, examples


# ---------------------------------------------------------------------------
# POL family


PI_PAIRS = {
    "any/some": ("any", "some"),
    "anyone/someone": ("anyone", "someone"),
    "anybody/somebody": ("anybody", "somebody"),
    "anything/something": ("anything", "something"),
    "anytime/sometime": ("anytime", "sometime"),
    "anywhere/somewhere": ("anywhere", "somewhere"),
}


def _pol_candidate(s, subwords, word):
    """Masked view of a sentence for one polarity item, if usable."""
    tok = _first_surface_token(s, word)
    if tok is None:
        return None
    word_idx = s.tokens[tok].word
    masked = subword.mask_word(subwords[s.id], word_idx)
    anchors = negation_anchor_words(s)
    if not subword.eligible_indices(masked, anchors):
        return None
    return s, masked, anchors, word_idx


def build_pol(corpus, subwords, per_pair_cap, seed,
              corpus_hash="", train_fraction=TRAIN_FRACTION):
    """Masked polarity-item dataset, balanced per genre and item pair.

    For every genre and every pair, up to ``per_pair_cap`` sentences
    containing the negative item and exactly as many with the positive
    item are taken; the item is masked and one eligible piece outside
    the mask (and outside any negation complex) is drawn per sentence.
    A sentence is used at most once across all pairs so the train/test
    splits stay disjoint by sentence.
    """
    rng = random.Random(seed)
    by_genre = {}
    for s in corpus:
        if s.id in subwords:
            by_genre.setdefault(s.meta.get("genre", "all"), []).append(s)

    examples = []
    masks = []
    used = set()
    for genre in sorted(by_genre):
        sents = by_genre[genre]
        for pair_key in sorted(PI_PAIRS):
            npi_word, ppi_word = PI_PAIRS[pair_key]
            other = {LABEL_NPI: ppi_word, LABEL_PPI: npi_word}
            pools = {}
            for label, word in ((LABEL_NPI, npi_word), (LABEL_PPI, ppi_word)):
                # sentences attesting both items of the pair are ambiguous
                pools[label] = [
                    cand for s in sents
                    if s.id not in used
                    and _first_surface_token(s, other[label]) is None
                    and (cand := _pol_candidate(s, subwords, word)) is not None
                ]
            k = min(per_pair_cap, len(pools[LABEL_NPI]), len(pools[LABEL_PPI]))
            if k == 0:
                warnings.warn(f"pair {npi_word}/{ppi_word} absent from genre {genre!r}")
                continue
            for label in sorted(pools):
                chosen = rng.sample(pools[label], k)
                train, test = _split(chosen, rng, train_fraction)
                for split_name, bucket in (("train", train), ("test", test)):
                    for s, masked, anchors, word_idx in bucket:
                        used.add(s.id)
                        ex = _draw_example(
                            rng, s, masked, anchors, label,
                            {"split": split_name, "pair": pair_key,
                             "masked_word": word_idx})
                        examples.append(ex)
                        masks.append({"sentence": s.id, "word": word_idx})
    if not examples:
        raise DatasetError("no polarity-item pair is attested in the corpus")
    counts = _count_labels(examples)
    manifest = DatasetManifest(
        family="POL", label_counts=counts,
        split_sizes={k: sum(v.values()) for k, v in counts.items()},
        seed=seed, corpus_hash=corpus_hash,
        params={"per_pair_cap": per_pair_cap, "train_fraction": train_fraction})
    return manifest, examples, masks


# ---------------------------------------------------------------------------
# NOTNPI evaluation records


def build_notnpi(corpus, annotations, subwords, task="neg"):
    """Evaluation records for sentences whose negation licenses an item.

    Retains sentences with a pattern match and at least one any* token
    inside the licensing span.  Every eligible piece becomes one
    record carrying its zone and position; for ``task='pol'`` the item
    is masked first and the label is negative polarity.
    """
    if task not in ("neg", "pol"):
        raise DatasetError(f"unknown evaluation task {task!r}")
    examples = []
    masks = []
    for s in corpus:
        ann = annotations.get(s.id)
        sub = subwords.get(s.id)
        if ann is None or sub is None or not ann.npi_indices:
            continue
        labels, _ = scopes.zone_labels(s, ann)
        word_zones = scopes.word_zone_labels(s, labels)
        if task == "pol":
            word_idx = s.tokens[ann.npi_indices[0]].word
            sub = subword.mask_word(sub, word_idx)
            masks.append({"sentence": s.id, "word": word_idx})
            label = LABEL_NPI
        else:
            label = LABEL_NEGATED
        for zt in subword.project_zones(s, word_zones, sub):
            if not zt.eligible:
                continue
            examples.append(ProbeExample(
                s.id, zt.index, label,
                {"zone": zt.zone, "position": zt.position,
                 "genre": s.meta.get("genre", "all"), "pattern": ann.pattern}))
    return examples, masks


# ---------------------------------------------------------------------------
# TARGET family


def build_target(corpus, subwords, target, n, seed,
                 corpus_hash="", train_fraction=TRAIN_FRACTION):
    """Balanced presence-of-target-word dataset (control setup).

    The first occurrence of the target anchors position 0; its pieces
    are ineligible, mirroring the treatment of the negation complex.
    """
    if is_negation(target):
        raise DatasetError(f"target {target!r} is the negation token itself")
    rng = random.Random(seed)
    pos_pool, neg_pool = [], []
    for s in corpus:
        sub = subwords.get(s.id)
        if sub is None:
            continue
        tok = _first_surface_token(s, target)
        if tok is not None:
            anchors = {s.tokens[tok].word}
            if subword.eligible_indices(sub, anchors):
                pos_pool.append((s, sub, anchors))
        elif subword.eligible_indices(sub, None):
            neg_pool.append((s, sub, set()))
    if not pos_pool or not neg_pool:
        raise DatasetError(
            f"cannot balance: {len(pos_pool)} sentences with {target!r}, "
            f"{len(neg_pool)} without")
    size = min(n, len(pos_pool), len(neg_pool))
    if size < n:
        warnings.warn(f"requested {n}+{n} sentences, only {size}+{size} available")
    chosen_pos = rng.sample(pos_pool, size)
    chosen_neg = rng.sample(neg_pool, size)
    examples = []
    for label, chosen in ((1, chosen_pos), (0, chosen_neg)):
        train, test = _split(chosen, rng, train_fraction)
        for split_name, bucket in (("train", train), ("test", test)):
            for s, sub, anchors in bucket:
                ex = _draw_example(rng, s, sub, anchors, label,
                                   {"split": split_name, "target": target})
                if ex is not None:
                    examples.append(ex)
    manifest = DatasetManifest(
        family="TARGET", label_counts=_count_labels(examples),
        split_sizes={k: sum(v.values()) for k, v in _count_labels(examples).items()},
        seed=seed, corpus_hash=corpus_hash,
        params={"target": target, "n": n, "train_fraction": train_fraction})
    return manifest, examples


# ---------------------------------------------------------------------------
# CLAUSE study records


def build_clause_study(corpus, subwords, target, n=None):
    """Clause-membership records around a target word.

    Every eligible piece of every sentence containing the target
    becomes a record with its signed distance and whether its word
    lies in the clause of the target (first occurrence anchors).
    The +-8 window is applied at report time, not here.
    """
    examples = []
    taken = 0
    for s in corpus:
        if n is not None and taken >= n:
            break
        sub = subwords.get(s.id)
        if sub is None:
            continue
        tok = _first_surface_token(s, target)
        if tok is None:
            continue
        taken += 1
        clause = scopes.clause_of(s, tok)
        groups = s.word_groups()
        anchors = {s.tokens[tok].word}
        positions = subword.piece_positions(sub, anchors)
        for i, (_, w) in enumerate(sub.pieces):
            if w is None or positions[i] == 0:
                continue
            a, b = groups[w]
            examples.append(ProbeExample(
                s.id, i, 1,
                {"position": positions[i],
                 "in_clause": bool(set(range(a, b)) & clause),
                 "target": target,
                 "genre": s.meta.get("genre", "all")}))
    return examples


# ---------------------------------------------------------------------------
# manifest checks


def check_balance(manifest: DatasetManifest) -> None:
    """Strict per-split label balance for training families."""
    if manifest.family not in ("NEG", "POL", "TARGET"):
        return
    for split, counts in manifest.label_counts.items():
        values = sorted(counts.values())
        if len(values) != 2 or values[0] != values[1]:
            raise DatasetError(
                f"{manifest.family} {split} split is unbalanced: {counts}")


def check_disjoint(examples) -> None:
    """No sentence contributes to both train and test."""
    seen = {}
    for ex in examples:
        split = ex.meta.get("split")
        if split is None:
            continue
        prev = seen.setdefault(ex.sentence_id, split)
        if prev != split:
            raise DatasetError(f"sentence {ex.sentence_id} appears in {prev} and {split}")
