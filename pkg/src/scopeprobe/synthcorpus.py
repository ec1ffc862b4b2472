"""Deterministic template corpus with parses known by construction.

Real corpora reach the toolkit as externally parsed CoNLL-U plus
bracketed-tree files.  For desk-scale runs and tests this module
fabricates such files from sentence templates whose dependency and
constituency structures are spelled out by hand, so every zone and
scope downstream has a known ground truth.  Negated sentences follow
the three licensing templates (with varying amounts of material in
every zone); affirmative ones mirror them with a positive polarity
item.

Slot rows are (surface, pos, head, deprel) with ``head`` a 1-based
index into the slot, ``0`` for the slot's external attachment point,
or ``-1`` for the sentence root.
"""

from __future__ import annotations

import random

from .treebank import ingest

GENRES = ("news", "fiction", "spoken")

PI_PAIRS = {
    "": ("any", "some"),
    "one": ("anyone", "someone"),
    "body": ("anybody", "somebody"),
    "thing": ("anything", "something"),
    "time": ("anytime", "sometime"),
    "where": ("anywhere", "somewhere"),
}

# Introductions supply PRE material; each ends with a complementizer
# attached (mark) to the embedded verb.  Bracket parts cover the words
# before "said"; the template wraps them as
#   (S <pre> (VP (VBD said) (SBAR (IN that) <clause>)) (. .))
INTROS = [
    ([("Maria", "NNP", 2, "nsubj"), ("said", "VBD", -1, "root"), ("that", "IN", 0, "mark")],
     "(NP (NNP Maria))"),
    ([("Yesterday", "NN", 3, "obl:tmod"), ("Maria", "NNP", 3, "nsubj"),
      ("said", "VBD", -1, "root"), ("that", "IN", 0, "mark")],
     "(NP (NN Yesterday)) (NP (NNP Maria))"),
    ([("At", "IN", 3, "case"), ("the", "DT", 3, "det"), ("meeting", "NN", 5, "obl"),
      ("Maria", "NNP", 5, "nsubj"), ("said", "VBD", -1, "root"), ("that", "IN", 0, "mark")],
     "(PP (IN At) (NP (DT the) (NN meeting))) (NP (NNP Maria))"),
    ([("After", "IN", 4, "case"), ("the", "DT", 4, "det"), ("long", "JJ", 4, "amod"),
      ("meeting", "NN", 6, "obl"), ("Maria", "NNP", 6, "nsubj"),
      ("said", "VBD", -1, "root"), ("that", "IN", 0, "mark")],
     "(PP (IN After) (NP (DT the) (JJ long) (NN meeting))) (NP (NNP Maria))"),
    ([("Late", "RB", 7, "advmod"), ("in", "IN", 4, "case"), ("the", "DT", 4, "det"),
      ("evening", "NN", 7, "obl"), ("Maria", "NNP", 7, "nsubj"), ("calmly", "RB", 7, "advmod"),
      ("said", "VBD", -1, "root"), ("that", "IN", 0, "mark")],
     "(ADVP (RB Late)) (PP (IN in) (NP (DT the) (NN evening))) "
     "(NP (NNP Maria)) (ADVP (RB calmly))"),
]

SUBJECTS = [
    ([("the", "DT", 2, "det"), ("baker", "NN", 0, "nsubj")],
     "(NP (DT the) (NN baker))"),
    ([("the", "DT", 3, "det"), ("old", "JJ", 3, "amod"), ("baker", "NN", 0, "nsubj")],
     "(NP (DT the) (JJ old) (NN baker))"),
    ([("the", "DT", 4, "det"), ("very", "RB", 3, "advmod"), ("old", "JJ", 4, "amod"),
      ("baker", "NN", 0, "nsubj")],
     "(NP (DT the) (ADJP (RB very) (JJ old)) (NN baker))"),
    ([("the", "DT", 2, "det"), ("baker", "NN", 0, "nsubj"), ("from", "IN", 4, "case"),
      ("town", "NN", 2, "nmod")],
     "(NP (NP (DT the) (NN baker)) (PP (IN from) (NP (NN town))))"),
    ([("the", "DT", 3, "det"), ("old", "JJ", 3, "amod"), ("baker", "NN", 0, "nsubj"),
      ("from", "IN", 6, "case"), ("the", "DT", 6, "det"), ("town", "NN", 3, "nmod")],
     "(NP (NP (DT the) (JJ old) (NN baker)) (PP (IN from) (NP (DT the) (NN town))))"),
    ([("the", "DT", 4, "det"), ("very", "RB", 3, "advmod"), ("old", "JJ", 4, "amod"),
      ("baker", "NN", 0, "nsubj"), ("from", "IN", 8, "case"), ("the", "DT", 8, "det"),
      ("small", "JJ", 8, "amod"), ("town", "NN", 4, "nmod")],
     "(NP (NP (DT the) (ADJP (RB very) (JJ old)) (NN baker)) "
     "(PP (IN from) (NP (DT the) (JJ small) (NN town))))"),
]

# Verb-phrase slots: (lemma, past form, rows after the verb, brackets
# after the verb, pair key).  {PI} is replaced by the pair's item; the
# verb itself is row 1 of the slot.
VP_SLOTS = [
    ("sell", "sold",
     [("{PI}", "DT", 3, "det"), ("bread", "NN", 1, "obj")],
     "(NP (DT {PI}) (NN bread))", ""),
    ("sell", "sold",
     [("{PI}", "DT", 3, "det"), ("bread", "NN", 1, "obj"), ("today", "NN", 1, "obl:tmod")],
     "(NP (DT {PI}) (NN bread)) (NP (NN today))", ""),
    ("sell", "sold",
     [("{PI}", "DT", 3, "det"), ("bread", "NN", 1, "obj"), ("at", "IN", 6, "case"),
      ("the", "DT", 6, "det"), ("market", "NN", 1, "obl")],
     "(NP (DT {PI}) (NN bread)) (PP (IN at) (NP (DT the) (NN market)))", ""),
    ("sell", "sold",
     [("{PI}", "NN", 1, "obj")],
     "(NP (NN {PI}))", "thing"),
    ("sell", "sold",
     [("{PI}", "NN", 1, "obj"), ("quickly", "RB", 1, "advmod")],
     "(NP (NN {PI})) (ADVP (RB quickly))", "thing"),
    ("sell", "sold",
     [("{PI}", "NN", 1, "obj"), ("at", "IN", 5, "case"), ("the", "DT", 5, "det"),
      ("market", "NN", 1, "obl"), ("today", "NN", 1, "obl:tmod")],
     "(NP (NN {PI})) (PP (IN at) (NP (DT the) (NN market))) (NP (NN today))", "thing"),
    ("sell", "sold",
     [("{PI}", "NN", 1, "obj"), ("at", "IN", 5, "case"), ("the", "DT", 5, "det"),
      ("market", "NN", 1, "obl"), ("near", "IN", 8, "case"), ("the", "DT", 8, "det"),
      ("door", "NN", 1, "obl")],
     "(NP (NN {PI})) (PP (IN at) (NP (DT the) (NN market))) "
     "(PP (IN near) (NP (DT the) (NN door)))", "thing"),
    ("sell", "sold",
     [("{PI}", "DT", 3, "det"), ("bread", "NN", 1, "obj"), ("at", "IN", 6, "case"),
      ("the", "DT", 6, "det"), ("market", "NN", 1, "obl"), ("near", "IN", 9, "case"),
      ("the", "DT", 9, "det"), ("door", "NN", 1, "obl")],
     "(NP (DT {PI}) (NN bread)) (PP (IN at) (NP (DT the) (NN market))) "
     "(PP (IN near) (NP (DT the) (NN door)))", ""),
    ("see", "saw",
     [("{PI}", "NN", 1, "obj")],
     "(NP (NN {PI}))", "one"),
    ("see", "saw",
     [("{PI}", "NN", 1, "obj"), ("near", "IN", 5, "case"), ("the", "DT", 5, "det"),
      ("door", "NN", 1, "obl")],
     "(NP (NN {PI})) (PP (IN near) (NP (DT the) (NN door)))", "one"),
    ("meet", "met",
     [("{PI}", "NN", 1, "obj"), ("there", "RB", 1, "advmod")],
     "(NP (NN {PI})) (ADVP (RB there))", "body"),
    ("go", "went",
     [("{PI}", "RB", 1, "advmod")],
     "(ADVP (RB {PI}))", "where"),
    ("go", "went",
     [("{PI}", "RB", 1, "advmod"), ("with", "IN", 5, "case"), ("the", "DT", 5, "det"),
      ("others", "NNS", 1, "obl"), ("tonight", "NN", 1, "obl:tmod")],
     "(ADVP (RB {PI})) (PP (IN with) (NP (DT the) (NNS others))) (NP (NN tonight))",
     "where"),
    ("visit", "visited",
     [("{PI}", "RB", 1, "advmod")],
     "(ADVP (RB {PI}))", "time"),
]

# Conjunct tails supply POST material; the conjunct verb attaches to
# the negated verb (conj) so it stays outside the negation scope.
TAILS = [
    ([], ""),
    ([(",", ",", 3, "punct"), ("but", "CC", 3, "cc"), ("stayed", "VBD", 0, "conj")],
     "(, ,) (CC but) (S (VP (VBD stayed)))"),
    ([(",", ",", 5, "punct"), ("but", "CC", 5, "cc"), ("the", "DT", 4, "det"),
      ("others", "NNS", 5, "nsubj"), ("stayed", "VBD", 0, "conj")],
     "(, ,) (CC but) (S (NP (DT the) (NNS others)) (VP (VBD stayed)))"),
    ([(",", ",", 5, "punct"), ("but", "CC", 5, "cc"), ("the", "DT", 4, "det"),
      ("others", "NNS", 5, "nsubj"), ("stayed", "VBD", 0, "conj"),
      ("near", "IN", 8, "case"), ("the", "DT", 8, "det"), ("door", "NN", 5, "obl")],
     "(, ,) (CC but) (S (NP (DT the) (NNS others)) (VP (VBD stayed) "
     "(PP (IN near) (NP (DT the) (NN door)))))"),
    ([(",", ",", 5, "punct"), ("but", "CC", 5, "cc"), ("the", "DT", 4, "det"),
      ("others", "NNS", 5, "nsubj"), ("stayed", "VBD", 0, "conj"),
      ("near", "IN", 8, "case"), ("the", "DT", 8, "det"), ("door", "NN", 5, "obl"),
      ("all", "DT", 10, "det"), ("day", "NN", 5, "obl:tmod")],
     "(, ,) (CC but) (S (NP (DT the) (NNS others)) (VP (VBD stayed) "
     "(PP (IN near) (NP (DT the) (NN door))) (NP (DT all) (NN day))))"),
]

# Participial templates: a finite main clause, then ", not VP".
P5_MAINS = [
    ([("The", "DT", 2, "det"), ("workers", "NNS", 3, "nsubj"), ("left", "VBD", -1, "root"),
      ("early", "RB", 3, "advmod")],
     "(NP (DT The) (NNS workers)) (VP (VBD left) (ADVP (RB early)))"),
    ([("The", "DT", 2, "det"), ("workers", "NNS", 3, "nsubj"), ("left", "VBD", -1, "root"),
      ("the", "DT", 5, "det"), ("hall", "NN", 3, "obj"), ("early", "RB", 3, "advmod")],
     "(NP (DT The) (NNS workers)) (VP (VBD left) (NP (DT the) (NN hall)) (ADVP (RB early)))"),
    ([("The", "DT", 2, "det"), ("workers", "NNS", 3, "nsubj"), ("left", "VBD", -1, "root"),
      ("the", "DT", 5, "det"), ("hall", "NN", 3, "obj"), ("very", "RB", 7, "advmod"),
      ("early", "RB", 3, "advmod"), ("that", "DT", 9, "det"), ("night", "NN", 3, "obl:tmod")],
     "(NP (DT The) (NNS workers)) (VP (VBD left) (NP (DT the) (NN hall)) "
     "(ADVP (RB very) (RB early)) (NP (DT that) (NN night)))"),
]

P5_VPS = [
    ([("wanting", "VBG", 0, "HEAD"), ("{PI}", "NN", 1, "obj"), ("nearby", "RB", 1, "advmod")],
     "(VBG wanting) (NP (NN {PI})) (ADVP (RB nearby))", "one"),
    ([("wanting", "VBG", 0, "HEAD"), ("{PI}", "NN", 1, "obj")],
     "(VBG wanting) (NP (NN {PI}))", "body"),
    ([("fearing", "VBG", 0, "HEAD"), ("{PI}", "NN", 1, "obj"), ("that", "DT", 4, "det"),
      ("night", "NN", 1, "obl:tmod")],
     "(VBG fearing) (NP (NN {PI})) (NP (DT that) (NN night))", "thing"),
]

P3_NOUNS = [
    ([("rules", "NNS", 0, "nsubj"), ("of", "IN", 3, "case"), ("logic", "NN", 1, "nmod")],
     "(NNS rules) (PP (IN of) (NP (NN logic)))"),
    ([("lights", "NNS", 0, "nsubj")], "(NNS lights)"),
    ([("maps", "NNS", 0, "nsubj"), ("of", "IN", 4, "case"), ("the", "DT", 4, "det"),
      ("valley", "NN", 1, "nmod")],
     "(NNS maps) (PP (IN of) (NP (DT the) (NN valley)))"),
]


def _resolve(slot, offset, external, root_head=0):
    out = []
    for surface, pos, head, deprel in slot:
        if head == 0:
            out.append((surface, pos, external, deprel))
        elif head == -1:
            out.append((surface, pos, root_head, deprel))
        else:
            out.append((surface, pos, head + offset, deprel))
    return out


def _sub_pi(rows, bracket, word):
    return ([(s.replace("{PI}", word), p, h, d) for s, p, h, d in rows],
            bracket.replace("{PI}", word))


def _slot_root(slot):
    return next(i + 1 for i, row in enumerate(slot) if row[2] == -1)


def _build_declarative(rng, negated, pair_key=None, contracted=True, with_intro=None):
    intro_rows, intro_bracket = ([], "") if (
        with_intro is False or (with_intro is None and rng.random() < 0.25)
    ) else rng.choice(INTROS)
    subj_rows, subj_bracket = rng.choice(SUBJECTS)
    candidates = [v for v in VP_SLOTS if pair_key is None or v[4] == pair_key]
    lemma, past, rest_rows, rest_bracket, pair = rng.choice(candidates)
    tail_rows, tail_bracket = rng.choice(TAILS)
    npi, ppi = PI_PAIRS[pair]

    n_intro, n_subj = len(intro_rows), len(subj_rows)
    said_abs = _slot_root(intro_rows) if intro_rows else 0
    verb_abs = n_intro + n_subj + (3 if negated else 1)

    rows = list(_resolve(intro_rows, 0, verb_abs))
    rows.extend(_resolve(subj_rows, n_intro, verb_abs))
    mwt_spans = []
    if negated:
        aux_abs = n_intro + n_subj + 1
        rows.append(("did", "VBD", verb_abs, "aux"))
        rows.append(("n't" if contracted else "not", "RB", verb_abs, "advmod"))
        if contracted:
            mwt_spans.append((aux_abs, (aux_abs + 1, "didn't")))
        verb_row = (lemma, "VB", said_abs, "ccomp" if intro_rows else "root")
        rest_rows, rest_bracket = _sub_pi(rest_rows, rest_bracket, npi)
        vp_core = f"(VB {lemma}) {rest_bracket}"
    else:
        verb_row = (past, "VBD", said_abs, "ccomp" if intro_rows else "root")
        rest_rows, rest_bracket = _sub_pi(rest_rows, rest_bracket, ppi)
        vp_core = f"(VBD {past}) {rest_bracket}"
    rows.append(verb_row)
    rows.extend(_resolve(rest_rows, verb_abs - 1, verb_abs))
    rows.extend(_resolve(tail_rows, len(rows), verb_abs))
    rows.append((".", ".", said_abs if intro_rows else verb_abs, "punct"))

    nt = "n't" if contracted else "not"
    vp_part = (f"(VP (VBD did) (RB {nt}) (VP {vp_core}))" if negated
               else f"(VP {vp_core})")
    clause = f"(S {subj_bracket} {vp_part})"
    if tail_bracket:
        clause = f"(S {clause} {tail_bracket})"
    if intro_rows:
        bracket = (f"(S {intro_bracket} (VP (VBD said) "
                   f"(SBAR (IN that) {clause})) (. .))")
    else:
        bracket = clause[:-1] + " (. .))"
    return rows, mwt_spans, bracket


def build_p12_sentence(rng, pair_key=None, contracted=True, with_intro=None):
    return _build_declarative(rng, True, pair_key, contracted, with_intro)


def build_affirmative_sentence(rng, pair_key=None):
    return _build_declarative(rng, False, pair_key)


def build_p5_sentence(rng, pair_key=None):
    main_rows, main_bracket = rng.choice(P5_MAINS)
    candidates = [v for v in P5_VPS if pair_key is None or v[2] == pair_key]
    vp_rows, vp_bracket, pair = rng.choice(candidates)
    vp_rows, vp_bracket = _sub_pi(vp_rows, vp_bracket, PI_PAIRS[pair][0])

    n_main = len(main_rows)
    root = _slot_root(main_rows)
    verb_abs = n_main + 3
    rows = list(_resolve(main_rows, 0, 0))
    rows.append((",", ",", root, "punct"))
    rows.append(("not", "RB", verb_abs, "advmod"))
    for surface, pos, head, deprel in _resolve(vp_rows, verb_abs - 1, verb_abs):
        if deprel == "HEAD":
            head, deprel = root, "advcl"
        rows.append((surface, pos, head, deprel))
    rows.append((".", ".", root, "punct"))
    bracket = (f"(S (S {main_bracket}) (, ,) "
               f"(S (RB not) (VP {vp_bracket})) (. .))")
    return rows, [], bracket


def build_p3_sentence(rng):
    noun_rows, noun_bracket = rng.choice(P3_NOUNS)
    tail_rows, tail_bracket = rng.choice(TAILS[1:])
    rows = [("there", "EX", 2, "expl"), ("are", "VBP", 0, "root"),
            ("n't", "RB", 2, "advmod"), ("any", "DT", 5, "det")]
    rows.extend(_resolve(noun_rows, 4, 2))
    rows.extend(_resolve(tail_rows, len(rows), 2))
    rows.append((".", ".", 2, "punct"))
    bracket = (f"(S (NP (EX there)) (VP (VBP are) (RB n't) "
               f"(NP (DT any) {noun_bracket}) {tail_bracket}) (. .))")
    return rows, [(2, (3, "aren't"))], bracket


def build_distractor_sentence(rng):
    rows = [("Not", "RB", 2, "advmod"), ("every", "DT", 3, "det"),
            ("baker", "NN", 4, "nsubj"), ("sold", "VBD", 0, "root"),
            ("bread", "NN", 4, "obj"), (".", ".", 4, "punct")]
    bracket = ("(S (NP (RB Not) (DT every) (NN baker)) "
               "(VP (VBD sold) (NP (NN bread))) (. .))")
    return rows, [], bracket


def _conllu_block(sent_id, genre, rows, mwt_spans):
    lines = [f"# sent_id = {sent_id}", f"# genre = {genre}"]
    mwt = dict(mwt_spans)
    for i, (surface, pos, head, deprel) in enumerate(rows, start=1):
        if i in mwt:
            end, form = mwt[i]
            lines.append(f"{i}-{end}\t{form}\t_\t_\t_\t_\t_\t_\t_\t_")
        lines.append(f"{i}\t{surface}\t_\t_\t{pos}\t_\t{head}\t{deprel}\t_\t_")
    return "\n".join(lines) + "\n\n"


def generate_files(n_sentences: int, seed: int, negated_share: float = 0.5):
    """CoNLL-U and bracketed-tree text for a corpus of template sentences."""
    rng = random.Random(seed)
    conllu_parts = []
    ptb_lines = []
    for i in range(n_sentences):
        sent_id = f"syn-{i:06d}"
        genre = GENRES[i % len(GENRES)]
        if rng.random() < negated_share:
            kind = rng.random()
            if kind < 0.70:
                rows, mwt, bracket = build_p12_sentence(rng, contracted=rng.random() < 0.8)
            elif kind < 0.85:
                rows, mwt, bracket = build_p5_sentence(rng)
            elif kind < 0.95:
                rows, mwt, bracket = build_p3_sentence(rng)
            else:
                rows, mwt, bracket = build_distractor_sentence(rng)
        else:
            rows, mwt, bracket = build_affirmative_sentence(rng)
        conllu_parts.append(_conllu_block(sent_id, genre, rows, mwt))
        ptb_lines.append(bracket)
    return "".join(conllu_parts), "\n".join(ptb_lines) + "\n"


def generate_corpus(n_sentences: int, seed: int, negated_share: float = 0.5):
    """Template corpus as merged ParsedSentences."""
    conllu, ptb = generate_files(n_sentences, seed, negated_share)
    return ingest(conllu, ptb)
