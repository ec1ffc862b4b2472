import json
import random

import pytest

from scopeprobe import (
    IN, NOT, POST, PRE, PRE_IN,
    SubwordSentence, annotate, eligible_indices, mark_eligible, mask_word,
    piece_positions, project_zones, read_conllu, read_subwords,
    whitespace_pieces, word_zone_labels, write_subwords, zone_labels,
)
from scopeprobe.subword import AlignmentError


def _word_zones(sentence):
    ann = annotate(sentence)
    labels, _ = zone_labels(sentence, ann)
    return word_zone_labels(sentence, labels)


def test_worked_wordpiece_projection(worked_sentence, worked_wordpiece):
    zoned = project_zones(worked_sentence, _word_zones(worked_sentence), worked_wordpiece)
    assert [t.zone for t in zoned] == [
        PRE, PRE, PRE_IN, NOT, NOT, NOT, IN, IN, IN, IN, POST, POST, POST, POST]
    assert [t.position for t in zoned] == [-3, -2, -1, 0, 0, 0, 1, 2, 3, 4, 5, 6, 7, 8]


def test_worked_bytebpe_projection(worked_sentence, worked_bytebpe):
    zoned = project_zones(worked_sentence, _word_zones(worked_sentence), worked_bytebpe)
    assert [t.zone for t in zoned] == [
        PRE, PRE, PRE_IN, NOT, NOT, IN, IN, IN, IN, POST, POST, POST, POST]
    assert [t.position for t in zoned] == [-3, -2, -1, 0, 0, 1, 2, 3, 4, 5, 6, 7, 8]


def test_worked_eligible_count(worked_sentence, worked_wordpiece):
    zoned = project_zones(worked_sentence, _word_zones(worked_sentence), worked_wordpiece)
    assert sum(t.eligible for t in zoned) == 11


def test_plain_did_not_both_position_zero():
    conllu = (
        "1\tShe\t_\t_\tPRP\t_\t4\tnsubj\t_\t_\n"
        "2\tdid\t_\t_\tVBD\t_\t4\taux\t_\t_\n"
        "3\tnot\t_\t_\tRB\t_\t4\tadvmod\t_\t_\n"
        "4\tleave\t_\t_\tVB\t_\t0\troot\t_\t_\n"
    )
    s = read_conllu(conllu)[0]
    sub = whitespace_pieces(s)
    positions = piece_positions(sub, {1, 2})
    assert positions == [-1, 0, 0, 1]
    # the only candidate input pieces are She and leave
    assert eligible_indices(sub, {1, 2}) == [0, 3]


def test_contraction_only_sentence_has_zero_eligible():
    conllu = (
        "1-2\tDon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\tDo\t_\t_\tVB\t_\t0\troot\t_\t_\n"
        "2\tn't\t_\t_\tRB\t_\t1\tadvmod\t_\t_\n"
    )
    s = read_conllu(conllu)[0]
    sub = SubwordSentence(id=s.id, pieces=(("don", 0), ("'", 0), ("t", 0)))
    assert eligible_indices(sub, {0}) == []


def test_sentence_without_negation_all_eligible_except_mask():
    sub = SubwordSentence(id="x", pieces=(("a", 0), ("[MASK]", None), ("c", 2)))
    assert eligible_indices(sub, None) == [0, 2]


def test_mark_eligible_excludes_anchor_and_mask(worked_sentence, worked_wordpiece):
    assert mark_eligible([]) == []
    wz = _word_zones(worked_sentence)
    masked = mask_word(worked_wordpiece, 5)  # mask "anyone"
    zoned = project_zones(worked_sentence, wz, masked)
    for t in zoned:
        assert t.eligible == (t.position != 0 and t.word is not None)
    mask_piece = next(t for t in zoned if t.word is None)
    assert not mask_piece.eligible and mask_piece.zone is None


def test_positions_adjacent_difference_one(worked_sentence, worked_wordpiece):
    zoned = project_zones(worked_sentence, _word_zones(worked_sentence), worked_wordpiece)
    pos = [t.position for t in zoned]
    for a, b in zip(pos, pos[1:]):
        if 0 in (a, b):
            continue
        assert b - a == 1


def test_zone_roundtrip_piece_matches_word(worked_sentence, worked_wordpiece):
    wz = _word_zones(worked_sentence)
    for t in project_zones(worked_sentence, wz, worked_wordpiece):
        assert t.zone == wz[t.word]


def test_backward_word_map_rejected(worked_sentence):
    wz = _word_zones(worked_sentence)
    bad = SubwordSentence(id="worked", pieces=(("see", 1), ("I", 0)))
    with pytest.raises(AlignmentError, match="backwards"):
        project_zones(worked_sentence, wz, bad)


def test_out_of_range_word_rejected(worked_sentence):
    wz = _word_zones(worked_sentence)
    bad = SubwordSentence(id="worked", pieces=(("x", 40),))
    with pytest.raises(AlignmentError, match="maps to word 40"):
        project_zones(worked_sentence, wz, bad)


def test_non_contiguous_anchor_rejected():
    sub = SubwordSentence(id="x", pieces=(("a", 0), ("b", 1), ("c", 2)))
    with pytest.raises(AlignmentError, match="contiguous"):
        piece_positions(sub, {0, 2})


def test_mask_word_single_piece():
    sub = SubwordSentence(id="x", pieces=(("do", 0), ("any", 1), ("thing", 1), ("now", 2)))
    masked = mask_word(sub, 1)
    assert masked.pieces == (("do", 0), ("[MASK]", None), ("now", 2))
    with pytest.raises(AlignmentError):
        mask_word(sub, 9)


def test_subword_jsonl_roundtrip(tmp_path):
    rng = random.Random(3)
    subs = []
    for i in range(20):
        n = rng.randint(1, 8)
        pieces = []
        w = 0
        for _ in range(n):
            pieces.append((rng.choice("abcdef"), w if rng.random() > 0.1 else None))
            if rng.random() > 0.4:
                w += 1
        subs.append(SubwordSentence(id=f"s{i}", pieces=tuple(pieces), model_tag="demo"))
    path = tmp_path / "tok.jsonl"
    write_subwords(subs, path)
    with open(path) as f:
        first = json.loads(f.readline())
    assert set(first) == {"id", "pieces", "model_tag"}
    assert set(first["pieces"][0]) == {"text", "word"}
    back = read_subwords(path)
    assert len(back) == 20
    for sub in subs:
        assert back[sub.id] == sub
