"""Project word zones onto two different subword tokenizations.

Positions count subword pieces: the whole negation complex sits at 0,
everything left of it at -1, -2, ... and everything right at 1, 2, ...
Contractions split differently across schemes, but the zones and the
positions of surrounding words stay comparable.
"""

from scopeprobe import (
    SubwordSentence, annotate, ingest, project_zones, word_zone_labels,
    zone_labels,
)

CONLLU = """\
# sent_id = demo
1\tI\t_\t_\tPRP\t_\t2\tnsubj\t_\t_
2\tsee\t_\t_\tVBP\t_\t0\troot\t_\t_
3\tI\t_\t_\tPRP\t_\t6\tnsubj\t_\t_
4-5\tdon't\t_\t_\t_\t_\t_\t_\t_\t_
4\tdo\t_\t_\tVBP\t_\t6\taux\t_\t_
5\tn't\t_\t_\tRB\t_\t6\tadvmod\t_\t_
6\tknow\t_\t_\tVB\t_\t2\tccomp\t_\t_
7\tanyone\t_\t_\tNN\t_\t6\tobj\t_\t_
8\there\t_\t_\tRB\t_\t6\tadvmod\t_\t_
9\t,\t_\t_\t,\t_\t6\tpunct\t_\t_
10\tI\t_\t_\tPRP\t_\t12\tnsubj\t_\t_
11\tmust\t_\t_\tMD\t_\t12\taux\t_\t_
12\tleave\t_\t_\tVB\t_\t6\tparataxis\t_\t_
13\t.\t_\t_\t.\t_\t2\tpunct\t_\t_
"""

PTB = (
    "(S (NP (PRP I)) (VP (VBP see) (SBAR (S "
    "(S (NP (PRP I)) (VP (VBP do) (RB n't) "
    "(VP (VB know) (NP (NN anyone)) (ADVP (RB here)) (, ,)))) "
    "(S (NP (PRP I)) (VP (MD must) (VP (VB leave))))))) (. .))"
)

sentence = ingest(CONLLU, PTB)[0]
ann = annotate(sentence)
labels, _ = zone_labels(sentence, ann)
word_zones = word_zone_labels(sentence, labels)

# "don't" as three pieces vs two, the way different schemes split it
wordpiece = SubwordSentence(id="demo", pieces=tuple([
    ("I", 0), ("see", 1), ("I", 2), ("don", 3), ("'", 3), ("t", 3),
    ("know", 4), ("anyone", 5), ("here", 6), (",", 7), ("I", 8),
    ("must", 9), ("leave", 10), (".", 11)]), model_tag="wordpiece-style")

bytebpe = SubwordSentence(id="demo", pieces=tuple([
    ("I", 0), ("see", 1), ("I", 2), ("don'", 3), ("t", 3),
    ("know", 4), ("anyone", 5), ("here", 6), (",", 7), ("I", 8),
    ("must", 9), ("leave", 10), (".", 11)]), model_tag="bytebpe-style")

for sub in (wordpiece, bytebpe):
    print(f"\n{sub.model_tag}:")
    zoned = project_zones(sentence, word_zones, sub)
    for piece, zt in zip(sub.pieces, zoned):
        note = "" if zt.eligible else "   (not an input candidate)"
        print(f"  {piece[0]:8s} zone={zt.zone:7s} position={zt.position:+d}{note}")
    print("  eligible input pieces:", sum(t.eligible for t in zoned))
