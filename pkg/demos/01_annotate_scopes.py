"""Annotate one sentence: licensing pattern, scopes, and zones.

The toolkit never parses text itself; parses arrive as CoNLL-U plus
bracketed trees produced from the same tokenization.  Here both come
from small inline fixtures.
"""

from scopeprobe import annotate, ingest, word_zone_labels, zone_labels

CONLLU = """\
# sent_id = demo
# genre = spoken
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
print("tokens:      ", " ".join(sentence.surfaces))
print("words:       ", " ".join(sentence.word_surfaces()))

ann = annotate(sentence)
print(f"\npattern {ann.pattern}, negation at token {ann.not_index}")
span = range(*ann.licensing_span)
print("licensing span:", " ".join(sentence.tokens[i].surface for i in span))
print("negation scope:", " ".join(
    sentence.tokens[i].surface for i in sorted(ann.neg_scope)))
print("negation complex:", " ".join(
    sentence.tokens[i].surface for i in sorted(ann.neg_complex)))

labels, flags = zone_labels(sentence, ann)
print("\ntoken zones:")
for tok, zone in zip(sentence.tokens, labels):
    marker = "  <- forced" if tok.index in flags else ""
    print(f"  {tok.surface:10s} {zone}{marker}")

print("\nword-level zones:", word_zone_labels(sentence, labels))
