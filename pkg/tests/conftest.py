"""Shared frozen-parse fixtures.

The dependency and constituency analyses here are hand-checked
fixtures in the conventions of UD English and the Penn Treebank; they
stand in for parser output, which the toolkit never produces itself.
"""

import pytest

from scopeprobe import SubwordSentence, ingest

WORKED_CONLLU = """\
# sent_id = worked
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

WORKED_PTB = (
    "(S (NP (PRP I)) (VP (VBP see) (SBAR (S "
    "(S (NP (PRP I)) (VP (VBP do) (RB n't) "
    "(VP (VB know) (NP (NN anyone)) (ADVP (RB here)) (, ,)))) "
    "(S (NP (PRP I)) (VP (MD must) (VP (VB leave))))))) (. .))"
)

# "I have my taxi and I'm not going anywhere but my brother will leave
# Spain because he has a degree."
P12_CONLLU = """\
# sent_id = ex-p12
1\tI\t_\t_\tPRP\t_\t2\tnsubj\t_\t_
2\thave\t_\t_\tVBP\t_\t0\troot\t_\t_
3\tmy\t_\t_\tPRP$\t_\t4\tnmod:poss\t_\t_
4\ttaxi\t_\t_\tNN\t_\t2\tobj\t_\t_
5\tand\t_\t_\tCC\t_\t9\tcc\t_\t_
6-7\tI'm\t_\t_\t_\t_\t_\t_\t_\t_
6\tI\t_\t_\tPRP\t_\t9\tnsubj\t_\t_
7\t'm\t_\t_\tVBP\t_\t9\taux\t_\t_
8\tnot\t_\t_\tRB\t_\t9\tadvmod\t_\t_
9\tgoing\t_\t_\tVBG\t_\t2\tconj\t_\t_
10\tanywhere\t_\t_\tRB\t_\t9\tadvmod\t_\t_
11\tbut\t_\t_\tCC\t_\t15\tcc\t_\t_
12\tmy\t_\t_\tPRP$\t_\t13\tnmod:poss\t_\t_
13\tbrother\t_\t_\tNN\t_\t15\tnsubj\t_\t_
14\twill\t_\t_\tMD\t_\t15\taux\t_\t_
15\tleave\t_\t_\tVB\t_\t2\tconj\t_\t_
16\tSpain\t_\t_\tNNP\t_\t15\tobj\t_\t_
17\tbecause\t_\t_\tIN\t_\t19\tmark\t_\t_
18\the\t_\t_\tPRP\t_\t19\tnsubj\t_\t_
19\thas\t_\t_\tVBZ\t_\t15\tadvcl\t_\t_
20\ta\t_\t_\tDT\t_\t21\tdet\t_\t_
21\tdegree\t_\t_\tNN\t_\t19\tobj\t_\t_
22\t.\t_\t_\t.\t_\t2\tpunct\t_\t_
"""

P12_PTB = (
    "(S (S (NP (PRP I)) (VP (VBP have) (NP (PRP$ my) (NN taxi)))) (CC and) "
    "(S (NP (PRP I)) (VP (VBP 'm) (RB not) (VP (VBG going) (ADVP (RB anywhere))))) "
    "(CC but) (S (NP (PRP$ my) (NN brother)) (VP (MD will) (VP (VB leave) "
    "(NP (NNP Spain)) (SBAR (IN because) (S (NP (PRP he)) (VP (VBZ has) "
    "(NP (DT a) (NN degree)))))))) (. .))"
)

# "Since it is kind of this fairy-tale land, there aren't any rules of
# logic so you can do anything, she says."
P3_CONLLU = """\
# sent_id = ex-p3
1\tSince\t_\t_\tIN\t_\t4\tmark\t_\t_
2\tit\t_\t_\tPRP\t_\t4\tnsubj\t_\t_
3\tis\t_\t_\tVBZ\t_\t4\tcop\t_\t_
4\tkind\t_\t_\tNN\t_\t11\tadvcl\t_\t_
5\tof\t_\t_\tIN\t_\t8\tcase\t_\t_
6\tthis\t_\t_\tDT\t_\t8\tdet\t_\t_
7\tfairy-tale\t_\t_\tJJ\t_\t8\tamod\t_\t_
8\tland\t_\t_\tNN\t_\t4\tnmod\t_\t_
9\t,\t_\t_\t,\t_\t11\tpunct\t_\t_
10\tthere\t_\t_\tEX\t_\t11\texpl\t_\t_
11-12\taren't\t_\t_\t_\t_\t_\t_\t_\t_
11\tare\t_\t_\tVBP\t_\t24\tccomp\t_\t_
12\tn't\t_\t_\tRB\t_\t11\tadvmod\t_\t_
13\tany\t_\t_\tDT\t_\t14\tdet\t_\t_
14\trules\t_\t_\tNNS\t_\t11\tnsubj\t_\t_
15\tof\t_\t_\tIN\t_\t16\tcase\t_\t_
16\tlogic\t_\t_\tNN\t_\t14\tnmod\t_\t_
17\tso\t_\t_\tIN\t_\t20\tmark\t_\t_
18\tyou\t_\t_\tPRP\t_\t20\tnsubj\t_\t_
19\tcan\t_\t_\tMD\t_\t20\taux\t_\t_
20\tdo\t_\t_\tVB\t_\t11\tadvcl\t_\t_
21\tanything\t_\t_\tNN\t_\t20\tobj\t_\t_
22\t,\t_\t_\t,\t_\t24\tpunct\t_\t_
23\tshe\t_\t_\tPRP\t_\t24\tnsubj\t_\t_
24\tsays\t_\t_\tVBZ\t_\t0\troot\t_\t_
25\t.\t_\t_\t.\t_\t24\tpunct\t_\t_
"""

P3_PTB = (
    "(S (SBAR (IN Since) (S (NP (PRP it)) (VP (VBZ is) (NP (NP (NN kind)) "
    "(PP (IN of) (NP (DT this) (JJ fairy-tale) (NN land))))))) (, ,) "
    "(S (NP (EX there)) (VP (VBP are) (RB n't) (NP (NP (DT any) (NNS rules)) "
    "(PP (IN of) (NP (NN logic)))) (SBAR (IN so) (S (NP (PRP you)) "
    "(VP (MD can) (VP (VB do) (NP (NN anything)))))))) (, ,) "
    "(NP (PRP she)) (VP (VBZ says)) (. .))"
)

# "I went in early, not wanting anyone to see me and hoping for no
# line at the counter."
P5_CONLLU = """\
# sent_id = ex-p5
1\tI\t_\t_\tPRP\t_\t2\tnsubj\t_\t_
2\twent\t_\t_\tVBD\t_\t0\troot\t_\t_
3\tin\t_\t_\tRB\t_\t2\tadvmod\t_\t_
4\tearly\t_\t_\tRB\t_\t2\tadvmod\t_\t_
5\t,\t_\t_\t,\t_\t2\tpunct\t_\t_
6\tnot\t_\t_\tRB\t_\t7\tadvmod\t_\t_
7\twanting\t_\t_\tVBG\t_\t2\tadvcl\t_\t_
8\tanyone\t_\t_\tNN\t_\t7\tobj\t_\t_
9\tto\t_\t_\tTO\t_\t10\tmark\t_\t_
10\tsee\t_\t_\tVB\t_\t7\txcomp\t_\t_
11\tme\t_\t_\tPRP\t_\t10\tobj\t_\t_
12\tand\t_\t_\tCC\t_\t13\tcc\t_\t_
13\thoping\t_\t_\tVBG\t_\t7\tconj\t_\t_
14\tfor\t_\t_\tIN\t_\t16\tcase\t_\t_
15\tno\t_\t_\tDT\t_\t16\tdet\t_\t_
16\tline\t_\t_\tNN\t_\t13\tobl\t_\t_
17\tat\t_\t_\tIN\t_\t19\tcase\t_\t_
18\tthe\t_\t_\tDT\t_\t19\tdet\t_\t_
19\tcounter\t_\t_\tNN\t_\t16\tnmod\t_\t_
20\t.\t_\t_\t.\t_\t2\tpunct\t_\t_
"""

P5_PTB = (
    "(S (NP (PRP I)) (VP (VBD went) (ADVP (RB in)) (ADVP (RB early))) (, ,) "
    "(S (S (RB not) (VP (VBG wanting) (S (NP (NN anyone)) (VP (TO to) "
    "(VP (VB see) (NP (PRP me))))))) (CC and) (S (VP (VBG hoping) "
    "(PP (IN for) (NP (NP (DT no) (NN line)) (PP (IN at) "
    "(NP (DT the) (NN counter)))))))) (. .))"
)


def _single(conllu, ptb):
    return ingest(conllu, ptb)[0]


@pytest.fixture(scope="session")
def worked_sentence():
    return _single(WORKED_CONLLU, WORKED_PTB)


@pytest.fixture(scope="session")
def p12_sentence():
    return _single(P12_CONLLU, P12_PTB)


@pytest.fixture(scope="session")
def p3_sentence():
    return _single(P3_CONLLU, P3_PTB)


@pytest.fixture(scope="session")
def p5_sentence():
    return _single(P5_CONLLU, P5_PTB)


@pytest.fixture(scope="session")
def worked_wordpiece():
    # don't -> don + ' + t, punctuation split off
    return SubwordSentence(id="worked", pieces=tuple([
        ("I", 0), ("see", 1), ("I", 2), ("don", 3), ("'", 3), ("t", 3),
        ("know", 4), ("anyone", 5), ("here", 6), (",", 7), ("I", 8),
        ("must", 9), ("leave", 10), (".", 11)]), model_tag="wordpiece-style")


@pytest.fixture(scope="session")
def worked_bytebpe():
    # don't -> don' + t
    return SubwordSentence(id="worked", pieces=tuple([
        ("I", 0), ("see", 1), ("I", 2), ("don'", 3), ("t", 3),
        ("know", 4), ("anyone", 5), ("here", 6), (",", 7), ("I", 8),
        ("must", 9), ("leave", 10), (".", 11)]), model_tag="bytebpe-style")
