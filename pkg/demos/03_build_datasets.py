"""Build the five dataset families over a generated corpus.

The corpus here comes from the template generator, whose parses are
correct by construction; any externally parsed corpus in the same file
formats works identically.
"""

import collections
import warnings

from scopeprobe import (
    annotate, build_clause_study, build_neg, build_notnpi, build_pol,
    build_target, whitespace_pieces,
)
from scopeprobe.synthcorpus import generate_corpus

corpus = generate_corpus(2000, seed=7)
subwords = {s.id: whitespace_pieces(s) for s in corpus}
annotations = {s.id: a for s in corpus if (a := annotate(s)) is not None}
print(f"{len(corpus)} sentences, {len(annotations)} with a licensing pattern")

# presence-of-negation, balanced, one input piece per sentence
manifest, neg = build_neg(corpus, subwords, 400, 400, seed=1)
print("\nNEG manifest:", manifest.to_json())

# masked polarity items, balanced per genre and pair
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    manifest, pol, masks = build_pol(corpus, subwords, per_pair_cap=150, seed=1)
pairs = collections.Counter(ex.meta["pair"] for ex in pol)
print("\nPOL examples per pair:", dict(pairs))
print(f"{len(masks)} mask instructions for the extractor")

# evaluation-only records over licensed sentences, all eligible pieces
notnpi, _ = build_notnpi(corpus, annotations, subwords, task="neg")
zones = collections.Counter(ex.meta["zone"] for ex in notnpi)
print("\nlicensed-sentence evaluation records by zone:", dict(zones))

# control family: an arbitrary target word instead of the negation
manifest, target = build_target(corpus, subwords, "baker", 150, seed=1)
print("\nTARGET split sizes:", manifest.split_sizes)

# clause-membership study around the same word
study = build_clause_study(corpus, subwords, "baker", n=500)
in_out = collections.Counter(ex.meta["in_clause"] for ex in study)
print("clause study records in/out:", dict(in_out))
