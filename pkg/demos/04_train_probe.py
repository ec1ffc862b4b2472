"""Train probes on synthetic embeddings with and without a planted signal.

A direction added only to negation-scope pieces is recoverable by the
probe; with magnitude zero the same pipeline stays at chance.
"""

import numpy as np

from scopeprobe import (
    IN, PRE_IN, ProbeConfig, SignalSpec, annotate, attach_embeddings,
    build_neg, run_suite, synth_embeddings, whitespace_pieces,
    word_zone_labels, zone_labels,
)
from scopeprobe.synthcorpus import generate_corpus

corpus = generate_corpus(2000, seed=11)
subwords = {s.id: whitespace_pieces(s) for s in corpus}
zones = {}
for s in corpus:
    ann = annotate(s)
    if ann is not None:
        labels, _ = zone_labels(s, ann)
        zones[s.id] = word_zone_labels(s, labels)


def in_scope(sub, piece):
    word_zones = zones.get(sub.id)
    if word_zones is None:
        return False
    word = sub.pieces[piece][1]
    return word is not None and word_zones[word] in (PRE_IN, IN)


_, examples = build_neg(corpus, subwords, 600, 600, seed=3)
train_ex = [e for e in examples if e.meta["split"] == "train"]
test_ex = [e for e in examples if e.meta["split"] == "test"]

config = ProbeConfig(hidden_layers=2, hidden_width=100, epochs=10,
                     learning_rate=0.01, seed=0)
for magnitude in (6.0, 0.0):
    signal = SignalSpec(select=in_scope, magnitude=magnitude)
    store = synth_embeddings(subwords.values(), dim=16, signal=signal, seed=21)
    X_tr, y_tr = attach_embeddings(train_ex, store)
    X_te, y_te = attach_embeddings(test_ex, store)
    runs = run_suite(config, (X_tr, y_tr), (X_te, y_te), n_runs=3)
    accs = [r.eval.accuracy for r in runs]
    print(f"signal magnitude {magnitude}: "
          f"test accuracy {np.mean(accs):.3f} (runs: {[round(a, 3) for a in accs]})")
print("\nwith signal, accuracy reflects how often the random input piece "
      "fell inside the scope; without it, chance.")
