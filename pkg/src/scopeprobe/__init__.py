"""Negation-scope annotation and embedding-probing toolkit."""

from .treebank import (
    Token, ConstTree, ParsedSentence,
    read_conllu, read_ptb, print_ptb, align_parses, ingest,
    read_corpus, write_corpus, corpus_hash,
    ParseError, ValidationError, AlignmentError,
)
from .scopes import (
    PRE, PRE_IN, NOT, IN, POST, ZONES,
    PatternSpec, ScopeAnnotation, PATTERNS, P12, P3, P5,
    match_neg_patterns, neg_scope, neg_complex, annotate,
    zone_labels, word_zone_labels, clause_of, count_prein_npi,
)
from .subword import (
    SubwordSentence, ZonedToken,
    project_zones, mark_eligible, piece_positions, eligible_indices,
    read_subwords, write_subwords, whitespace_pieces, mask_word,
)
from .embeddings import (
    EmbeddingStore, SignalSpec,
    read_embeddings, write_embeddings, synth_embeddings, FormatError,
)
from .datasets import (
    ProbeExample, DatasetManifest, DatasetError, PI_PAIRS,
    build_neg, build_pol, build_notnpi, build_target, build_clause_study,
    attach_embeddings, read_examples, write_examples,
    check_balance, check_disjoint,
)
from .probe import (
    ProbeConfig, ProbeModel, EvalResult, RunResult,
    train, evaluate, run_suite, summarize_runs, save_model, load_model,
    grid_configs,
)
from .analysis import (
    BreakdownReport, GapResult, PermTestResult,
    breakdown, accuracy_gap, perm_test, paired_zone_tests,
    clause_gap, emit_plot_data, read_plot_data,
)

__version__ = "0.1.0"
