"""Command-line pipeline: ingest, annotate, build, train, analyse."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import (
    analysis, datasets, embeddings, probe, scopes, subword, treebank,
)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    return args.func(args) or 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scope-probe",
        description="Negation-scope annotation and embedding probing")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("ingest", help="merge CoNLL-U and bracketed trees into a corpus file")
    p.add_argument("--conllu", required=True)
    p.add_argument("--ptb", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--genre", help="genre tag for sentences that carry none")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("annotate", help="detect licensing patterns, scopes and zones")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("build", help="build a probing dataset family")
    p.add_argument("family", choices=["neg", "pol", "notnpi", "target", "clause"])
    p.add_argument("--corpus", required=True)
    p.add_argument("--tok", required=True, help="tokenizer pieces (JSON lines)")
    p.add_argument("--ann", help="annotation file (needed for notnpi)")
    p.add_argument("--emb", help="embedding file; when given, referenced pieces are checked")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output prefix")
    p.add_argument("--n", type=int, default=1000, help="sentences per label (neg/target)")
    p.add_argument("--cap", type=int, default=2000, help="per-pair cap (pol)")
    p.add_argument("--target", help="target word (target/clause)")
    p.add_argument("--task", choices=["neg", "pol"], default="neg",
                   help="evaluation task for notnpi records")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("train", help="train probe runs and dump correctness records")
    p.add_argument("--family", required=True)
    p.add_argument("--config", help="probe config JSON")
    p.add_argument("--runs", type=int, default=3)
    p.add_argument("--examples", required=True)
    p.add_argument("--emb", required=True)
    p.add_argument("--eval", dest="eval_examples",
                   help="extra example file to evaluate instead of the test split")
    p.add_argument("--eval-emb", help="embedding file for --eval (defaults to --emb)")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("breakdown", help="zone/position accuracy report from correctness records")
    p.add_argument("--results", required=True)
    p.add_argument("--out", required=True, help="plot-data CSV path")
    p.add_argument("--gap-out", help="write the accuracy gap as JSON")
    p.set_defaults(func=cmd_breakdown)

    p = sub.add_parser("permtest", help="per-position zone significance tests")
    p.add_argument("--results", required=True)
    p.add_argument("--n-perm", type=int, default=5000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write test results as JSON")
    p.set_defaults(func=cmd_permtest)

    p = sub.add_parser("clause-gap", help="in/out-of-clause accuracy from study records")
    p.add_argument("--results", required=True)
    p.add_argument("--window", type=int, default=8)
    p.set_defaults(func=cmd_clause_gap)
    return parser


def cmd_ingest(args):
    with open(args.conllu, encoding="utf-8") as f:
        conllu_text = f.read()
    with open(args.ptb, encoding="utf-8") as f:
        ptb_text = f.read()
    sentences = treebank.ingest(conllu_text, ptb_text)
    if args.genre:
        for s in sentences:
            s.meta.setdefault("genre", args.genre)
    treebank.write_corpus(sentences, args.out)
    print(f"ingested {len(sentences)} sentences -> {args.out}")


def cmd_annotate(args):
    corpus = treebank.read_corpus(args.corpus)
    n = skipped = 0
    annotated = []
    with open(args.out, "w", encoding="utf-8") as f:
        for s in corpus:
            if s.consttree is None:
                skipped += 1
                continue
            ann = scopes.annotate(s)
            if ann is None:
                continue
            annotated.append((s, ann))
            f.write(json.dumps(scopes.annotation_to_record(s, ann), sort_keys=True) + "\n")
            n += 1
    print(f"annotated {n}/{len(corpus)} sentences -> {args.out}")
    total, in_only, prein_only, both = scopes.count_prein_npi(annotated)
    print(f"polarity items by zone: {total} matched sentences, "
          f"{in_only} with items only in IN, {prein_only} only in PRE_IN, {both} in both")
    if skipped:
        print(f"skipped {skipped} sentences without a constituency tree", file=sys.stderr)


def read_annotations(path):
    out = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.strip():
                rec = json.loads(line)
                out[rec["id"]] = scopes.annotation_from_record(rec)
    return out


def cmd_build(args):
    corpus = treebank.read_corpus(args.corpus)
    subs = subword.read_subwords(args.tok)
    chash = treebank.corpus_hash(args.corpus)
    prefix = Path(args.out)
    masks = None
    manifest = None

    if args.family == "neg":
        manifest, examples = datasets.build_neg(
            corpus, subs, args.n, args.n, args.seed, corpus_hash=chash)
    elif args.family == "pol":
        manifest, examples, masks = datasets.build_pol(
            corpus, subs, args.cap, args.seed, corpus_hash=chash)
    elif args.family == "notnpi":
        if not args.ann:
            print("notnpi needs --ann", file=sys.stderr)
            return 2
        anns = read_annotations(args.ann)
        examples, masks = datasets.build_notnpi(corpus, anns, subs, task=args.task)
    elif args.family == "target":
        if not args.target:
            print("target family needs --target", file=sys.stderr)
            return 2
        manifest, examples = datasets.build_target(
            corpus, subs, args.target, args.n, args.seed, corpus_hash=chash)
    else:
        if not args.target:
            print("clause family needs --target", file=sys.stderr)
            return 2
        examples = datasets.build_clause_study(corpus, subs, args.target, args.n)

    if args.emb:
        store = embeddings.read_embeddings(args.emb)
        for ex in examples:
            store.get(ex.sentence_id, ex.piece)

    datasets.write_examples(examples, f"{prefix}.examples.jsonl")
    print(f"{args.family}: {len(examples)} examples -> {prefix}.examples.jsonl")
    if manifest is not None:
        datasets.check_balance(manifest)
        datasets.check_disjoint(examples)
        with open(f"{prefix}.manifest.json", "w", encoding="utf-8") as f:
            f.write(manifest.to_json() + "\n")
        print(f"manifest -> {prefix}.manifest.json")
    if masks:
        with open(f"{prefix}.masks.json", "w", encoding="utf-8") as f:
            json.dump(masks, f, sort_keys=True)
        print(f"{len(masks)} mask instructions -> {prefix}.masks.json")


def cmd_train(args):
    examples = datasets.read_examples(args.examples)
    store = embeddings.read_embeddings(args.emb)
    cfg_fields = {}
    if args.config:
        with open(args.config, encoding="utf-8") as f:
            cfg_fields = json.load(f)
    config = probe.ProbeConfig(**cfg_fields)

    train_ex = [ex for ex in examples if ex.meta.get("split") == "train"]
    test_ex = [ex for ex in examples if ex.meta.get("split") == "test"]
    if not train_ex:
        print("no training split in the example file", file=sys.stderr)
        return 2
    X_tr, y_tr = datasets.attach_embeddings(train_ex, store)

    if args.eval_examples:
        eval_ex = datasets.read_examples(args.eval_examples)
        eval_store = (embeddings.read_embeddings(args.eval_emb)
                      if args.eval_emb else store)
    else:
        eval_ex = test_ex
        eval_store = store
    X_ev, y_ev = datasets.attach_embeddings(eval_ex, eval_store)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    results = []
    with open(out_dir / "correctness.jsonl", "w", encoding="utf-8") as f:
        for run in range(args.runs):
            cfg = probe.ProbeConfig(**{**cfg_fields, "seed": config.seed + run})
            model = probe.train(cfg, X_tr, y_tr)
            ev = probe.evaluate(model, X_ev, y_ev)
            probe.save_model(model, out_dir / f"run{run}.probe")
            results.append(ev.accuracy)
            for ex, ok in zip(eval_ex, ev.correct):
                rec = {"sentence": ex.sentence_id, "piece": ex.piece,
                       "run": run, "correct": bool(ok), "label": ex.label}
                for key in ("zone", "position", "in_clause"):
                    if key in ex.meta:
                        rec[key] = ex.meta[key]
                f.write(json.dumps(rec, sort_keys=True) + "\n")
            print(f"run {run} ({args.family}): accuracy {ev.accuracy:.4f} "
                  f"on {len(eval_ex)} examples")
    summary = {
        "family": args.family,
        "runs": args.runs,
        "accuracies": results,
        "mean_accuracy": sum(results) / len(results),
        "config": {**cfg_fields, "seed": config.seed},
    }
    with open(out_dir / "summary.json", "w", encoding="utf-8") as f:
        json.dump(summary, f, sort_keys=True, indent=2)
    print(f"mean accuracy {summary['mean_accuracy']:.4f} -> {out_dir}")


def _read_results(path):
    out = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.strip():
                out.append(json.loads(line))
    return out


def cmd_breakdown(args):
    records = [r for r in _read_results(args.results) if r.get("zone") is not None]
    report = analysis.breakdown(records)
    analysis.emit_plot_data(report, args.out)
    gap = analysis.accuracy_gap(report)
    print(f"{len(records)} records, {len(report.cells)} cells -> {args.out}")
    print(f"accuracy gap: {gap.gap:.2f} points (stdev {gap.stdev:.2f}, "
          f"coverage {gap.coverage})")
    if args.gap_out:
        with open(args.gap_out, "w", encoding="utf-8") as f:
            json.dump({"gap": gap.gap, "stdev": gap.stdev,
                       "per_run": gap.per_run, "positions": gap.positions,
                       "coverage": gap.coverage}, f, sort_keys=True)
    return 0


def cmd_permtest(args):
    records = [r for r in _read_results(args.results) if r.get("zone") is not None]
    report = analysis.breakdown(records)
    by_cell = {}
    for r in records:
        by_cell.setdefault((r["zone"], r["position"], r.get("run", 0)), []).append(
            1.0 if r["correct"] else 0.0)
    tests = analysis.paired_zone_tests(report, by_cell, n_perm=args.n_perm, seed=args.seed)
    for t in tests:
        marker = "*" if t.significant else " "
        print(f"{marker} {t.comparison}: diff {t.statistic:+.4f}  p={t.p_value:.5f}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            json.dump([{"comparison": t.comparison, "statistic": t.statistic,
                        "p_value": t.p_value, "permutations": t.permutations,
                        "alpha": t.alpha} for t in tests], f, sort_keys=True)
    return 0


def cmd_clause_gap(args):
    records = _read_results(args.results)
    in_acc, out_acc, gap = analysis.clause_gap(records, window=args.window)
    print(f"in-clause accuracy:  {in_acc:.4f}")
    print(f"out-of-clause accuracy: {out_acc:.4f}")
    print(f"gap: {gap:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
