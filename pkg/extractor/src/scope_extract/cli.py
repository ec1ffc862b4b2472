"""Command-line entry point for hidden-state extraction."""

from __future__ import annotations

import argparse
import logging
import sys

from .extract import ExtractJob, extract, load_masks


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="extract",
        description="Dump frozen-model hidden states per subword piece")
    parser.add_argument("--model", required=True, help="model name or local path")
    parser.add_argument("--layer", type=int, default=-1,
                        help="hidden layer to dump (default: last)")
    parser.add_argument("--corpus", required=True, help="corpus.db (JSON lines)")
    parser.add_argument("--mask", help="mask instructions JSON (sentence, word pairs)")
    parser.add_argument("--out", required=True, help="embedding file path")
    parser.add_argument("--tok", required=True, help="tokenization file path")
    parser.add_argument("--batch-size", type=int, default=16)
    parser.add_argument("--device", default="cpu")
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    try:
        import transformers
        transformers.logging.set_verbosity_error()
    except Exception:
        pass
    job = ExtractJob(
        model=args.model,
        corpus=args.corpus,
        out_embeddings=args.out,
        out_tokenization=args.tok,
        layer=args.layer,
        masks=load_masks(args.mask) if args.mask else {},
        batch_size=args.batch_size,
        device=args.device,
    )
    result = extract(job)
    print(f"wrote {result.written} sentences (dim {result.dim}, "
          f"model {result.model_tag}) -> {args.out}")
    if result.skipped:
        print(f"skipped {len(result.skipped)} sentences (see log)", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
