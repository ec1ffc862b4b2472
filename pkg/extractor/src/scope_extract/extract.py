"""Dump per-piece hidden states of a frozen masked language model.

Sentences come from a corpus file of pre-tokenized words; they are
detokenized, run through the model's own tokenizer, and aligned back
to words by character offsets.  Special tokens are dropped from the
output, so the embedding rows correspond one to one with the pieces in
the tokenization file.  Sentences whose pieces cannot be aligned are
skipped with a log entry.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field

import numpy as np
import torch
from transformers import AutoModel, AutoTokenizer

from .detok import detokenize
from .emio import read_corpus_words, write_embedding_file, write_tokenization_file

logger = logging.getLogger("scope_extract")


@dataclass
class ExtractJob:
    model: str
    corpus: str
    out_embeddings: str
    out_tokenization: str
    layer: int = -1
    masks: dict[str, int] = field(default_factory=dict)
    batch_size: int = 16
    device: str = "cpu"


@dataclass
class ExtractResult:
    written: int
    skipped: list[str]
    dim: int
    model_tag: str


def load_masks(path) -> dict[str, int]:
    import json
    with open(path, encoding="utf-8") as f:
        rows = json.load(f)
    masks = {}
    for row in rows:
        sid, word = row["sentence"], row["word"]
        if masks.get(sid, word) != word:
            raise ValueError(f"conflicting mask instructions for sentence {sid!r}")
        masks[sid] = word
    return masks


def extract(job: ExtractJob) -> ExtractResult:
    tokenizer = AutoTokenizer.from_pretrained(job.model, use_fast=True)
    tokenizer.padding_side = "right"  # keeps piece positions stable under padding
    model = AutoModel.from_pretrained(job.model)
    model.eval()
    model.to(job.device)
    depth = model.config.num_hidden_layers
    if not -(depth + 1) <= job.layer <= depth:
        raise ValueError(f"layer {job.layer} outside model depth {depth}")
    dim = model.config.hidden_size
    model_tag = os.path.basename(os.path.normpath(job.model))

    sentences = read_corpus_words(job.corpus)
    prepared = []
    skipped = []
    for sent_id, words in sentences:
        prep = _prepare(sent_id, words, job.masks.get(sent_id), tokenizer)
        if prep is None:
            skipped.append(sent_id)
        else:
            prepared.append(prep)

    emb_records = []
    tok_rows = []
    for start in range(0, len(prepared), job.batch_size):
        batch = prepared[start:start + job.batch_size]
        vectors = _hidden_states(model, tokenizer, batch, job.layer, job.device)
        for (sent_id, _, pieces, _), mat in zip(batch, vectors):
            emb_records.append((sent_id, mat))
            tok_rows.append({
                "id": sent_id,
                "pieces": [{"text": t, "word": w} for t, w in pieces],
                "model_tag": model_tag,
            })
    written = write_embedding_file(job.out_embeddings, emb_records, model_tag, dim)
    write_tokenization_file(job.out_tokenization, tok_rows)
    if skipped:
        logger.warning("skipped %d unalignable sentences: %s",
                       len(skipped), ", ".join(skipped[:10]))
    return ExtractResult(written=written, skipped=skipped, dim=dim, model_tag=model_tag)


def _prepare(sent_id, words, mask_word, tokenizer):
    """Detokenize, tokenize, and align pieces to words for one sentence."""
    if mask_word is not None:
        if not 0 <= mask_word < len(words):
            logger.warning("%s: mask word %s out of range", sent_id, mask_word)
            return None
        words = list(words)
        words[mask_word] = tokenizer.mask_token
    text, spans = detokenize(words)
    enc = tokenizer(text, return_offsets_mapping=True, return_special_tokens_mask=True)
    pieces = []
    keep_positions = []
    covered = set()
    tokens = tokenizer.convert_ids_to_tokens(enc["input_ids"])
    for pos, (token, (a, b), special) in enumerate(
            zip(tokens, enc["offset_mapping"], enc["special_tokens_mask"])):
        if special:
            continue
        while a < b and text[a] == " ":  # byte-level schemes absorb the space
            a += 1
        word = _containing_word(spans, a, b)
        if word is None:
            logger.warning("%s: piece %r at chars [%d, %d) crosses word boundaries",
                           sent_id, token, a, b)
            return None
        covered.add(word)
        pieces.append((token, None if word == mask_word else word))
        keep_positions.append(pos)
    expected = set(range(len(words)))
    if covered != expected:
        logger.warning("%s: words %s received no piece",
                       sent_id, sorted(expected - covered))
        return None
    if mask_word is not None and sum(1 for _, w in pieces if w is None) != 1:
        logger.warning("%s: mask did not surface as exactly one piece", sent_id)
        return None
    return sent_id, text, pieces, keep_positions


def _containing_word(spans, a, b):
    for w, (lo, hi) in enumerate(spans):
        if lo <= a and b <= hi:
            return w
    return None


def _hidden_states(model, tokenizer, batch, layer, device):
    """Per-sentence (pieces, hidden) matrices for one padded batch."""
    texts = [text for _, text, _, _ in batch]
    enc = tokenizer(texts, padding=True, return_tensors="pt")
    enc = {k: v.to(device) for k, v in enc.items()}
    with torch.no_grad():
        out = model(**enc, output_hidden_states=True)
    states = out.hidden_states[layer]
    result = []
    for i, (_, _, pieces, keep_positions) in enumerate(batch):
        mat = states[i, keep_positions, :].cpu().numpy().astype(np.float32)
        assert mat.shape[0] == len(pieces)
        result.append(mat)
    return result
