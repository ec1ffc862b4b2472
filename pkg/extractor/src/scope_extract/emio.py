"""Writers for the scope-probe interchange files.

The embedding layout (little-endian):

    magic "SPEM" | u32 version=1 | u32 tag_len | tag | u32 dim | u64 count
    per record:   u32 id_len | id | u32 piece_count | float32 * (dim*pieces)
    trailing:     count * (u32 id_len | id | u64 record_offset) | u64 index_offset

Tokenization files are JSON lines: {"id", "pieces": [{"text", "word"}],
"model_tag"}, with ``word: null`` marking a masked piece.
"""

from __future__ import annotations

import json
import struct

import numpy as np

MAGIC = b"SPEM"
VERSION = 1


def write_embedding_file(path, records, model_tag: str, dim: int) -> int:
    """Write (sentence id, piece-count x dim float32) records; returns count."""
    tag = model_tag.encode("utf-8")
    index = []
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<II", VERSION, len(tag)))
        f.write(tag)
        f.write(struct.pack("<I", dim))
        count_pos = f.tell()
        f.write(struct.pack("<Q", 0))
        count = 0
        for sent_id, vectors in records:
            vectors = np.ascontiguousarray(vectors, dtype="<f4")
            if vectors.ndim != 2 or vectors.shape[1] != dim:
                raise ValueError(
                    f"record {sent_id!r}: expected shape (*, {dim}), got {vectors.shape}")
            ident = sent_id.encode("utf-8")
            index.append((ident, f.tell()))
            f.write(struct.pack("<I", len(ident)))
            f.write(ident)
            f.write(struct.pack("<I", vectors.shape[0]))
            f.write(vectors.tobytes())
            count += 1
        index_offset = f.tell()
        for ident, offset in index:
            f.write(struct.pack("<I", len(ident)))
            f.write(ident)
            f.write(struct.pack("<Q", offset))
        f.write(struct.pack("<Q", index_offset))
        f.seek(count_pos)
        f.write(struct.pack("<Q", count))
    return count


def write_tokenization_file(path, rows) -> None:
    """Write {id, pieces, model_tag} rows as JSON lines."""
    with open(path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False) + "\n")


def read_corpus_words(path):
    """Word sequences from a corpus.db file: (sentence id, words, genre)."""
    out = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            rec = json.loads(line)
            words = []
            last = None
            for tok in rec["tokens"]:
                group = tok.get("word", len(words))
                if group == last:
                    words[-1] += tok["surface"]
                else:
                    words.append(tok["surface"])
                    last = group
            out.append((rec["id"], words))
    return out
