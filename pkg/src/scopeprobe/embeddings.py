"""Contextual-embedding interchange format and synthetic generator.

Binary layout (all little-endian):

    magic "SPEM" | u32 version=1 | u32 tag_len | tag | u32 dim | u64 count
    per record:   u32 id_len | id | u32 piece_count | float32 * (dim*pieces)
    trailing:     count * (u32 id_len | id | u64 record_offset) | u64 index_offset

The trailing index allows seeking straight to a record; the reader here
also verifies it against the records it actually saw.  A JSON-lines
variant with the same field names (one header line, then one object per
record) is accepted for small, human-inspectable fixtures.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .subword import SubwordSentence

MAGIC = b"SPEM"
VERSION = 1


class FormatError(ValueError):
    """File does not conform to the embedding interchange format."""


class EmbeddingStore:
    """Read-only random access to per-piece vectors by (sentence id, piece)."""

    def __init__(self, model_tag: str, dim: int):
        self.model_tag = model_tag
        self.dim = dim
        self._data: dict[str, np.ndarray] = {}

    def add(self, sent_id: str, vectors: np.ndarray) -> None:
        vectors = np.asarray(vectors, dtype=np.float32)
        if vectors.ndim != 2 or vectors.shape[1] != self.dim:
            raise FormatError(
                f"record {sent_id!r}: expected shape (*, {self.dim}), got {vectors.shape}")
        if sent_id in self._data:
            raise FormatError(f"duplicate sentence id {sent_id!r}")
        self._data[sent_id] = vectors

    def get(self, sent_id: str, piece: int) -> np.ndarray:
        sent = self.sentence(sent_id)
        if not 0 <= piece < len(sent):
            raise LookupError(
                f"piece {piece} out of range for {sent_id!r} ({len(sent)} pieces)")
        return sent[piece]

    def sentence(self, sent_id: str) -> np.ndarray:
        try:
            return self._data[sent_id]
        except KeyError:
            raise LookupError(f"unknown sentence id {sent_id!r}") from None

    def __contains__(self, sent_id) -> bool:
        return sent_id in self._data

    def __len__(self) -> int:
        return len(self._data)

    def records(self):
        return self._data.items()


def write_embeddings(path, records: Iterable[tuple[str, np.ndarray]],
                     model_tag: str, dim: int, fmt: str = "binary") -> None:
    if fmt == "binary":
        _write_binary(path, records, model_tag, dim)
    elif fmt == "jsonl":
        _write_jsonl(path, records, model_tag, dim)
    else:
        raise ValueError(f"unknown embedding format {fmt!r}")


def _write_binary(path, records, model_tag, dim):
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
                raise FormatError(
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


def _write_jsonl(path, records, model_tag, dim):
    lines = []
    count = 0
    for sent_id, vectors in records:
        vectors = np.asarray(vectors, dtype=np.float32)
        if vectors.ndim != 2 or vectors.shape[1] != dim:
            raise FormatError(
                f"record {sent_id!r}: expected shape (*, {dim}), got {vectors.shape}")
        lines.append(json.dumps({
            "id": sent_id,
            "pieces": int(vectors.shape[0]),
            "values": [float(v) for v in vectors.reshape(-1)],
        }))
        count += 1
    header = json.dumps({"magic": "SPEM", "version": VERSION,
                         "model_tag": model_tag, "dim": dim, "count": count})
    with open(path, "w", encoding="utf-8") as f:
        f.write(header + "\n")
        for line in lines:
            f.write(line + "\n")


def read_embeddings(path) -> EmbeddingStore:
    """Load an embedding file (binary or JSON-lines, detected by magic)."""
    with open(path, "rb") as f:
        head = f.read(4)
    if head == MAGIC:
        return _read_binary(path)
    return _read_jsonl(path)


def _read_binary(path) -> EmbeddingStore:
    with open(path, "rb") as f:
        data = f.read()
    if data[:4] != MAGIC:
        raise FormatError(f"bad magic {data[:4]!r}, expected {MAGIC!r}")
    pos = 4
    version, tag_len = struct.unpack_from("<II", data, pos)
    pos += 8
    if version != VERSION:
        raise FormatError(f"unsupported version {version}")
    model_tag = data[pos:pos + tag_len].decode("utf-8")
    pos += tag_len
    (dim,) = struct.unpack_from("<I", data, pos)
    pos += 4
    if dim == 0:
        raise FormatError("dim must be positive")
    (count,) = struct.unpack_from("<Q", data, pos)
    pos += 8
    store = EmbeddingStore(model_tag, dim)
    offsets = {}
    try:
        for _ in range(count):
            offsets_entry = pos
            (id_len,) = struct.unpack_from("<I", data, pos)
            pos += 4
            sent_id = data[pos:pos + id_len].decode("utf-8")
            pos += id_len
            (pieces,) = struct.unpack_from("<I", data, pos)
            pos += 4
            nbytes = 4 * dim * pieces
            if pos + nbytes > len(data):
                raise FormatError(f"truncated record {sent_id!r}")
            vectors = np.frombuffer(data[pos:pos + nbytes], dtype="<f4").reshape(pieces, dim)
            pos += nbytes
            store.add(sent_id, vectors)
            offsets[sent_id] = offsets_entry
    except struct.error as exc:
        raise FormatError("truncated file") from exc
    # verify the trailing index
    try:
        (index_offset,) = struct.unpack_from("<Q", data, len(data) - 8)
    except struct.error as exc:
        raise FormatError("missing trailing index") from exc
    if index_offset != pos:
        raise FormatError("trailing index offset does not match record end")
    for _ in range(count):
        (id_len,) = struct.unpack_from("<I", data, pos)
        pos += 4
        sent_id = data[pos:pos + id_len].decode("utf-8")
        pos += id_len
        (offset,) = struct.unpack_from("<Q", data, pos)
        pos += 8
        if offsets.get(sent_id) != offset:
            raise FormatError(f"index entry for {sent_id!r} does not match record offset")
    return store


def _read_jsonl(path) -> EmbeddingStore:
    with open(path, encoding="utf-8") as f:
        header_line = f.readline()
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError as exc:
            raise FormatError("not an embedding file (bad magic)") from exc
        if header.get("magic") != "SPEM":
            raise FormatError(f"bad magic {header.get('magic')!r}")
        if header.get("version") != VERSION:
            raise FormatError(f"unsupported version {header.get('version')}")
        dim = int(header["dim"])
        if dim <= 0:
            raise FormatError("dim must be positive")
        store = EmbeddingStore(header.get("model_tag", "unknown"), dim)
        n = 0
        for line in f:
            if not line.strip():
                continue
            rec = json.loads(line)
            values = np.asarray(rec["values"], dtype=np.float32)
            pieces = int(rec["pieces"])
            if values.size != pieces * dim:
                raise FormatError(
                    f"record {rec['id']!r}: {values.size} values for {pieces} pieces of dim {dim}")
            store.add(rec["id"], values.reshape(pieces, dim))
            n += 1
        if n != header.get("count", n):
            raise FormatError(f"header count {header.get('count')} but {n} records present")
    return store


# ---------------------------------------------------------------------------
# Synthetic embeddings with a planted signal


@dataclass(frozen=True)
class SignalSpec:
    """Plant a fixed direction on the pieces selected by ``select``."""

    select: Callable[[SubwordSentence, int], bool]
    magnitude: float


def synth_embeddings(subs: Iterable[SubwordSentence], dim: int,
                     signal: SignalSpec | None, seed: int) -> EmbeddingStore:
    """Gaussian noise vectors plus an optional planted signal.

    Deterministic for a fixed (corpus order, dim, seed).  The planted
    direction is one fixed unit vector per store.
    """
    rng = np.random.default_rng(seed)
    direction = rng.standard_normal(dim)
    direction /= np.linalg.norm(direction)
    store = EmbeddingStore("synthetic", dim)
    for sub in subs:
        vectors = rng.standard_normal((len(sub.pieces), dim))
        if signal is not None and signal.magnitude != 0:
            for i in range(len(sub.pieces)):
                if signal.select(sub, i):
                    vectors[i] += signal.magnitude * direction
        store.add(sub.id, vectors.astype(np.float32))
    return store
