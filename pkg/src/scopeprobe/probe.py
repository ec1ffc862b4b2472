"""Binary MLP probes over fixed input embeddings.

A probe is a small feed-forward network (rectifier hiddens, 2-way
softmax output) trained with plain mini-batch SGD on frozen embedding
vectors.  Everything is numpy float64 and fully deterministic for a
given seed: fixed init, fixed shuffle order, fixed summation order.
Analytic gradients are exposed for verification against finite
differences.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, asdict

import numpy as np

CHECKPOINT_MAGIC = b"SPPM"
CHECKPOINT_VERSION = 1

# tuning grid; the defaults below are the selected point
GRID_HIDDEN_LAYERS = (1, 2)
GRID_HIDDEN_WIDTH = (20, 50, 100, 450, 1000)
GRID_LEARNING_RATE = (1.0, 0.1, 0.01, 0.001)


@dataclass(frozen=True)
class ProbeConfig:
    hidden_layers: int = 2
    hidden_width: int = 450
    learning_rate: float = 0.001
    epochs: int = 10
    batch_size: int = 64
    seed: int = 0
    optimizer: str = "sgd"

    def __post_init__(self):
        if self.optimizer != "sgd":
            raise ValueError(f"unsupported optimizer {self.optimizer!r}")
        if self.hidden_layers < 1 or self.hidden_width < 1:
            raise ValueError("need at least one hidden layer of positive width")


def grid_configs(base: ProbeConfig | None = None):
    """Enumerate the tuning grid around a base config."""
    base = base or ProbeConfig()
    for layers in GRID_HIDDEN_LAYERS:
        for width in GRID_HIDDEN_WIDTH:
            for lr in GRID_LEARNING_RATE:
                yield ProbeConfig(
                    hidden_layers=layers, hidden_width=width, learning_rate=lr,
                    epochs=base.epochs, batch_size=base.batch_size,
                    seed=base.seed, optimizer=base.optimizer)


class ProbeModel:
    """Weights of one trained probe."""

    def __init__(self, dim: int, config: ProbeConfig):
        self.dim = dim
        self.config = config
        rng = np.random.default_rng(config.seed)
        sizes = [dim] + [config.hidden_width] * config.hidden_layers + [2]
        self.weights = []
        self.biases = []
        for fan_in, fan_out in zip(sizes, sizes[1:]):
            scale = np.sqrt(2.0 / fan_in)
            self.weights.append(rng.standard_normal((fan_in, fan_out)) * scale)
            # small positive bias keeps rectifier preactivations off the
            # exact kink (an all-dead previous layer would land on 0.0)
            self.biases.append(np.full(fan_out, 0.01))
        self.epoch_losses: list[float] = []

    def _forward(self, X):
        acts = [X]
        for W, b in zip(self.weights[:-1], self.biases[:-1]):
            acts.append(np.maximum(acts[-1] @ W + b, 0.0))
        logits = acts[-1] @ self.weights[-1] + self.biases[-1]
        return acts, logits

    def logits(self, X):
        X = np.asarray(X, dtype=np.float64)
        return self._forward(X)[1]

    def predict(self, X):
        return np.argmax(self.logits(X), axis=1)

    def loss_and_grads(self, X, y):
        """Mean cross-entropy and its analytic gradients.

        Returns (loss, weight gradients, bias gradients), where the
        gradient lists mirror self.weights / self.biases.
        """
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        n = X.shape[0]
        acts, logits = self._forward(X)
        shifted = logits - logits.max(axis=1, keepdims=True)
        logz = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
        logp = shifted - logz
        loss = -logp[np.arange(n), y].mean()
        probs = np.exp(logp)
        delta = probs
        delta[np.arange(n), y] -= 1.0
        delta /= n
        grads_w = [None] * len(self.weights)
        grads_b = [None] * len(self.biases)
        for layer in range(len(self.weights) - 1, -1, -1):
            grads_w[layer] = acts[layer].T @ delta
            grads_b[layer] = delta.sum(axis=0)
            if layer > 0:
                delta = (delta @ self.weights[layer].T) * (acts[layer] > 0)
        return loss, grads_w, grads_b

    def parameters(self):
        return list(self.weights) + list(self.biases)


def train(config: ProbeConfig, X, y) -> ProbeModel:
    """Fit a probe with mini-batch SGD; deterministic per config.seed."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise ValueError(f"bad shapes: X {X.shape}, y {y.shape}")
    classes = np.unique(y)
    if not np.array_equal(classes, np.array([0, 1])):
        raise ValueError(f"need both binary labels in the training data, got classes {classes}")
    model = ProbeModel(X.shape[1], config)
    rng = np.random.default_rng(config.seed + 1)
    n = X.shape[0]
    for epoch in range(config.epochs):
        order = rng.permutation(n)
        batch_losses = []
        for start in range(0, n, config.batch_size):
            idx = order[start:start + config.batch_size]
            loss, grads_w, grads_b = model.loss_and_grads(X[idx], y[idx])
            if not np.isfinite(loss):
                raise RuntimeError(
                    f"non-finite loss at epoch {epoch}, batch {start // config.batch_size}: "
                    f"loss={loss!r}, lr={config.learning_rate}")
            for W, gW in zip(model.weights, grads_w):
                W -= config.learning_rate * gW
            for b, gb in zip(model.biases, grads_b):
                b -= config.learning_rate * gb
            batch_losses.append(loss)
        model.epoch_losses.append(float(np.mean(batch_losses)))
    return model


@dataclass
class EvalResult:
    correct: np.ndarray
    accuracy: float


def evaluate(model: ProbeModel, X, y) -> EvalResult:
    """Per-example correctness (kept for permutation tests) and accuracy."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.shape[1] != model.dim:
        raise ValueError(f"embedding dim {X.shape[1]} does not match model dim {model.dim}")
    pred = model.predict(X)
    correct = pred == y
    return EvalResult(correct=correct, accuracy=float(correct.mean()))


@dataclass
class RunResult:
    seed: int
    model: ProbeModel
    eval: EvalResult


def run_suite(config: ProbeConfig, train_data, test_data, n_runs: int = 3) -> list[RunResult]:
    """Independent training runs differing only in seed."""
    X_tr, y_tr = train_data
    X_te, y_te = test_data
    out = []
    for run in range(n_runs):
        cfg = ProbeConfig(**{**asdict(config), "seed": config.seed + run})
        model = train(cfg, X_tr, y_tr)
        out.append(RunResult(seed=cfg.seed, model=model, eval=evaluate(model, X_te, y_te)))
    return out


def summarize_runs(results: list[RunResult]) -> tuple[float, float]:
    accs = np.array([r.eval.accuracy for r in results])
    return float(accs.mean()), float(accs.std())


# ---------------------------------------------------------------------------
# Checkpoints: JSON header + row-major float32 matrices


def save_model(model: ProbeModel, path) -> None:
    header = {
        "dim": model.dim,
        "config": asdict(model.config),
        "seed": model.config.seed,
        "shapes": [list(W.shape) for W in model.weights],
    }
    blob = json.dumps(header, sort_keys=True).encode("utf-8")
    with open(path, "wb") as f:
        f.write(CHECKPOINT_MAGIC)
        f.write(struct.pack("<II", CHECKPOINT_VERSION, len(blob)))
        f.write(blob)
        for W, b in zip(model.weights, model.biases):
            f.write(np.ascontiguousarray(W, dtype="<f4").tobytes())
            f.write(np.ascontiguousarray(b, dtype="<f4").tobytes())


def load_model(path) -> ProbeModel:
    with open(path, "rb") as f:
        if f.read(4) != CHECKPOINT_MAGIC:
            raise ValueError(f"{path}: not a probe checkpoint")
        version, header_len = struct.unpack("<II", f.read(8))
        if version != CHECKPOINT_VERSION:
            raise ValueError(f"{path}: unsupported checkpoint version {version}")
        header = json.loads(f.read(header_len).decode("utf-8"))
        model = ProbeModel(header["dim"], ProbeConfig(**header["config"]))
        for i, shape in enumerate(header["shapes"]):
            n = shape[0] * shape[1]
            W = np.frombuffer(f.read(4 * n), dtype="<f4").reshape(shape)
            b = np.frombuffer(f.read(4 * shape[1]), dtype="<f4")
            model.weights[i] = W.astype(np.float64)
            model.biases[i] = b.astype(np.float64)
    return model
