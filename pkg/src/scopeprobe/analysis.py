"""Zone/position accuracy breakdowns, gaps and permutation tests.

Evaluation outcomes arrive as flat records carrying at least
``run`` (int), ``zone``, ``position`` and ``correct``; cells of the
breakdown are (zone, position) pairs.  Cell accuracies are fractions
in [0, 1]; *gaps* between paired zones are expressed in accuracy
points (x100), averaged over the canonical positions -8..-1
(PRE_IN minus PRE) and 3..8 (IN minus POST), 14 in total.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .scopes import IN, POST, PRE, PRE_IN

NEGATIVE_POSITIONS = tuple(range(-8, 0))
POSITIVE_POSITIONS = tuple(range(3, 9))
CANONICAL_POSITIONS = 14


class BreakdownError(ValueError):
    """Inconsistent evaluation records."""


@dataclass
class BreakdownReport:
    """Per-(zone, position) counts and correct counts, per run."""

    cells: dict = field(default_factory=dict)  # (zone, pos) -> {run: [n, n_correct]}
    runs: set = field(default_factory=set)

    def add(self, zone: str, position: int, run: int, correct: bool) -> None:
        if position in (1, 2) and zone != IN:
            raise BreakdownError(
                f"position {position} must be IN, got zone {zone}")
        cell = self.cells.setdefault((zone, position), {})
        n = cell.setdefault(run, [0, 0])
        n[0] += 1
        n[1] += int(correct)
        self.runs.add(run)

    def accuracy(self, zone: str, position: int, run: int | None = None) -> float:
        """Cell accuracy for one run, or averaged over runs when run is None."""
        cell = self.cells[(zone, position)]
        if run is not None:
            n, k = cell[run]
            return k / n
        return float(np.mean([k / n for n, k in cell.values()]))

    def count(self, zone: str, position: int) -> int:
        return sum(n for n, _ in self.cells[(zone, position)].values())

    def has_cell(self, zone: str, position: int, run: int | None = None) -> bool:
        cell = self.cells.get((zone, position))
        if cell is None:
            return False
        return run in cell if run is not None else True

    def total(self, window: int | None = None) -> int:
        return sum(
            n for (zone, pos), runs in self.cells.items()
            for n, _ in runs.values()
            if window is None or abs(pos) <= window)


def breakdown(records) -> BreakdownReport:
    """Aggregate evaluation records into a zone/position report."""
    report = BreakdownReport()
    for rec in records:
        report.add(rec["zone"], rec["position"], rec.get("run", 0), rec["correct"])
    return report


@dataclass
class GapResult:
    """Average in-scope minus out-of-scope accuracy, in points."""

    gap: float
    stdev: float
    per_run: list[float]
    positions: list[int]

    @property
    def coverage(self) -> str:
        return f"{len(self.positions)}/{CANONICAL_POSITIONS}"


def accuracy_gap(report: BreakdownReport) -> GapResult:
    """Mean of PRE_IN-PRE and IN-POST differences over canonical positions.

    Positions missing either cell in any run are skipped and reported
    through ``coverage``; the gap is computed per run over the common
    positions, then averaged (stdev across runs).
    """
    pairs = ([(PRE_IN, PRE, p) for p in NEGATIVE_POSITIONS]
             + [(IN, POST, p) for p in POSITIVE_POSITIONS])
    runs = sorted(report.runs)
    usable = [
        (hi, lo, p) for hi, lo, p in pairs
        if all(report.has_cell(hi, p, r) and report.has_cell(lo, p, r) for r in runs)
    ]
    if not usable:
        raise BreakdownError("no canonical position has both zone cells populated")
    per_run = []
    for r in runs:
        diffs = [report.accuracy(hi, p, r) - report.accuracy(lo, p, r)
                 for hi, lo, p in usable]
        per_run.append(100.0 * float(np.mean(diffs)))
    return GapResult(
        gap=float(np.mean(per_run)),
        stdev=float(np.std(per_run)),
        per_run=per_run,
        positions=sorted(p for _, _, p in usable),
    )


# ---------------------------------------------------------------------------
# Permutation significance


@dataclass(frozen=True)
class PermTestResult:
    comparison: str
    statistic: float
    p_value: float
    permutations: int
    alpha: float = 0.001

    @property
    def significant(self) -> bool:
        return self.p_value < self.alpha


def perm_test(correct_a, correct_b, n_perm: int = 5000, seed: int = 0,
              comparison: str = "") -> PermTestResult:
    """One-sided permutation test of mean(a) - mean(b) > 0.

    Pooled observations are randomly reassigned to the two groups
    (group sizes preserved); the p-value is the share of reassignments
    whose statistic reaches the observed one, with the identity
    assignment counted in (so p is never exactly 0).
    """
    a = np.asarray(correct_a, dtype=np.float64)
    b = np.asarray(correct_b, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise ValueError("permutation test needs two non-empty groups")
    observed = float(a.mean() - b.mean())
    pooled = np.concatenate([a, b])
    n_a = a.size
    rng = np.random.default_rng(seed)
    hits = 0
    chunk = 512
    done = 0
    while done < n_perm:
        m = min(chunk, n_perm - done)
        perms = np.tile(pooled, (m, 1))
        perms = rng.permuted(perms, axis=1)
        stats = perms[:, :n_a].mean(axis=1) - perms[:, n_a:].mean(axis=1)
        hits += int(np.sum(stats >= observed - 1e-12))
        done += m
    p = (hits + 1) / (n_perm + 1)
    return PermTestResult(comparison=comparison, statistic=observed,
                          p_value=p, permutations=n_perm)


def paired_zone_tests(report: BreakdownReport, correct_by_cell,
                      n_perm: int = 5000, seed: int = 0) -> list[PermTestResult]:
    """Significance of each per-position zone contrast, per run.

    ``correct_by_cell`` maps (zone, position, run) to the 0/1
    correctness vector behind that cell.
    """
    out = []
    pairs = ([(PRE_IN, PRE, p) for p in NEGATIVE_POSITIONS]
             + [(IN, POST, p) for p in POSITIVE_POSITIONS])
    for r in sorted(report.runs):
        for hi, lo, p in pairs:
            key_hi, key_lo = (hi, p, r), (lo, p, r)
            if key_hi not in correct_by_cell or key_lo not in correct_by_cell:
                continue
            out.append(perm_test(
                correct_by_cell[key_hi], correct_by_cell[key_lo],
                n_perm=n_perm, seed=seed + len(out),
                comparison=f"run{r}:{hi}-{lo}@{p}"))
    return out


# ---------------------------------------------------------------------------
# Clause study


def clause_gap(records, window: int = 8):
    """In-clause vs out-of-clause accuracy within a position window.

    Records carry ``correct``, ``position`` and ``in_clause``; pieces
    of the target itself (position 0) never appear.  Returns fractions
    (in accuracy, out accuracy, gap).
    """
    inside = []
    outside = []
    for rec in records:
        if not 1 <= abs(rec["position"]) <= window:
            continue
        (inside if rec["in_clause"] else outside).append(bool(rec["correct"]))
    if not inside and not outside:
        raise ValueError(f"no records in window +-{window}")
    in_acc = float(np.mean(inside)) if inside else math.nan
    out_acc = float(np.mean(outside)) if outside else math.nan
    return in_acc, out_acc, in_acc - out_acc


# ---------------------------------------------------------------------------
# Plot-ready export


def emit_plot_data(report: BreakdownReport, path) -> None:
    """CSV with one row per cell per run: position,zone,accuracy,n,run."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["position", "zone", "accuracy", "n", "run"])
        for (zone, pos), by_run in sorted(report.cells.items(),
                                          key=lambda kv: (kv[0][1], kv[0][0])):
            for run in sorted(by_run):
                n, k = by_run[run]
                writer.writerow([pos, zone, repr(k / n), n, run])


def read_plot_data(path) -> BreakdownReport:
    """Parse emit_plot_data output back into a report (counts and runs)."""
    report = BreakdownReport()
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != ["position", "zone", "accuracy", "n", "run"]:
            raise BreakdownError(f"unexpected header {reader.fieldnames}")
        for row in reader:
            pos, run, n = int(row["position"]), int(row["run"]), int(row["n"])
            k = round(float(row["accuracy"]) * n)
            cell = report.cells.setdefault((row["zone"], pos), {})
            cell[run] = [n, k]
            report.runs.add(run)
    return report
