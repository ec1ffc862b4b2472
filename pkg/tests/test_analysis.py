import csv
import itertools
import random

import numpy as np
import pytest

from scopeprobe import (
    IN, POST, PRE, PRE_IN,
    accuracy_gap, breakdown, clause_gap, emit_plot_data, paired_zone_tests,
    perm_test, read_plot_data,
)
from scopeprobe.analysis import BreakdownError


def _rec(zone, position, correct, run=0):
    return {"zone": zone, "position": position, "correct": correct, "run": run}


# ---------------------------------------------------------------------------
# breakdown


def test_breakdown_hand_computed_cells():
    records = [
        _rec(PRE, -3, True), _rec(PRE, -3, False),
        _rec(PRE_IN, -3, True), _rec(PRE_IN, -3, True),
        _rec(IN, 3, True), _rec(IN, 3, False),
        _rec(POST, 3, False), _rec(POST, 3, False),
    ]
    report = breakdown(records)
    assert report.accuracy(PRE, -3) == 0.5
    assert report.accuracy(PRE_IN, -3) == 1.0
    assert report.accuracy(IN, 3) == 0.5
    assert report.accuracy(POST, 3) == 0.0
    assert report.count(PRE, -3) == 2
    assert report.total() == 8


def test_breakdown_rejects_non_in_at_position_one():
    with pytest.raises(BreakdownError, match="position 1"):
        breakdown([_rec(POST, 1, True)])
    with pytest.raises(BreakdownError, match="position 2"):
        breakdown([_rec(PRE, 2, True)])
    breakdown([_rec(IN, 1, True), _rec(IN, 2, False)])  # fine


def test_breakdown_all_correct_cells_are_100():
    records = [_rec(z, p, True) for z in (PRE, PRE_IN) for p in (-4, -3)]
    report = breakdown(records)
    for (zone, pos) in report.cells:
        assert report.accuracy(zone, pos) == 1.0


def test_breakdown_empty_cell_absent_not_zero():
    report = breakdown([_rec(IN, 3, True)])
    assert not report.has_cell(POST, 3)
    with pytest.raises(KeyError):
        report.accuracy(POST, 3)


def test_breakdown_counts_conserved_in_window():
    records = [_rec(IN, p, True) for p in (3, 5, 9, 12)]
    report = breakdown(records)
    assert report.total(window=8) == 2
    assert report.total() == 4


# ---------------------------------------------------------------------------
# accuracy gap


def _full_report(hi_acc, lo_acc, n=10, runs=(0,)):
    records = []
    for run in runs:
        for p in range(-8, 0):
            for zone, acc in ((PRE_IN, hi_acc), (PRE, lo_acc)):
                k = round(acc * n)
                records += [_rec(zone, p, i < k, run) for i in range(n)]
        for p in range(3, 9):
            for zone, acc in ((IN, hi_acc), (POST, lo_acc)):
                k = round(acc * n)
                records += [_rec(zone, p, i < k, run) for i in range(n)]
    return breakdown(records)


def test_gap_zero_when_all_cells_equal():
    result = accuracy_gap(_full_report(0.7, 0.7))
    assert result.gap == 0.0
    assert result.coverage == "14/14"


def test_gap_constant_two_point_shift():
    result = accuracy_gap(_full_report(0.72, 0.70, n=50))
    assert result.gap == pytest.approx(2.0)
    assert result.stdev == pytest.approx(0.0)
    assert result.positions == list(range(-8, 0)) + list(range(3, 9))


def test_gap_with_missing_positions_reports_coverage():
    report = _full_report(0.9, 0.6)
    # drop the PRE cell at -8 in every run
    del report.cells[(PRE, -8)]
    result = accuracy_gap(report)
    assert result.coverage == "13/14"
    assert -8 not in result.positions
    assert result.gap == pytest.approx(30.0)


def test_gap_requires_some_canonical_cell():
    with pytest.raises(BreakdownError):
        accuracy_gap(breakdown([_rec(IN, 1, True)]))


def test_gap_depends_on_cell_accuracy_not_cell_size():
    # replicating every cell's records shifts n but not the accuracies,
    # so the gap must not move; unequal cell sizes must not reweight it
    base = _full_report(0.8, 0.6, n=10)
    tripled = _full_report(0.8, 0.6, n=30)
    assert accuracy_gap(tripled).gap == pytest.approx(accuracy_gap(base).gap)
    lopsided_records = []
    for p in range(-8, 0):
        lopsided_records += [_rec(PRE_IN, p, i < 8, 0) for i in range(10)]
        lopsided_records += [_rec(PRE, p, i < 60, 0) for i in range(100)]
    for p in range(3, 9):
        lopsided_records += [_rec(IN, p, i < 8, 0) for i in range(10)]
        lopsided_records += [_rec(POST, p, i < 60, 0) for i in range(100)]
    lopsided = breakdown(lopsided_records)
    assert accuracy_gap(lopsided).gap == pytest.approx(accuracy_gap(base).gap)


# ---------------------------------------------------------------------------
# permutation test


def exact_perm_p(a, b):
    """Brute-force enumeration over all reassignments of the pooled data."""
    pooled = list(a) + list(b)
    n_a = len(a)
    observed = np.mean(a) - np.mean(b)
    hits = 0
    total = 0
    for idx in itertools.combinations(range(len(pooled)), n_a):
        chosen = set(idx)
        mean_a = np.mean([pooled[i] for i in chosen])
        mean_b = np.mean([pooled[i] for i in range(len(pooled)) if i not in chosen])
        total += 1
        if mean_a - mean_b >= observed - 1e-12:
            hits += 1
    return hits / total


def test_perm_identical_vectors_p_near_one():
    a = np.ones(40)
    result = perm_test(a, a.copy(), n_perm=400, seed=0)
    assert result.statistic == 0.0
    assert result.p_value > 0.9


def test_perm_maximal_separation_significant():
    result = perm_test(np.ones(30), np.zeros(30), n_perm=5000, seed=1)
    assert result.statistic == 1.0
    assert result.p_value < 0.001
    assert result.significant


def test_perm_matches_exact_enumeration_small_vectors():
    rng = random.Random(21)
    for _ in range(25):
        n_a = rng.randint(2, 6)
        n_b = rng.randint(2, 6)
        a = [rng.random() < 0.7 for _ in range(n_a)]
        b = [rng.random() < 0.4 for _ in range(n_b)]
        expected = exact_perm_p(a, b)
        got = perm_test(a, b, n_perm=4000, seed=rng.randint(0, 10**6)).p_value
        assert abs(got - expected) <= 0.02, (a, b, expected, got)


def test_perm_null_calibration_superuniform():
    rng = np.random.default_rng(7)
    low = 0
    n_sims = 200
    for i in range(n_sims):
        pooled = rng.random(80) < 0.7
        a, b = pooled[:40], pooled[40:]
        p = perm_test(a, b, n_perm=300, seed=i).p_value
        if p < 0.05:
            low += 1
    assert low / n_sims <= 0.08


def test_perm_empty_group_rejected():
    with pytest.raises(ValueError, match="non-empty"):
        perm_test([], [1, 0])


def test_paired_zone_tests_cover_existing_cells():
    report = _full_report(0.9, 0.5, n=30)
    by_cell = {}
    for (zone, pos), runs in report.cells.items():
        for run, (n, k) in runs.items():
            by_cell[(zone, pos, run)] = [1.0] * k + [0.0] * (n - k)
    tests = paired_zone_tests(report, by_cell, n_perm=300, seed=0)
    assert len(tests) == 14
    assert all(t.statistic == pytest.approx(0.4) for t in tests)


# ---------------------------------------------------------------------------
# clause gap


def test_clause_gap_hand_fixture():
    records = (
        [{"position": 2, "in_clause": True, "correct": i < 8} for i in range(10)]
        + [{"position": -2, "in_clause": False, "correct": i < 6} for i in range(10)]
    )
    in_acc, out_acc, gap = clause_gap(records)
    assert in_acc == pytest.approx(0.8)
    assert out_acc == pytest.approx(0.6)
    assert gap == pytest.approx(0.2)


def test_clause_gap_window_filters():
    records = [
        {"position": 9, "in_clause": True, "correct": True},
        {"position": -9, "in_clause": False, "correct": True},
        {"position": 4, "in_clause": True, "correct": True},
        {"position": -1, "in_clause": False, "correct": False},
    ]
    in_acc, out_acc, gap = clause_gap(records, window=8)
    assert in_acc == 1.0 and out_acc == 0.0 and gap == 1.0


def test_clause_gap_empty_window_error():
    records = [{"position": 30, "in_clause": True, "correct": True}]
    with pytest.raises(ValueError, match="no records in window"):
        clause_gap(records, window=8)


# ---------------------------------------------------------------------------
# plot data export


def test_emit_plot_data_rows_and_header(tmp_path):
    report = breakdown([
        _rec(IN, 3, True), _rec(IN, 3, False),
        _rec(POST, 3, True), _rec(PRE, -1, True)])
    path = tmp_path / "cells.csv"
    emit_plot_data(report, path)
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["position", "zone", "accuracy", "n", "run"]
    assert len(rows) == 1 + 3


def test_plot_data_roundtrip(tmp_path):
    report = _full_report(0.85, 0.62, n=20, runs=(0, 1))
    path = tmp_path / "cells.csv"
    emit_plot_data(report, path)
    back = read_plot_data(path)
    assert set(back.cells) == set(report.cells)
    assert back.runs == report.runs
    for key, runs in report.cells.items():
        for run, (n, k) in runs.items():
            assert back.cells[key][run] == [n, k]
    assert accuracy_gap(back).gap == pytest.approx(accuracy_gap(report).gap)


def test_read_plot_data_rejects_wrong_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("zone,position,accuracy,n,run\nIN,3,1.0,2,0\n")
    with pytest.raises(BreakdownError, match="header"):
        read_plot_data(path)
