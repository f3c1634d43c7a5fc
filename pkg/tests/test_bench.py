from __future__ import annotations

import csv
import io

import pytest

from heavypath.bench import (
    COLUMNS,
    BenchSpec,
    curve_csv,
    curve_from_records,
    disagreements,
    records_csv,
    run_bench,
    weight_curve,
)
from heavypath.errors import PreconditionError
from heavypath.generators import random_graph


def test_k6_grid(g6):
    records = run_bench(g6, BenchSpec(["rsa", "saa"], [2, 3, 4], [1]))
    assert len(records) == 6
    assert all(r.outcome == "ok" for r in records)
    by_l = {}
    for r in records:
        by_l.setdefault(r.l, set()).add(r.top1_weight)
    assert all(len(ws) == 1 for ws in by_l.values())
    assert disagreements(records) == []
    rows = list(csv.DictReader(io.StringIO(records_csv(records))))
    assert tuple(rows[0]) == COLUMNS
    assert [(r["algo"], r["l"]) for r in rows] == [(a, str(l)) for a in ("rsa", "saa") for l in (2, 3, 4)]


def test_time_budget_records_timeouts():
    g = random_graph(60, 0.5, seed=2)
    records = run_bench(g, BenchSpec(["dfs", "dp"], [6], [5], time_budget_ms=1))
    assert [r.outcome for r in records] == ["timeout", "timeout"]
    assert all(row == "" for row in (r.row()["top1_weight"] for r in records))


def test_memory_budget_records_memory_exceeded(g6):
    records = run_bench(g6, BenchSpec(["rsa", "saa"], [4], [10], max_buffered=3))
    assert {r.outcome for r in records} == {"memory-exceeded"}


def test_workers_preserve_order(g6):
    spec = BenchSpec(["dfs", "rsa", "saa"], [2, 3], [1, 3], workers=4)
    records = run_bench(g6, spec)
    assert [(r.algo, r.l, r.k) for r in records] == [
        (a, l, k) for a in ("dfs", "rsa", "saa") for l in (2, 3) for k in (1, 3)
    ]


@pytest.mark.parametrize(
    "spec",
    [
        BenchSpec([], [2], [1]),
        BenchSpec(["bogus"], [2], [1]),
        BenchSpec(["rsa"], [2], [1], repetitions=0),
        BenchSpec(["rsa"], [2], [1], time_budget_ms=0),
    ],
)
def test_spec_validation(g6, spec):
    with pytest.raises(PreconditionError):
        run_bench(g6, spec)


def test_k6_weight_curve(g6):
    curve = weight_curve(g6, range(1, 5))
    ws = [w for _, w in curve]
    assert ws == pytest.approx([0.93, 1.86, 2.62, 3.35], abs=1e-9)
    inc = [b - a for a, b in zip([0.0] + ws, ws)]
    assert inc == pytest.approx([0.93, 0.93, 0.76, 0.73], abs=1e-9)
    assert all(b <= a + 1e-12 for a, b in zip(inc, inc[1:]))


def test_curve_from_records(g6):
    records = run_bench(g6, BenchSpec(["rsa"], [1, 2, 3], [1]))
    assert curve_from_records(records) == weight_curve(g6, [1, 2, 3])
    assert curve_csv([(1, 0.5), (9, None)]) == "l,heaviest_weight\n1,0.5\n9,\n"
