"""Benchmark harness: run algorithm x length x k grids under budgets, emit CSV."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

from .algorithms import ALGORITHMS, run_topk
from .errors import BudgetExceeded, PreconditionError
from .graph import WeightedGraph
from .paths import AlgorithmStats, Budget

COLUMNS = (
    "algo",
    "l",
    "k",
    "sorted_reads",
    "random_reads",
    "paths_constructed",
    "duplicates_discarded",
    "buffer_peak",
    "wall_ms",
    "top1_weight",
    "outcome",
)


@dataclass
class BenchSpec:
    algorithms: Sequence[str]
    lengths: Sequence[int]
    ks: Sequence[int]
    repetitions: int = 1
    time_budget_ms: float | None = None
    max_buffered: int | None = None
    agg: str = "sum"
    tight_theta: bool = False
    lazy: bool = False
    graph_path: str | None = None
    workers: int = 1

    def validate(self) -> None:
        if not self.algorithms or not self.lengths or not self.ks:
            raise PreconditionError("algorithm, length and k ranges must be non-empty")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise PreconditionError(f"unknown algorithm(s): {', '.join(sorted(unknown))}")
        if self.repetitions < 1:
            raise PreconditionError("repetitions must be >= 1")
        if self.time_budget_ms is not None and self.time_budget_ms <= 0:
            raise PreconditionError("time budget must be positive")
        if self.max_buffered is not None and self.max_buffered <= 0:
            raise PreconditionError("buffer cap must be positive")


@dataclass
class BenchRecord:
    algo: str
    l: int
    k: int
    stats: AlgorithmStats = field(default_factory=AlgorithmStats)
    top1_weight: float | None = None
    outcome: str = "ok"

    def row(self) -> dict:
        s = self.stats
        return {
            "algo": self.algo,
            "l": self.l,
            "k": self.k,
            "sorted_reads": s.sorted_reads,
            "random_reads": s.random_reads,
            "paths_constructed": s.paths_constructed,
            "duplicates_discarded": s.duplicates_discarded,
            "buffer_peak": s.buffer_peak,
            "wall_ms": f"{s.wall_ms:.3f}",
            "top1_weight": "" if self.top1_weight is None else repr(self.top1_weight),
            "outcome": self.outcome,
        }


def run_cell(g: WeightedGraph, spec: BenchSpec, algo: str, l: int, k: int) -> BenchRecord:
    total_ms = 0.0
    result = None
    for _ in range(spec.repetitions):
        budget = Budget(spec.time_budget_ms, spec.max_buffered)
        try:
            result = run_topk(
                g, l, k, algo, agg=spec.agg, budget=budget, tight_theta=spec.tight_theta, lazy=spec.lazy
            )
        except BudgetExceeded as exc:
            return BenchRecord(algo, l, k, outcome=exc.outcome)
        total_ms += result.stats.wall_ms
    stats = result.stats
    stats.wall_ms = total_ms / spec.repetitions
    top1 = result.paths[0].weight if result.paths else None
    return BenchRecord(algo, l, k, stats, top1)


def run_bench(g: WeightedGraph, spec: BenchSpec) -> list[BenchRecord]:
    """One record per (algorithm, length, k) cell, in BenchSpec order."""
    spec.validate()
    cells = [(a, l, k) for a in spec.algorithms for l in spec.lengths for k in spec.ks]
    if spec.workers > 1:
        with ThreadPoolExecutor(spec.workers) as pool:
            return list(pool.map(lambda c: run_cell(g, spec, *c), cells))
    return [run_cell(g, spec, *c) for c in cells]


def write_csv(records: Iterable[BenchRecord], out: TextIO) -> None:
    writer = csv.DictWriter(out, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow(r.row())


def records_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def weight_curve(
    g: WeightedGraph, lengths: Iterable[int], algo: str = "rsa", agg: str = "sum"
) -> list[tuple[int, float | None]]:
    """Heaviest path weight for each length (``None`` when no such path exists)."""
    out = []
    for l in lengths:
        r = run_topk(g, l, 1, algo, agg=agg)
        out.append((l, r.paths[0].weight if r.paths else None))
    return out


def curve_from_records(records: Iterable[BenchRecord]) -> list[tuple[int, float | None]]:
    best: dict[int, float | None] = {}
    for r in records:
        best.setdefault(r.l, None)
        if r.outcome == "ok" and r.top1_weight is not None:
            best[r.l] = r.top1_weight if best[r.l] is None else max(best[r.l], r.top1_weight)
    return sorted(best.items())


def curve_csv(curve: Iterable[tuple[int, float | None]]) -> str:
    lines = ["l,heaviest_weight"]
    lines += [f"{l},{'' if w is None else repr(w)}" for l, w in curve]
    return "\n".join(lines) + "\n"


def disagreements(records: Iterable[BenchRecord], tol: float = 1e-9) -> list[tuple[int, int]]:
    """(l, k) cells where ok runs report different top-1 weights."""
    seen: dict[tuple[int, int], list[float | None]] = {}
    for r in records:
        if r.outcome == "ok":
            seen.setdefault((r.l, r.k), []).append(r.top1_weight)
    bad = []
    for cell, ws in seen.items():
        if None in ws:
            if any(w is not None for w in ws):
                bad.append(cell)
        elif max(ws) - min(ws) > tol:
            bad.append(cell)
    return bad
