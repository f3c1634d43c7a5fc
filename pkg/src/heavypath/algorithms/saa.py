"""Sorted Access Algorithm: a rank-join over the weight-sorted edge list."""

from __future__ import annotations

import math
import time
from collections import defaultdict

from ..graph import WeightedGraph
from ..paths import (
    AlgorithmStats,
    Budget,
    ConstructionLog,
    TopK,
    TopKResult,
    check_args,
    require_nonnegative,
)


def saa_topk(
    g: WeightedGraph,
    l: int,
    k: int,
    *,
    budget: Budget | None = None,
    record: bool = False,
) -> TopKResult:
    """Scan edges heaviest first, joining each new edge with the edges already scanned.

    After edge ``e`` is processed no unseen path can beat
    ``e.w + (l - 1) * w_max``; the scan stops once the k-th best buffered path
    reaches that bound, or when the edge list runs out.

    Joins are transient: the partial paths built for ``e`` are dropped before
    the next edge is read. ``theta_trace[i]`` is the bound after ``i + 1`` reads.
    """
    check_args(l, k)
    require_nonnegative(g, "SAA")
    budget = budget or Budget()
    budget.start()
    stats = AlgorithmStats()
    log = ConstructionLog() if record else None
    trace: list[float] = []
    t0 = time.perf_counter()

    w_max = g.w_max
    top = TopK(k)
    theta = math.fsum([w_max] * l)
    scanned: dict[int, list[tuple[int, float]]] = defaultdict(list)

    for e in g.iter_sorted():
        if top.bottom_score >= theta:
            break
        stats.sorted_reads += 1
        depth = stats.sorted_reads
        first = (e.u, e.v)
        stats.paths_constructed += 1
        if log is not None:
            log.add(first, "sorted", depth)
        frontier: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[float, ...]]] = {first: (first, (e.w,))}

        for _ in range(l - 1):
            joined: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[float, ...]]] = {}
            for nodes, ws in frontier.values():
                head, tail = nodes[0], nodes[-1]
                for y, w in scanned.get(head, ()):
                    stats.random_reads += 1
                    if y in nodes:
                        continue
                    _add(joined, (y,) + nodes, (w,) + ws, stats, log, depth)
                for z, w in scanned.get(tail, ()):
                    stats.random_reads += 1
                    if z in nodes:
                        continue
                    _add(joined, nodes + (z,), ws + (w,), stats, log, depth)
            stats.buffer_peak = max(stats.buffer_peak, len(frontier) + len(joined) + len(top))
            budget.check(len(frontier) + len(joined))
            frontier = joined
            if not frontier:
                break
        else:
            for key, (_, ws) in frontier.items():
                top.offer(key, math.fsum(ws))

        theta = math.fsum([e.w] + [w_max] * (l - 1))
        trace.append(theta)
        scanned[e.u].append((e.v, e.w))
        scanned[e.v].append((e.u, e.w))

    paths, tie = top.result()
    stats.buffer_peak = max(stats.buffer_peak, len(paths))
    stats.wall_ms = (time.perf_counter() - t0) * 1000.0
    return TopKResult(paths, stats, exhausted=len(paths) < k, boundary_tie=tie, log=log, theta_trace=trace)


def _add(joined, nodes, ws, stats, log, depth) -> None:
    stats.paths_constructed += 1
    if log is not None:
        log.add(nodes, "sorted", depth)
    key = nodes if nodes[0] < nodes[-1] else nodes[::-1]
    if key in joined:
        stats.duplicates_discarded += 1
    else:
        joined[key] = (nodes, ws)
