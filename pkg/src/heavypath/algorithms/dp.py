"""Held-Karp style dynamic programming with avoidance sets.

``best(J, m, avoid)`` is the list of heaviest paths of ``m`` edges that start
at ``J`` and never touch a node in ``avoid``. Results are memoized per root on
``(J, m, avoid)``, with the avoidance set as an integer bitmask, and hold up to
``k + 1`` entries so the overall top-k (plus one, for tie reporting) is exact.
"""

from __future__ import annotations

import math
import time

from ..graph import WeightedGraph
from ..paths import AlgorithmStats, Budget, TopK, TopKResult, check_args

# (weight, nodes, edge weights); nodes run from the start node outward
_Partial = tuple[float, tuple[int, ...], tuple[float, ...]]


def dp_topk(g: WeightedGraph, l: int, k: int, *, budget: Budget | None = None) -> TopKResult:
    check_args(l, k)
    budget = budget or Budget()
    budget.start()
    stats = AlgorithmStats()
    adj = g.adjacency
    keep = k + 1
    t0 = time.perf_counter()

    def best(j: int, m: int, avoid: int, memo: dict) -> list[_Partial]:
        key = (j, m, avoid)
        hit = memo.get(key)
        if hit is not None:
            return hit
        budget.check(len(memo))
        inner = avoid | (1 << j)
        found: list[_Partial] = []
        for n, w in adj[j].items():
            stats.random_reads += 1
            if inner >> n & 1:
                continue
            if m == 1:
                found.append((w, (j, n), (w,)))
                stats.paths_constructed += 1
                continue
            for _, nodes, ws in best(n, m - 1, inner, memo):
                ext = (w,) + ws
                found.append((math.fsum(ext), (j,) + nodes, ext))
                stats.paths_constructed += 1
        found.sort(key=lambda p: (-p[0], p[1]))
        del found[keep:]
        memo[key] = found
        return found

    top = TopK(k)
    peak = 0
    for root in range(g.n_nodes):
        memo: dict = {}
        for weight, nodes, _ in best(root, l, 0, memo):
            key = nodes if nodes[0] < nodes[-1] else nodes[::-1]
            if key in top:
                stats.duplicates_discarded += 1
            else:
                top.offer(key, weight)
        peak = max(peak, sum(len(v) for v in memo.values()))

    paths, tie = top.result()
    stats.buffer_peak = peak
    stats.wall_ms = (time.perf_counter() - t0) * 1000.0
    return TopKResult(paths, stats, exhausted=len(paths) < k, boundary_tie=tie)
