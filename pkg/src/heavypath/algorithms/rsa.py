"""Repeated Sorted Access: per-length buffers released under a threshold cascade."""

from __future__ import annotations

import math
import time

from ..graph import WeightedGraph
from ..paths import (
    NEG_INF,
    AlgorithmStats,
    Budget,
    ConstructionLog,
    Path,
    PathBuffer,
    TopKResult,
    check_args,
    require_nonnegative,
)

_NOTHING = object()


class RsaState:
    """Mutable state of one run: edge cursor, buffers ``B_2..B_l`` and counters.

    ``next_path(level)`` releases the next heaviest path of ``level`` edges, or
    ``None`` once no more exist. Paths of a given level come out in
    non-increasing weight order. The recursion on shorter levels is unrolled
    onto an explicit stack, so its depth never exceeds ``length``.

    ``theta_rule`` picks how ``theta[level + 1]`` is refreshed after a release
    from ``B_level``: ``"cascade"`` uses ``max(B_level.top, theta[level]) + w_max``,
    ``"release"`` uses ``released.weight + w_max``.

    ``expansion="eager"`` inserts every extension of a released path at once.
    ``"lazy"`` walks each end's neighbours heaviest first and only builds the
    next extension when its weight reaches the top of the buffer; the pending
    walk counts toward ``top_score``, so thresholds and release order are the
    same as with eager expansion.
    """

    def __init__(
        self,
        g: WeightedGraph,
        length: int,
        *,
        theta_rule: str = "cascade",
        expansion: str = "eager",
        budget: Budget | None = None,
        record: bool = False,
    ):
        if theta_rule not in ("cascade", "release"):
            raise ValueError(f"unknown theta rule {theta_rule!r}")
        if expansion not in ("eager", "lazy"):
            raise ValueError(f"unknown expansion {expansion!r}")
        require_nonnegative(g, "RSA")
        self.g = g
        self.length = length
        self.theta_rule = theta_rule
        self.expansion = expansion
        self._nbrs = g.neighbours_by_weight() if expansion == "lazy" else None
        self.budget = budget or Budget()
        self.stats = AlgorithmStats()
        self.log = ConstructionLog() if record else None
        self.w_max = g.w_max
        self.buffers: dict[int, PathBuffer] = {
            lv: PathBuffer(lv, math.fsum([self.w_max] * lv)) for lv in range(2, length + 1)
        }
        self.exhausted_below: dict[int, bool] = {lv: False for lv in range(2, length + 1)}
        self.released: dict[int, list[Path]] = {lv: [] for lv in range(1, length + 1)}
        self.max_depth = 0
        self._cursor = 0
        # per-level (sorted_reads, theta) after every change, for soundness checks
        self.theta_trace: dict[int, list[tuple[int, float]]] = {lv: [] for lv in range(2, length + 1)}

    def _read_edge(self) -> Path | None:
        g = self.g
        if self._cursor >= len(g.sorted_edges):
            if 2 in self.buffers:
                self._set_theta(2, NEG_INF)
            return None
        e = g.edges[g.sorted_edges[self._cursor]]
        self._cursor += 1
        self.stats.sorted_reads += 1
        if self.log is not None:
            self.log.add((e.u, e.v), "sorted", self.stats.sorted_reads)
        if 2 in self.buffers:
            self._set_theta(2, e.w + e.w)
        return Path((e.u, e.v), e.w)

    def _set_theta(self, level: int, value: float) -> None:
        self.buffers[level].theta = value
        self.theta_trace[level].append((self.stats.sorted_reads, value))

    def _extend(self, level: int, p: Path) -> None:
        if self._nbrs is not None:
            nodes = p.nodes
            ws = tuple(self.g.adjacency[a][b] for a, b in zip(nodes, nodes[1:]))
            self._advance(level, (nodes, ws, 0, 0))
            self._advance(level, (nodes, ws, 1, 0))
            self._account(level)
            return
        buf = self.buffers[level]
        adj = self.g.adjacency
        nodes = p.nodes
        ws = [adj[a][b] for a, b in zip(nodes, nodes[1:])]
        s, t = nodes[0], nodes[-1]
        stats = self.stats
        depth = stats.sorted_reads
        for y, w in adj[s].items():
            stats.random_reads += 1
            if y in nodes:
                continue
            new = (y,) + nodes
            if self.log is not None:
                self.log.add(new, "random", depth)
            buf.insert(new, math.fsum([w, *ws]))
        for z, w in adj[t].items():
            stats.random_reads += 1
            if z in nodes:
                continue
            new = nodes + (z,)
            if self.log is not None:
                self.log.add(new, "random", depth)
            buf.insert(new, math.fsum([*ws, w]))
        self._account(level)

    def _account(self, level: int) -> None:
        buffered = sum(len(b) for b in self.buffers.values())
        self.stats.buffer_peak = max(self.stats.buffer_peak, buffered)
        # pending cursors hold memory too
        self.budget.check(buffered + sum(b.pending for b in self.buffers.values()))

    def _advance(self, level: int, cursor: tuple) -> None:
        """Park a cursor at the next neighbour of one path end that keeps the path simple."""
        nodes, ws, side, i = cursor
        nbrs = self._nbrs[nodes[-1] if side else nodes[0]]
        while i < len(nbrs):
            y, w = nbrs[i]
            self.stats.random_reads += 1
            if y not in nodes:
                bound = math.fsum([*ws, w])
                self.buffers[level].push_cursor(bound, (nodes, ws, side, i))
                return
            i += 1

    def _settle(self, level: int, floor: float) -> None:
        """Build pending extensions while a cursor is on top and scores above ``floor``."""
        buf = self.buffers[level]
        while buf.top_is_cursor and buf.top_score > floor:
            nodes, ws, side, i = buf.pop_cursor()
            y, w = self._nbrs[nodes[-1] if side else nodes[0]][i]
            new = nodes + (y,) if side else (y,) + nodes
            if self.log is not None:
                self.log.add(new, "random", self.stats.sorted_reads)
            buf.insert(new, math.fsum([*ws, w]) if side else math.fsum([w, *ws]))
            self._advance(level, (nodes, ws, side, i + 1))
            self._account(level)

    def _release(self, level: int) -> Path | None:
        buf = self.buffers[level]
        p = buf.pop()
        if p is not None and level < self.length:
            if self.theta_rule == "cascade":
                bound = max(buf.top_score, buf.theta)
            else:
                bound = p.weight
            self._set_theta(level + 1, bound + self.w_max if bound != NEG_INF else NEG_INF)
        return p

    def next_path(self, level: int) -> Path | None:
        if not 1 <= level <= self.length:
            raise ValueError(f"level must be in 1..{self.length}, got {level}")
        stack = [level]
        ret = _NOTHING
        while stack:
            self.max_depth = max(self.max_depth, len(stack))
            lv = stack[-1]
            if lv == 1:
                stack.pop()
                ret = self._read_edge()
                continue
            buf = self.buffers[lv]
            if ret is not _NOTHING:
                child, ret = ret, _NOTHING
                if child is None:
                    self.exhausted_below[lv] = True
                    self._set_theta(lv, NEG_INF)
                else:
                    self._extend(lv, child)
            if self._nbrs is not None:
                self._settle(lv, NEG_INF if self.exhausted_below[lv] else buf.theta)
            if not self.exhausted_below[lv] and buf.top_score <= buf.theta:
                stack.append(lv - 1)
                continue
            stack.pop()
            ret = self._release(lv)
        out = None if ret is _NOTHING else ret
        if out is not None:
            self.released[level].append(out)
        self._sync_counters()
        return out

    def _sync_counters(self) -> None:
        bufs = self.buffers.values()
        self.stats.paths_constructed = self.stats.sorted_reads + sum(b.constructed for b in bufs)
        self.stats.duplicates_discarded = sum(b.discarded for b in bufs)


def rsa_topk(
    g: WeightedGraph,
    l: int,
    k: int,
    *,
    theta_rule: str = "cascade",
    expansion: str = "eager",
    budget: Budget | None = None,
    record: bool = False,
) -> TopKResult:
    """Release the next heaviest path of length ``l`` until ``k`` are out or none remain."""
    check_args(l, k)
    state = RsaState(g, l, theta_rule=theta_rule, expansion=expansion, budget=budget, record=record)
    state.budget.start()
    t0 = time.perf_counter()
    paths: list[Path] = []
    exhausted = False
    while len(paths) < k:
        p = state.next_path(l)
        if p is None:
            exhausted = True
            break
        paths.append(p)
    state.stats.wall_ms = (time.perf_counter() - t0) * 1000.0
    tie = bool(paths) and len(paths) == k and _peek_weight(state, l) == paths[-1].weight
    return TopKResult(paths, state.stats, exhausted=exhausted, boundary_tie=tie, log=state.log, state=state)


def _peek_weight(state: RsaState, l: int) -> float:
    if l == 1:
        nxt = state._cursor
        g = state.g
        return g.edges[g.sorted_edges[nxt]].w if nxt < len(g.sorted_edges) else NEG_INF
    return state.buffers[l].top_score
