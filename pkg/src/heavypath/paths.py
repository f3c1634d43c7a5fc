"""Path model, duplicate-free buffers, run statistics and budgets."""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import MemoryBudgetExceeded, PreconditionError, TimeBudgetExceeded
from .graph import WeightedGraph

NEG_INF = float("-inf")


def canonicalize(nodes: Sequence[int]) -> tuple[int, ...]:
    """Orientation of a simple path whose first node id is <= its last."""
    nodes = tuple(nodes)
    if len(set(nodes)) != len(nodes):
        raise ValueError(f"not a simple path: {nodes}")
    if nodes and nodes[0] > nodes[-1]:
        return nodes[::-1]
    return nodes


def _canon(nodes: tuple[int, ...]) -> tuple[int, ...]:
    # hot-path variant without the simplicity check
    return nodes[::-1] if nodes[0] > nodes[-1] else nodes


def edge_weights(g: WeightedGraph, nodes: Sequence[int]) -> list[float]:
    out = []
    for a, b in zip(nodes, nodes[1:]):
        try:
            out.append(g.adjacency[a][b])
        except (KeyError, IndexError):
            raise ValueError(f"no edge between {a} and {b}") from None
    return out


def path_weight(g: WeightedGraph, nodes: Sequence[int], mode: str = "sum") -> float:
    """Aggregate weight of a path: plain sum, or sum of natural logs."""
    ws = edge_weights(g, nodes)
    if mode == "sum":
        return math.fsum(ws)
    if mode == "logprod":
        if any(w <= 0 for w in ws):
            raise ValueError("log-product aggregation needs strictly positive weights")
        return math.fsum(math.log(w) for w in ws)
    raise ValueError(f"unknown aggregation mode {mode!r}")


@dataclass(frozen=True, order=False)
class Path:
    nodes: tuple[int, ...]
    weight: float

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    def labels(self, g: WeightedGraph) -> tuple[str, ...]:
        return g.names(self.nodes)

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) if a < b else (b, a) for a, b in zip(self.nodes, self.nodes[1:])]

    def sort_key(self) -> tuple[float, tuple[int, ...]]:
        return (-self.weight, self.nodes)


class PathBuffer:
    """Weight-ordered set of paths of one length, with its threshold.

    ``seen`` remembers every canonical sequence ever inserted, so a path that
    was already released is rejected as a duplicate too.

    Besides real paths the heap may hold pending extension cursors: a cursor
    stands for the not yet built extensions of one path at one end, scored by
    the heaviest of them. ``top_score`` covers both kinds, so it stays an upper
    bound on everything the buffer represents. A cursor sorts ahead of a real
    path of equal score.
    """

    def __init__(self, length: int, theta: float):
        self.length = length
        self.theta = theta
        self._heap: list[tuple] = []
        self._seq = 0
        self._real = 0
        self.seen: set[tuple[int, ...]] = set()
        self.constructed = 0
        self.discarded = 0

    def insert(self, nodes: tuple[int, ...], weight: float) -> bool:
        self.constructed += 1
        key = _canon(nodes)
        if key in self.seen:
            self.discarded += 1
            return False
        self.seen.add(key)
        heapq.heappush(self._heap, (-weight, 1, key))
        self._real += 1
        return True

    def push_cursor(self, bound: float, cursor: tuple) -> None:
        self._seq += 1
        heapq.heappush(self._heap, (-bound, 0, self._seq, cursor))

    @property
    def top_score(self) -> float:
        return -self._heap[0][0] if self._heap else NEG_INF

    @property
    def top_is_cursor(self) -> bool:
        return bool(self._heap) and self._heap[0][1] == 0

    def pop_cursor(self) -> tuple:
        return heapq.heappop(self._heap)[3]

    def pop(self) -> Path | None:
        if not self._heap:
            return None
        if self._heap[0][1] == 0:
            raise RuntimeError("a pending cursor outranks every buffered path")
        negw, _, key = heapq.heappop(self._heap)
        self._real -= 1
        return Path(key, -negw)

    def peek(self) -> Path | None:
        for entry in sorted(self._heap):
            if entry[1] == 1:
                return Path(entry[2], -entry[0])
        return None

    def entries(self) -> list[Path]:
        return [Path(e[2], -e[0]) for e in sorted(self._heap) if e[1] == 1]

    @property
    def pending(self) -> int:
        return len(self._heap) - self._real

    def __len__(self) -> int:
        return self._real

    def __contains__(self, nodes: Sequence[int]) -> bool:
        return _canon(tuple(nodes)) in self.seen


class TopK:
    """Bounded collector of the heaviest distinct paths.

    Keeps ``k + 1`` entries so a tie straddling the k-th position is visible.
    Order: weight descending, then canonical node sequence ascending.
    """

    def __init__(self, k: int):
        self.k = k
        self._heap: list[tuple[float, tuple[int, ...], tuple[int, ...]]] = []
        self._keys: set[tuple[int, ...]] = set()

    def offer(self, key: tuple[int, ...], weight: float) -> bool:
        if key in self._keys:
            return False
        # min-heap on (weight, reversed tie order): the root is the worst entry
        item = (weight, tuple(-x for x in key), key)
        if len(self._heap) <= self.k:
            heapq.heappush(self._heap, item)
            self._keys.add(key)
            return True
        if item > self._heap[0]:
            dropped = heapq.heapreplace(self._heap, item)
            self._keys.discard(dropped[2])
            self._keys.add(key)
            return True
        return False

    def __len__(self) -> int:
        return min(len(self._heap), self.k)

    def __contains__(self, key: tuple[int, ...]) -> bool:
        return key in self._keys

    @property
    def bottom_score(self) -> float:
        """Weight of the k-th best entry, or -inf while fewer than k are held."""
        if len(self._heap) < self.k:
            return NEG_INF
        return self.ranked()[self.k - 1].weight

    def ranked(self) -> list[Path]:
        return [Path(key, w) for w, _, key in sorted(self._heap, key=lambda t: (-t[0], t[2]))]

    def result(self) -> tuple[list[Path], bool]:
        ranked = self.ranked()
        tie = len(ranked) > self.k and ranked[self.k].weight == ranked[self.k - 1].weight
        return ranked[: self.k], tie


@dataclass
class AlgorithmStats:
    sorted_reads: int = 0
    random_reads: int = 0
    paths_constructed: int = 0
    duplicates_discarded: int = 0
    buffer_peak: int = 0
    wall_ms: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)

    @property
    def edge_reads(self) -> int:
        return self.sorted_reads + self.random_reads


class LogEntry(NamedTuple):
    nodes: tuple[int, ...]
    ordinal: int
    source: str  # "sorted" or "random"
    depth: int  # sorted reads so far when the path was built


class ConstructionLog:
    def __init__(self):
        self.entries: list[LogEntry] = []

    def add(self, nodes: tuple[int, ...], source: str, depth: int) -> None:
        self.entries.append(LogEntry(nodes, len(self.entries), source, depth))

    def __iter__(self) -> Iterator[LogEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def canonical_set(self, length: int | None = None) -> set[tuple[int, ...]]:
        return {_canon(e.nodes) for e in self.entries if length is None or len(e.nodes) == length + 1}

    def count_containing(self, sub: Sequence[int]) -> int:
        """Number of logged constructions that contain ``sub`` as a contiguous run."""
        fwd, rev = tuple(sub), tuple(sub)[::-1]
        m = len(fwd)
        n = 0
        for e in self.entries:
            s = e.nodes
            if any(s[i : i + m] in (fwd, rev) for i in range(len(s) - m + 1)):
                n += 1
        return n

    def count_exact(self, nodes: Sequence[int]) -> int:
        key = _canon(tuple(nodes))
        return sum(1 for e in self.entries if _canon(e.nodes) == key)

    def to_tsv(self, g: WeightedGraph | None = None) -> str:
        lines = ["ordinal\tsource\tdepth\tpath"]
        for e in self.entries:
            names = g.names(e.nodes) if g is not None else map(str, e.nodes)
            lines.append(f"{e.ordinal}\t{e.source}\t{e.depth}\t{' '.join(names)}")
        return "\n".join(lines) + "\n"


@dataclass
class TopKResult:
    paths: list[Path]
    stats: AlgorithmStats
    exhausted: bool
    boundary_tie: bool = False
    log: ConstructionLog | None = None
    theta_trace: list[float] = field(default_factory=list)
    state: object = field(default=None, repr=False)

    @property
    def weights(self) -> list[float]:
        return [p.weight for p in self.paths]

    def canonical_set(self) -> set[tuple[int, ...]]:
        return {p.nodes for p in self.paths}


class Budget:
    """Wall-clock and buffered-path limits checked cooperatively by the algorithms."""

    def __init__(self, time_ms: float | None = None, max_buffered: int | None = None):
        self.time_ms = time_ms
        self.max_buffered = max_buffered
        self._deadline: float | None = None
        self._ticks = 0

    def start(self) -> None:
        if self.time_ms is not None:
            self._deadline = time.perf_counter() + self.time_ms / 1000.0

    def check(self, buffered: int = 0) -> None:
        if self.max_buffered is not None and buffered > self.max_buffered:
            raise MemoryBudgetExceeded(f"{buffered} buffered paths exceed cap {self.max_buffered}")
        self._ticks += 1
        if self._deadline is not None and (self._ticks & 0xF) == 0 and time.perf_counter() > self._deadline:
            raise TimeBudgetExceeded(f"exceeded {self.time_ms} ms")



def check_args(l: int, k: int) -> None:
    if l < 1:
        raise PreconditionError(f"path length must be >= 1, got {l}")
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")


def require_nonnegative(g: WeightedGraph, algo: str) -> None:
    if g.edges and g.w_min < 0:
        raise PreconditionError(f"{algo} requires non-negative edge weights (w_min={g.w_min!r})")


def enumerate_subpaths(nodes: Sequence[int], min_edges: int = 1) -> Iterable[tuple[int, ...]]:
    n = len(nodes)
    for size in range(min_edges + 1, n + 1):
        for i in range(n - size + 1):
            yield tuple(nodes[i : i + size])
