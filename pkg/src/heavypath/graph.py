"""Weighted undirected graphs: construction, ingestion and weight transforms."""

from __future__ import annotations

import io
import math
from collections import Counter
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, TextIO

from .errors import GraphFormatError, PreconditionError


class Edge(NamedTuple):
    u: int
    v: int
    w: float


class WeightedGraph:
    """Immutable undirected graph with string labels interned to dense ids.

    ``adjacency[u]`` maps each neighbour of ``u`` to the incident edge weight.
    ``sorted_edges`` lists edge indices by non-increasing weight, ties broken
    by ``(min id, max id)`` ascending.
    """

    __slots__ = ("labels", "index", "edges", "adjacency", "edge_ids", "sorted_edges", "w_max", "w_min", "_by_weight")

    def __init__(self, edges: Iterable[tuple[str, str, float]], nodes: Iterable[str] = ()):
        labels: list[str] = []
        index: dict[str, int] = {}

        def intern(label: str) -> int:
            label = str(label)
            if label not in index:
                index[label] = len(labels)
                labels.append(label)
            return index[label]

        for label in nodes:
            intern(label)

        best: dict[tuple[int, int], float] = {}
        for a, b, w in edges:
            u, v = intern(a), intern(b)
            if u == v:
                raise ValueError(f"self-loop on node {a!r}")
            key = (u, v) if u < v else (v, u)
            w = float(w)
            if key not in best or w > best[key]:
                best[key] = w

        self.labels: tuple[str, ...] = tuple(labels)
        self.index: dict[str, int] = index
        self.edges: tuple[Edge, ...] = tuple(Edge(u, v, w) for (u, v), w in best.items())
        self.edge_ids: dict[tuple[int, int], int] = {(e.u, e.v): i for i, e in enumerate(self.edges)}
        adjacency: list[dict[int, float]] = [{} for _ in labels]
        for e in self.edges:
            adjacency[e.u][e.v] = e.w
            adjacency[e.v][e.u] = e.w
        self.adjacency: tuple[dict[int, float], ...] = tuple(adjacency)
        self.sorted_edges: tuple[int, ...] = tuple(
            sorted(range(len(self.edges)), key=lambda i: (-self.edges[i].w, self.edges[i].u, self.edges[i].v))
        )
        self.w_max: float = self.edges[self.sorted_edges[0]].w if self.edges else 0.0
        self.w_min: float = self.edges[self.sorted_edges[-1]].w if self.edges else 0.0
        self._by_weight: tuple[tuple[tuple[int, float], ...], ...] | None = None

    @property
    def n_nodes(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def neighbours_by_weight(self) -> tuple[tuple[tuple[int, float], ...], ...]:
        """Per node, ``(neighbour, weight)`` pairs heaviest first (ties by neighbour id)."""
        if self._by_weight is None:
            self._by_weight = tuple(
                tuple(sorted(nbrs.items(), key=lambda t: (-t[1], t[0]))) for nbrs in self.adjacency
            )
        return self._by_weight

    def weight(self, u: int, v: int) -> float:
        try:
            return self.adjacency[u][v]
        except (KeyError, IndexError):
            raise KeyError(f"no edge between {u} and {v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < len(self.adjacency) and v in self.adjacency[u]

    def ids(self, labels: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.index[str(label)] for label in labels)

    def names(self, ids: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in ids)

    def iter_sorted(self) -> Iterator[Edge]:
        for i in self.sorted_edges:
            yield self.edges[i]

    def labelled_edges(self) -> list[tuple[str, str, float]]:
        return [(self.labels[e.u], self.labels[e.v], e.w) for e in self.edges]

    def with_weights(self, fn) -> WeightedGraph:
        """Return a copy with every weight replaced by ``fn(w)``, keeping node ids."""
        return WeightedGraph(
            ((self.labels[e.u], self.labels[e.v], fn(e.w)) for e in self.edges),
            nodes=self.labels,
        )

    def edge_set(self) -> dict[frozenset[str], float]:
        return {frozenset((a, b)): w for a, b, w in self.labelled_edges()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return set(self.labels) == set(other.labels) and self.edge_set() == other.edge_set()

    def __hash__(self):
        return hash((frozenset(self.labels), frozenset(self.edge_set().items())))

    def __repr__(self) -> str:
        return f"WeightedGraph(nodes={self.n_nodes}, edges={self.n_edges}, w_max={self.w_max!r})"


def _parse_edges(stream: Iterable[str], allow_negative: bool) -> WeightedGraph:
    triples: list[tuple[str, str, float]] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphFormatError(f"expected 3 fields, got {len(parts)}", lineno)
        a, b, tok = parts
        try:
            w = float(tok)
        except ValueError:
            raise GraphFormatError(f"unparsable weight {tok!r}", lineno) from None
        if not math.isfinite(w):
            raise GraphFormatError(f"non-finite weight {tok!r}", lineno)
        if w < 0 and not allow_negative:
            raise GraphFormatError(f"negative weight {tok!r}", lineno)
        if a == b:
            raise GraphFormatError(f"self-loop on {a!r}", lineno)
        triples.append((a, b, w))
    return WeightedGraph(triples)


def load_edge_list(text: str | TextIO) -> WeightedGraph:
    """Parse ``source destination weight`` lines.

    Blank lines and lines starting with ``#`` are skipped. Repeated pairs keep
    the maximum weight. Weights are not normalized.
    """
    return _parse_edges(io.StringIO(text) if isinstance(text, str) else text, allow_negative=False)


def load_signed_edge_list(text: str | TextIO) -> WeightedGraph:
    """Like :func:`load_edge_list` but accepts negative weights (C-W output with small C)."""
    return _parse_edges(io.StringIO(text) if isinstance(text, str) else text, allow_negative=True)


def dumps_edge_list(g: WeightedGraph) -> str:
    # repr() gives the shortest string that round-trips to the same double
    return "".join(f"{a} {b} {w!r}\n" for a, b, w in g.labelled_edges())


def read_graph(path: str, signed: bool = False) -> WeightedGraph:
    with open(path, encoding="utf-8") as fh:
        return load_signed_edge_list(fh) if signed else load_edge_list(fh)


def write_graph(g: WeightedGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_edge_list(g))


def load_itemsets(text: str | TextIO) -> list[frozenset[str]]:
    """One record per line, members separated by whitespace."""
    stream = io.StringIO(text) if isinstance(text, str) else text
    records = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        members = line.split()
        if len(set(members)) != len(members):
            raise GraphFormatError("repeated member in record", lineno)
        records.append(frozenset(members))
    return records


def build_from_itemsets(records: Iterable[Iterable[str]]) -> WeightedGraph:
    """Co-membership graph where each record of m members credits every pair 1/m.

    Singletons contribute nothing. Credits are summed exactly and the result is
    normalized by the maximum, so the graph does not depend on record order.
    """
    raw: dict[tuple[str, str], Fraction] = {}
    for record in records:
        members = sorted(set(map(str, record)))
        m = len(members)
        if m < 2:
            continue
        credit = Fraction(1, m)
        for pair in combinations(members, 2):
            raw[pair] = raw.get(pair, Fraction(0)) + credit
    if not raw:
        return WeightedGraph([])
    top = max(raw.values())
    nodes = sorted({x for pair in raw for x in pair})
    return WeightedGraph(((a, b, float(c / top)) for (a, b), c in sorted(raw.items())), nodes=nodes)


def dice(intersection: int, size_i: int, size_j: int) -> float:
    return 2 * intersection / (size_i + size_j)


def build_cooccurrence_dice(
    pair_counts: Mapping[tuple[str, str], int], item_counts: Mapping[str, int]
) -> WeightedGraph:
    """Graph weighted by the Dice coefficient ``2|i∩j| / (|i| + |j|)``."""
    triples = []
    for (a, b), both in sorted(pair_counts.items()):
        if both == 0:
            continue
        try:
            ci, cj = item_counts[a], item_counts[b]
        except KeyError as exc:
            raise GraphFormatError(f"no occurrence count for item {exc.args[0]!r}") from None
        if ci <= 0 or cj <= 0:
            raise GraphFormatError(f"non-positive occurrence count for pair ({a}, {b})")
        if both < 0 or both > min(ci, cj):
            raise GraphFormatError(f"intersection {both} inconsistent with counts {ci}, {cj} for ({a}, {b})")
        triples.append((a, b, dice(both, ci, cj)))
    return WeightedGraph(triples)


def cooccurrence_counts(records: Iterable[Iterable[str]]) -> tuple[dict[tuple[str, str], int], dict[str, int]]:
    """Per-item occurrence counts and per-pair intersection counts over item-set records."""
    items: Counter[str] = Counter()
    pairs: Counter[tuple[str, str]] = Counter()
    for record in records:
        members = sorted(set(map(str, record)))
        items.update(members)
        pairs.update(combinations(members, 2))
    return dict(pairs), dict(items)


def normalize_weights(g: WeightedGraph) -> WeightedGraph:
    if not g.edges or g.w_max <= 0:
        raise PreconditionError("cannot normalize a graph without a positive edge weight")
    top = g.w_max
    return g.with_weights(lambda w: w / top)


def transform_c_minus_w(g: WeightedGraph, c: float, strict: bool = True) -> WeightedGraph:
    """Replace every weight w by ``c - w``; maps heaviest paths to lightest ones.

    With ``strict`` the result must stay non-negative, i.e. ``c >= w_max``.
    """
    if strict and g.edges and c < g.w_max:
        raise PreconditionError(f"C={c!r} is below w_max={g.w_max!r}; weights would turn negative")
    return g.with_weights(lambda w: c - w)


def is_normalized(g: WeightedGraph) -> bool:
    return not g.edges or (g.w_max == 1.0 and g.w_min >= 0.0)


def from_pairs(pairs: Sequence[tuple[object, object, float]]) -> WeightedGraph:
    """Convenience constructor accepting non-string labels."""
    return WeightedGraph((str(a), str(b), w) for a, b, w in pairs)
