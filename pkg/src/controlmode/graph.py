"""Directed graph storage, SNAP-style edge-list I/O and edge mutation."""

from __future__ import annotations

import bisect
import enum
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, TextIO

from .errors import DuplicateEdge, EdgeAlreadyExists, EdgeNotFound, EmptyGraph, ParseError

Edge = tuple[int, int]


class DirectedGraph:
    """A directed graph on dense node ids ``0..N-1``.

    Self-loops are allowed, parallel edges are not. Both adjacency
    directions are kept sorted so every traversal in this package visits
    neighbours in ascending id order.

    Parameters
    ----------
    node_count : int
        Number of nodes N.
    edges : iterable of (int, int), optional
        Initial edges. A repeated edge raises ``EdgeAlreadyExists``.
    labels : sequence of str, optional
        External label of every node, indexed by dense id.
    """

    __slots__ = ("node_count", "out_adj", "in_adj", "_edges", "labels")

    def __init__(self, node_count: int, edges: Iterable[Edge] = (), labels: Sequence[str] | None = None):
        if node_count < 0:
            raise ValueError("node_count must be non-negative")
        self.node_count = node_count
        self.out_adj: list[list[int]] = [[] for _ in range(node_count)]
        self.in_adj: list[list[int]] = [[] for _ in range(node_count)]
        self._edges: set[Edge] = set()
        if labels is not None and len(labels) != node_count:
            raise ValueError("labels must have one entry per node")
        self.labels = list(labels) if labels is not None else None
        for u, v in edges:
            self._check_node(u)
            self._check_node(v)
            if (u, v) in self._edges:
                raise EdgeAlreadyExists(f"edge {u} -> {v} already exists")
            self._edges.add((u, v))
            self.out_adj[u].append(v)
            self.in_adj[v].append(u)
        for adj in self.out_adj:
            adj.sort()
        for adj in self.in_adj:
            adj.sort()

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.node_count:
            raise ValueError(f"node id {v} outside [0, {self.node_count})")

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def label_map(self) -> dict[str, int] | None:
        if self.labels is None:
            return None
        return {label: i for i, label in enumerate(self.labels)}

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edges

    def edges(self) -> Iterator[Edge]:
        """Yield edges sorted by (from, to)."""
        for u, targets in enumerate(self.out_adj):
            for v in targets:
                yield u, v

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self._edges)

    def add_edge(self, u: int, v: int) -> None:
        self._check_node(u)
        self._check_node(v)
        if (u, v) in self._edges:
            raise EdgeAlreadyExists(f"edge {u} -> {v} already exists")
        self._edges.add((u, v))
        bisect.insort(self.out_adj[u], v)
        bisect.insort(self.in_adj[v], u)

    def remove_edge(self, u: int, v: int) -> None:
        if (u, v) not in self._edges:
            raise EdgeNotFound(f"edge {u} -> {v} not in graph")
        self._edges.remove((u, v))
        adj = self.out_adj[u]
        del adj[bisect.bisect_left(adj, v)]
        adj = self.in_adj[v]
        del adj[bisect.bisect_left(adj, u)]

    def copy(self) -> "DirectedGraph":
        g = DirectedGraph.__new__(DirectedGraph)
        g.node_count = self.node_count
        g.out_adj = [list(a) for a in self.out_adj]
        g.in_adj = [list(a) for a in self.in_adj]
        g._edges = set(self._edges)
        g.labels = list(self.labels) if self.labels is not None else None
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self.node_count == other.node_count and self._edges == other._edges

    def __repr__(self) -> str:
        return f"DirectedGraph(N={self.node_count}, L={self.edge_count})"


class EdgeOpKind(str, enum.Enum):
    ADD = "add"
    REMOVE = "remove"
    REVERSE = "reverse"


@dataclass(frozen=True)
class EdgeOp:
    """A single edge mutation. ``Reverse(u, v)`` removes u->v and adds v->u."""

    kind: EdgeOpKind
    edge: Edge

    @classmethod
    def add(cls, u: int, v: int) -> "EdgeOp":
        return cls(EdgeOpKind.ADD, (u, v))

    @classmethod
    def remove(cls, u: int, v: int) -> "EdgeOp":
        return cls(EdgeOpKind.REMOVE, (u, v))

    @classmethod
    def reverse(cls, u: int, v: int) -> "EdgeOp":
        return cls(EdgeOpKind.REVERSE, (u, v))


def apply_edge_op(graph: DirectedGraph, op: EdgeOp) -> DirectedGraph:
    """Apply ``op`` to ``graph`` in place and return it."""
    u, v = op.edge
    if op.kind is EdgeOpKind.ADD:
        graph.add_edge(u, v)
    elif op.kind is EdgeOpKind.REMOVE:
        graph.remove_edge(u, v)
    else:
        if not graph.has_edge(u, v):
            raise EdgeNotFound(f"edge {u} -> {v} not in graph")
        if u == v:
            return graph
        if graph.has_edge(v, u):
            raise EdgeAlreadyExists(f"reversed edge {v} -> {u} already exists")
        graph.remove_edge(u, v)
        graph.add_edge(v, u)
    return graph


def average_degree(graph: DirectedGraph) -> Fraction:
    """Mean total degree ``2L/N``."""
    if graph.node_count == 0:
        raise EmptyGraph("average degree of a graph without nodes")
    return Fraction(2 * graph.edge_count, graph.node_count)


def parse_edge_list(source: str | TextIO | Iterable[str], dedup: bool = False) -> DirectedGraph:
    """Parse a SNAP-style edge list.

    Each non-comment line holds two whitespace-separated labels. Labels are
    mapped to dense ids in order of first appearance; the original labels
    are kept on ``graph.labels``.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    ids: dict[str, int] = {}
    seen: set[Edge] = set()
    edges: list[Edge] = []
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise ParseError(lineno, f"expected 2 tokens, got {len(tokens)}: {stripped!r}")
        a, b = tokens
        u = ids.setdefault(a, len(ids))
        v = ids.setdefault(b, len(ids))
        if (u, v) in seen:
            if dedup:
                continue
            raise DuplicateEdge(lineno, (a, b))
        seen.add((u, v))
        edges.append((u, v))
    return DirectedGraph(len(ids), edges, labels=list(ids))


def read_edge_list(path, dedup: bool = False) -> DirectedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh, dedup=dedup)


def serialize_edge_list(graph: DirectedGraph) -> str:
    """One ``from<TAB>to`` line per edge, sorted by (from, to), dense ids."""
    return "".join(f"{u}\t{v}\n" for u, v in graph.edges())


def write_edge_list(graph: DirectedGraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for u, v in graph.edges():
            fh.write(f"{u}\t{v}\n")
