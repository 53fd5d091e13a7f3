"""Maximum matching on the bipartite out-copy/in-copy view of a digraph.

Every directed edge ``u -> v`` becomes the bipartite edge ``(u_out, v_in)``.
Nodes whose in-copy stays unmatched are the driver nodes; nodes whose
out-copy stays unmatched are unsaturated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidMatching, NotMaximum
from .graph import DirectedGraph

UNMATCHED = -1


@dataclass(frozen=True)
class Matching:
    """A matching stored as two mutually inverse partner arrays.

    ``out_partner[u] == v`` and ``in_partner[v] == u`` both mean that the
    bipartite edge ``(u_out, v_in)`` is matched; ``UNMATCHED`` marks a free copy.
    """

    out_partner: tuple[int, ...]
    in_partner: tuple[int, ...]

    @property
    def node_count(self) -> int:
        return len(self.out_partner)

    @property
    def size(self) -> int:
        return sum(1 for v in self.out_partner if v != UNMATCHED)

    def pairs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in enumerate(self.out_partner) if v != UNMATCHED]

    @classmethod
    def from_pairs(cls, node_count: int, pairs: Iterable[tuple[int, int]]) -> "Matching":
        """Build a matching, rejecting pairs that reuse a copy."""
        out_p = [UNMATCHED] * node_count
        in_p = [UNMATCHED] * node_count
        for u, v in sorted(pairs):
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise InvalidMatching(f"pair {(u, v)} outside node range", (u, v))
            if out_p[u] != UNMATCHED:
                raise InvalidMatching(f"out-copy {u} used twice", (u, v))
            if in_p[v] != UNMATCHED:
                raise InvalidMatching(f"in-copy {v} used twice", (u, v))
            out_p[u] = v
            in_p[v] = u
        return cls(tuple(out_p), tuple(in_p))


@dataclass(frozen=True)
class MatchingDiagnostics:
    size: int
    valid: bool = True
    maximum: bool = True


@dataclass(frozen=True)
class UnmatchedSets:
    drivers: frozenset[int]
    unsaturated: frozenset[int]
    n_d: int


def maximum_matching(graph: DirectedGraph, seed: int | None = None) -> Matching:
    """Hopcroft-Karp maximum matching.

    With ``seed=None`` nodes and neighbours are scanned in ascending id
    order, so the result is a deterministic function of the graph. A seed
    shuffles both orders, which is how alternative maximum matchings are
    sampled in tests.
    """
    n = graph.node_count
    adj = graph.out_adj
    order = list(range(n))
    if seed is not None:
        rng = random.Random(seed)
        adj = [rng.sample(a, len(a)) for a in adj]
        rng.shuffle(order)

    out_p = [UNMATCHED] * n
    in_p = [UNMATCHED] * n

    # greedy warm start
    for u in order:
        for v in adj[u]:
            if in_p[v] == UNMATCHED:
                out_p[u] = v
                in_p[v] = u
                break

    while True:
        dist = [-1] * n
        queue = [u for u in order if out_p[u] == UNMATCHED]
        for u in queue:
            dist[u] = 0
        found = False
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            du = dist[u] + 1
            for v in adj[u]:
                w = in_p[v]
                if w == UNMATCHED:
                    found = True
                elif dist[w] == -1:
                    dist[w] = du
                    queue.append(w)
        if not found:
            break

        ptr = [0] * n
        for root in order:
            if out_p[root] != UNMATCHED or dist[root] != 0:
                continue
            stack = [root]
            via: list[int] = []
            while stack:
                u = stack[-1]
                au = adj[u]
                pushed = False
                while ptr[u] < len(au):
                    v = au[ptr[u]]
                    ptr[u] += 1
                    w = in_p[v]
                    if w == UNMATCHED:
                        via.append(v)
                        for x, y in zip(stack, via):
                            out_p[x] = y
                            in_p[y] = x
                        stack = []
                        pushed = True
                        break
                    if dist[w] == dist[u] + 1:
                        via.append(v)
                        stack.append(w)
                        pushed = True
                        break
                if not pushed:
                    dist[u] = -1
                    stack.pop()
                    if via:
                        via.pop()

    return Matching(tuple(out_p), tuple(in_p))


def check_matching(graph: DirectedGraph, m: Matching) -> None:
    """Raise ``InvalidMatching`` unless ``m`` is a matching of ``graph``."""
    n = graph.node_count
    if m.node_count != n or len(m.in_partner) != n:
        raise InvalidMatching(f"matching covers {m.node_count} nodes, graph has {n}")
    for u, v in enumerate(m.out_partner):
        if v == UNMATCHED:
            continue
        if not 0 <= v < n or m.in_partner[v] != u:
            raise InvalidMatching(f"partner arrays disagree at out-copy {u}", (u, v))
        if not graph.has_edge(u, v):
            raise InvalidMatching(f"matched pair {(u, v)} is not an edge", (u, v))
    for v, u in enumerate(m.in_partner):
        if u != UNMATCHED and (not 0 <= u < n or m.out_partner[u] != v):
            raise InvalidMatching(f"partner arrays disagree at in-copy {v}", (u, v))


def find_augmenting_path(graph: DirectedGraph, m: Matching) -> list[tuple[str, int]] | None:
    """Return an augmenting path as ``[("out", u), ("in", v), ...]`` or None."""
    out_p, in_p = m.out_partner, m.in_partner
    n = graph.node_count
    parent: list[int] = [-2] * n  # out-copy -> previous out-copy on the path
    queue = [u for u in range(n) if out_p[u] == UNMATCHED]
    for u in queue:
        parent[u] = -1
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for v in graph.out_adj[u]:
            if v == out_p[u]:
                continue
            w = in_p[v]
            if w == UNMATCHED:
                path = [("in", v)]
                x = u
                while x != -1:
                    path.append(("out", x))
                    if parent[x] == -1:
                        break
                    path.append(("in", out_p[x]))
                    x = parent[x]
                path.reverse()
                return path
            if parent[w] == -2:
                parent[w] = u
                queue.append(w)
    return None


def verify_maximum_matching(graph: DirectedGraph, m: Matching | Iterable[tuple[int, int]]) -> MatchingDiagnostics:
    """Check that ``m`` is a valid matching with no augmenting path.

    Raises ``InvalidMatching`` for a structural violation and ``NotMaximum``
    (carrying a witness path) when the matching can be augmented.
    """
    if not isinstance(m, Matching):
        m = Matching.from_pairs(graph.node_count, m)
    check_matching(graph, m)
    path = find_augmenting_path(graph, m)
    if path is not None:
        raise NotMaximum(path)
    return MatchingDiagnostics(size=m.size)


def extract_unmatched(graph: DirectedGraph, m: Matching) -> UnmatchedSets:
    check_matching(graph, m)
    drivers = frozenset(v for v, u in enumerate(m.in_partner) if u == UNMATCHED)
    unsaturated = frozenset(u for u, v in enumerate(m.out_partner) if v == UNMATCHED)
    return UnmatchedSets(drivers, unsaturated, max(1, len(drivers)))
