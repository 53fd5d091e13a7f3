"""Brute-force ground truth for small graphs.

Nothing here uses augmenting paths or alternating reachability: the maximum
matching size comes from a memoised search over (in-copy index, used
out-copies bitmask), and input nodes are read off the optimal branches of
that same search.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TooLarge
from .graph import DirectedGraph

DEFAULT_MAX_NODES = 14
DEFAULT_CAP = 100_000


@dataclass
class OracleResult:
    max_size: int
    matchings: list[tuple[tuple[int, int], ...]] = field(default_factory=list)
    input_nodes: frozenset[int] = frozenset()
    truncated: bool = False


class _Search:
    def __init__(self, graph: DirectedGraph):
        self.n = graph.node_count
        self.sources = [tuple(graph.in_adj[v]) for v in range(self.n)]
        self.memo: dict[tuple[int, int], int] = {}

    def best(self, v: int, used: int) -> int:
        """Largest matching over in-copies v..N-1 avoiding out-copies in ``used``."""
        if v == self.n:
            return 0
        key = (v, used)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        result = self.best(v + 1, used)
        for u in self.sources[v]:
            bit = 1 << u
            if not used & bit:
                result = max(result, 1 + self.best(v + 1, used | bit))
        self.memo[key] = result
        return result

    def optimal_moves(self, v: int, used: int):
        """Yield (partner or None, next used mask) for every optimal choice at in-copy v."""
        target = self.best(v, used)
        if self.best(v + 1, used) == target:
            yield None, used
        for u in self.sources[v]:
            bit = 1 << u
            if not used & bit and 1 + self.best(v + 1, used | bit) == target:
                yield u, used | bit


def _check_budget(graph: DirectedGraph, max_nodes: int) -> None:
    if graph.node_count > max_nodes:
        raise TooLarge(f"oracle limited to {max_nodes} nodes, graph has {graph.node_count}")


def _input_nodes(search: _Search) -> frozenset[int]:
    # walk every state lying on some optimal path and record skipped in-copies
    inputs: set[int] = set()
    frontier = {0}
    for v in range(search.n):
        nxt = set()
        for used in frontier:
            for partner, mask in search.optimal_moves(v, used):
                if partner is None:
                    inputs.add(v)
                nxt.add(mask)
        frontier = nxt
    return frozenset(inputs)


def enumerate_maximum_matchings(
    graph: DirectedGraph, cap: int = DEFAULT_CAP, max_nodes: int = DEFAULT_MAX_NODES
) -> OracleResult:
    """List every maximum matching (up to ``cap``) as sorted pair tuples."""
    _check_budget(graph, max_nodes)
    search = _Search(graph)
    max_size = search.best(0, 0)
    found: list[tuple[tuple[int, int], ...]] = []
    truncated = False
    chosen: list[tuple[int, int]] = []

    def dfs(v: int, used: int) -> bool:
        nonlocal truncated
        if v == search.n:
            if len(found) >= cap:
                truncated = True
                return False
            found.append(tuple(sorted(chosen)))
            return True
        for partner, mask in search.optimal_moves(v, used):
            if partner is not None:
                chosen.append((partner, v))
            ok = dfs(v + 1, mask)
            if partner is not None:
                chosen.pop()
            if not ok:
                return False
        return True

    dfs(0, 0)
    found.sort()
    if truncated:
        inputs = _input_nodes(search)
    else:
        matched_sets = [{v for _, v in mt} for mt in found]
        inputs = frozenset(v for v in range(search.n) if any(v not in s for s in matched_sets))
    return OracleResult(max_size, found, inputs, truncated)


def oracle_classification(graph: DirectedGraph, max_nodes: int = DEFAULT_MAX_NODES) -> dict:
    """Input nodes are exactly those left unmatched by some maximum matching."""
    _check_budget(graph, max_nodes)
    search = _Search(graph)
    max_size = search.best(0, 0)
    inputs = _input_nodes(search)
    return {
        "input": set(inputs),
        "redundant": set(range(graph.node_count)) - inputs,
        "n_d": max(1, graph.node_count - max_size),
        "max_size": max_size,
    }
