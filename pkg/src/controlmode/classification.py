"""Input/redundant node classification and alternating components.

A node is an input node when its in-copy is unmatched or can be reached
from an unmatched in-copy by an alternating path (non-matched edge to an
out-copy, then that out-copy's matched edge back to an in-copy). Every
other node is redundant: no maximum matching leaves it unmatched.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

from .graph import DirectedGraph
from .matching import UNMATCHED, Matching, check_matching, extract_unmatched, maximum_matching
from .errors import NoInputComponent

DEFAULT_MODE_THRESHOLD = 0.5


class Label(str, enum.Enum):
    INPUT = "input"
    REDUNDANT = "redundant"


class Side(str, enum.Enum):
    FROM_UNMATCHED_IN = "in"
    FROM_UNMATCHED_OUT = "out"


class ComponentKind(str, enum.Enum):
    INPUT = "input"
    MATCHED = "matched"


class Mode(str, enum.Enum):
    DISTRIBUTED = "distributed"
    CENTRALIZED = "centralized"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class Reach:
    in_copies: frozenset[int]
    out_copies: frozenset[int]
    sources: frozenset[int]


def reach_from_unmatched_in(graph: DirectedGraph, out_p, in_p, sources) -> bytearray:
    """Flags of in-copies visited by the alternating search started at ``sources``.

    Sources are flagged too. Used directly by the rewiring code, which
    needs the flags rather than sets.
    """
    seen = bytearray(graph.node_count)
    queue = list(sources)
    for v in queue:
        seen[v] = 1
    in_adj = graph.in_adj
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for u in in_adj[v]:
            w = out_p[u]
            if w != v and w != UNMATCHED and not seen[w]:
                seen[w] = 1
                queue.append(w)
    return seen


def alternating_reach(
    graph: DirectedGraph, m: Matching, side: Side = Side.FROM_UNMATCHED_IN, include_sources: bool = False
) -> Reach:
    """Multi-source alternating BFS from the unmatched copies of one side.

    From ``FROM_UNMATCHED_IN`` the search alternates in-copy -> non-matched
    edge -> out-copy -> matched edge -> in-copy; ``FROM_UNMATCHED_OUT`` is the
    mirror image. Sources are returned separately and only appear in the
    visited sets when ``include_sources`` is set.
    """
    check_matching(graph, m)
    out_p, in_p = m.out_partner, m.in_partner
    n = graph.node_count
    if side is Side.FROM_UNMATCHED_IN:
        start_p, start_adj, other_p = in_p, graph.in_adj, out_p
    else:
        start_p, start_adj, other_p = out_p, graph.out_adj, in_p
    sources = [x for x in range(n) if start_p[x] == UNMATCHED]
    seen_start = bytearray(n)
    seen_other = bytearray(n)
    for x in sources:
        seen_start[x] = 1
    queue = list(sources)
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for y in start_adj[x]:
            if start_p[x] == y or seen_other[y]:
                continue
            seen_other[y] = 1
            z = other_p[y]
            if z != UNMATCHED and not seen_start[z]:
                seen_start[z] = 1
                queue.append(z)
    src = frozenset(sources)
    start_set = frozenset(i for i in range(n) if seen_start[i])
    if not include_sources:
        start_set -= src
    other_set = frozenset(i for i in range(n) if seen_other[i])
    if side is Side.FROM_UNMATCHED_IN:
        return Reach(start_set, other_set, src)
    return Reach(other_set, start_set, src)


@dataclass(frozen=True)
class ControlClassification:
    labels: tuple[Label, ...]
    is_driver: tuple[bool, ...]
    reach_in: frozenset[int]
    reach_out: frozenset[int]

    def inputs(self) -> set[int]:
        return {v for v, lab in enumerate(self.labels) if lab is Label.INPUT}

    def redundant(self) -> set[int]:
        return {v for v, lab in enumerate(self.labels) if lab is Label.REDUNDANT}


def classify_nodes(graph: DirectedGraph, m: Matching) -> ControlClassification:
    fwd = alternating_reach(graph, m, Side.FROM_UNMATCHED_IN)
    back = alternating_reach(graph, m, Side.FROM_UNMATCHED_OUT)
    is_driver = tuple(u == UNMATCHED for u in m.in_partner)
    labels = tuple(
        Label.INPUT if is_driver[v] or v in fwd.in_copies else Label.REDUNDANT
        for v in range(graph.node_count)
    )
    return ControlClassification(labels, is_driver, fwd.in_copies, back.out_copies)


@dataclass(frozen=True)
class AlternatingComponent:
    id: int
    members: frozenset[int]
    out_span: frozenset[int]
    kind: ComponentKind
    drivers: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.members)


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _moves(graph: DirectedGraph, out_p, x: int):
    """In-copies one alternating move away from ``x_in``."""
    for u in graph.in_adj[x]:
        w = out_p[u]
        if w != x and w != UNMATCHED:
            yield w


def _input_groups(graph: DirectedGraph, out_p, is_input: list[bool]) -> list[list[int]]:
    # moves out of a reachable in-copy always land on a reachable in-copy
    n = graph.node_count
    parent = list(range(n))
    size = [1] * n
    for x in range(n):
        if not is_input[x]:
            continue
        for w in _moves(graph, out_p, x):
            a, b = _find(parent, x), _find(parent, w)
            if a == b:
                continue
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
    groups: dict[int, list[int]] = {}
    for v in range(n):
        if is_input[v]:
            groups.setdefault(_find(parent, v), []).append(v)
    return list(groups.values())


def _matched_groups(graph: DirectedGraph, out_p, is_input: list[bool]) -> list[list[int]]:
    """Strongly connected blocks of the move graph on redundant in-copies (iterative Tarjan)."""
    n = graph.node_count
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    groups: list[list[int]] = []
    counter = 0

    def successors(x):
        return (w for w in _moves(graph, out_p, x) if not is_input[w])

    for root in range(n):
        if is_input[root] or index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = 1
        work = [(root, successors(root))]
        while work:
            v, it = work[-1]
            descended = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = 1
                    work.append((w, successors(w)))
                    descended = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if descended:
                continue
            work.pop()
            if work:
                p = work[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
            if low[v] == index[v]:
                block = []
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    block.append(w)
                    if w == v:
                        break
                groups.append(sorted(block))
    return groups


def alternating_components(
    graph: DirectedGraph, m: Matching, classification: ControlClassification | None = None
) -> list[AlternatingComponent]:
    """Partition all in-copies into alternating components.

    An alternating move ``x_in -> u_out -> w_in`` takes a non-matched edge and
    then a matched one. Input components are the transitive merge of the
    drivers' reach sets: a union-find over moves leaving driver-reachable
    in-copies, so they hold input nodes only. The redundant in-copies are
    split into matched components, the groups of in-copies lying on common
    alternating cycles (strongly connected blocks of the move graph).
    Merging redundant in-copies by undirected move connectivity instead
    chains almost the whole redundant part of a dense graph into one block.

    Components are returned ordered by their smallest member.
    """
    if classification is None:
        classification = classify_nodes(graph, m)
    out_p = m.out_partner
    is_input = [lab is Label.INPUT for lab in classification.labels]
    groups = _input_groups(graph, out_p, is_input) + _matched_groups(graph, out_p, is_input)

    is_driver = classification.is_driver
    components = []
    for cid, members in enumerate(sorted(groups, key=min)):
        drivers = frozenset(v for v in members if is_driver[v])
        span = frozenset(u for v in members for u in graph.in_adj[v])
        kind = ComponentKind.INPUT if drivers else ComponentKind.MATCHED
        components.append(AlternatingComponent(cid, frozenset(members), span, kind, drivers))
    return components


def largest_input_component(components: list[AlternatingComponent]) -> AlternatingComponent:
    """Input component with most members; ties go to the smallest member id."""
    candidates = [c for c in components if c.kind is ComponentKind.INPUT]
    if not candidates:
        raise NoInputComponent("every alternating component is a matched component")
    return max(candidates, key=lambda c: (len(c.members), -min(c.members)))


def largest_is_input(components: list[AlternatingComponent]) -> bool:
    """True when some largest alternating component (of either kind) is an input component."""
    if not components:
        return False
    top = max(c.size for c in components)
    return any(c.kind is ComponentKind.INPUT for c in components if c.size == top)


@dataclass
class ControlReport:
    n: int
    l: int
    n_d: int
    input_count: int
    in_fraction: float
    ic_max: float
    mode: Mode
    component_sizes: dict[int, int]
    perfect_matching: bool
    labels: list[str] | None = field(default=None)

    def to_dict(self, labels: bool = False) -> dict:
        out = {
            "n": self.n,
            "l": self.l,
            "n_d": self.n_d,
            "input_count": self.input_count,
            "in_fraction": self.in_fraction,
            "ic_max": self.ic_max,
            "mode": self.mode.value,
            "perfect_matching": self.perfect_matching,
            "component_sizes": {str(k): v for k, v in sorted(self.component_sizes.items())},
        }
        if labels and self.labels is not None:
            out["labels"] = self.labels
        return out


def mode_for(in_fraction: float, threshold: float = DEFAULT_MODE_THRESHOLD) -> Mode:
    if in_fraction > threshold:
        return Mode.DISTRIBUTED
    if in_fraction < threshold:
        return Mode.CENTRALIZED
    return Mode.NEUTRAL


def build_report(
    graph: DirectedGraph,
    m: Matching,
    classification: ControlClassification,
    components: list[AlternatingComponent],
    threshold: float = DEFAULT_MODE_THRESHOLD,
) -> ControlReport:
    n = graph.node_count
    unmatched = extract_unmatched(graph, m)
    input_count = sum(1 for lab in classification.labels if lab is Label.INPUT)
    in_fraction = input_count / n if n else 0.0
    try:
        ic_max = largest_input_component(components).size / n
    except NoInputComponent:
        ic_max = 0.0
    return ControlReport(
        n=n,
        l=graph.edge_count,
        n_d=unmatched.n_d,
        input_count=input_count,
        in_fraction=in_fraction,
        ic_max=ic_max,
        mode=mode_for(in_fraction, threshold),
        component_sizes=dict(Counter(c.size for c in components)),
        perfect_matching=not unmatched.drivers,
        labels=[lab.value for lab in classification.labels],
    )


def control_report(graph: DirectedGraph, m: Matching | None = None, threshold: float = DEFAULT_MODE_THRESHOLD) -> ControlReport:
    """Summarise the control structure of ``graph`` under maximum matching ``m``."""
    if m is None:
        m = maximum_matching(graph)
    classification = classify_nodes(graph, m)
    components = alternating_components(graph, m, classification)
    return build_report(graph, m, classification, components, threshold)
