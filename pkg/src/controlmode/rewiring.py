"""Switch a network from distributed to centralized control by edge reversal.

The driver nodes of the largest input component are detached one by one:
each in-edge ``s -> d`` of a driver ``d`` is removed and, unless that would
let the drivers reach further or create an augmenting path, re-added as
``d -> s``. The matching computed at the start is never touched and stays
maximum on the rewired graph, so the number of driver nodes is unchanged
while the former component members become redundant.

Reach snapshot
--------------
Under the ``"stepwise"`` guard the set of driver-reachable in-copies is
refreshed at the start of every driver. That set never grows during the
run: removed edges all point into already-processed drivers, whose in-copies
an alternating walk never enters (they are unmatched), and a reversed edge
``d -> s`` is only walkable from ``s_in``, which was not reachable when the
edge was added. Hence the reach set of an unprocessed driver is the same as
on the original graph, and the refreshed snapshot before driver ``j`` is
exactly: in-copies reached by drivers outside the component, plus in-copies
reached by some driver with processing index ``>= j``. One backwards sweep
of searches, each stopping at in-copies already claimed by a later driver,
labels every in-copy with the last index that reaches it in O(E) total.

The ``"final"`` guard only refuses a reversal whose source is a driver or is
reached from drivers outside the component. The same argument shows that
once every component driver is isolated no driver reaches a reversed edge,
so the end state is just as valid, but intermediate states may not be.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .classification import (
    AlternatingComponent,
    ControlReport,
    Label,
    Side,
    alternating_components,
    alternating_reach,
    build_report,
    classify_nodes,
    largest_input_component,
    largest_is_input,
    reach_from_unmatched_in,
    DEFAULT_MODE_THRESHOLD,
)
from .errors import EdgeNotFound, MismatchedGraphs, NoInputComponent, NotADriver, NotMaximum, PostConditionViolation
from .graph import DirectedGraph, EdgeOp, EdgeOpKind
from .matching import UNMATCHED, Matching, maximum_matching, verify_maximum_matching


class Case(str, enum.Enum):
    CASE1 = "case1"
    CASE2 = "case2"
    CASE3 = "case3"
    CASE4 = "case4"


GUARDS = ("stepwise", "final")


def skip_add_condition(graph: DirectedGraph, m: Matching, source_node: int) -> bool:
    """Whether re-adding the reversed in-edge from ``source_node`` is unsafe.

    ``graph`` is the state after the in-edge has been removed. True when the
    source's in-copy is unmatched or reachable from an unmatched in-copy.
    """
    if m.in_partner[source_node] == UNMATCHED:
        return True
    return source_node in alternating_reach(graph, m, Side.FROM_UNMATCHED_IN).in_copies


def classify_reversal_case(
    graph: DirectedGraph, m: Matching, component: AlternatingComponent, edge: tuple[int, int]
) -> Case:
    """Case diagnostic for reversing the in-edge ``edge`` of a component driver.

    ``graph`` still contains ``edge``; the classification is made on the state
    right after its removal, as the rewiring loop sees it.
    """
    source, driver = edge
    if driver not in component.drivers:
        raise NotADriver(f"node {driver} is not a driver of component {component.id}")
    if not graph.has_edge(source, driver):
        raise EdgeNotFound(f"edge {source} -> {driver} not in graph")
    after = graph.copy()
    after.remove_edge(source, driver)
    if skip_add_condition(after, m, source):
        return Case.CASE4
    out_reach = alternating_reach(after, m, Side.FROM_UNMATCHED_OUT).out_copies
    return _case_without_skip(after, m, component.members, source, driver, driver in out_reach)


def _case_without_skip(graph, m, members, source, driver, driver_out_reached) -> Case:
    if source not in members and not any(v in members for v in graph.out_adj[driver]):
        return Case.CASE1
    if m.out_partner[driver] == UNMATCHED or driver_out_reached:
        return Case.CASE3
    return Case.CASE2


class _OutReach:
    """Out-copies reachable from unmatched out-copies, grown as edges are added.

    Removals in the rewiring loop cannot shrink this set: a removed edge ends
    in a driver's in-copy, which has no matched edge to continue along.
    """

    def __init__(self, graph: DirectedGraph, m: Matching):
        self.graph = graph
        self.m = m
        n = graph.node_count
        self.out_seen = bytearray(n)
        self.in_seen = bytearray(n)
        sources = [u for u in range(n) if m.out_partner[u] == UNMATCHED]
        for u in sources:
            self.out_seen[u] = 1
        self._spread(sources)

    def _spread(self, queue: list[int]) -> None:
        out_p, in_p = self.m.out_partner, self.m.in_partner
        out_adj = self.graph.out_adj
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in out_adj[u]:
                if v == out_p[u] or self.in_seen[v]:
                    continue
                self.in_seen[v] = 1
                w = in_p[v]
                if w != UNMATCHED and not self.out_seen[w]:
                    self.out_seen[w] = 1
                    queue.append(w)

    def edge_added(self, u: int, v: int) -> None:
        if self.out_seen[u] and not self.in_seen[v]:
            self.in_seen[v] = 1
            w = self.m.in_partner[v]
            if w != UNMATCHED and not self.out_seen[w]:
                self.out_seen[w] = 1
                self._spread([w])


def _last_reaching_driver(graph: DirectedGraph, m: Matching, drivers: list[int]) -> list[int]:
    """For every in-copy, the largest index j such that ``drivers[j]`` reaches it (-1: none)."""
    out_p = m.out_partner
    last = [-1] * graph.node_count
    in_adj = graph.in_adj
    for j in range(len(drivers) - 1, -1, -1):
        d = drivers[j]
        last[d] = j
        queue = [d]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for u in in_adj[v]:
                w = out_p[u]
                if w != v and w != UNMATCHED and last[w] == -1:
                    last[w] = j
                    queue.append(w)
    return last


@dataclass
class RewireOutcome:
    ops: list[tuple[EdgeOp, Case]]
    report_before: ControlReport
    report_after: ControlReport
    target_component: AlternatingComponent | None
    matching: Matching
    num_modified: int = 0
    num_reversed: int = 0
    num_removed: int = 0
    p_m: float = 0.0
    p_r: float = 0.0
    delta_nd: float = 0.0
    delta_ic: float = 0.0
    guard: str = "final"
    largest_is_input: bool = False
    case_counts: dict[str, int] = field(default_factory=dict)

    def metrics(self) -> dict:
        return {
            "N": self.report_before.n,
            "L": self.report_before.l,
            "ic_max_before": self.report_before.ic_max,
            "p_m": self.p_m,
            "p_r": self.p_r,
            "delta_nd": self.delta_nd,
            "delta_ic": self.delta_ic,
        }

    def to_dict(self) -> dict:
        comp = self.target_component
        return {
            "guard": self.guard,
            "num_modified": self.num_modified,
            "num_reversed": self.num_reversed,
            "num_removed": self.num_removed,
            "p_m": self.p_m,
            "p_r": self.p_r,
            "delta_nd": self.delta_nd,
            "delta_ic": self.delta_ic,
            "case_counts": dict(self.case_counts),
            "target_component": None
            if comp is None
            else {"id": comp.id, "size": comp.size, "drivers": sorted(comp.drivers)},
            "report_before": self.report_before.to_dict(),
            "report_after": self.report_after.to_dict(),
            "ops": [
                {"op": op.kind.value, "from": op.edge[0], "to": op.edge[1], "case": case.value}
                for op, case in self.ops
            ],
        }


def rewire_metrics(
    before: ControlReport,
    after: ControlReport,
    num_reversed: int,
    num_removed: int,
    flipped_members: int = 0,
    component_size: int = 0,
) -> dict:
    """Table-style summary of a rewiring run.

    ``delta_nd`` is the drop in input-node count over N; ``delta_ic`` is the
    share of target-component members that went from input to redundant.
    """
    if before.n != after.n:
        raise MismatchedGraphs(f"reports cover {before.n} and {after.n} nodes")
    modified = num_reversed + num_removed
    return {
        "N": before.n,
        "L": before.l,
        "ic_max_before": before.ic_max,
        "p_m": modified / before.l if before.l else 0.0,
        "p_r": num_reversed / modified if modified else 0.0,
        "delta_nd": (before.input_count - after.input_count) / before.n if before.n else 0.0,
        "delta_ic": flipped_members / component_size if component_size else 0.0,
    }


def detach_driver(
    graph: DirectedGraph,
    m: Matching,
    component: AlternatingComponent,
    driver: int,
) -> list[tuple[EdgeOp, Case]]:
    """Process every in-edge of one component driver, mutating ``graph``.

    Stand-alone form of the loop body of ``alter_to_centralized``: the
    reach set is recomputed from the current graph before each edge.
    """
    if driver not in component.drivers:
        raise NotADriver(f"node {driver} is not a driver of component {component.id}")
    ops = []
    for source in list(graph.in_adj[driver]):
        graph.remove_edge(source, driver)
        if skip_add_condition(graph, m, source) or graph.has_edge(driver, source):
            ops.append((EdgeOp.remove(source, driver), Case.CASE4))
            continue
        out_reach = alternating_reach(graph, m, Side.FROM_UNMATCHED_OUT).out_copies
        case = _case_without_skip(graph, m, component.members, source, driver, driver in out_reach)
        graph.add_edge(driver, source)
        ops.append((EdgeOp.reverse(source, driver), case))
    return ops


def alter_to_centralized(
    graph: DirectedGraph,
    guard: str = "final",
    refresh: str = "driver",
    naive: bool = False,
    threshold: float = DEFAULT_MODE_THRESHOLD,
    check: bool = True,
) -> RewireOutcome:
    """Rewire ``graph`` in place so its largest input component becomes redundant.

    Parameters
    ----------
    guard : {"stepwise", "final"}
        Which reversals are refused (recorded as removals). ``"stepwise"``
        keeps the matching maximum after every single operation;
        ``"final"`` only guarantees it for the finished graph.
    refresh : {"driver", "edge"}
        How often the stepwise reach set is refreshed. ``"edge"`` implies
        ``naive``.
    naive : bool
        Recompute reach by a fresh search instead of the indexed snapshot.
        Used to cross-check the fast path.
    check : bool
        Verify the post-conditions and raise ``PostConditionViolation``.
    """
    if guard not in GUARDS:
        raise ValueError(f"unknown guard {guard!r}")
    if refresh not in ("driver", "edge"):
        raise ValueError(f"unknown refresh policy {refresh!r}")
    if refresh == "edge":
        naive = True

    m = maximum_matching(graph)
    cls_before = classify_nodes(graph, m)
    comps = alternating_components(graph, m, cls_before)
    report_before = build_report(graph, m, cls_before, comps, threshold)
    try:
        target = largest_input_component(comps)
    except NoInputComponent:
        return RewireOutcome([], report_before, report_before, None, m, guard=guard)
    top_is_input = largest_is_input(comps)

    out_p, in_p = m.out_partner, m.in_partner
    members = target.members
    drivers = sorted(target.drivers)
    other_drivers = [v for v in range(graph.node_count) if in_p[v] == UNMATCHED and v not in target.drivers]
    outside = reach_from_unmatched_in(graph, out_p, in_p, other_drivers)
    last = None
    if guard == "stepwise" and not naive:
        last = _last_reaching_driver(graph, m, drivers)
    out_reach = _OutReach(graph, m)

    ops: list[tuple[EdgeOp, Case]] = []
    for j, d in enumerate(drivers):
        current = None
        if guard == "stepwise" and naive:
            current = reach_from_unmatched_in(graph, out_p, in_p, [v for v in range(graph.node_count) if in_p[v] == UNMATCHED])
        for s in list(graph.in_adj[d]):
            graph.remove_edge(s, d)
            if guard == "final":
                skip = in_p[s] == UNMATCHED or bool(outside[s])
            elif naive:
                if refresh == "edge":
                    current = reach_from_unmatched_in(
                        graph, out_p, in_p, [v for v in range(graph.node_count) if in_p[v] == UNMATCHED]
                    )
                skip = in_p[s] == UNMATCHED or bool(current[s])
            else:
                skip = in_p[s] == UNMATCHED or bool(outside[s]) or last[s] >= j
            if skip or graph.has_edge(d, s):
                ops.append((EdgeOp.remove(s, d), Case.CASE4))
                continue
            case = _case_without_skip(graph, m, members, s, d, bool(out_reach.out_seen[d]))
            graph.add_edge(d, s)
            out_reach.edge_added(d, s)
            ops.append((EdgeOp.reverse(s, d), case))

    num_removed = sum(1 for op, _ in ops if op.kind is EdgeOpKind.REMOVE)
    num_reversed = len(ops) - num_removed

    try:
        verify_maximum_matching(graph, m)
    except NotMaximum as exc:
        raise PostConditionViolation("initial matching no longer maximum", [v for _, v in exc.path])
    cls_after = classify_nodes(graph, m)
    comps_after = alternating_components(graph, m, cls_after)
    report_after = build_report(graph, m, cls_after, comps_after, threshold)

    flipped = sum(1 for v in members if cls_after.labels[v] is Label.REDUNDANT)
    if check:
        still_input = [v for v in members if v not in target.drivers and cls_after.labels[v] is not Label.REDUNDANT]
        if still_input:
            raise PostConditionViolation("component members still input", still_input)
        attached = [d for d in drivers if graph.in_adj[d] or cls_after.labels[d] is not Label.INPUT]
        if attached:
            raise PostConditionViolation("component drivers not isolated", attached)

    metrics = rewire_metrics(report_before, report_after, num_reversed, num_removed, flipped, len(members))
    case_counts = {c.value: 0 for c in Case}
    for _, c in ops:
        case_counts[c.value] += 1
    return RewireOutcome(
        ops=ops,
        report_before=report_before,
        report_after=report_after,
        target_component=target,
        matching=m,
        num_modified=len(ops),
        num_reversed=num_reversed,
        num_removed=num_removed,
        p_m=metrics["p_m"],
        p_r=metrics["p_r"],
        delta_nd=metrics["delta_nd"],
        delta_ic=metrics["delta_ic"],
        guard=guard,
        largest_is_input=top_is_input,
        case_counts=case_counts,
    )
