"""

    k-bounded unit-capacity max flow on the split graph.

    An augmenting path is found by DFS on the current arc orientation and
    then reversed, so the reversal journal doubles as the residual graph.

"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import FrozenSet, List, Optional

from vconn._graph import ReversalJournal, reverse_path
from vconn._splitgraph import SplitGraph

logger = logging.getLogger(__name__)


@dataclass
class FlowResult:
    """min(kappa(x, y), cap), with the x-y vertex cut when value < cap."""

    value: int
    cut: Optional[FrozenSet[int]] = None
    edge_accesses: int = 0


def _augmenting_path(graph, source: int, sink: int) -> Optional[List[int]]:
    out = graph._out
    head = graph._head
    visited = graph.scratch.visited
    visited.clear()
    visited.mark(source)

    stack_v = [source]
    stack_i = [0]
    path: List[int] = []
    while stack_v:
        v = stack_v[-1]
        i = stack_i[-1]
        arcs = out[v]
        if i == len(arcs):
            stack_v.pop()
            stack_i.pop()
            if path:
                path.pop()
            continue
        stack_i[-1] = i + 1
        arc = arcs[i]
        graph.counters.t_edge_accesses += 1
        w = head[arc]
        if not visited.mark(w):
            continue
        path.append(arc)
        if w == sink:
            return path
        stack_v.append(w)
        stack_i.append(0)
    return None


def _source_side(sg: SplitGraph, source: int, journal: ReversalJournal) -> set:
    """Residual reachability with uncapacitated external arcs.

    A reversed external arc u_out -> w_in still lets u_out reach w_in, since
    only internal arcs carry the unit vertex capacity.
    """
    graph = sg.graph
    forward = defaultdict(list)
    for arc in set(journal.arcs()):
        if sg.is_internal(arc):
            continue
        # reversed arcs have head == original tail (an out-vertex)
        if graph.head(arc) & 1:
            forward[graph.head(arc)].append(graph.tail(arc))

    reached = {source}
    stack = [source]
    while stack:
        v = stack.pop()
        for w in graph.neighbours(v) + forward.get(v, []):
            if w not in reached:
                reached.add(w)
                stack.append(w)
    return reached


def max_flow_vc(sg: SplitGraph, x: int, y: int, cap: int) -> FlowResult:
    """Up to `cap` augmenting paths from x_out to y_in.

    x and y must be distinct and non-adjacent original vertices.
    """
    if x == y:
        raise ValueError("x and y must differ")
    if cap < 1:
        raise ValueError(f"cap must be at least 1, got {cap}")

    graph = sg.graph
    source, sink = sg.v_out(x), sg.v_in(y)
    start_accesses = graph.counters.t_edge_accesses
    journal = ReversalJournal()
    value = 0
    cut = None
    try:
        while value < cap:
            path = _augmenting_path(graph, source, sink)
            if path is None:
                break
            reverse_path(graph, path, journal)
            value += 1

        if value < cap:
            reached = _source_side(sg, source, journal)
            cut = frozenset(
                v for v in range(sg.n_original)
                if sg.v_in(v) in reached and sg.v_out(v) not in reached
            )
    finally:
        journal.undo(graph)

    accesses = graph.counters.t_edge_accesses - start_accesses
    logger.debug("max flow %s -> %s: %s (cap %s)", x, y, value, cap)
    return FlowResult(value, cut, accesses)
