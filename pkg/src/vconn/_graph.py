"""

    Directed graph with in-place arc reversal, a reversal journal and
    access counters. Undirected input is stored as one arc in each
    direction.

"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)


class EdgeListError(ValueError):
    """Malformed edge-list input."""

    def __init__(self, line_number: int, line: str, reason: str):
        self.line_number = line_number
        self.line = line
        super().__init__(f"Line {line_number}: {reason}: '{line}'")


class GraphInvariantError(RuntimeError):
    """Raised when an internal graph invariant is broken."""


class EpochMarks:
    """Set of small integers that is cleared in O(1) by bumping an epoch."""

    __slots__ = ("stamp", "epoch")

    def __init__(self, size: int):
        self.stamp = [0] * size
        self.epoch = 1

    def clear(self):
        self.epoch += 1

    def mark(self, i: int) -> bool:
        """Mark i, return True if it was not marked before."""
        if self.stamp[i] == self.epoch:
            return False
        self.stamp[i] = self.epoch
        return True

    def __contains__(self, i: int) -> bool:
        return self.stamp[i] == self.epoch


@dataclass
class AccessCounters:
    """Edge/vertex query counters of one run."""

    t_edge_accesses: int = 0
    u_edges: int = 0
    u_vertices: int = 0

    def __add__(self, other: "AccessCounters") -> "AccessCounters":
        return AccessCounters(
            self.t_edge_accesses + other.t_edge_accesses,
            self.u_edges + other.u_edges,
            self.u_vertices + other.u_vertices,
        )

    def copy(self) -> "AccessCounters":
        return AccessCounters(self.t_edge_accesses, self.u_edges, self.u_vertices)

    def as_dict(self) -> dict:
        return {
            "t_edge_accesses": self.t_edge_accesses,
            "u_edges": self.u_edges,
            "u_vertices": self.u_vertices,
        }


class ReversalJournal:
    """Ordered record of arc reversals.

    Each entry is (arc, old_tail, old_position). Undo runs newest first and
    restores the adjacency lists exactly.
    """

    def __init__(self):
        self._entries: List[Tuple[int, int, int]] = []

    def __len__(self):
        return len(self._entries)

    def record(self, arc: int, old_tail: int, old_position: int):
        self._entries.append((arc, old_tail, old_position))

    def arcs(self) -> List[int]:
        return [entry[0] for entry in self._entries]

    def mark(self) -> int:
        return len(self._entries)

    def undo(self, g: "Graph", to_mark: int = 0):
        """Undo reversals back to `to_mark`, newest to oldest."""
        entries = self._entries
        while len(entries) > to_mark:
            arc, old_tail, old_position = entries.pop()
            g._unreverse_arc(arc, old_tail, old_position)


class Graph:
    """Adjacency-list digraph.

    Arcs have fixed ids. `out(v)` lists the ids of the arcs currently leaving v.
    Reversing arc a = (u, v) moves it from out(u) to out(v); the journal keeps
    the position so the move can be undone.
    """

    def __init__(self, n: int, arcs: Iterable[Tuple[int, int]] = (), labels=None):
        self.n = n
        self._tail: List[int] = []
        self._head: List[int] = []
        self._out: List[List[int]] = [[] for _ in range(n)]
        self._pos: List[int] = []
        for u, v in arcs:
            self.add_arc(u, v)

        self.labels = list(labels) if labels is not None else list(range(n))
        if len(self.labels) != n:
            raise ValueError("labels must have one entry per vertex")

        self._adjacency = None
        self._scratch = None
        self.counters = AccessCounters()

    def __repr__(self):
        return f"{self.__class__.__name__}(n={self.n}, m={self.m})"

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]], labels=None):
        """Directed doubling of an undirected edge set."""
        g = cls(n, labels=labels)
        for u, v in edges:
            g.add_arc(u, v)
            g.add_arc(v, u)
        return g

    def add_arc(self, u: int, v: int) -> int:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"arc ({u}, {v}) has an endpoint outside [0, {self.n})")
        arc = len(self._tail)
        self._tail.append(u)
        self._head.append(v)
        self._pos.append(len(self._out[u]))
        self._out[u].append(arc)
        self._adjacency = None
        self._scratch = None
        return arc

    @property
    def m(self) -> int:
        """Total arc count."""
        return len(self._tail)

    def tail(self, arc: int) -> int:
        return self._tail[arc]

    def head(self, arc: int) -> int:
        return self._head[arc]

    def out(self, v: int) -> List[int]:
        return self._out[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    @property
    def deg_out(self) -> List[int]:
        return [len(arcs) for arcs in self._out]

    def min_degree(self) -> Tuple[int, int]:
        """Return (delta, vertex of minimum out-degree)."""
        if self.n == 0:
            return 0, -1
        vertex = min(range(self.n), key=lambda v: len(self._out[v]))
        return len(self._out[vertex]), vertex

    def neighbours(self, v: int) -> List[int]:
        head = self._head
        return [head[a] for a in self._out[v]]

    def adjacent(self, u: int, v: int) -> bool:
        """Arc (u, v) exists. Only valid outside runs, when no arc is reversed."""
        if self._adjacency is None:
            self._adjacency = [set() for _ in range(self.n)]
            for t, h in zip(self._tail, self._head):
                self._adjacency[t].add(h)
        return v in self._adjacency[u]

    def undirected_edges(self) -> List[Tuple[int, int]]:
        """One (u, v) with u < v per symmetric arc pair, in arc order."""
        return [
            (u, v) for u, v in zip(self._tail, self._head) if u < v
        ]

    def arc_list(self) -> List[Tuple[int, int]]:
        return list(zip(self._tail, self._head))

    def copy(self) -> "Graph":
        g = Graph(self.n, labels=self.labels)
        for u, v in zip(self._tail, self._head):
            g.add_arc(u, v)
        return g

    def snapshot(self) -> tuple:
        """Exact adjacency content, for restoration checks."""
        return (
            tuple(self._tail),
            tuple(self._head),
            tuple(tuple(arcs) for arcs in self._out),
        )

    # run context

    @property
    def scratch(self) -> "Scratch":
        """Epoch-stamped per-run marks, allocated once per graph."""
        if self._scratch is None:
            self._scratch = Scratch(self.n, self.m)
        return self._scratch

    def reset_counters(self):
        self.counters = AccessCounters()
        self.scratch.seen_arcs.clear()
        self.scratch.seen_vertices.clear()

    def access_arc(self, arc: int) -> bool:
        """Count one arc access, return True if the arc is new in this run."""
        self.counters.t_edge_accesses += 1
        if self.scratch.seen_arcs.mark(arc):
            self.counters.u_edges += 1
            return True
        return False

    def access_vertex(self, v: int) -> bool:
        if self.scratch.seen_vertices.mark(v):
            self.counters.u_vertices += 1
            return True
        return False

    # reversal

    def reverse_arc(self, arc: int, journal: ReversalJournal):
        u = self._tail[arc]
        v = self._head[arc]
        out_u = self._out[u]
        position = self._pos[arc]
        if position >= len(out_u) or out_u[position] != arc:
            raise GraphInvariantError(f"arc {arc} is not stored at {u}")

        last = out_u.pop()
        if last != arc:
            out_u[position] = last
            self._pos[last] = position

        self._tail[arc] = v
        self._head[arc] = u
        self._pos[arc] = len(self._out[v])
        self._out[v].append(arc)
        journal.record(arc, u, position)

    def _unreverse_arc(self, arc: int, old_tail: int, old_position: int):
        v = self._tail[arc]
        out_v = self._out[v]
        if not out_v or out_v[-1] != arc:
            raise GraphInvariantError(f"journal out of order at arc {arc}")
        out_v.pop()

        out_u = self._out[old_tail]
        if old_position < len(out_u):
            moved = out_u[old_position]
            out_u.append(moved)
            self._pos[moved] = len(out_u) - 1
            out_u[old_position] = arc
        else:
            out_u.append(arc)
        self._pos[arc] = old_position
        self._head[arc] = v
        self._tail[arc] = old_tail


class Scratch:
    """Reusable marks and values of one run context."""

    def __init__(self, n: int, m: int):
        self.seen_arcs = EpochMarks(m)
        self.seen_vertices = EpochMarks(n)
        self.visited = EpochMarks(n)
        self.values_set = EpochMarks(n)
        self.values = [0] * n


@dataclass(frozen=True)
class SeparationTriple:
    """Partition (L, S, R) with no edge between L and R."""

    L: FrozenSet[int]
    S: FrozenSet[int]
    R: FrozenSet[int]

    def is_valid(self, g: Graph) -> bool:
        if not self.L or not self.R:
            return False
        if self.L & self.S or self.L & self.R or self.S & self.R:
            return False
        if len(self.L) + len(self.S) + len(self.R) != g.n:
            return False
        return not any(
            g.head(a) in self.R for v in self.L for a in g.out(v)
        )

    @classmethod
    def from_cut(cls, g: Graph, cut: Iterable[int]) -> Optional["SeparationTriple"]:
        """Triple with L = one component of g - cut, or None if cut is no cut."""
        cut = frozenset(cut)
        components = connected_components(g, removed=cut)
        if len(components) < 2:
            return None
        left = frozenset(components[0])
        right = frozenset(v for c in components[1:] for v in c)
        return cls(left, cut, right)


def load_edge_list(text: str) -> Graph:
    """Parse whitespace separated "u v" lines into a Graph.

    Comment lines start with '#'. Ids are remapped to [0, n) in order of first
    appearance; self-loops are dropped and duplicate edges merged.
    """
    index = {}
    labels = []
    seen = set()
    edges = []

    for line_number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(line_number, line, "expected two vertex ids")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(line_number, line, "vertex ids must be integers")
        if u < 0 or v < 0:
            raise EdgeListError(line_number, line, "vertex ids must be non-negative")

        for vertex in (u, v):
            if vertex not in index:
                index[vertex] = len(labels)
                labels.append(vertex)
        if u == v:
            continue
        a, b = index[u], index[v]
        key = (a, b) if a < b else (b, a)
        if key in seen:
            continue
        seen.add(key)
        edges.append(key)

    logger.debug("Parsed %s vertices and %s edges", len(labels), len(edges))
    return Graph.from_edges(len(labels), edges, labels=labels)


def read_edge_list(path) -> Graph:
    with open(path, "r") as stream:
        return load_edge_list(stream.read())


def write_edge_list(path, g: Graph):
    """Write g as "u v" lines using its labels."""
    labels = g.labels
    with open(path, "w") as stream:
        for u, v in g.undirected_edges():
            stream.write(f"{labels[u]} {labels[v]}\n")


def reverse_path(g: Graph, path: Sequence[int], journal: ReversalJournal):
    """Reverse every arc of a directed path given as arc ids."""
    previous_head = None
    for arc in path:
        if arc < 0 or arc >= g.m:
            raise GraphInvariantError(f"arc {arc} is not present")
        if previous_head is not None and g.tail(arc) != previous_head:
            raise GraphInvariantError(f"arc {arc} does not continue the path")
        previous_head = g.head(arc)
    for arc in path:
        g.reverse_arc(arc, journal)


def volume_out(g: Graph, vertex_set: Iterable[int]) -> int:
    return sum(g.out_degree(v) for v in vertex_set)


def boundary_size(g: Graph, vertex_set: Iterable[int]) -> int:
    """Number of arcs leaving the set, against current orientation."""
    inside = set(vertex_set)
    return sum(1 for v in inside for a in g.out(v) if g.head(a) not in inside)


def connected_components(g: Graph, removed: Iterable[int] = ()) -> List[List[int]]:
    """Components of a symmetric g after deleting `removed`."""
    removed = set(removed)
    seen = [False] * g.n
    for v in removed:
        seen[v] = True
    components = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        component = [start]
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.neighbours(v):
                if not seen[w]:
                    seen[w] = True
                    component.append(w)
                    stack.append(w)
        components.append(component)
    return components


def is_vertex_cut(g: Graph, cut: Iterable[int]) -> bool:
    """True if g - cut has at least two components."""
    cut = set(cut)
    if any(v < 0 or v >= g.n for v in cut):
        return False
    return len(connected_components(g, removed=cut)) >= 2
