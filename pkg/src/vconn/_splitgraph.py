"""The in-vertex / out-vertex reduction of a Graph."""

from typing import Tuple

from vconn._graph import Graph


class SplitGraph:
    """Graph over 2n vertices: v_in = 2v, v_out = 2v + 1.

    Arc ids 0..n-1 are the internal arcs v_in -> v_out (arc v belongs to
    vertex v). Arc n + a is the external arc tail(a)_out -> head(a)_in for
    arc a of the original graph.
    """

    def __init__(self, original: Graph):
        self.original = original
        self.n_original = original.n
        n = original.n
        graph = Graph(2 * n)
        for v in range(n):
            graph.add_arc(2 * v, 2 * v + 1)
        for u, v in original.arc_list():
            graph.add_arc(2 * u + 1, 2 * v)
        self.graph = graph

    def __repr__(self):
        return f"SplitGraph(n={self.n_original}, m={self.graph.m})"

    @staticmethod
    def v_in(v: int) -> int:
        return 2 * v

    @staticmethod
    def v_out(v: int) -> int:
        return 2 * v + 1

    @staticmethod
    def original_vertex(split_vertex: int) -> Tuple[int, bool]:
        """Return (v, is_out) for a split-graph vertex."""
        return split_vertex >> 1, bool(split_vertex & 1)

    def is_internal(self, arc: int) -> bool:
        return arc < self.n_original


def build_split_graph(g: Graph) -> SplitGraph:
    return SplitGraph(g)
