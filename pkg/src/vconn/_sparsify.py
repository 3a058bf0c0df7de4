"""

    Forest decompositions of an undirected graph and the sparse
    certificates FG_k built from them.

"""

import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from vconn._graph import Graph

logger = logging.getLogger(__name__)


class UnionFind:
    """Disjoint sets with path halving and union by size."""

    __slots__ = ("parent", "size", "components")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self.components -= 1
        return True

    def connected(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)


@dataclass
class ForestLabeling:
    """Label i >= 1 per undirected edge: the index of its forest E_i."""

    n: int
    edges: List[Tuple[int, int]]
    labels: List[int]
    _by_label: List[int] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if len(self.edges) != len(self.labels):
            raise ValueError("one label per edge is required")
        self._by_label = sorted(range(len(self.edges)), key=self.labels.__getitem__)

    @property
    def max_label(self) -> int:
        return max(self.labels, default=0)

    def forest(self, i: int) -> List[Tuple[int, int]]:
        return [e for e, label in zip(self.edges, self.labels) if label == i]

    def prefix_edges(self, k: int) -> List[Tuple[int, int]]:
        """Edges with label <= k, without scanning the rest."""
        result = []
        for index in self._by_label:
            if self.labels[index] > k:
                break
            result.append(self.edges[index])
        return result


def _undirected_adjacency(n: int, edges: List[Tuple[int, int]]):
    adjacency = [[] for _ in range(n)]
    for index, (u, v) in enumerate(edges):
        adjacency[u].append((v, index))
        adjacency[v].append((u, index))
    return adjacency


def forest_decompose(g: Graph) -> ForestLabeling:
    """Scan-first-search forest labeling.

    Vertices are scanned in order of the largest number of already scanned
    neighbours; an edge from the scanned vertex x to an unscanned y gets label
    r(y) + 1, then r(y) is incremented.
    """
    n = g.n
    edges = g.undirected_edges()
    adjacency = _undirected_adjacency(n, edges)
    labels = [0] * len(edges)

    r = [0] * n
    scanned = [False] * n
    buckets = [[] for _ in range(n + 1)]
    buckets[0] = list(range(n - 1, -1, -1))
    top = 0

    for _ in range(n):
        x = -1
        while x < 0:
            bucket = buckets[top]
            while bucket:
                candidate = bucket.pop()
                if not scanned[candidate] and r[candidate] == top:
                    x = candidate
                    break
            if x < 0:
                top -= 1
        scanned[x] = True
        for y, index in adjacency[x]:
            if scanned[y]:
                continue
            r[y] += 1
            labels[index] = r[y]
            buckets[r[y]].append(y)
            if r[y] > top:
                top = r[y]

    logger.debug("Forest decomposition: %s edges, max label %s", len(edges), max(labels, default=0))
    return ForestLabeling(n, edges, labels)


def fg_k(labeling: ForestLabeling, k: int) -> Graph:
    """The union of the first k forests as a Graph."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return Graph.from_edges(labeling.n, labeling.prefix_edges(k))


class ForestStack:
    """Forests E_1, E_2, ... grown edge by edge.

    Each forest keeps its own union-find. Components of E_i refine the
    components of E_{i-1}, so "x, y connected in E_i" is monotone in i and the
    lowest forest that keeps acyclicity is found by binary search.
    """

    def __init__(self, n: int, max_forests: int = 0):
        self.n = n
        self.max_forests = max_forests
        self.forests: List[UnionFind] = []

    def place(self, x: int, y: int) -> int:
        """Add edge (x, y) to the lowest possible forest; 0 if it does not fit."""
        forests = self.forests
        low, high = 0, len(forests)
        while low < high:
            mid = (low + high) // 2
            if forests[mid].connected(x, y):
                low = mid + 1
            else:
                high = mid
        if low == len(forests):
            if self.max_forests and low >= self.max_forests:
                return 0
            forests.append(UnionFind(self.n))
        forests[low].union(x, y)
        return low + 1


def randomized_forest_partition(g: Graph, rng: np.random.Generator) -> ForestLabeling:
    """Forest labeling with edges placed in a uniformly random order."""
    edges = g.undirected_edges()
    labels = [0] * len(edges)
    stack = ForestStack(g.n)
    for index in rng.permutation(len(edges)).tolist():
        x, y = edges[index]
        labels[index] = stack.place(x, y)
    return ForestLabeling(g.n, edges, labels)
