"""

    Benchmark instances: planted-cut graphs and k-cores of real graphs.

"""

import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import numpy as np

from vconn._driver import ConfigError
from vconn._graph import Graph, SeparationTriple, connected_components
from vconn._sparsify import ForestStack

logger = logging.getLogger(__name__)

# complete graphs with at most this many pairs are shuffled in full
FULL_SHUFFLE_PAIRS = 4_000_000
PAIR_CHUNK = 65_536


@dataclass
class PlantedParams:
    n: int
    size_L: int
    size_S: int
    k_gen: int = 60
    seed: Optional[int] = None

    def __post_init__(self):
        if self.size_L < 1:
            raise ConfigError("size_L must be at least 1")
        if self.size_S < 1:
            raise ConfigError("size_S must be at least 1")
        if self.size_L + self.size_S >= self.n:
            raise ConfigError(
                f"size_L + size_S must be below n, got {self.size_L} + {self.size_S} >= {self.n}"
            )
        if self.k_gen <= self.size_S:
            raise ConfigError(f"k_gen must exceed size_S, got k_gen={self.k_gen}, size_S={self.size_S}")


def _shuffled_pairs(n: int, rng: np.random.Generator) -> Iterator[Tuple[int, int]]:
    """Vertex pairs of the complete graph on n vertices in uniformly random order.

    Small graphs are permuted in full. Large ones draw pairs uniformly and
    skip repeats, which yields the same distribution over the prefix that
    is actually consumed.
    """
    total = n * (n - 1) // 2
    if total <= FULL_SHUFFLE_PAIRS:
        us, vs = np.triu_indices(n, 1)
        order = rng.permutation(total)
        for start in range(0, total, PAIR_CHUNK):
            chunk = order[start:start + PAIR_CHUNK]
            yield from zip(us[chunk].tolist(), vs[chunk].tolist())
        return

    seen = set()
    while len(seen) < total:
        draws = rng.integers(0, n, size=(PAIR_CHUNK, 2))
        draws = draws[draws[:, 0] != draws[:, 1]]
        draws.sort(axis=1)
        for u, v in draws.tolist():
            key = u * n + v
            if key in seen:
                continue
            seen.add(key)
            yield u, v


def generate_planted(params: PlantedParams) -> Tuple[Graph, SeparationTriple]:
    """Planted-cut instance: the complete graph minus all L-R edges, cut down
    to its first k_gen forests of a random forest partition.

    S is then the unique minimum vertex cut.
    """
    rng = np.random.default_rng(params.seed)
    n = params.n
    roles = rng.permutation(n).tolist()
    left = frozenset(roles[: params.size_L])
    cut = frozenset(roles[params.size_L: params.size_L + params.size_S])
    right = frozenset(roles[params.size_L + params.size_S:])
    side = [0] * n
    for v in left:
        side[v] = -1
    for v in right:
        side[v] = 1

    stack = ForestStack(n, max_forests=params.k_gen)
    edges = []
    for u, v in _shuffled_pairs(n, rng):
        if side[u] * side[v] == -1:
            continue
        if stack.place(u, v):
            edges.append((u, v))
            top = stack.forests[-1] if len(stack.forests) == params.k_gen else None
            if top is not None and top.components == 1:
                # every later pair closes a cycle in all k_gen forests
                break

    g = Graph.from_edges(n, edges)
    logger.info(
        "Planted instance n=%s |L|=%s |S|=%s k_gen=%s: %s edges",
        n, params.size_L, params.size_S, params.k_gen, len(edges),
    )
    return g, SeparationTriple(left, cut, right)


def k_core(g: Graph, k: int) -> Graph:
    """Largest connected component of the k-core of g, with g's labels."""
    if k < 1:
        raise ConfigError(f"k must be at least 1, got {k}")
    degree = [len(set(g.neighbours(v))) for v in range(g.n)]
    removed = [False] * g.n
    queue = [v for v in range(g.n) if degree[v] < k]
    for v in queue:
        removed[v] = True
    while queue:
        v = queue.pop()
        for w in set(g.neighbours(v)):
            if removed[w]:
                continue
            degree[w] -= 1
            if degree[w] < k:
                removed[w] = True
                queue.append(w)

    components = connected_components(g, removed=[v for v in range(g.n) if removed[v]])
    if not components:
        logger.info("%s-core is empty", k)
        return Graph(0)
    keep = max(components, key=len)
    index = {v: i for i, v in enumerate(sorted(keep))}
    edges = [
        (index[u], index[v]) for u, v in g.undirected_edges() if u in index and v in index
    ]
    core = Graph.from_edges(len(index), edges, labels=[g.labels[v] for v in sorted(keep)])
    logger.info("%s-core: %s of %s vertices kept", k, core.n, g.n)
    return core
