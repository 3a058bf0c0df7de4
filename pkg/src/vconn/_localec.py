"""

    LocalEC: from a start vertex x, find a vertex set S containing x with
    fewer than k arcs leaving it, or report that no such set of out-volume
    at most nu exists (one-sided error).

    All four variants share the AbstractLocalEC loop: grow a DFS from x
    that is stopped early to pick a vertex y, return the DFS tree if the
    search ends on its own, otherwise reverse the tree path x -> y and
    repeat, k times in total. They differ only in when the DFS stops and
    how y is chosen.

"""

import logging
import math
from dataclasses import dataclass
from typing import FrozenSet, List, Optional

import numpy as np

from vconn._graph import AccessCounters, Graph, ReversalJournal, reverse_path

logger = logging.getLogger(__name__)


DEFAULT_BUDGET_FACTORS = {
    "local1": 2,
    "local1plus": 2,
    "local2": 3,
    "local2plus": 3,
}


@dataclass
class LocalEcParams:
    x: int
    nu: int
    k: int
    budget_factor: Optional[float] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if self.nu < 1:
            raise ValueError(f"nu must be at least 1, got {self.nu}")
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.budget_factor is not None and self.budget_factor < 1:
            raise ValueError(f"budget_factor must be at least 1, got {self.budget_factor}")


@dataclass
class LocalResult:
    """Cut side (a vertex set containing x), or None for the no-cut outcome."""

    cut: Optional[FrozenSet[int]]
    counters: AccessCounters
    iterations: int = 0
    budget: int = 0

    @property
    def found(self) -> bool:
        return self.cut is not None


class _Stop(Exception):
    pass


class AbstractLocalEC:
    """One LocalEC call on g. Subclasses define the stopping rule."""

    name = ""

    def __init__(self, g: Graph, params: LocalEcParams, rng: np.random.Generator = None):
        self.g = g
        self.x = params.x
        self.nu = params.nu
        self.k = params.k
        factor = params.budget_factor
        if factor is None:
            factor = DEFAULT_BUDGET_FACTORS[self.name]
        self.budget = max(1, int(math.ceil(factor * params.nu)))
        self.rng = rng if rng is not None else np.random.default_rng(params.seed)

        self.last_iteration = False
        self.y = None
        self.y_path: List[int] = []

    def run(self) -> LocalResult:
        g = self.g
        g.reset_counters()
        journal = ReversalJournal()
        cut = None
        iterations = 0
        try:
            self.begin_call()
            for iteration in range(self.k):
                iterations += 1
                self.last_iteration = iteration == self.k - 1
                self.y = None
                self.y_path = []
                self.begin_iteration()

                visited = self._dfs()
                if visited is not None:
                    if len(visited) < g.n:
                        cut = frozenset(visited)
                    break
                if not self.last_iteration and self.y is not None:
                    reverse_path(g, self.y_path, journal)
        finally:
            journal.undo(g)

        logger.debug(
            "%s(x=%s, nu=%s, k=%s): %s after %s iterations",
            self.name, self.x, self.nu, self.k,
            "cut" if cut is not None else "no cut", iterations,
        )
        return LocalResult(cut, g.counters.copy(), iterations, self.budget)

    def _dfs(self) -> Optional[List[int]]:
        """Grow the DFS tree. Return visited vertices on normal termination,
        None if the stopping rule fired."""
        g = self.g
        out = g._out
        head = g._head
        visited = g.scratch.visited
        visited.clear()

        x = self.x
        order = [x]
        visited.mark(x)
        g.access_vertex(x)
        path: List[int] = []
        try:
            self.on_visit(x, path, order)
            stack_v = [x]
            stack_i = [0]
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
                new = g.access_arc(arc)
                self.on_arc(v, arc, new, path)
                w = head[arc]
                if visited.mark(w):
                    g.access_vertex(w)
                    order.append(w)
                    stack_v.append(w)
                    stack_i.append(0)
                    path.append(arc)
                    self.on_visit(w, path, order)
        except _Stop:
            return None
        return order

    def designate(self, y: int, path: List[int]):
        self.y = y
        self.y_path = list(path)

    # hooks

    def begin_call(self):
        pass

    def begin_iteration(self):
        pass

    def on_arc(self, v: int, arc: int, new: bool, path: List[int]):
        pass

    def on_visit(self, w: int, path: List[int], order: List[int]):
        pass

    def sample_tau(self, high: int) -> int:
        return int(self.rng.integers(1, high + 1))


class Local1(AbstractLocalEC):
    """Stop at the tau-th accessed arc, tau uniform in [1, budget * k]."""

    name = "local1"

    def begin_iteration(self):
        limit = self.budget * self.k
        self.tau = limit if self.last_iteration else self.sample_tau(limit)
        self.accessed = 0

    def on_arc(self, v, arc, new, path):
        self.accessed += 1
        if self.accessed >= self.tau:
            self.designate(v, path)
            raise _Stop


class Local1Plus(AbstractLocalEC):
    """Stop once the out-volume of the visited vertices reaches tau."""

    name = "local1plus"

    def begin_iteration(self):
        limit = self.budget * self.k
        self.tau = limit if self.last_iteration else self.sample_tau(limit)
        self.volume = 0

    def on_visit(self, w, path, order):
        self.volume += len(self.g._out[w])
        if self.volume >= self.tau:
            self.designate(w, path)
            raise _Stop


class Local2(AbstractLocalEC):
    """Count only arcs not accessed in earlier iterations of this call."""

    name = "local2"

    def begin_iteration(self):
        self.tau = self.sample_tau(self.budget)
        self.new_arcs = 0

    def on_arc(self, v, arc, new, path):
        if not new:
            return
        self.new_arcs += 1
        if self.new_arcs == self.tau:
            self.designate(v, path)
        if self.new_arcs >= self.budget:
            raise _Stop


class Local2Plus(AbstractLocalEC):
    """Count remaining per-vertex capacity instead of arcs.

    c(v) starts at the out-degree of v and is consumed as the DFS visits v;
    the vertex where the consumption stops keeps the overshoot.
    """

    name = "local2plus"

    def begin_call(self):
        scratch = self.g.scratch
        scratch.values_set.clear()
        self.capacity = scratch.values
        self.capacity_set = scratch.values_set
        self.initial = {}

    def begin_iteration(self):
        self.tau = self.sample_tau(self.budget)
        self.collected = 0

    def remaining(self, v: int) -> int:
        if self.capacity_set.mark(v):
            self.capacity[v] = self.initial[v] = len(self.g._out[v])
        return self.capacity[v]

    def on_visit(self, w, path, order):
        self.collected += self.remaining(w)
        if self.y is None and self.collected >= self.tau:
            self.designate(w, path)
        if self.collected >= self.budget:
            capacity = self.capacity
            for v in order[:-1]:
                capacity[v] = 0
            capacity[w] = self.collected - self.budget
            raise _Stop

    def consumed(self) -> int:
        """Total capacity taken from the vertices touched in this call."""
        return sum(initial - self.capacity[v] for v, initial in self.initial.items())


LOCALEC_VARIANTS = {
    cls.name: cls for cls in (Local1, Local1Plus, Local2, Local2Plus)
}


def run_localec(
    variant: str, g: Graph, params: LocalEcParams, rng: np.random.Generator = None
) -> LocalResult:
    try:
        cls = LOCALEC_VARIANTS[variant]
    except KeyError:
        raise ValueError(f"Unknown LocalEC variant: {variant}")
    return cls(g, params, rng).run()


def local1(g: Graph, params: LocalEcParams, rng: np.random.Generator = None) -> LocalResult:
    return Local1(g, params, rng).run()


def local1_plus(g: Graph, params: LocalEcParams, rng: np.random.Generator = None) -> LocalResult:
    return Local1Plus(g, params, rng).run()


def local2(g: Graph, params: LocalEcParams, rng: np.random.Generator = None) -> LocalResult:
    return Local2(g, params, rng).run()


def local2_plus(g: Graph, params: LocalEcParams, rng: np.random.Generator = None) -> LocalResult:
    return Local2Plus(g, params, rng).run()
