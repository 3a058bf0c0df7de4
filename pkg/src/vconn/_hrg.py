"""

    Preflow baseline for vertex connectivity.

    From a seed vertex x the split graph is solved for a sequence of minimum
    S_i - x_i cuts, S_i = {x} plus the earlier sinks. One preflow is kept for
    the whole sequence: a finished sink becomes a source, and vertices that
    cannot reach the current sink are parked in dormant layers until a later
    sink needs them. Awake vertices are bucketed by distance label so gaps
    are detected in O(1).

"""

import logging
import time
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence

import numpy as np

from vconn._driver import ConfigError, VcReport, degenerate_report, trivial_cut_sweep
from vconn._graph import AccessCounters, Graph, is_vertex_cut
from vconn._sparsify import fg_k, forest_decompose
from vconn._splitgraph import SplitGraph, build_split_graph

logger = logging.getLogger(__name__)

AWAKE = -1
SOURCE = -2

SEED_VERTEX_RULES = ("random", "min_degree")


@dataclass
class HrgConfig:
    seed: Optional[int] = None
    repetitions: int = 2
    seed_vertex: str = "random"
    k_initial: Optional[int] = None

    def __post_init__(self):
        if self.repetitions < 1:
            raise ConfigError("repetitions must be at least 1")
        if self.seed_vertex not in SEED_VERTEX_RULES:
            raise ConfigError(
                f"seed_vertex must be one of {', '.join(SEED_VERTEX_RULES)}, got {self.seed_vertex}"
            )
        if self.k_initial is not None and self.k_initial < 1:
            raise ConfigError("k_initial must be at least 1")


@dataclass
class SinkCut:
    """Minimum cut between the current sources and one sink.

    value is None for sinks skipped because they are adjacent to a source.
    """

    sink: int
    value: Optional[int]
    cut: Optional[FrozenSet[int]] = None


class PreflowState:
    """Preflow on the split graph with unit arc capacities.

    Residual arc 2a is split arc a, 2a + 1 its reverse. `where[v]` is AWAKE,
    SOURCE or the index of the dormant layer holding v. No residual arc
    leaves a dormant layer towards the awake set or a younger layer.
    """

    def __init__(self, sg: SplitGraph):
        graph = sg.graph
        size = graph.n
        self.sg = sg
        self.rhead: List[int] = [0] * (2 * graph.m)
        self.residual: List[int] = [0] * (2 * graph.m)
        self.arcs: List[List[int]] = [[] for _ in range(size)]
        for a in range(graph.m):
            u, v = graph.tail(a), graph.head(a)
            self.rhead[2 * a] = v
            self.residual[2 * a] = 1
            self.arcs[u].append(2 * a)
            self.rhead[2 * a + 1] = u
            self.arcs[v].append(2 * a + 1)

        self.excess = [0] * size
        self.label = [0] * size
        self.current = [0] * size
        self.where = [AWAKE] * size
        self.awake = set(range(size))
        self.layers: List[set] = []

        self.buckets: List[List[int]] = []
        self.pos = [0] * size
        self.active = deque()
        self.sink = -1
        self.scans = 0

    # sources and dormant layers

    def add_source(self, v: int):
        """Turn v into a source and saturate its residual out-arcs."""
        where = self.where
        if where[v] == AWAKE:
            self.awake.discard(v)
        elif where[v] >= 0:
            self.layers[where[v]].discard(v)
        where[v] = SOURCE

        residual, rhead, excess = self.residual, self.rhead, self.excess
        for e in self.arcs[v]:
            w = rhead[e]
            if residual[e] and where[w] != SOURCE:
                amount = residual[e]
                residual[e] = 0
                residual[e ^ 1] += amount
                excess[w] += amount

    def wake(self, v: int):
        """Move dormant layers back to the awake set, youngest first, until v is awake."""
        while self.where[v] >= 0:
            layer = self.layers.pop()
            for w in layer:
                self.where[w] = AWAKE
            self.awake |= layer

    def _park(self, nodes):
        index = len(self.layers)
        layer = set(nodes)
        for w in layer:
            self.where[w] = index
        self.awake -= layer
        self.layers.append(layer)

    # labels and buckets

    def _reaching(self, t: int) -> List[int]:
        """Awake vertices with a residual path to t, in BFS order; sets labels."""
        residual, rhead, where, label = self.residual, self.rhead, self.where, self.label
        seen = {t}
        label[t] = 0
        order = [t]
        queue = deque(order)
        while queue:
            v = queue.popleft()
            for e in self.arcs[v]:
                self.scans += 1
                w = rhead[e]
                if residual[e ^ 1] and where[w] == AWAKE and w not in seen:
                    seen.add(w)
                    label[w] = label[v] + 1
                    order.append(w)
                    queue.append(w)
        return order

    def global_relabel(self, t: int):
        """Exact distance labels towards t; unreachable awake vertices go dormant."""
        order = self._reaching(t)
        if len(order) < len(self.awake):
            self._park(self.awake.difference(order))

        label, pos = self.label, self.pos
        buckets = [[] for _ in range(label[order[-1]] + 1)]
        for v in order:
            bucket = buckets[label[v]]
            pos[v] = len(bucket)
            bucket.append(v)
            self.current[v] = 0
        self.buckets = buckets

    def _bucket_remove(self, v: int):
        bucket = self.buckets[self.label[v]]
        last = bucket.pop()
        if last != v:
            bucket[self.pos[v]] = last
            self.pos[last] = self.pos[v]

    def _bucket_add(self, v: int, d: int):
        while len(self.buckets) <= d:
            self.buckets.append([])
        bucket = self.buckets[d]
        self.label[v] = d
        self.pos[v] = len(bucket)
        bucket.append(v)

    def _gap(self, d: int):
        parked = [v for bucket in self.buckets[d:] for v in bucket]
        del self.buckets[d:]
        self._park(parked)

    def _relabel(self, u: int) -> bool:
        """Relabel u; False if u (and maybe others) went dormant."""
        residual, rhead, where, label = self.residual, self.rhead, self.where, self.label
        d = label[u]
        lowest = None
        for e in self.arcs[u]:
            self.scans += 1
            w = rhead[e]
            if residual[e] and where[w] == AWAKE and (lowest is None or label[w] < lowest):
                lowest = label[w]

        if len(self.buckets[d]) == 1:
            self._gap(d)
            return False
        self._bucket_remove(u)
        if lowest is None:
            self._park([u])
            return False
        self._bucket_add(u, lowest + 1)
        self.current[u] = 0
        return True

    # phases

    def _discharge(self, u: int):
        arcs = self.arcs[u]
        residual, rhead, where, label, excess = (
            self.residual, self.rhead, self.where, self.label, self.excess,
        )
        while excess[u] > 0:
            i = self.current[u]
            if i == len(arcs):
                if not self._relabel(u):
                    return
                continue
            e = arcs[i]
            self.scans += 1
            w = rhead[e]
            if residual[e] and where[w] == AWAKE and label[u] == label[w] + 1:
                amount = min(excess[u], residual[e])
                residual[e] -= amount
                residual[e ^ 1] += amount
                excess[u] -= amount
                if excess[w] == 0 and w != self.sink:
                    self.active.append(w)
                excess[w] += amount
                if residual[e] == 0:
                    self.current[u] = i + 1
            else:
                self.current[u] = i + 1

    def max_preflow(self, t: int):
        """Push all awake excess towards t or into dormant layers."""
        self.wake(t)
        self.sink = t
        self.global_relabel(t)
        excess = self.excess
        self.active = deque(v for v in self.awake if v != t and excess[v] > 0)
        while self.active:
            u = self.active.popleft()
            if self.where[u] == AWAKE and excess[u] > 0:
                self._discharge(u)

    def sink_cut(self, t: int):
        """Value and vertex cut of the minimum cut closest to t."""
        sg = self.sg
        side = set(self._reaching(t))
        rhead = self.rhead
        value = 0
        cut = set()
        for v in side:
            for e in self.arcs[v]:
                # odd residual arcs point from the head of a split arc to its tail
                if not e & 1 or rhead[e] in side:
                    continue
                a = e >> 1
                value += 1
                if sg.is_internal(a):
                    cut.add(a)
                elif v == t:
                    cut.add(rhead[e] >> 1)
                else:
                    cut.add(v >> 1)
        return value, frozenset(cut)


def sink_order(g: Graph, x: int, rng: np.random.Generator) -> List[int]:
    """Non-neighbours of x in random order, farthest from x first."""
    distance = [-1] * g.n
    distance[x] = 0
    queue = deque([x])
    while queue:
        v = queue.popleft()
        for w in g.neighbours(v):
            if distance[w] < 0:
                distance[w] = distance[v] + 1
                queue.append(w)
    candidates = [v for v in rng.permutation(g.n).tolist() if distance[v] > 1]
    return sorted(candidates, key=lambda v: -distance[v])


def _phases(g: Graph, sg: SplitGraph, x: int, sinks: Sequence[int], stop_below: int = 0):
    """Run one preflow over the sink sequence, yield a SinkCut per sink."""
    state = PreflowState(sg)
    state.add_source(sg.v_in(x))
    state.add_source(sg.v_out(x))
    sources = {x}
    blocked = set(g.neighbours(x)) | sources
    cuts = []
    best = None
    for y in sinks:
        if y in blocked:
            cuts.append(SinkCut(y, None))
            continue
        t = sg.v_in(y)
        state.max_preflow(t)
        value, cut = state.sink_cut(t)
        cuts.append(SinkCut(y, value, cut))
        if best is None or value < best:
            best = value
            if best <= stop_below:
                break

        state.add_source(t)
        state.add_source(sg.v_out(y))
        sources.add(y)
        blocked.add(y)
        blocked.update(g.neighbours(y))
    return cuts, state.scans


def min_source_sink_cuts(g: Graph, x: int, sinks: Sequence[int] = None, seed=None) -> List[SinkCut]:
    """Per-sink minimum cuts from seed vertex x over the full graph."""
    if sinks is None:
        sinks = sink_order(g, x, np.random.default_rng(seed))
    cuts, _ = _phases(g, build_split_graph(g), x, sinks)
    return cuts


def _seed_vertex(g: Graph, rule: str, rng: np.random.Generator) -> int:
    if rule == "min_degree":
        return g.min_degree()[1]
    return int(rng.integers(g.n))


def hrg_vertex_connectivity(g: Graph, config: HrgConfig = None) -> VcReport:
    """Vertex connectivity with the preflow baseline, doubling k on FG_k."""
    config = config or HrgConfig()
    t0 = time.perf_counter()
    degenerate = degenerate_report(g, "HRG", config.seed)
    if degenerate is not None:
        return degenerate

    rng = np.random.default_rng(np.random.SeedSequence(config.seed))
    t_label = time.perf_counter()
    labeling = forest_decompose(g)
    label_time = time.perf_counter() - t_label

    report = VcReport(kappa=0, seed=config.seed, algorithm="HRG")
    times: Dict[str, float] = report.phase_times
    times["preflow"] = 0.0
    scans = 0

    k = config.k_initial or 2
    while True:
        t_phase = time.perf_counter()
        sparse = fg_k(labeling, k)
        times["sparsify_build"] += time.perf_counter() - t_phase

        t_phase = time.perf_counter()
        _, best = trivial_cut_sweep(sparse)
        times["trivial"] += time.perf_counter() - t_phase

        t_phase = time.perf_counter()
        sg = build_split_graph(sparse)
        times["other"] += time.perf_counter() - t_phase

        t_phase = time.perf_counter()
        for repetition in range(config.repetitions):
            if best is not None and len(best) <= 1:
                break
            x = _seed_vertex(sparse, config.seed_vertex, rng)
            cuts, rep_scans = _phases(
                sparse, sg, x, sink_order(sparse, x, rng), stop_below=1
            )
            scans += rep_scans
            for sink_cut in cuts:
                if sink_cut.value is None:
                    continue
                if (best is None or len(sink_cut.cut) < len(best)) and is_vertex_cut(sparse, sink_cut.cut):
                    best = sink_cut.cut
            logger.debug("HRG k=%s repetition %s from x=%s: best %s", k, repetition, x,
                         len(best) if best is not None else None)
        times["preflow"] += time.perf_counter() - t_phase

        complete = k >= labeling.max_label
        if best is not None and (len(best) < k or complete):
            break
        if complete:
            # FG_k is the whole graph; nothing found means it is complete
            break
        k *= 2

    report.cut = best
    report.kappa = len(best) if best is not None else g.n - 1
    report.counters = AccessCounters(t_edge_accesses=scans)
    report.total_time = time.perf_counter() - t0 - label_time
    accounted = sum(v for phase, v in times.items() if phase != "other")
    times["other"] = max(0.0, report.total_time - accounted)
    logger.info("HRG: kappa=%s in %.1f ms", report.kappa, report.total_time * 1000.0)
    return report
