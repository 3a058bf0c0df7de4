"""

    Vertex connectivity via local search.

    For a cut-size bound k the search runs three phases on the sparse
    certificate FG_k: a linear sweep for trivial cuts, max flow between
    sampled vertex pairs for balanced cuts, and LocalEC from sampled
    vertices over a doubling volume schedule for unbalanced cuts. k is
    doubled until a cut smaller than k is found.

"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from vconn._graph import AccessCounters, Graph, connected_components, is_vertex_cut
from vconn._localec import DEFAULT_BUDGET_FACTORS, LOCALEC_VARIANTS, LocalEcParams
from vconn._maxflow import max_flow_vc
from vconn._sparsify import fg_k, forest_decompose
from vconn._splitgraph import SplitGraph, build_split_graph

logger = logging.getLogger(__name__)

PHASES = ("sparsify_build", "trivial", "balanced_ff", "unbalanced_localec", "other")


class ConfigError(ValueError):
    """Invalid algorithm or generator parameters."""


@dataclass
class DriverConfig:
    localec_variant: str = "local2plus"
    k_initial: Optional[int] = None
    boost: int = 1
    seed: Optional[int] = None
    budget_factor: Optional[float] = None
    balanced_sample_factor: float = 1.0
    unbalanced_sample_factor: float = 1.0

    def __post_init__(self):
        if self.localec_variant not in LOCALEC_VARIANTS:
            raise ConfigError(f"Unknown LocalEC variant: {self.localec_variant}")
        if self.boost < 1:
            raise ConfigError("boost must be at least 1")
        if self.k_initial is not None and self.k_initial < 1:
            raise ConfigError("k_initial must be at least 1")
        if self.budget_factor is not None and self.budget_factor < 1:
            raise ConfigError("budget_factor must be at least 1")

    @property
    def effective_budget_factor(self) -> float:
        if self.budget_factor is not None:
            return self.budget_factor
        return DEFAULT_BUDGET_FACTORS[self.localec_variant]


@dataclass
class LocalEcCall:
    nu: int
    budget: int
    k: int
    edges_visited: int


@dataclass
class VcReport:
    """Outcome of a connectivity run.

    `cut` is None when no cut was found; `kappa` is then the certified lower
    bound (or n - 1 for complete graphs).
    """

    kappa: int
    cut: Optional[FrozenSet[int]] = None
    phase_times: Dict[str, float] = field(default_factory=lambda: dict.fromkeys(PHASES, 0.0))
    counters: AccessCounters = field(default_factory=AccessCounters)
    localec_calls: List[LocalEcCall] = field(default_factory=list)
    seed: Optional[int] = None
    algorithm: str = ""
    total_time: float = 0.0
    flow_edge_accesses: int = 0

    def absorb(self, other: "VcReport"):
        """Merge timing and counters of another run into this report."""
        for phase, value in other.phase_times.items():
            self.phase_times[phase] = self.phase_times.get(phase, 0.0) + value
        self.counters = self.counters + other.counters
        self.localec_calls.extend(other.localec_calls)
        self.flow_edge_accesses += other.flow_edge_accesses

    def edges_per_call_over_nu_k(self) -> List[Tuple[int, float]]:
        """Mean edges visited per LocalEC call over budget * k, per nu."""
        per_nu: Dict[int, List[float]] = {}
        for call in self.localec_calls:
            per_nu.setdefault(call.nu, []).append(call.edges_visited / (call.budget * call.k))
        return [(nu, float(np.mean(values))) for nu, values in sorted(per_nu.items())]

    def as_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "kappa": self.kappa,
            "cut": sorted(self.cut) if self.cut is not None else None,
            "phase_times_ms": {k: v * 1000.0 for k, v in self.phase_times.items()},
            "time_ms": self.total_time * 1000.0,
            "counters": self.counters.as_dict(),
            "localec_calls": len(self.localec_calls),
            "edges_per_call_over_nu_k": self.edges_per_call_over_nu_k(),
            "seed": self.seed,
        }


class _PhaseTimer:
    def __init__(self, times: Dict[str, float], phase: str):
        self.times = times
        self.phase = phase

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.times[self.phase] = self.times.get(self.phase, 0.0) + time.perf_counter() - self._t0
        return False


def trivial_cut_sweep(g: Graph) -> Tuple[int, Optional[FrozenSet[int]]]:
    """Minimum degree and the neighbourhood of a minimum-degree vertex.

    The cut is None when n <= delta + 1 (complete graph).
    """
    delta, vertex = g.min_degree()
    if g.n <= delta + 1:
        return delta, None
    return delta, frozenset(g.neighbours(vertex))


def degenerate_report(g: Graph, algorithm: str, seed: Optional[int]) -> Optional[VcReport]:
    """Report for graphs that need no search: n <= 1, disconnected or complete."""
    if g.n <= 1:
        return VcReport(kappa=0, seed=seed, algorithm=algorithm)
    if len(connected_components(g)) > 1:
        return VcReport(kappa=0, cut=frozenset(), seed=seed, algorithm=algorithm)
    if trivial_cut_sweep(g)[1] is None:
        return VcReport(kappa=g.n - 1, seed=seed, algorithm=algorithm)
    return None


def map_split_cut_to_vertex_cut(sg: SplitGraph, split_side) -> Optional[FrozenSet[int]]:
    """Vertex cut of the original graph from one side of a split-graph cut.

    A vertex whose internal arc leaves the side is in the cut. An external
    arc u_out -> w_in leaving the side puts w in the cut as its witness.
    Returns None if the mapped set is not a vertex cut.
    """
    side = split_side if isinstance(split_side, (set, frozenset)) else set(split_side)
    graph = sg.graph
    cut = set()
    for s in side:
        for arc in graph.out(s):
            h = graph.head(arc)
            if h in side:
                continue
            v, _ = sg.original_vertex(h)
            cut.add(v)

    left = {v for v in range(sg.n_original) if sg.v_out(v) in side} - cut
    if not left or len(left) + len(cut) == sg.n_original:
        return None
    cut = frozenset(cut)
    if not is_vertex_cut(sg.original, cut):
        return None
    return cut


class _Search:
    """State of one solve_k call: the running bound k' and the best cut."""

    def __init__(self, g: Graph, k: int, config: DriverConfig, rng: np.random.Generator):
        self.g = g
        self.k = k
        self.config = config
        self.rng = rng
        self.k_prime = k
        self.best: Optional[FrozenSet[int]] = None
        self.report = VcReport(kappa=k, seed=config.seed, algorithm=config.localec_variant.upper())

    def offer(self, cut: Optional[FrozenSet[int]], source: str) -> bool:
        if cut is None or len(cut) >= self.k_prime:
            return False
        if not is_vertex_cut(self.g, cut):
            logger.debug("Rejected %s cut of size %s: not a vertex cut", source, len(cut))
            return False
        logger.debug("%s cut of size %s (k' was %s)", source, len(cut), self.k_prime)
        self.best = cut
        self.k_prime = len(cut)
        return True

    def sample_tail(self) -> int:
        return self.g.tail(int(self.rng.integers(self.g.m)))

    def balanced(self, sg: SplitGraph):
        samples = int(math.ceil(3 * self.k * self.config.balanced_sample_factor))
        for _ in range(samples):
            if self.k_prime <= 1:
                return
            pair = self._sample_pair()
            if pair is None:
                continue
            x, y = pair
            result = max_flow_vc(sg, x, y, self.k_prime)
            self.report.flow_edge_accesses += result.edge_accesses
            if result.value < self.k_prime:
                self.offer(result.cut, "balanced")

    def _sample_pair(self) -> Optional[Tuple[int, int]]:
        for _ in range(2):
            x, y = self.sample_tail(), self.sample_tail()
            if x != y and not self.g.adjacent(x, y):
                return x, y
        return None

    def unbalanced(self, sg: SplitGraph, delta: int):
        g = self.g
        m = g.m
        a = m / (3 * self.k)
        variant = LOCALEC_VARIANTS[self.config.localec_variant]
        nu = max(1, delta)
        while nu < a:
            samples = int(math.floor(m / nu * self.config.unbalanced_sample_factor))
            for _ in range(samples):
                if self.k_prime <= 1:
                    return
                x = self.sample_tail()
                params = LocalEcParams(
                    x=sg.v_out(x),
                    nu=nu,
                    k=self.k_prime,
                    budget_factor=self.config.budget_factor,
                )
                result = variant(sg.graph, params, self.rng).run()
                self.report.counters = self.report.counters + result.counters
                self.report.localec_calls.append(
                    LocalEcCall(nu, result.budget, self.k_prime, result.counters.t_edge_accesses)
                )
                if result.found:
                    self.offer(map_split_cut_to_vertex_cut(sg, result.cut), "unbalanced")
            nu *= 2


def solve_k(g: Graph, k: int, config: DriverConfig, rng: np.random.Generator = None) -> VcReport:
    """Find a minimum vertex cut of size < k, or certify kappa >= k
    (with constant probability). g is expected to be FG_k."""
    if rng is None:
        rng = np.random.default_rng(config.seed)
    t0 = time.perf_counter()
    search = _Search(g, k, config, rng)
    times = search.report.phase_times

    with _PhaseTimer(times, "trivial"):
        delta, trivial = trivial_cut_sweep(g)
        search.offer(trivial, "trivial")

    if g.n > delta + 1 and search.k_prime > 1:
        with _PhaseTimer(times, "other"):
            sg = build_split_graph(g)
        with _PhaseTimer(times, "balanced_ff"):
            search.balanced(sg)
        with _PhaseTimer(times, "unbalanced_localec"):
            search.unbalanced(sg, delta)

    report = search.report
    report.cut = search.best
    report.kappa = len(search.best) if search.best is not None else k
    elapsed = time.perf_counter() - t0
    accounted = sum(report.phase_times[p] for p in PHASES if p != "other")
    report.phase_times["other"] = max(0.0, elapsed - accounted)
    report.total_time = elapsed
    return report


def vertex_connectivity(g: Graph, config: DriverConfig = None) -> VcReport:
    """Vertex connectivity of an undirected graph with a witness cut."""
    config = config or DriverConfig()
    t0 = time.perf_counter()
    algorithm = config.localec_variant.upper()

    degenerate = degenerate_report(g, algorithm, config.seed)
    if degenerate is not None:
        return degenerate

    seeds = np.random.SeedSequence(config.seed)
    rng = np.random.default_rng(seeds)

    # excluded from the measured time
    t_label = time.perf_counter()
    labeling = forest_decompose(g)
    label_time = time.perf_counter() - t_label

    report = VcReport(kappa=0, seed=config.seed, algorithm=algorithm)
    k = config.k_initial or 2
    while True:
        t_build = time.perf_counter()
        sparse = fg_k(labeling, k)
        build_time = time.perf_counter() - t_build
        report.phase_times["sparsify_build"] += build_time

        level = solve_k(sparse, k, config, rng)
        report.absorb(level)
        if level.cut is not None:
            report.cut = level.cut
            report.kappa = len(level.cut)
            break
        logger.debug("No cut below k=%s, doubling", k)
        k *= 2

    for child in seeds.spawn(config.boost - 1):
        if report.kappa <= 1:
            break
        bound = report.kappa
        t_build = time.perf_counter()
        sparse = fg_k(labeling, bound)
        report.phase_times["sparsify_build"] += time.perf_counter() - t_build
        level = solve_k(sparse, bound, config, np.random.default_rng(child))
        report.absorb(level)
        if level.cut is not None and len(level.cut) < report.kappa:
            report.cut = level.cut
            report.kappa = len(level.cut)

    report.total_time = time.perf_counter() - t0 - label_time
    accounted = sum(report.phase_times[p] for p in PHASES if p != "other")
    report.phase_times["other"] = max(0.0, report.total_time - accounted)
    logger.info("%s: kappa=%s in %.1f ms", algorithm, report.kappa, report.total_time * 1000.0)
    return report
