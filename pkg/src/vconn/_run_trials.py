"""

    The function that runs benchmark trials.

"""

import json
import logging
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import List, Optional

from vconn._driver import ConfigError, DriverConfig, VcReport, vertex_connectivity
from vconn._graph import Graph, is_vertex_cut
from vconn._hrg import HrgConfig, hrg_vertex_connectivity

# pylint: disable=C0103 # allow non-snake case variable names

logger = logging.getLogger(__name__)

ALGORITHMS = ("LOCAL1", "LOCAL1PLUS", "LOCAL2", "LOCAL2PLUS", "HRG")


def run_algorithm(
    g: Graph, algorithm: str, seed=None, boost: int = 1, k_initial: Optional[int] = None
) -> VcReport:
    """Run one connectivity algorithm by its benchmark name."""
    name = algorithm.upper()
    if name not in ALGORITHMS:
        raise ConfigError(f"Unknown algorithm {algorithm}, choose from {', '.join(ALGORITHMS)}")
    if name == "HRG":
        # each boost level adds the default number of seed vertices per k
        config = HrgConfig(seed=seed, repetitions=2 * boost, k_initial=k_initial)
        return hrg_vertex_connectivity(g, config)
    config = DriverConfig(
        localec_variant=name.lower(), seed=seed, boost=boost, k_initial=k_initial
    )
    return vertex_connectivity(g, config)


@dataclass
class BenchRecord:
    algorithm: str
    instance_id: str
    setting: str
    trial: int
    seed: int
    n: int
    m: int
    kappa_ref: Optional[int]
    kappa_found: Optional[int] = None
    cut_valid: Optional[bool] = None
    success: Optional[bool] = None
    time_ms: float = 0.0
    time_sparsify_build_ms: float = 0.0
    time_trivial_ms: float = 0.0
    time_balanced_ff_ms: float = 0.0
    time_unbalanced_localec_ms: float = 0.0
    time_preflow_ms: float = 0.0
    time_other_ms: float = 0.0
    edge_queries: int = 0
    vertex_queries: int = 0
    localec_calls: int = 0
    edges_per_call_over_nu_k: str = "[]"
    cut: str = ""
    status: str = ""
    error: str = ""


@dataclass
class TrialJob:
    """One (instance, algorithm, trial) cell of a bench matrix."""

    instance_id: str
    setting: str
    graph: Optional[Graph]
    kappa_ref: Optional[int]
    algorithm: str
    trial: int
    seed: int
    options: dict = field(default_factory=dict)
    error: str = ""


def _record_from_report(record: BenchRecord, report: VcReport, g: Graph):
    record.kappa_found = report.kappa
    if report.cut is not None:
        # independent check, not the solver's own claim
        record.cut_valid = is_vertex_cut(g, report.cut)
        record.cut = " ".join(str(g.labels[v]) for v in sorted(report.cut))
    if record.kappa_ref is not None:
        record.success = report.kappa == record.kappa_ref and record.cut_valid is not False

    record.time_ms = report.total_time * 1000.0
    for phase, seconds in report.phase_times.items():
        setattr(record, f"time_{phase}_ms", seconds * 1000.0)
    record.edge_queries = report.counters.t_edge_accesses + report.flow_edge_accesses
    record.vertex_queries = report.counters.u_vertices
    record.localec_calls = len(report.localec_calls)
    record.edges_per_call_over_nu_k = json.dumps(report.edges_per_call_over_nu_k())


def _failed_record(job: TrialJob, error: str) -> dict:
    record = BenchRecord(
        algorithm=job.algorithm.upper(),
        instance_id=job.instance_id,
        setting=job.setting,
        trial=job.trial,
        seed=job.seed,
        n=0,
        m=0,
        kappa_ref=job.kappa_ref,
        status="failed",
        error=error,
    )
    return asdict(record)


def _run_trial(job: TrialJob) -> dict:
    """Run a trial on a private copy of the instance graph"""

    if job.graph is None:
        # the instance itself could not be built or read
        return _failed_record(job, job.error or "Missing instance graph")

    g = job.graph.copy()
    record = BenchRecord(
        algorithm=job.algorithm.upper(),
        instance_id=job.instance_id,
        setting=job.setting,
        trial=job.trial,
        seed=job.seed,
        n=g.n,
        m=g.m // 2,
        kappa_ref=job.kappa_ref,
    )

    _t0 = time.perf_counter()
    try:
        report = run_algorithm(g, job.algorithm, seed=job.seed, **job.options)
        _record_from_report(record, report, g)
        record.status = "ok"
    except Exception as err:  # pylint: disable=broad-except
        logger.debug("Trial %s failed: %s", job.instance_id, traceback.format_exc())
        record.status = "failed"
        record.error = f"{type(err).__name__}: {err}"

    logger.debug(
        "%s on %s trial %s: %s in %.3f s",
        record.algorithm, record.instance_id, record.trial, record.status,
        time.perf_counter() - _t0,
    )
    return asdict(record)


def _run_trials(jobs, workers=1):
    """
    Create worker processes and call _run_trial in each process

    Trials are CPU bound, so one process per worker. A single worker runs
    in the calling process.
    """

    if workers == 1:
        return [_run_trial(job) for job in jobs]

    with ProcessPoolExecutor(workers) as executor:
        results = list(executor.map(_run_trial, jobs))

    return results


def run_trials(jobs: List[TrialJob], workers=1):
    """
    Run trials

    jobs: list of TrialJob objects

    Results keep the order of jobs regardless of completion order.
    """

    results = _run_trials(jobs=jobs, workers=workers)

    ok_trials = []
    failed_trials = []

    for r in results:
        status = r.get("status")

        if not status:
            raise ValueError('Trial result returned with no "status" attribute')

        if status == "ok":
            ok_trials.append(r)
        else:
            failed_trials.append(r)

    return {
        "results": results,
        "ok_trials": ok_trials,
        "failed_trials": failed_trials,
    }
