#!/usr/bin/env python

"""Compute vertex connectivity, generate instances and run benchmarks."""

import os
import sys
import json
import argparse
import logging
import warnings
from dataclasses import asdict

from vconn._bench import BenchMatrix, write_results
from vconn._driver import ConfigError
from vconn._generators import PlantedParams, generate_planted, k_core
from vconn._graph import EdgeListError, read_edge_list
from vconn._instance import InstanceOnDisk, write_instance
from vconn._run_trials import ALGORITHMS, BenchRecord, _record_from_report, run_algorithm

logger = logging.getLogger(__name__)

WORKERS_ENV = "VCONN_WORKERS"

DESCRIPTION = """
vconn computes the vertex connectivity of undirected graphs given as edge
lists, generates planted-cut and k-core benchmark instances, and runs
benchmark matrices that compare the LocalEC variants with the preflow
baseline.
"""

EXAMPLES = """
  vconn vc graph.txt --algo local2plus --seed 1
  vconn gen planted --n 1000 --size-L 5 --size-S 8 --seed 1 --out planted.txt
  vconn gen kcore web.txt 10 --out web-10core.txt
  vconn bench recipes/kappa_sweep.yml --out results/ --workers 4
"""  # noqa


def main(argv=None) -> int:
    """Entry point from command line."""

    parser = get_parser()
    args = parser.parse_args(argv)

    level = logging.WARNING
    if args.verbose:
        level = logging.INFO
    if args.debug:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        check_arguments(args)
        return args.func(args)
    except (ConfigError, EdgeListError, IOError) as err:
        print(f"vconn: error: {err}", file=sys.stderr)
        return 2


def vc_main(args) -> int:
    """Run one algorithm on one edge list and print the record as JSON."""

    instance = InstanceOnDisk(args.input)
    g = instance.graph
    report = run_algorithm(g, args.algo, seed=args.seed, boost=args.boost, k_initial=args.k)

    record = BenchRecord(
        algorithm=args.algo.upper(),
        instance_id=instance.instance_id,
        setting="",
        trial=0,
        seed=args.seed,
        n=g.n,
        m=g.m // 2,
        kappa_ref=instance.kappa,
    )
    _record_from_report(record, report, g)
    record.status = "ok"

    output = asdict(record)
    output["edges_per_call_over_nu_k"] = report.edges_per_call_over_nu_k()
    output["phase_times_ms"] = {k: v * 1000.0 for k, v in report.phase_times.items()}
    if args.counters:
        output["counters"] = report.counters.as_dict()
        output["flow_edge_accesses"] = report.flow_edge_accesses
    print(json.dumps(output))
    return 0


def gen_planted_main(args) -> int:
    params = PlantedParams(
        n=args.n, size_L=args.size_L, size_S=args.size_S, k_gen=args.k_gen, seed=args.seed
    )
    g, triple = generate_planted(params)
    metadata = {
        "kind": "planted",
        "size_L": params.size_L,
        "size_S": params.size_S,
        "k_gen": params.k_gen,
        "seed": params.seed,
        "planted_S": sorted(triple.S),
        "kappa": len(triple.S),
    }
    write_instance(args.out, g, metadata)
    logger.info("Planted instance written to %s", args.out)
    return 0


def gen_kcore_main(args) -> int:
    g = read_edge_list(args.input)
    core = k_core(g, args.k)
    if core.n == 0:
        warnings.warn(f"The {args.k}-core of {args.input} is empty")
    metadata = {
        "kind": "kcore",
        "k": args.k,
        "source": os.path.abspath(args.input),
        "min_degree": core.min_degree()[0],
    }
    write_instance(args.out, core, metadata)
    logger.info("%s-core written to %s", args.k, args.out)
    return 0


def bench_main(args) -> int:
    matrix = BenchMatrix.from_yaml(args.matrix)
    trials, groups = matrix.run(workers=args.workers)
    for path in write_results(trials, groups, args.out):
        print(path)
    return 0


def _default_workers() -> int:
    value = os.environ.get(WORKERS_ENV, "1")
    try:
        return int(value)
    except ValueError:
        warnings.warn(f"Ignoring non-integer {WORKERS_ENV}={value}")
        return 1


def get_parser() -> argparse.ArgumentParser:
    """Construct parser object for vconn."""

    parser = argparse.ArgumentParser(
        prog="vconn",
        description=DESCRIPTION,
        epilog=EXAMPLES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Verbose output")
    parser.add_argument(
        "--debug", action="store_true", help="Debug output, more verbose than --verbose"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    vc = commands.add_parser("vc", help="Vertex connectivity of an edge list")
    vc.add_argument("input", type=str, help="Path to edge list")
    vc.add_argument(
        "--algo", type=str, default="local2plus", help=f"One of {', '.join(ALGORITHMS)}"
    )
    vc.add_argument("--k", type=int, default=None, help="Initial cut-size bound")
    vc.add_argument("--seed", type=int, default=None, help="Random seed")
    vc.add_argument("--boost", type=int, default=1, help="Independent repetitions")
    vc.add_argument("--counters", action="store_true", help="Include access counters")
    vc.set_defaults(func=vc_main)

    gen = commands.add_parser("gen", help="Generate benchmark instances")
    kinds = gen.add_subparsers(dest="kind", required=True)

    planted = kinds.add_parser("planted", help="Planted-cut instance")
    planted.add_argument("--n", type=int, required=True)
    planted.add_argument("--size-L", dest="size_L", type=int, required=True)
    planted.add_argument("--size-S", dest="size_S", type=int, required=True)
    planted.add_argument("--k-gen", dest="k_gen", type=int, default=60)
    planted.add_argument("--seed", type=int, default=None)
    planted.add_argument("--out", type=str, required=True, help="Edge list to write")
    planted.set_defaults(func=gen_planted_main)

    kcore = kinds.add_parser("kcore", help="Largest component of a k-core")
    kcore.add_argument("input", type=str, help="Path to edge list")
    kcore.add_argument("k", type=int)
    kcore.add_argument("--out", type=str, required=True, help="Edge list to write")
    kcore.set_defaults(func=gen_kcore_main)

    bench = commands.add_parser("bench", help="Run a benchmark matrix")
    bench.add_argument("matrix", type=str, help="Path to bench matrix YAML")
    bench.add_argument("--out", type=str, default=".", help="Output directory")
    bench.add_argument(
        "--workers",
        type=int,
        default=None,
        help=f"Worker processes, default from {WORKERS_ENV} or 1",
    )
    bench.set_defaults(func=bench_main)

    return parser


def check_arguments(args) -> None:
    """Do sanity check of the input arguments."""

    logger.debug("Arguments are: %s", str(vars(args)))

    if args.command == "vc":
        if args.algo.upper() not in ALGORITHMS:
            raise ConfigError(f"Unknown algorithm {args.algo}, choose from {', '.join(ALGORITHMS)}")
        if not os.path.isfile(args.input):
            raise IOError(f"Edge list not found: {args.input}")
        if args.boost < 1:
            raise ConfigError("--boost must be at least 1")

    if args.command == "gen" and args.kind == "kcore" and not os.path.isfile(args.input):
        raise IOError(f"Edge list not found: {args.input}")

    if args.command == "bench":
        if args.workers is None:
            args.workers = _default_workers()
        if args.workers < 1:
            raise ConfigError("--workers must be at least 1")


if __name__ == "__main__":
    sys.exit(main())
