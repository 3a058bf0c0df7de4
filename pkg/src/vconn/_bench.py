"""Objectify a benchmark matrix: algorithms x instances x trials."""

import os
import glob
import json
import time
import logging
import warnings
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import pandas as pd
import yaml

from vconn._driver import ConfigError
from vconn._generators import PlantedParams, generate_planted
from vconn._graph import Graph
from vconn._instance import InstanceOnDisk
from vconn._run_trials import ALGORITHMS, BenchRecord, TrialJob, run_trials

logger = logging.getLogger(__name__)

# pylint: disable=C0103 # allow non-snake case variable names

TRIAL_COLUMNS = list(BenchRecord.__dataclass_fields__)

TIME_COLUMNS = [
    "time_ms",
    "time_sparsify_build_ms",
    "time_trivial_ms",
    "time_balanced_ff_ms",
    "time_unbalanced_localec_ms",
    "time_preflow_ms",
    "time_other_ms",
]

GROUP_COLUMNS = (
    ["setting", "algorithm", "n_mean", "m_mean", "trials", "failed", "success_rate", "cut_valid_rate"]
    + [f"{column}_{stat}" for column in TIME_COLUMNS for stat in ("mean", "min", "max", "std")]
    + ["edge_queries_mean", "vertex_queries_mean", "localec_calls_mean"]
)

EDGES_PER_CALL_COLUMNS = [
    "setting",
    "algorithm",
    "nu",
    "trials",
    "edges_per_call_over_nu_k_mean",
    "edges_per_call_over_nu_k_min",
    "edges_per_call_over_nu_k_max",
]

PLANTED_KEYS = ("n", "size_L", "size_S")


@dataclass
class BenchInstance:
    instance_id: str
    setting: str
    graph: Optional[Graph]
    kappa: Optional[int]
    error: str = ""


class BenchMatrix:
    """
    A benchmark matrix as described by a YAML file.

    Example:

        algorithms: [LOCAL1, LOCAL2PLUS, HRG]
        trials: 5
        graphs_per_setting: 5
        seed: 1
        instances:
          - kind: planted
            n: 1000
            size_L: 5
            size_S: [4, 8, 15]
          - kind: files
            glob: data/*.txt

    A list value in a planted entry expands into one setting per value.
    An instance that cannot be generated or read gives failed rows, the
    rest of the matrix still runs.
    """

    def __init__(self, config: dict):
        config = config or {}
        self.algorithms = [a.upper() for a in config.get("algorithms", [])]
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ConfigError(f"Unknown algorithms in bench matrix: {', '.join(unknown)}")

        self.trials = int(config.get("trials", 5))
        self.graphs_per_setting = int(config.get("graphs_per_setting", 5))
        self.seed = int(config.get("seed", 0))
        self.boost = int(config.get("boost", 1))
        if self.trials < 0 or self.graphs_per_setting < 0:
            raise ConfigError("trials and graphs_per_setting must be non-negative")

        self.instance_specs = list(config.get("instances") or [])
        for spec in self.instance_specs:
            kind = spec.get("kind")
            if kind == "planted":
                missing = [key for key in PLANTED_KEYS if key not in spec]
                if missing:
                    raise ConfigError(f"Planted instance entry misses {', '.join(missing)}")
            elif kind == "files":
                if "glob" not in spec:
                    raise ConfigError("Files instance entry misses glob")
            else:
                raise ConfigError(f"Unknown instance kind: {kind}")

    def __repr__(self):
        return (
            f"{self.__class__.__name__}(algorithms={self.algorithms}, "
            f"instances={len(self.instance_specs)}, trials={self.trials})"
        )

    @classmethod
    def from_yaml(cls, path):
        if not os.path.isfile(path):
            raise IOError(f"bench matrix not found: {path}")
        with open(path, "r") as stream:
            return cls(yaml.safe_load(stream))

    def _derived_seed(self, *key) -> int:
        return int(np.random.SeedSequence([self.seed, *key]).generate_state(1)[0])

    def instances(self) -> List[BenchInstance]:
        """Materialize every instance of the matrix, in matrix order."""
        instances = []
        for index, spec in enumerate(self.instance_specs):
            if spec["kind"] == "planted":
                instances += self._planted(index, spec)
            else:
                instances += self._files(spec)
        return instances

    def _planted(self, index: int, spec: dict) -> List[BenchInstance]:
        sweep = {k: v for k, v in spec.items() if isinstance(v, list)}
        if len(sweep) > 1:
            raise ConfigError(f"Only one swept parameter per planted entry, got {sorted(sweep)}")
        name, values = next(iter(sweep.items()), (None, [None]))

        instances = []
        for value_index, value in enumerate(values):
            settings = {k: v for k, v in spec.items() if k != "kind"}
            if name is not None:
                settings[name] = value
            setting = "planted n={n} L={size_L} S={size_S}".format(**settings)
            for graph_index in range(self.graphs_per_setting):
                instance_id = f"{setting} #{graph_index}"
                seed = self._derived_seed(index, value_index, graph_index)
                try:
                    params = PlantedParams(
                        n=int(settings["n"]),
                        size_L=int(settings["size_L"]),
                        size_S=int(settings["size_S"]),
                        k_gen=int(settings.get("k_gen", 60)),
                        seed=seed,
                    )
                    g, triple = generate_planted(params)
                except (ConfigError, TypeError, ValueError) as err:
                    logger.warning("Could not generate %s: %s", instance_id, err)
                    instances.append(
                        BenchInstance(instance_id, setting, None, None, f"{type(err).__name__}: {err}")
                    )
                    continue
                instances.append(BenchInstance(instance_id, setting, g, len(triple.S)))
        return instances

    def _files(self, spec: dict) -> List[BenchInstance]:
        instances = []
        for path in _find_file_paths(spec["glob"]):
            try:
                instance = InstanceOnDisk(path)
                setting = spec.get("setting", instance.basename)
                instances.append(
                    BenchInstance(instance.instance_id, setting, instance.graph, instance.kappa)
                )
            except (IOError, ValueError, yaml.YAMLError) as err:
                logger.warning("Could not read %s: %s", path, err)
                basename = os.path.basename(path)
                instances.append(
                    BenchInstance(basename, spec.get("setting", basename), None, None,
                                  f"{type(err).__name__}: {err}")
                )
        return instances

    def jobs(self, instances: List[BenchInstance]) -> List[TrialJob]:
        jobs = []
        for i, instance in enumerate(instances):
            for a, algorithm in enumerate(self.algorithms):
                for trial in range(self.trials):
                    jobs.append(
                        TrialJob(
                            instance_id=instance.instance_id,
                            setting=instance.setting,
                            graph=instance.graph,
                            kappa_ref=instance.kappa,
                            algorithm=algorithm,
                            trial=trial,
                            seed=self._derived_seed(1000 + i, a, trial),
                            options={"boost": self.boost},
                            error=instance.error,
                        )
                    )
        return jobs

    def run(self, workers=1):
        """Run all trials and return (trials, groups) DataFrames."""

        _t0 = time.perf_counter()
        instances = self.instances()
        jobs = self.jobs(instances)
        logger.info("Running %s trials on %s instances", len(jobs), len(instances))

        results = run_trials(jobs, workers=workers)
        trials = pd.DataFrame(results["results"], columns=TRIAL_COLUMNS)
        groups = summarize(trials)

        _dt = time.perf_counter() - _t0
        failed = results["failed_trials"]
        if failed:
            logger.info("%s trials failed. First failures:", len(failed))
            for r in failed[0:4]:
                logger.info("%s %s trial %s: %s", r["algorithm"], r["instance_id"], r["trial"], r["error"])

        logger.info("Summary:")
        logger.info("Total trial count: %s", str(len(jobs)))
        logger.info("OK: %s", str(len(results["ok_trials"])))
        logger.info("Failed: %s", str(len(failed)))
        logger.info("Wall time: %s sec", str(_dt))

        return trials, groups


def _find_file_paths(search_string):
    """Find edge list files matching a glob, skipping sidecars."""

    files = sorted(
        f for f in glob.glob(search_string)
        if os.path.isfile(f) and not os.path.basename(f).startswith(".")
    )

    if len(files) == 0:
        info = "No files found! Please, check the search string."
        warnings.warn(info)

        info = f"Search string: {search_string}"
        warnings.warn(info)

    return files


def summarize(trials: pd.DataFrame) -> pd.DataFrame:
    """Aggregate per-trial rows into one row per (setting, algorithm).

    Timing and query means are taken over successful runs only; failed
    trials are counted.
    """
    if trials.empty:
        return pd.DataFrame(columns=GROUP_COLUMNS)

    rows = []
    for (setting, algorithm), group in trials.groupby(["setting", "algorithm"], sort=False):
        ok = group[group["status"] == "ok"]
        row = {
            "setting": setting,
            "algorithm": algorithm,
            "n_mean": group["n"].mean(),
            "m_mean": group["m"].mean(),
            "trials": len(group),
            "failed": len(group) - len(ok),
            "success_rate": ok["success"].dropna().astype(float).mean(),
            "cut_valid_rate": ok["cut_valid"].dropna().astype(float).mean(),
        }
        for column in TIME_COLUMNS:
            row[f"{column}_mean"] = ok[column].mean()
            row[f"{column}_min"] = ok[column].min()
            row[f"{column}_max"] = ok[column].max()
            row[f"{column}_std"] = ok[column].std()
        row["edge_queries_mean"] = ok["edge_queries"].mean()
        row["vertex_queries_mean"] = ok["vertex_queries"].mean()
        row["localec_calls_mean"] = ok["localec_calls"].mean()
        rows.append(row)

    return pd.DataFrame(rows, columns=GROUP_COLUMNS)


def summarize_edges_per_call(trials: pd.DataFrame) -> pd.DataFrame:
    """Aggregate the per-ν LocalEC ratios of successful runs.

    Each trial row carries a JSON list of [ν, mean edges per call / (budget·k)]
    pairs. The result has one row per (setting, algorithm, ν).
    """
    rows = []
    if not trials.empty:
        ok = trials[trials["status"] == "ok"]
        for record in ok.itertuples(index=False):
            for nu, ratio in json.loads(record.edges_per_call_over_nu_k or "[]"):
                rows.append(
                    {"setting": record.setting, "algorithm": record.algorithm, "nu": int(nu), "ratio": ratio}
                )
    if not rows:
        return pd.DataFrame(columns=EDGES_PER_CALL_COLUMNS)

    exploded = pd.DataFrame(rows)
    stats = (
        exploded.groupby(["setting", "algorithm", "nu"], sort=False)["ratio"]
        .agg(["count", "mean", "min", "max"])
        .reset_index()
    )
    stats.columns = EDGES_PER_CALL_COLUMNS
    return stats.sort_values(["setting", "algorithm", "nu"], kind="stable").reset_index(drop=True)


def write_results(trials: pd.DataFrame, groups: pd.DataFrame, out_dir):
    """Write trials.csv, groups.csv and edges_per_call.csv, return their paths."""
    os.makedirs(out_dir, exist_ok=True)
    trials_path = os.path.join(out_dir, "trials.csv")
    groups_path = os.path.join(out_dir, "groups.csv")
    calls_path = os.path.join(out_dir, "edges_per_call.csv")
    trials.to_csv(trials_path, index=False)
    groups.to_csv(groups_path, index=False)
    summarize_edges_per_call(trials).to_csv(calls_path, index=False)
    return trials_path, groups_path, calls_path
