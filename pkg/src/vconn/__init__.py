"""Top-level package for vconn"""

try:
    from .version import version
    __version__ = version
except ImportError:
    __version__ = "0.0.0"

from vconn._graph import (
    AccessCounters,
    EdgeListError,
    Graph,
    GraphInvariantError,
    ReversalJournal,
    SeparationTriple,
    boundary_size,
    connected_components,
    is_vertex_cut,
    load_edge_list,
    read_edge_list,
    reverse_path,
    volume_out,
    write_edge_list,
)
from vconn._splitgraph import SplitGraph, build_split_graph
from vconn._sparsify import (
    ForestLabeling,
    fg_k,
    forest_decompose,
    randomized_forest_partition,
)
from vconn._localec import (
    LOCALEC_VARIANTS,
    LocalEcParams,
    LocalResult,
    local1,
    local1_plus,
    local2,
    local2_plus,
    run_localec,
)
from vconn._maxflow import FlowResult, max_flow_vc
from vconn._driver import (
    ConfigError,
    DriverConfig,
    VcReport,
    map_split_cut_to_vertex_cut,
    solve_k,
    trivial_cut_sweep,
    vertex_connectivity,
)
from vconn._hrg import HrgConfig, PreflowState, hrg_vertex_connectivity, min_source_sink_cuts
from vconn._generators import PlantedParams, generate_planted, k_core
from vconn._instance import InstanceOnDisk, write_instance
from vconn._bench import BenchMatrix
from vconn._run_trials import BenchRecord, run_algorithm
