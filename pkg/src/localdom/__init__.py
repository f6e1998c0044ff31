"""LOCAL-model simulator and cut-based dominating set approximation."""
from .algos import (
    ALGORITHMS,
    RunResult,
    algo1_mds,
    algo2_mds,
    algo_3round,
    algo_mvc,
    baseline_all,
    baseline_degree2,
    run_algorithm,
)
from .config import AlgorithmConfig, ControlConfig
from .cuts import enumerate_cut_sets, is_local_1_cut, is_r_interesting, local_2_cuts_at
from .exact import mds_exact, mds_size, mvc_exact, mvc_size, verify_dominating, verify_vertex_cover
from .gen import GeneratorSpec, MinorWitness, certify_class, contains_k2t_minor, generate
from .graph import Graph, parse_edgelist, read_edgelist, remove_true_twins, write_edgelist
from .local import NodeProgram, NodeView, RoundTranscript, collect_view, run_local, verify_locality

__version__ = "0.1.0"
