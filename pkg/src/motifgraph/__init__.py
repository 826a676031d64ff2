"""Random motif graphs: unions of random copies of a fixed small graph."""
from .covering import (
    Covering,
    GammaResult,
    PathClosedForm,
    Subject,
    enumerate_coverings,
    gamma_bar,
    gamma_of_covering,
    path_closed_form,
    subset_formula_failures,
    verify_subset_formula,
)
from .errors import *  # noqa: F401,F403
from .harness import (
    CurvePoint,
    ExperimentConfig,
    appearance_experiment,
    estimate_p_half,
    isolated_vertex_stats,
    threshold_curve,
    wilson,
)
from .hitting import HittingConfig, HittingReport, hitting_stats, run_process
from .motif import (
    Motif,
    ThresholdParams,
    colex_rank,
    colex_unrank,
    f_k,
    load_motif,
    m_r,
    parse_motif,
    preset,
    q_r,
    rank_copy,
    threshold_params,
    total_copies,
    unrank_copy,
)
from .multigraph import MotifMultiGraph, Placement, graph_from_edges
from .properties import (
    HamResult,
    HamStatus,
    contains_subgraph,
    count_subgraphs,
    hamiltonian,
    has_perfect_matching,
    is_connected,
    max_matching,
)
from .sampler import SeededRng, process_stream, sample_binomial, sample_uniform

__version__ = "0.1.0"
