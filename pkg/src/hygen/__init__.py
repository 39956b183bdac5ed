"""Sampling weighted hypergraphs with community structure.

The package generates hypergraphs whose hyperedges carry independent
Poisson weights driven by node community memberships and a community
affinity matrix. It supports conditioning on degree or size sequences or on
an observed configuration, evaluates expected statistics in closed form,
and computes the structural statistics used to compare samples against real
data.
"""

from .expectations import (
    SizeRange,
    expected_degrees,
    expected_mean_degree,
    expected_node_degree,
    expected_size_counts,
    pair_interaction_sum,
    rescale_affinity,
)
from .io import (
    HyperedgeFileError,
    ingest_hypergraph,
    load_params,
    relabel_edges,
    save_params,
    write_hypergraph,
)
from .matching import (
    PRIORITY_DEGREE,
    PRIORITY_SIZE,
    build_initial_configuration,
    extract_hyperedge,
    sequences_of,
)
from .mcmc import (
    ChainState,
    DEFAULT_TAU,
    MCMCConfig,
    acceptance_log_ratio,
    mcmc_step,
    run_chain,
    shuffle_pair,
)
from .metrics import (
    EntropySummary,
    PowerIterationError,
    StatsReport,
    adjacency,
    community_entropy,
    compute_stats_report,
    dual_eigenvector_centrality,
    hypergraph_entropy,
    inclusion_counts,
    jaccard,
    majority_ratio,
    subhypergraph_centrality,
)
from .model import (
    AsymmetricAffinityError,
    DuplicateNodeError,
    Hypergraph,
    InvalidMaxSizeError,
    ModelParams,
    Normalization,
    ZeroIntensityError,
    log_binomial,
    log_default_kappa,
)
from .pipeline import (
    EmptyConfigurationError,
    FixedBoth,
    FixedConfiguration,
    FixedDegrees,
    FixedSizes,
    InitialConfiguration,
    SamplingJob,
    prepare_initial,
    sample,
    sample_conditioned_on_data,
)
from .sequences import (
    clt_degree_moments,
    clt_size_moments,
    sample_degree_sequence,
    sample_size_sequence,
)
from .streams import stream
from .weights import sample_dyadic_exact, sample_weights, ztp_quantile

__version__ = "0.1.0"
