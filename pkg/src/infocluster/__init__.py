"""Info-clustering and information-theoretic feature selection on exact sources."""
from .clustering import (
    ClusterSet,
    DtBruteForce,
    DtResult,
    PspResult,
    clusters,
    dilworth_truncation,
    dilworth_truncation_bruteforce,
    extended_clusters,
    extended_clusters_bruteforce,
    mmi,
    mmi_bruteforce,
    psp,
)
from .combinatorics import (
    GroundSet,
    Partition,
    bell,
    block_partition,
    enumerate_partitions,
    is_block_partition,
    partition_join,
    partition_meet,
    refines,
)
from .duality import (
    BlockReport,
    DualityReport,
    check_block_structure,
    lift,
    sweep_duality,
    sweep_points,
    verify_duality,
)
from .errors import *  # noqa: F401,F403
from .featsel import (
    FeatureProblem,
    PpResult,
    RelaxResult,
    check_lagrangian_link,
    check_supermodular_objective,
    objective,
    penalized,
    pp,
    relax_optimize,
    size_constrained,
)
from .modelfile import load_fixture, load_model, parse_model
from .sources import (
    EntropyTableSource,
    LinearAtomicSource,
    PmfSource,
    SourceModel,
    conditional_entropy,
    is_mutually_independent,
    mutual_information,
    validate,
)
from .submodular import (
    TOL,
    SetFunction,
    check_submodular,
    partition_value,
    residual,
    sfm_bruteforce,
)

__version__ = "0.1.0"
