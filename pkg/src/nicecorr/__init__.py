"""Two-step estimation of large correlation matrices.

Detect communities of correlated variables on a posterior-weight graph, then
hard-threshold each entry by a Bayes-factor rule whose evidence bar depends on
whether the pair landed inside a detected community.  ``run_pipeline`` wires
the stages together; every stage is also importable on its own.
"""

from .bench import (
    BenchResult,
    BenchRow,
    SyntheticSpec,
    block_sigma,
    generate_synthetic,
    run_benchmark,
    run_replicate,
    score_recovery,
    shuffled_sigma,
    summarize_benchmark,
)
from .corr import (
    CorrMatrix,
    DataMatrix,
    ZMatrix,
    fisher_z,
    fisher_z_inverse,
    load_csv,
    sample_correlation,
    standardize,
    z_matrix,
)
from .detect import (
    DetectConfig,
    Partition,
    cluster_for_C,
    community_statistic,
    default_c_grid,
    laplacian,
    perm_quantile,
    permutation_test,
    quality_quantity,
    select_partition,
    spectral_embed,
)
from .errors import InputError, NiceCorrError, NumericError
from .mixture import (
    DISPERSION_GATE,
    MixtureFit,
    dispersion,
    fit_mixture,
    local_fdr,
    posterior_nonnull,
    refit_pi0,
    weight_matrix,
)
from .pipeline import PipelineResult, raw_z_weights, run_pipeline
from .threshold import (
    DEFAULT_T,
    OddsPair,
    ThresholdedEstimate,
    bayes_factors,
    estimate_odds,
    fdr_for_threshold,
    magnitude_threshold,
    nice_threshold,
    threshold_for_fdr,
    universal_bf_cutoff,
    universal_threshold,
)

__version__ = "1.0.0"

__all__ = [
    "BenchResult",
    "BenchRow",
    "CorrMatrix",
    "DEFAULT_T",
    "DISPERSION_GATE",
    "DataMatrix",
    "DetectConfig",
    "InputError",
    "MixtureFit",
    "NiceCorrError",
    "NumericError",
    "OddsPair",
    "Partition",
    "PipelineResult",
    "SyntheticSpec",
    "ThresholdedEstimate",
    "ZMatrix",
    "bayes_factors",
    "block_sigma",
    "cluster_for_C",
    "community_statistic",
    "default_c_grid",
    "dispersion",
    "estimate_odds",
    "fdr_for_threshold",
    "fisher_z",
    "fisher_z_inverse",
    "fit_mixture",
    "generate_synthetic",
    "laplacian",
    "load_csv",
    "local_fdr",
    "magnitude_threshold",
    "nice_threshold",
    "perm_quantile",
    "permutation_test",
    "posterior_nonnull",
    "quality_quantity",
    "raw_z_weights",
    "refit_pi0",
    "run_benchmark",
    "run_pipeline",
    "run_replicate",
    "sample_correlation",
    "score_recovery",
    "select_partition",
    "shuffled_sigma",
    "spectral_embed",
    "standardize",
    "summarize_benchmark",
    "threshold_for_fdr",
    "universal_bf_cutoff",
    "universal_threshold",
    "weight_matrix",
    "z_matrix",
    "__version__",
]
