"""Spectral-radius laws of non-Hermitian random matrix ensembles.

Exact finite-n cdfs, exact-distribution samplers, limit laws with their
norming constants, and the statistics that tie them together.
"""

from .errors import NonConvergenceError, QuadratureError, WorkBudgetError
from .exact_cdf import (
    CdfCurve,
    cdf_curve,
    exact_cdf_fn,
    exact_log_cdf,
    product_exact_cdf_k1,
    product_exact_cdf_k2,
    spherical_exact_cdf,
    truncated_exact_cdf,
)
from .limit_laws import (
    GUMBEL,
    SPHERICAL_H,
    STANDARD_NORMAL,
    CdfValue,
    Gumbel,
    ProductLaw,
    SphericalH,
    StandardNormal,
    cdf,
    cdf_values,
    gumbel_cdf,
    phi_alpha,
    product_law_cdf,
    quantile,
    quantiles,
    sample_limit,
    sample_limit_batch,
    spherical_h_cdf,
    tail_asymptote,
    upper_tail,
)
from .norming import (
    EnsembleSpec,
    GinibreProduct,
    LargeK,
    NormingConstants,
    PreTransform,
    ProportionalK,
    SmallK,
    Spherical,
    TruncatedUnitary,
    ab_functions,
    default_regime,
    normalize,
    norming_for,
    product_norming,
    spherical_norming,
    truncated_norming,
)
from .samplers import (
    DEFAULT_WORK_BUDGET,
    RandomStream,
    SampleBatch,
    run_monte_carlo,
    sample_gamma,
    sample_product_log_radius,
    sample_spherical_radius,
    sample_truncated_radius,
)
from .stats import (
    KsReport,
    convergence_table,
    empirical_cdf,
    ks_statistic,
    law_cdf_fn,
    mass_span_grid,
    normalized_batch,
    qq_points,
)

__version__ = "0.1.0"

__all__ = [
    "CdfCurve",
    "CdfValue",
    "DEFAULT_WORK_BUDGET",
    "EnsembleSpec",
    "GUMBEL",
    "GinibreProduct",
    "Gumbel",
    "KsReport",
    "LargeK",
    "NonConvergenceError",
    "NormingConstants",
    "PreTransform",
    "ProductLaw",
    "ProportionalK",
    "QuadratureError",
    "RandomStream",
    "SPHERICAL_H",
    "STANDARD_NORMAL",
    "SampleBatch",
    "SmallK",
    "Spherical",
    "SphericalH",
    "StandardNormal",
    "TruncatedUnitary",
    "WorkBudgetError",
    "ab_functions",
    "cdf",
    "cdf_curve",
    "cdf_values",
    "convergence_table",
    "default_regime",
    "empirical_cdf",
    "exact_cdf_fn",
    "exact_log_cdf",
    "gumbel_cdf",
    "ks_statistic",
    "law_cdf_fn",
    "mass_span_grid",
    "normalize",
    "normalized_batch",
    "norming_for",
    "phi_alpha",
    "product_exact_cdf_k1",
    "product_exact_cdf_k2",
    "product_law_cdf",
    "product_norming",
    "qq_points",
    "quantile",
    "quantiles",
    "run_monte_carlo",
    "sample_gamma",
    "sample_limit",
    "sample_limit_batch",
    "sample_product_log_radius",
    "sample_spherical_radius",
    "sample_truncated_radius",
    "spherical_exact_cdf",
    "spherical_h_cdf",
    "spherical_norming",
    "tail_asymptote",
    "truncated_exact_cdf",
    "truncated_norming",
    "upper_tail",
]
