"""Ergodic mutual information of BPSK signaling over fading channels.

Three independent routes to the same quantity -- exact double
quadrature, closed-form approximations built on the exponential MI fit,
and Monte-Carlo simulation -- plus the samplers, special functions, and
cross-validation suites that tie them together.
"""

from .bpsk_mi import (
    DEFAULT_QUAD,
    MI_APPROX_RATE,
    QuadratureSpec,
    log2_one_plus_exp,
    mi_awgn_approx,
    mi_awgn_exact,
)
from .channels import (
    Awgn,
    EtaMu,
    EtaMuFormat,
    FadingModel,
    Geometry,
    KappaMu,
    Nakagami,
    Rayleigh,
    Rician,
    eta_mu_geometry,
    laplace_at,
    log_pdf,
    pdf,
    validate,
)
from .emi import (
    EmiEstimate,
    EmiMethod,
    ReductionReport,
    emi_approx,
    emi_exact,
    emi_reduction_check,
    emi_series_reference,
)
from .errors import (
    DomainError,
    NoKnownReductionError,
    ParameterError,
    QuadratureConvergenceError,
)
from .sampling import (
    RngState,
    SampleBatch,
    emi_monte_carlo,
    ks_distance,
    sample_gamma_variate,
    sample_snr,
)
from .special_fn import bessel_i_scaled, ln_gamma, log_bessel_i
from .validation import SuiteResult, run_validation, standard_grid

__version__ = "0.1.0"

__all__ = [
    "Awgn", "Rayleigh", "Nakagami", "Rician", "EtaMu", "KappaMu",
    "EtaMuFormat", "FadingModel", "Geometry",
    "validate", "eta_mu_geometry", "log_pdf", "pdf", "laplace_at",
    "MI_APPROX_RATE", "QuadratureSpec", "DEFAULT_QUAD",
    "log2_one_plus_exp", "mi_awgn_exact", "mi_awgn_approx",
    "EmiMethod", "EmiEstimate", "ReductionReport",
    "emi_exact", "emi_approx", "emi_series_reference", "emi_reduction_check",
    "RngState", "SampleBatch",
    "sample_gamma_variate", "sample_snr", "ks_distance", "emi_monte_carlo",
    "ln_gamma", "bessel_i_scaled", "log_bessel_i",
    "SuiteResult", "run_validation", "standard_grid",
    "DomainError", "ParameterError", "NoKnownReductionError",
    "QuadratureConvergenceError",
    "__version__",
]
