"""Generalised Hilbert operators induced by Hankel matrices of measure moments."""

from .errors import DivergenceError, DomainError, WellDefinednessError
from .estimates import NormEstimate
from .measure import (
    Atomic,
    GridSpec,
    Lebesgue,
    LogPowerDensity,
    LogWeighted,
    Measure,
    MomentSequence,
    PowerLogDensity,
    Restricted,
    WeightedSum,
    carleson_quantifier,
    embedding_probe,
    head_mass,
    is_vanishing,
    log_weight,
    moment_values,
    moments,
    tail_mass,
    total_mass,
    truncate_tail,
)
from .operator import (
    BLOCH_BMOA_QS,
    Besov,
    HankelApplication,
    agreement_check,
    hankel_apply,
    integral_apply,
    well_definedness_test,
)
from .series import (
    BlockDecomposition,
    TaylorPolynomial,
    anderson_shields_functional,
    coef_power_sum,
    d_alpha_norm,
    derivative,
    dilate,
    dyadic_blocks,
    evaluate,
    hp_norm,
    log_series,
    logpower_series,
)
from .spaces import (
    MobiusPoint,
    bergman_block_equivalence,
    besov_seminorm_area,
    besov_seminorm_blocks,
    bloch_seminorm,
    bmoa_seminorm,
    mobius_compose,
    qs_seminorm,
)

__version__ = "0.1.0"

__all__ = [
    "DivergenceError",
    "DomainError",
    "WellDefinednessError",
    "NormEstimate",
    "Atomic",
    "GridSpec",
    "Lebesgue",
    "LogPowerDensity",
    "LogWeighted",
    "Measure",
    "MomentSequence",
    "PowerLogDensity",
    "Restricted",
    "WeightedSum",
    "carleson_quantifier",
    "embedding_probe",
    "head_mass",
    "is_vanishing",
    "log_weight",
    "moment_values",
    "moments",
    "tail_mass",
    "total_mass",
    "truncate_tail",
    "BLOCH_BMOA_QS",
    "Besov",
    "HankelApplication",
    "agreement_check",
    "hankel_apply",
    "integral_apply",
    "well_definedness_test",
    "BlockDecomposition",
    "TaylorPolynomial",
    "anderson_shields_functional",
    "coef_power_sum",
    "d_alpha_norm",
    "derivative",
    "dilate",
    "dyadic_blocks",
    "evaluate",
    "hp_norm",
    "log_series",
    "logpower_series",
    "MobiusPoint",
    "bergman_block_equivalence",
    "besov_seminorm_area",
    "besov_seminorm_blocks",
    "bloch_seminorm",
    "bmoa_seminorm",
    "mobius_compose",
    "qs_seminorm",
]
