"""Nonnegative, symmetric nonnegative and stochastic matrices with prescribed real spectra."""

from .blocks import Block2, PerronPair, canonical_nonsym, canonical_sym, general_block, perron_pair
from .composer import ConstructionTrace, border_merge, construct
from .errors import NiepError, NotRealizable, NotRealizableStep
from .spectrum import (
    ConditionReport,
    Spectrum,
    check_conditions,
    check_loewy,
    check_suleimanova,
    check_weak_condition,
    make_spectrum,
    moments,
)
from .stochastic import StochasticResult, construct_irreducible, construct_stochastic, normalize_spectrum
from .verify import VerificationReport, eigen_residual, jacobi_eigenvalues, verify_matrix

__version__ = "0.1.0"

__all__ = [
    "Block2",
    "ConditionReport",
    "ConstructionTrace",
    "NiepError",
    "NotRealizable",
    "NotRealizableStep",
    "PerronPair",
    "Spectrum",
    "StochasticResult",
    "VerificationReport",
    "border_merge",
    "canonical_nonsym",
    "canonical_sym",
    "check_conditions",
    "check_loewy",
    "check_suleimanova",
    "check_weak_condition",
    "construct",
    "construct_irreducible",
    "construct_stochastic",
    "eigen_residual",
    "general_block",
    "jacobi_eigenvalues",
    "make_spectrum",
    "moments",
    "normalize_spectrum",
    "perron_pair",
    "verify_matrix",
]
