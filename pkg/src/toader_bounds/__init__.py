"""Complete elliptic integrals, the Toader mean and sharp bounds between
the contraharmonic mean and convex combinations of the arithmetic and
Toader means.
"""
from ._core import BACKEND
from .bounds import (ENVELOPE_NAMES, BoundEnvelope, GapParams, combination, envelope,
                     f_u_alpha, lambda_star, mu_star, theorem31_check)
from .elliptic import Modulus, comp_e, comp_k, ell_e, ell_e_oracle, ell_k, ell_k_oracle
from .errors import (ConvergenceError, DomainError, RegimeError, SearchError, StructureError,
                     ToaderBoundsError)
from .means import arithmetic, contraharmonic, j_interp, power_mean, toader
from .sharpness import (ThresholdEstimate, Witness, estimate_thresholds,
                        find_violation_witness, sign_change_point)
from .verify import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ENVELOPE_NAMES", "BoundEnvelope", "ConvergenceError", "DomainError",
    "GapParams", "Modulus", "RegimeError", "SearchError", "StructureError",
    "ThresholdEstimate", "ToaderBoundsError", "VerificationReport", "Witness",
    "arithmetic", "combination", "comp_e", "comp_k", "contraharmonic", "ell_e",
    "ell_e_oracle", "ell_k", "ell_k_oracle", "envelope", "estimate_thresholds",
    "f_u_alpha", "find_violation_witness", "j_interp", "lambda_star", "mu_star",
    "power_mean", "sign_change_point", "theorem31_check", "toader",
]
