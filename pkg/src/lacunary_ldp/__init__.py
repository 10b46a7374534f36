"""Large deviations for lacunary trigonometric sums S_n = sum cos(2 pi a_k w).

Exact combinatorics (signed zero-sum counts, moments, cumulants, Taylor
series) sit next to numerics (transfer-operator eigenvalues, Legendre
transforms, grid integrals).  Hot loops live in a compiled extension with a
numpy fallback; see :mod:`lacunary_ldp.kernels`.
"""
__version__ = "0.1.0"

from .errors import (AccuracyError, ConvergenceError, InternalConsistencyError, InvalidArgument,
                     InvariantViolation, LDPError, NumericError, RangeError, ResourceLimitError)
from .sequences import LacunarySequence, custom, geometric, interleaved, large_gap, perturbed
from .diophantine import (AmPolynomial, am_polynomial, bridge_count, count_geometric_dp,
                          count_laurent, count_signed_zero_sums, relation_count)
from .series import PowerSeries
from .moments import cumulant_affine, lambda_taylor, moment, tilde_lambda_taylor
from .spectral import lambda_spec, lambda_tilde, leading_eigen
from .ratefn import PLUS_INFINITY, legendre_numeric, rate_q, rate_taylor, rate_tilde
from .empirical import ldp_increment, levelset_prob, mgf_grid, mgf_poly_exact
from .kernels import BACKEND

__all__ = [name for name in dir() if not name.startswith("_")]
