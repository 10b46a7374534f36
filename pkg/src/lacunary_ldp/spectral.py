"""Lambda_q as the log of the Perron-Frobenius eigenvalue of a transfer operator,
and Lambda~ as the log of the modified Bessel function I_0.

The weighted transfer operator of w -> q w (mod 1) acts on periodic functions
on [0, 1] by

    (Phi g)(w) = exp(theta cos 2 pi w) * (1/q) sum_{j<q} g((w + j)/q),

and Lambda_q(theta) = log of its leading eigenvalue.  Functions are sampled on
the uniform grid w_i = i/M with periodic linear interpolation between nodes.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConvergenceError, InvalidArgument, NumericError, RangeError

log = logging.getLogger(__name__)

DEFAULT_GRID = 2 ** 16
DEFAULT_TOL = 1e-12
MAX_ITERATIONS = 5000


@dataclass(frozen=True)
class GridFunction:
    """Periodic function sampled at w_i = i/M."""

    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=float)
        if v.ndim != 1 or v.shape[0] < 2:
            raise InvalidArgument("a grid function needs at least 2 samples")
        if not np.all(np.isfinite(v)):
            raise NumericError("grid function has non-finite entries")
        object.__setattr__(self, "values", v)

    @property
    def M(self) -> int:
        return self.values.shape[0]

    @property
    def grid(self) -> np.ndarray:
        return np.arange(self.M) / self.M

    def integral(self) -> float:
        # periodic trapezoid rule = plain mean; numpy's pairwise sum fixes the order
        return float(np.mean(self.values))

    @classmethod
    def constant(cls, M: int, value: float = 1.0) -> "GridFunction":
        return cls(np.full(M, value))


@dataclass(frozen=True)
class SpectralResult:
    lam: float
    eigenfunction: GridFunction
    iterations: int
    residual: float

    @property
    def log_lambda(self) -> float:
        return math.log(self.lam)


def _weight(theta: float, M: int) -> np.ndarray:
    w = np.exp(theta * np.cos(2 * np.pi * np.arange(M) / M))
    if not np.all(np.isfinite(w)):
        raise NumericError(f"exp(theta cos) overflows at theta={theta}")
    return w


def transfer_apply(theta: float, q: int, g: GridFunction, weight=None) -> GridFunction:
    """One application of the weighted transfer operator to ``g``."""
    if not math.isfinite(theta):
        raise NumericError("theta must be finite")
    if q < 2:
        raise InvalidArgument("q must be >= 2")
    w = _weight(theta, g.M) if weight is None else weight
    out = np.empty(g.M)
    kernels.transfer_apply(w, g.values, q, out)
    return GridFunction(out)


def leading_eigen(theta: float, q: int, M: int = DEFAULT_GRID, tol: float = DEFAULT_TOL,
                  max_iter: int = MAX_ITERATIONS, start: GridFunction | None = None) -> SpectralResult:
    """Power iteration for the Perron-Frobenius eigenvalue.

    Starts from g = 1 unless ``start`` is given.  Each step normalises by the
    grid integral and estimates the eigenvalue as the ratio of integrals; it
    stops once two successive estimates agree to ``tol`` relatively.
    """
    if M < 1024:
        raise InvalidArgument("grid size must be >= 1024")
    if tol <= 0:
        raise InvalidArgument("tol must be positive")
    if not math.isfinite(theta):
        raise NumericError("theta must be finite")
    w = _weight(theta, M)
    if start is not None and start.M == M:
        g = np.abs(start.values) / abs(start.integral())
    else:
        g = np.ones(M)
    out = np.empty(M)
    prev = None
    residual = math.inf
    for it in range(1, max_iter + 1):
        kernels.transfer_apply(w, g, q, out)
        lam = float(np.mean(out))  # integral of g is 1 after normalisation
        if not (lam > 0 and math.isfinite(lam)):
            raise NumericError(f"eigenvalue estimate {lam} is not a positive finite number")
        g, out = out / lam, g
        if prev is not None:
            residual = abs(lam - prev) / lam
            if residual < tol:
                return SpectralResult(lam, GridFunction(g), it, residual)
        prev = lam
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} steps (theta={theta}, q={q})",
        residual=residual, iterations=max_iter)


def lambda_spec(theta: float, q: int, M: int = DEFAULT_GRID, tol: float = DEFAULT_TOL,
                check_tol: float | None = None, starts: dict | None = None) -> float:
    """Lambda_q(theta) = log lambda with a grid-doubling check.

    The eigenvalue is computed at M and 2M; if the two logs differ by more
    than ``check_tol`` (default 10*tol, floored at 1e-9 since the linear
    interpolation error is O(M^-2)) the pair (2M, 4M) is tried once.  The
    finest value is returned.  ``starts`` is an optional dict used to warm
    start the iteration from earlier eigenfunctions keyed by grid size.
    """
    if theta == 0:
        return 0.0
    check_tol = max(10 * tol, 1e-9) if check_tol is None else check_tol
    starts = {} if starts is None else starts

    def solve(size):
        res = leading_eigen(theta, q, size, tol, start=starts.get(size))
        starts[size] = res.eigenfunction
        return res.log_lambda

    coarse, fine = solve(M), solve(2 * M)
    if abs(coarse - fine) <= check_tol:
        return fine
    finer = solve(4 * M)
    if abs(fine - finer) > check_tol:
        log.warning("lambda_spec(theta=%g, q=%d): grid doubling still differs by %.3g",
                    theta, q, abs(fine - finer))
    return finer


# -- arcsine / Bessel side --------------------------------------------------

_BESSEL_RTOL = 1e-18


def _check_range(theta):
    if not math.isfinite(theta):
        raise NumericError("theta must be finite")
    if abs(theta) > 700:
        raise RangeError(f"|theta| = {abs(theta)} overflows the Bessel series")


def bessel_i0(theta: float) -> float:
    """sum_m (theta/2)^{2m} / (m!)^2."""
    _check_range(theta)
    x = (theta / 2.0) ** 2
    term, total, m = 1.0, 1.0, 0
    while True:
        m += 1
        term *= x / (m * m)
        total += term
        if term < _BESSEL_RTOL * total:
            return total


def bessel_i1(theta: float) -> float:
    """I_0'(theta) = sum_m (theta/2)^{2m+1} / (m! (m+1)!)."""
    _check_range(theta)
    half = theta / 2.0
    x = half * half
    term = half
    total = half
    m = 0
    while term != 0.0:
        m += 1
        term *= x / (m * (m + 1))
        total += term
        if abs(term) < _BESSEL_RTOL * abs(total):
            break
    return total


def lambda_tilde(theta: float) -> float:
    return math.log(bessel_i0(theta))


def lambda_tilde_prime(theta: float) -> float:
    return bessel_i1(theta) / bessel_i0(theta)
