"""Rate functions: numeric Legendre-Fenchel transforms and exact Taylor series.

I(x) = sup_theta [theta x - Lambda(theta)].  Numerically the supremum is found
by solving Lambda'(theta) = x with bisection; formally, I' is the inverse
function of Lambda', so the Taylor series of I follows from a series reversion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import InvalidArgument, InvariantViolation, NumericError
from .series import PowerSeries
from .spectral import DEFAULT_GRID, leading_eigen, lambda_spec, lambda_tilde, lambda_tilde_prime

THETA_MAX = 64.0
DIFF_STEP = 1e-5
THETA_TOL = 1e-8


class _PlusInfinity:
    """Marker for I(x) = +inf outside [-1, 1]; deliberately not a float."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "PLUS_INFINITY"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_PlusInfinity, ())


PLUS_INFINITY = _PlusInfinity()


def is_infinite(value) -> bool:
    return value is PLUS_INFINITY


@dataclass(frozen=True)
class LegendreResult:
    value: float
    theta: float
    lower_bound: bool = False  # True when the theta bracket hit THETA_MAX

    def __iter__(self):
        return iter((self.value, self.theta))


def _central_diff(fn, h):
    return lambda t: (fn(t + h) - fn(t - h)) / (2 * h)


def legendre_numeric(lambda_fn: Callable[[float], float], x: float,
                     derivative: Callable[[float], float] | None = None,
                     theta_max: float = THETA_MAX, h: float = DIFF_STEP,
                     theta_tol: float = THETA_TOL) -> LegendreResult:
    """sup_theta [theta x - Lambda(theta)] for convex Lambda with Lambda(0) = Lambda'(0) = 0.

    Solves Lambda'(theta) = x by bisection on a bracket that doubles from
    [0, +-1] up to |theta| = theta_max.  Lambda' is a central difference with
    step ``h`` unless ``derivative`` is given.  If the cap is reached the value
    at the cap is returned with ``lower_bound=True``.
    """
    if not math.isfinite(x):
        raise NumericError("x must be finite")
    if abs(x) >= 1:
        raise InvalidArgument("legendre_numeric needs |x| < 1")
    if x == 0:
        return LegendreResult(0.0, 0.0)
    dfn = derivative or _central_diff(lambda_fn, h)
    sign = 1.0 if x > 0 else -1.0

    def slope(t):
        v = dfn(sign * t)
        if not math.isfinite(v):
            raise NumericError(f"non-finite derivative at theta={sign * t}")
        return sign * v  # increasing in t for convex Lambda

    target = abs(x)
    lo, hi = 0.0, 1.0
    while slope(hi) < target:
        lo = hi
        if hi >= theta_max:
            theta = sign * theta_max
            return LegendreResult(theta * x - lambda_fn(theta), theta, lower_bound=True)
        hi = min(2 * hi, theta_max)
    while hi - lo > theta_tol:
        mid = 0.5 * (lo + hi)
        if slope(mid) < target:
            lo = mid
        else:
            hi = mid
    theta = sign * 0.5 * (lo + hi)
    value = theta * x - lambda_fn(theta)
    if not math.isfinite(value):
        raise NumericError(f"non-finite Legendre value at theta={theta}")
    return LegendreResult(value, theta)


def rate_taylor(lambda_series: PowerSeries) -> PowerSeries:
    """Taylor series of I from that of Lambda, exactly.

    theta(x) is the reversion of Lambda'(theta); then
    I(x) = x theta(x) - Lambda(theta(x)).  With Lambda known through theta^N
    the result is exact through x^N.
    """
    c = lambda_series.coeffs
    if len(c) < 3 or c[0] != 0 or c[1] != 0:
        raise InvalidArgument("Lambda series needs c_0 = c_1 = 0 and order >= 2")
    if c[2] <= 0:
        raise InvalidArgument("Lambda series needs a positive theta^2 coefficient")
    n = lambda_series.order
    theta_of_x = lambda_series.derivative().reversion()
    # the unknown x^N coefficient of theta(x) only reaches x^{N+1} below
    padded = PowerSeries(theta_of_x.coeffs, order=n)
    x = PowerSeries([0, 1], order=n)
    return x * padded - lambda_series.compose(padded)


# -- numeric rate functions ------------------------------------------------

def _out_of_support(x):
    if not math.isfinite(x):
        raise NumericError("x must be finite")
    return abs(x) > 1


def rate_tilde(x: float) -> LegendreResult | _PlusInfinity:
    """I~(x) for i.i.d. arcsine summands; +inf sentinel outside [-1, 1]."""
    if _out_of_support(x):
        return PLUS_INFINITY
    if abs(x) == 1:
        return PLUS_INFINITY
    return legendre_numeric(lambda_tilde, x, derivative=lambda_tilde_prime)


def spectral_lambda_fn(q: int, M: int = DEFAULT_GRID, tol: float = 1e-12):
    """Lambda_q on one fixed grid, warm-starting each solve from the previous one.

    A single grid keeps central differences free of grid switches; the state
    is local to the returned closure, so separate closures never interact.
    """
    state = {}

    def fn(theta):
        if theta == 0:
            return 0.0
        res = leading_eigen(theta, q, M, tol, start=state.get("g"))
        state["g"] = res.eigenfunction
        return res.log_lambda

    return fn


def rate_q(q: int, x: float, M: int = DEFAULT_GRID) -> LegendreResult | _PlusInfinity:
    """I_q(x); +inf sentinel for |x| > 1.

    The root search runs on one grid of size M; the value is stationary in
    theta, so the optimiser is then re-evaluated once with the grid-doubling
    check of :func:`lambda_spec`.
    """
    if q < 2:
        raise InvalidArgument("q must be >= 2")
    if _out_of_support(x):
        return PLUS_INFINITY
    fn = spectral_lambda_fn(q, M)
    if abs(x) == 1:
        # the optimiser sits at theta = +-inf; report the cap value
        theta = math.copysign(THETA_MAX, x)
        return LegendreResult(theta * x - fn(theta), theta, lower_bound=True)
    res = legendre_numeric(fn, x)
    if res.theta != 0:
        checked = lambda_spec(res.theta, q, M)
        return LegendreResult(res.theta * x - checked, res.theta, res.lower_bound)
    return res


def rate_at_one_bound(q: int, eps: Sequence[float] = (0.05, 0.02, 0.01)) -> float:
    """Check I_q(1 - eps) <= log q + 0.05 for each eps; return the last value."""
    bound = math.log(q) + 0.05
    value = math.nan
    for e in eps:
        res = rate_q(q, 1 - e)
        value = res.value
        if value > bound:
            raise InvariantViolation(
                f"I_{q}(1-{e}) = {value:.6f} exceeds log q + 0.05 = {bound:.6f}")
    return value


# -- curves -----------------------------------------------------------------

@dataclass(frozen=True)
class RateSample:
    x: float
    value: float | _PlusInfinity
    theta: float | None
    lower_bound: bool = False


@dataclass(frozen=True)
class RateCurve:
    label: str
    samples: tuple[RateSample, ...] = field(default_factory=tuple)

    def xs(self):
        return [s.x for s in self.samples]

    def values(self):
        return [s.value for s in self.samples]


def _sample(fn, x) -> RateSample:
    res = fn(x)
    if is_infinite(res):
        return RateSample(x, PLUS_INFINITY, None)
    return RateSample(x, res.value, res.theta, res.lower_bound)


def rate_curve(label: str, fn, xs: Sequence[float], threads: int = 1) -> RateCurve:
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(threads) as pool:
            samples = list(pool.map(lambda x: _sample(fn, x), xs))
    else:
        samples = [_sample(fn, x) for x in xs]
    return RateCurve(label, tuple(samples))


FIGURE1_SERIES = (
    ("I_tilde", None, "#2ca02c"),   # green
    ("I_2", 2, "#1f77b4"),          # blue
    ("I_3", 3, "#d62728"),          # red
    ("I_4", 4, "#ff7f0e"),          # orange
)


def figure1_curves(xs: Sequence[float], threads: int = 1) -> tuple[RateCurve, ...]:
    """Sample I~, I_2, I_3, I_4 on ``xs`` (all inside (-1, 1))."""
    for x in xs:
        if not -1 < x < 1:
            raise InvalidArgument(f"figure grid point {x} outside (-1, 1)")
    curves = []
    for label, q, _ in FIGURE1_SERIES:
        fn = rate_tilde if q is None else (lambda x, q=q: rate_q(q, x))
        curves.append(rate_curve(label, fn, xs, threads))
    return tuple(curves)


def exact_rate_value(series: PowerSeries, x) -> Fraction | float:
    return series(x)
