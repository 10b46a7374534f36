"""Exact moments and cumulants of S_n, and Taylor data at theta = 0.

E[S_n^m] = A_m(n)/2^m for a_k = q^k, and the independent arcsine analogue is
B_m(n)/2^m.  The cumulants kappa_m(S_n) are affine in n from n = m - 2 on, and
their slopes are the Taylor coefficients of the limiting log-mgf Lambda_q.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import comb, factorial

from .diophantine import bridge_count, count_geometric_dp
from .errors import InternalConsistencyError, InvalidArgument
from .series import PowerSeries


@lru_cache(maxsize=4096)
def moment(q: int, m: int, n: int) -> Fraction:
    """E[S_n^m] for a_k = q^k."""
    return Fraction(count_geometric_dp(q, m, n), 2 ** m)


def independent_moment(m: int, n: int) -> Fraction:
    """E[(X~_1 + ... + X~_n)^m] for i.i.d. arcsine summands."""
    return Fraction(bridge_count(m, n), 2 ** m)


def arcsine_moment(m: int) -> Fraction:
    """E[cos(2 pi U)^m] = binom(2j, j)/4^j for m = 2j, 0 for odd m."""
    if m < 0:
        raise InvalidArgument("moment order must be >= 0")
    if m % 2:
        return Fraction(0)
    j = m // 2
    return Fraction(comb(2 * j, j), 4 ** j)


def moments_to_cumulants(moments) -> list[Fraction]:
    """Cumulants kappa_1..kappa_m from raw moments mu_1..mu_m.

    kappa_m = mu_m - sum_{j=1}^{m-1} binom(m-1, j-1) kappa_j mu_{m-j}.
    """
    mus = [Fraction(x) for x in moments]
    if not mus:
        raise InvalidArgument("need at least one moment")
    kappas: list[Fraction] = []
    for m in range(1, len(mus) + 1):
        k = mus[m - 1]
        for j in range(1, m):
            k -= comb(m - 1, j - 1) * kappas[j - 1] * mus[m - j - 1]
        kappas.append(k)
    return kappas


def cumulant(q: int, m: int, n: int) -> Fraction:
    return moments_to_cumulants([moment(q, j, n) for j in range(1, m + 1)])[-1]


@dataclass(frozen=True)
class CumulantAffine:
    """kappa_m(S_n) = slope * n + intercept for n >= valid_from."""

    q: int
    m: int
    slope: Fraction
    intercept: Fraction
    valid_from: int

    def __call__(self, n):
        return self.slope * n + self.intercept

    def per_factorial(self) -> tuple[Fraction, Fraction]:
        f = factorial(self.m)
        return self.slope / f, self.intercept / f


def cumulant_affine(q: int, m: int) -> CumulantAffine:
    """Fit kappa_m(S_n) at n = v + 2, v + 5 and confirm at v + 9, v = max(m - 2, 1)."""
    if m < 1:
        raise InvalidArgument("cumulant order must be >= 1")
    v = max(m - 2, 1)
    n1, n2, n3 = v + 2, v + 5, v + 9
    k1, k2, k3 = (cumulant(q, m, n) for n in (n1, n2, n3))
    slope = (k2 - k1) / (n2 - n1)
    intercept = k1 - slope * n1
    if slope * n3 + intercept != k3:
        raise InternalConsistencyError(
            f"kappa_{m}(S_n) is not affine for q={q}: predicted {slope * n3 + intercept}, got {k3}")
    return CumulantAffine(q, m, slope, intercept, v)


def lambda_taylor(q: int, order: int) -> PowerSeries:
    """Taylor polynomial of Lambda_q at 0: coefficient of theta^m is slope(kappa_m)/m!."""
    if order < 2:
        raise InvalidArgument("order must be >= 2")
    coeffs = [Fraction(0), Fraction(0)]
    for m in range(2, order + 1):
        coeffs.append(cumulant_affine(q, m).slope / factorial(m))
    return PowerSeries(coeffs)


def bessel_i0_series(order: int) -> PowerSeries:
    """sum_m theta^{2m} / (4^m (m!)^2), truncated at theta^order."""
    return PowerSeries([Fraction(1, 4 ** (k // 2) * factorial(k // 2) ** 2) if k % 2 == 0 else 0
                        for k in range(order + 1)])


def tilde_lambda_taylor(order: int) -> PowerSeries:
    """Taylor polynomial of log I_0(theta), the arcsine log-mgf."""
    if order < 2:
        raise InvalidArgument("order must be >= 2")
    return bessel_i0_series(order).log()


def cos_power_expand(m: int) -> list[Fraction]:
    """Coefficients c_0..c_m with cos(x)^m = sum_j c_j cos(j x)."""
    if m < 0:
        raise InvalidArgument("power must be >= 0")
    out = [Fraction(0)] * (m + 1)
    for k in range(m + 1):
        j = abs(m - 2 * k)
        out[j] += Fraction(comb(m, k), 2 ** m)
    return out


def taylor_poly_cos_coeffs(d: int) -> list[PowerSeries]:
    """b_0..b_d as polynomials in theta with p_d(theta cos x) = sum_j b_j(theta) cos(jx).

    p_d is the degree-d Taylor polynomial of exp.
    """
    if d < 0:
        raise InvalidArgument("degree must be >= 0")
    b = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]
    for m in range(d + 1):
        inv_fact = Fraction(1, factorial(m))
        for j, c in enumerate(cos_power_expand(m)):
            if c:
                b[j][m] += c * inv_fact
    return [PowerSeries(row) for row in b]
