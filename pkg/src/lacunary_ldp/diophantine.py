"""Exact counts of signed representations of zero.

A_m(n) is the number of ordered tuples (k_1..k_m, e_1..e_m) with
k_i in {1..n}, e_i = +-1 and sum e_i q^{k_i} = 0; B_m(n) counts m-step closed
nearest-neighbour walks in Z^n.  Three engines compute A_m(n):

* :func:`count_signed_zero_sums` enumerates multisets of signed terms (any
  integer sequence, toy scale);
* :func:`count_laurent` extracts the constant term of a Laurent polynomial
  power (mid scale);
* :func:`count_geometric_dp` runs a carry DP over base-q digit positions
  (authoritative, polynomial in m*n).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, factorial

from ._config import work_bound
from .errors import InternalConsistencyError, InvalidArgument, ResourceLimitError
from .sequences import LacunarySequence, geometric


def _check_positive(**kw):
    for name, val in kw.items():
        if not isinstance(val, int) or val < 1:
            raise InvalidArgument(f"{name} must be a positive integer, got {val!r}")


def _multinomial_weight(counts) -> int:
    total = 0
    weight = 1
    for c in counts:
        total += c
        weight *= comb(total, c)
    return weight


# -- engine 1: multiset enumeration ----------------------------------------

def count_signed_zero_sums(seq: LacunarySequence, m: int, bound: int | None = None) -> int:
    """Number of ordered (k_i, e_i), i = 1..m, with sum e_i a_{k_i} = 0.

    Enumerates multisets of signed terms and weights each zero-sum multiset by
    its number of orderings.
    """
    _check_positive(m=m)
    values = [a for a in seq.terms] + [-a for a in seq.terms]
    size = comb(len(values) + m - 1, m)
    limit = work_bound(bound)
    if size > limit:
        raise ResourceLimitError(
            f"multiset enumeration needs {size} steps, work bound is {limit}", limit, size)
    total = 0
    for combo in combinations_with_replacement(range(len(values)), m):
        if sum(values[i] for i in combo) == 0:
            total += _multinomial_weight(Counter(combo).values())
    return total


# -- engine 2: Laurent polynomial constant term ----------------------------

def _laurent_power(base: Counter, power: int, limit: int) -> Counter:
    result = Counter({0: 1})
    for _ in range(power):
        nxt: Counter = Counter()
        for e1, c1 in result.items():
            for e2, c2 in base.items():
                nxt[e1 + e2] += c1 * c2
        result = nxt
        if len(result) * len(base) > limit:
            raise ResourceLimitError(
                f"Laurent expansion exceeds work bound {limit}", limit, len(result) * len(base))
    return result


def constant_term_of_power(exponents, m: int, bound: int | None = None) -> int:
    """Coefficient of x^0 in (sum_e x^e)^m for a multiset of integer exponents.

    The power is split as P^a * P^b with a = ceil(m/2); only the constant term
    of the product is formed.
    """
    limit = work_bound(bound)
    base = Counter(exponents)
    a = (m + 1) // 2
    left = _laurent_power(base, a, limit)
    right = left if m - a == a else _laurent_power(base, m - a, limit)
    return sum(c * right.get(-e, 0) for e, c in left.items())


def count_laurent(q: int, m: int, n: int, bound: int | None = None) -> int:
    """A_m(n) as the constant term of (sum_{k<=n} x^{q^k} + x^{-q^k})^m."""
    _check_positive(m=m, n=n)
    if q < 2:
        raise InvalidArgument("q must be >= 2")
    exps = [q ** k for k in range(1, n + 1)]
    return constant_term_of_power(exps + [-e for e in exps], m, bound)


# -- engine 3: carry DP -----------------------------------------------------

def carry_bound(q: int, m: int) -> int:
    return -(-m // (q - 1)) + 1


def count_geometric_dp(q: int, m: int, n: int) -> int:
    """A_m(n) by dynamic programming over base-q digit positions.

    Positions k = 1..n are processed from the least significant.  At each
    position p plus-terms and r minus-terms are placed; with incoming carry c
    the digit p - r + c must vanish mod q, and (p - r + c)/q is carried on.
    The state is (carry, number of terms placed so far); ordered tuples are
    counted by multiplying in binom(j+p+r, p+r) * binom(p+r, p) as terms are
    placed, which telescopes to m!/prod(p_k! r_k!).
    """
    _check_positive(m=m, n=n)
    if q < 2:
        raise InvalidArgument("q must be >= 2")
    cmax = carry_bound(q, m)
    # state: (carry, used) -> count
    states = {(0, 0): 1}
    for _ in range(n):
        nxt: dict[tuple[int, int], int] = {}
        for (c, used), cnt in states.items():
            room = m - used
            for p in range(room + 1):
                for r in range(room - p + 1):
                    digit = p - r + c
                    if digit % q:
                        continue
                    nc = digit // q
                    if abs(nc) > cmax:
                        raise InternalConsistencyError(
                            f"carry {nc} left the bound {cmax} (q={q}, m={m})")
                    w = cnt * comb(used + p + r, p + r) * comb(p + r, p)
                    key = (nc, used + p + r)
                    nxt[key] = nxt.get(key, 0) + w
        states = nxt
    return states.get((0, m), 0)


def bridge_count(m: int, n: int) -> int:
    """Closed m-step nearest-neighbour walks in Z^n.

    Zero for odd m; otherwise the sum over (p_1..p_n) with sum p_i = m/2 of
    m!/prod (p_i!)^2, accumulated dimension by dimension.
    """
    _check_positive(m=m, n=n)
    if m % 2:
        return 0
    half = m // 2
    # ways[j] = ordered arrangements of 2j steps spread over the dimensions so far
    ways = [1] + [0] * half
    for _ in range(n):
        nxt = [0] * (half + 1)
        for j, w in enumerate(ways):
            if not w:
                continue
            for p in range(half - j + 1):
                nxt[j + p] += w * comb(2 * (j + p), 2 * p) * comb(2 * p, p)
        ways = nxt
    return ways[half]


# -- closed forms -----------------------------------------------------------

@dataclass(frozen=True)
class AmPolynomial:
    """A_m(n) = sum coefficients[i] n^i for all n >= valid_from."""

    q: int
    m: int
    coefficients: tuple[Fraction, ...]
    valid_from: int

    @property
    def degree(self) -> int:
        for i in range(len(self.coefficients) - 1, -1, -1):
            if self.coefficients[i]:
                return i
        return 0

    def __call__(self, n) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * n + c
        return acc

    def to_dict(self) -> dict:
        return {"q": self.q, "m": self.m, "valid_from": self.valid_from,
                "coefficients": [str(c) for c in self.coefficients]}


def lagrange_coefficients(xs, ys) -> list[Fraction]:
    """Ascending coefficients of the interpolating polynomial through (xs, ys)."""
    k = len(xs)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            # multiply basis by (n - xj)
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for t in range(k):
            coeffs[t] += scale * basis[t]
    return coeffs


def am_polynomial(q: int, m: int, counter=None) -> AmPolynomial:
    """Closed-form polynomial for A_m(n), valid for n >= max(m - 2, 1).

    Samples floor(m/2) + 1 consecutive values, interpolates exactly, and checks
    two further points before returning.
    """
    _check_positive(m=m)
    counter = counter or count_geometric_dp
    start = max(m - 2, 1)
    deg = m // 2
    xs = list(range(start, start + deg + 1))
    coeffs = lagrange_coefficients(xs, [counter(q, m, x) for x in xs])
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    poly = AmPolynomial(q, m, tuple(coeffs), start)
    for x in (start + deg + 1, start + deg + 3):
        got = counter(q, m, x)
        if poly(x) != got:
            raise InternalConsistencyError(
                f"A_{m}(n) interpolant disagrees at n={x}: {poly(x)} != {got}")
    return poly


def recurrence_am(q: int, m: int, p1: int, p2: int, n: int) -> int:
    """A_{m,p1,p2}(n): solutions whose first p1 terms are +q, next p2 are -q,
    and whose remaining terms use exponents 2..n only.

    Evaluated by the three-case reduction to n - 1 (cancel equal +-q terms;
    otherwise group the surplus into q-blocks, which requires q | |p1 - p2|).
    """
    if q < 2:
        raise InvalidArgument("q must be >= 2")
    if min(m, p1, p2) < 0 or p1 + p2 > m or n < 0:
        raise InvalidArgument(f"invalid (m, p1, p2, n) = {(m, p1, p2, n)}")
    return _rec_partial(q, m, p1, p2, n)


def recurrence_total(q: int, m: int, n: int) -> int:
    """A_m(n) reassembled from the partial counts A_{m,p1,p2}(n)."""
    return _rec_total(q, m, n)


@lru_cache(maxsize=None)
def _rec_total(q, m, n):
    if m == 0:
        return 1
    if n <= 0:
        return 0
    total = 0
    for p1 in range(m + 1):
        for p2 in range(m - p1 + 1):
            total += comb(m, p1 + p2) * comb(p1 + p2, p1) * _rec_partial(q, m, p1, p2, n)
    return total


@lru_cache(maxsize=None)
def _rec_partial(q, m, p1, p2, n):
    if n <= 0:
        return 1 if m == 0 else 0
    rest = m - p1 - p2
    if p1 == p2:
        return _rec_total(q, rest, n - 1)
    diff = abs(p1 - p2)
    if diff % q:
        return 0
    s = diff // q
    total = 0
    for r1 in range(rest + 1):
        for r2 in range(rest - r1 + 1):
            w = comb(rest, r1 + r2) * comb(r1 + r2, r1)
            if p1 > p2:
                total += w * _rec_partial(q, s + rest, s + r1, r2, n - 1)
            else:
                total += w * _rec_partial(q, s + rest, r1, s + r2, n - 1)
    return total


def relation_count(seq: LacunarySequence, m: int, d: int, bound: int | None = None) -> int:
    """Ordered (k_i, j_i, s_i), i = 1..m, with sum s_i j_i a_{k_i} = 0, j_i in 1..d."""
    if m < 2 or d < 1:
        raise InvalidArgument("relation_count needs m >= 2 and d >= 1")
    vals = [s * j * a for a in seq.terms for j in range(1, d + 1) for s in (1, -1)]
    return constant_term_of_power(vals, m, bound)


def brute_force_count(q: int, m: int, n: int, bound: int | None = None) -> int:
    return count_signed_zero_sums(geometric(q, n), m, bound)
