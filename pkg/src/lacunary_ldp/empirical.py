"""Finite-n integrals over [0, 1] on an exact dyadic grid.

S_n(w) = sum_{k<=n} cos(2 pi a_k w) is sampled at w_i = i/M.  The phase of
each term is reduced exactly: (a_k i) mod M = ((a_k mod M) i) mod M, where
a_k mod M is taken with Python integers, so frequencies of any size are
handled without precision loss.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from ._config import work_bound
from .errors import AccuracyError, InvalidArgument, NumericError, ResourceLimitError
from .moments import taylor_poly_cos_coeffs
from .sequences import LacunarySequence, custom

log = logging.getLogger(__name__)

MIN_GRID_LOG2 = 16
CHUNK = 1 << 18
MGF_RTOL = 1e-6
LEVEL_RTOL = 1e-2
_EXP_CAP = 700.0


class GridEstimate(float):
    """A float carrying the grid size it was computed on and the doubling delta."""

    def __new__(cls, value, M, delta, escalated=False):
        obj = super().__new__(cls, value)
        obj.M = M
        obj.delta = delta
        obj.escalated = escalated
        return obj

    def __repr__(self):
        return f"GridEstimate({float(self)!r}, M={self.M}, delta={self.delta:.3g})"


def _check_grid(M):
    if not isinstance(M, int) or M < (1 << MIN_GRID_LOG2) or M & (M - 1):
        raise InvalidArgument(f"grid size must be a power of two >= 2^{MIN_GRID_LOG2}, got {M}")


def _check_prefix(seq, n):
    if not isinstance(n, int) or n < 0 or n > len(seq):
        raise InvalidArgument(f"prefix length {n} not in [0, {len(seq)}]")


@dataclass(frozen=True)
class FoldedEvaluation:
    """S_n on the grid i/M together with the exact residues a_k mod M."""

    M: int
    residues: tuple[int, ...]
    values: np.ndarray

    def residue(self, k: int, i: int) -> int:
        """(a_k * i) mod M for 0-based k, as used by the kernels."""
        return (self.residues[k] * i) & (self.M - 1)


def folded_evaluation(seq: LacunarySequence, n: int, M: int) -> FoldedEvaluation:
    _check_grid(M)
    _check_prefix(seq, n)
    residues = tuple(a % M for a in seq.terms[:n])
    S = np.zeros(M)
    for r in residues:
        kernels.add_folded_cos(S, r, M, 0)
    return FoldedEvaluation(M, residues, S)


def _grid_pass(residues: Sequence[int], M: int, ns: Sequence[int], theta=None,
               levels=None, threads: int = 1):
    """Per-n grid totals for the prefix lengths ``ns``.

    Returns (exp_sums, shifts, counts): exp_sums[n] = sum_i exp(theta S_n(i) - shift_n)
    and counts[n] = #{i : S_n(i) >= levels[n]}.  Chunks are reduced in index
    order, so the result does not depend on ``threads``.
    """
    want = sorted(set(ns))
    n_max = want[-1] if want else 0
    shifts = {n: max(0.0, abs(theta) * n - _EXP_CAP) for n in want} if theta is not None else {}

    def run(start):
        size = min(CHUNK, M - start)
        S = np.zeros(size)
        exps, cnts = {}, {}
        if 0 in shifts:
            exps[0] = float(size)
        if levels is not None and 0 in levels:
            cnts[0] = kernels.count_at_least(S, levels[0])
        for k in range(n_max):
            kernels.add_folded_cos(S, residues[k], M, start)
            n = k + 1
            if n in shifts:
                exps[n] = kernels.exp_sum(S, theta, shifts[n])
            if levels is not None and n in levels:
                cnts[n] = kernels.count_at_least(S, levels[n])
        return exps, cnts

    starts = range(0, M, CHUNK)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(s) for s in starts]
    exp_sums = {n: math.fsum(p[0][n] for p in parts) for n in shifts}
    counts = {n: sum(p[1][n] for p in parts) for n in (levels or {})}
    return exp_sums, shifts, counts


def _log_mgfs(seq, ns, theta, M, threads):
    residues = [a % M for a in seq.terms[:max(ns)]]
    sums, shifts, _ = _grid_pass(residues, M, ns, theta=theta, threads=threads)
    out = {}
    for n in ns:
        if not (sums[n] > 0 and math.isfinite(sums[n])):
            raise NumericError(f"grid mgf sum is {sums[n]} at n={n}")
        out[n] = math.log(sums[n] / M) + shifts[n]
    return out


def _doubled(compute, M, close, what):
    """Evaluate at M and 2M; escalate once to 4M if ``close`` fails."""
    a, b = compute(M), compute(2 * M)
    if close(a, b, 2 * M):
        return b, 2 * M, a, False
    c = compute(4 * M)
    if not close(b, c, 4 * M):
        raise AccuracyError(f"{what}: grid doubling disagrees at M={2 * M} and {4 * M}",
                            values=(a, b, c))
    log.warning("%s: escalated to M=%d", what, 4 * M)
    return c, 4 * M, b, True


def log_mgf_grid(seq: LacunarySequence, n: int, theta: float, M: int = 1 << 20,
                 threads: int = 1) -> dict:
    """log of the grid mgf for each prefix length 0..n at sizes M and 2M (escalating once).

    Returns {n: GridEstimate} where each value is the log mgf at the finest
    grid used and ``delta`` the relative mgf change on the last doubling.
    """
    _check_grid(M)
    _check_prefix(seq, n)
    if not math.isfinite(theta):
        raise NumericError("theta must be finite")
    ns = list(range(n + 1))
    if theta == 0 or n == 0:
        return {k: GridEstimate(0.0, M, 0.0) for k in ns}

    def rel(x, y):
        return max(abs(math.expm1(y[k] - x[k])) for k in ns)

    fine, size, coarse, esc = _doubled(lambda m: _log_mgfs(seq, ns, theta, m, threads), M,
                                       lambda x, y, _: rel(x, y) <= MGF_RTOL, "mgf_grid")
    delta = rel(coarse, fine)
    return {k: GridEstimate(fine[k], size, delta, esc) for k in ns}


def mgf_grid(seq: LacunarySequence, n: int, theta: float, M: int = 1 << 20,
             threads: int = 1) -> GridEstimate:
    """(1/M) sum_i exp(theta S_n(i/M)), checked against the doubled grid to 1e-6 relative."""
    _check_grid(M)
    _check_prefix(seq, n)
    if theta == 0 or n == 0:
        return GridEstimate(1.0, M, 0.0)
    est = log_mgf_grid(seq, n, theta, M, threads)[n]
    return GridEstimate(math.exp(est), est.M, est.delta, est.escalated)


def ldp_increment(seq: LacunarySequence, theta: float, n_max: int, M: int = 1 << 20,
                  threads: int = 1) -> list[GridEstimate]:
    """Delta_n = log mgf(n+1) - log mgf(n) for n = 1..n_max."""
    if n_max < 1 or n_max + 1 > len(seq):
        raise InvalidArgument(f"need 1 <= n_max and n_max + 1 <= {len(seq)}")
    logs = log_mgf_grid(seq, n_max + 1, theta, M, threads)
    return [GridEstimate(logs[k + 1] - logs[k], logs[k].M, logs[k].delta, logs[k].escalated)
            for k in range(1, n_max + 1)]


def _levels(ns, x):
    return {n: n * x for n in ns}


def _level_probs(seq, ns, x, M, threads):
    residues = [a % M for a in seq.terms[:max(ns)]]
    _, _, counts = _grid_pass(residues, M, ns, levels=_levels(ns, x), threads=threads)
    return {n: counts[n] / M for n in ns}


def _level_close(a, b, M):
    # a grid level set moves by O(boundary points / M); 4/M covers tiny sets
    return all(abs(a[n] - b[n]) <= max(LEVEL_RTOL * b[n], 4.0 / M) for n in a)


def levelset_probs(seq: LacunarySequence, ns: Sequence[int], x: float, M: int = 1 << 20,
                   threads: int = 1) -> dict:
    _check_grid(M)
    if not math.isfinite(x) or not -1 <= x <= 1:
        raise InvalidArgument("level x must lie in [-1, 1]")
    ns = sorted(set(ns))
    for n in ns:
        _check_prefix(seq, n)
    fine, size, coarse, esc = _doubled(lambda m: _level_probs(seq, ns, x, m, threads), M,
                                       _level_close, "levelset_prob")
    return {n: GridEstimate(fine[n], size, abs(fine[n] - coarse[n]), esc) for n in ns}


def levelset_prob(seq: LacunarySequence, n: int, x: float, M: int = 1 << 20,
                  threads: int = 1) -> GridEstimate:
    """Fraction of grid points with S_n >= n x."""
    return levelset_probs(seq, [n], x, M, threads)[n]


def sublacunary_demo(n_max: int, z: float, M: int = 1 << 16, threads: int = 1) -> list[float]:
    """-(1/n) log P(S_n >= z n) for a_k = k, n = 1..n_max."""
    if not 0 < z < 1:
        raise InvalidArgument("z must lie in (0, 1)")
    if n_max < 1:
        raise InvalidArgument("n_max must be >= 1")
    probs = levelset_probs(custom(range(1, n_max + 1)), range(1, n_max + 1), z, M, threads)
    return [(-math.log(probs[n]) / n) if probs[n] > 0 else math.inf for n in range(1, n_max + 1)]


# -- exact integral of a product of Taylor polynomials ----------------------

def _half_table(freqs, weights):
    """{total frequency: summed weight} over all choices of signed multiples."""
    table = {0: Fraction(1)}
    for a in freqs:
        nxt: dict[int, Fraction] = {}
        for f, w in table.items():
            for j, c in weights:
                key = f + j * a
                nxt[key] = nxt.get(key, 0) + w * c
        table = nxt
    return table


def poly_cos_weights(theta, d: int) -> list[tuple[int, Fraction]]:
    """(j, c_j) for p_d(theta cos x) = sum_{|j|<=d} c_j e^{ijx}: c_0 = b_0, c_{+-j} = b_j/2."""
    b = [series(theta) for series in taylor_poly_cos_coeffs(d)]
    out = [(0, b[0])]
    for j in range(1, d + 1):
        out += [(j, b[j] / 2), (-j, b[j] / 2)]
    return out


def mgf_poly_exact(seq: LacunarySequence, n: int, theta, d: int, bound: int | None = None):
    """integral_0^1 prod_{k<=n} p_d(theta cos 2 pi a_k w) dw, exactly.

    p_d is the degree-d Taylor polynomial of exp.  Expanding the product gives
    a sum over frequency vectors (j_1..j_n), |j_k| <= d, of prod c_{j_k}; only
    vectors with sum j_k a_k = 0 survive integration.  These are found by
    meet in the middle: tables of partial frequency sums for the first
    ceil(n/2) and the remaining terms are joined on opposite totals.  Integer
    or Fraction theta gives a Fraction; float theta gives a float.
    """
    _check_prefix(seq, n)
    if not isinstance(d, int) or d < 0:
        raise InvalidArgument("degree d must be a non-negative integer")
    exact = isinstance(theta, (int, Fraction))
    if not exact:
        if not math.isfinite(theta):
            raise NumericError("theta must be finite")
        theta = Fraction(theta)
    half = (n + 1) // 2
    required = (2 * d + 1) ** half + (2 * d + 1) ** (n - half)
    limit = work_bound(bound)
    if required > limit:
        raise ResourceLimitError(
            f"meet-in-the-middle needs {required} table entries, work bound is {limit}",
            limit, required)
    weights = [(j, c) for j, c in poly_cos_weights(theta, d) if c]
    terms = seq.terms[:n]
    left = _half_table(terms[:half], weights)
    right = _half_table(terms[half:], weights)
    total = Fraction(0)
    for f in sorted(left):
        w = right.get(-f)
        if w:
            total += left[f] * w
    return total if exact else float(total)


def taylor_error_eps(theta: float, d: int) -> float:
    """Uniform relative error of p_d against exp on [-|theta|, |theta|]."""
    t = abs(float(theta))
    return math.exp(t) * t ** (d + 1) / math.factorial(d + 1)
