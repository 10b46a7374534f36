"""Truncated formal power series with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import InvalidArgument


class PowerSeries:
    """c_0 + c_1 x + ... + c_N x^N + O(x^{N+1}).

    Arithmetic truncates to the smaller order of the operands.  Coefficients
    are stored as :class:`~fractions.Fraction`.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        if not cs:
            raise InvalidArgument("a power series needs at least one coefficient")
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PowerSeries({[str(c) for c in self.coeffs]})"

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise InvalidArgument(f"cannot extend a series of order {self.order} to {order}")
        return PowerSeries(self.coeffs[: order + 1])

    def __add__(self, other):
        other = _coerce(other, self.order)
        n = min(self.order, other.order)
        return PowerSeries(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other, self.order))

    def __rsub__(self, other):
        return _coerce(other, self.order) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries(c * other for c in self.coeffs)
        other = _coerce(other, self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if not a:
                continue
            for j, b in enumerate(other.coeffs[: n + 1 - i]):
                out[i + j] += a * b
        return PowerSeries(out)

    __rmul__ = __mul__

    def derivative(self) -> "PowerSeries":
        if self.order == 0:
            return PowerSeries([0])
        return PowerSeries(i * c for i, c in enumerate(self.coeffs) if i)

    def integral(self) -> "PowerSeries":
        return PowerSeries([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def reciprocal(self) -> "PowerSeries":
        if self.coeffs[0] == 0:
            raise InvalidArgument("series with zero constant term has no reciprocal")
        n = self.order
        inv = [Fraction(0)] * (n + 1)
        inv[0] = 1 / self.coeffs[0]
        for k in range(1, n + 1):
            acc = sum((self.coeffs[j] * inv[k - j] for j in range(1, k + 1)), Fraction(0))
            inv[k] = -acc * inv[0]
        return PowerSeries(inv)

    def log(self) -> "PowerSeries":
        """log of a series with constant term 1, via log f = integral f'/f."""
        if self.coeffs[0] != 1:
            raise InvalidArgument("formal log needs constant term 1")
        return (self.derivative() * self.reciprocal().truncate(self.order - 1)).integral() \
            if self.order else PowerSeries([0])

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self(inner(x)); ``inner`` must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise InvalidArgument("inner series must vanish at 0")
        n = inner.order
        acc = PowerSeries([self.coeffs[-1]], order=n)
        for c in reversed(self.coeffs[:-1]):
            acc = acc * inner + PowerSeries([c], order=n)
        return acc

    def reversion(self) -> "PowerSeries":
        """Compositional inverse g with self(g(x)) = x, for c_0 = 0 != c_1.

        Coefficients are fixed one order at a time: with g known through x^{k-1},
        the x^k coefficient of self(g) is linear in g_k with slope c_1.
        """
        if self.coeffs[0] != 0 or self.order < 1 or self.coeffs[1] == 0:
            raise InvalidArgument("reversion needs c_0 = 0 and c_1 != 0")
        n = self.order
        c1 = self.coeffs[1]
        g = [Fraction(0), 1 / c1] + [Fraction(0)] * (n - 1)
        for k in range(2, n + 1):
            err = self.compose(PowerSeries(g[: k + 1])).coeffs[k]
            g[k] = -err / c1
        return PowerSeries(g)

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, Fraction) or isinstance(x, int) else float(c))
        return acc

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def _coerce(other, order) -> PowerSeries:
    if isinstance(other, PowerSeries):
        return other
    if isinstance(other, (int, Fraction)):
        return PowerSeries([other], order=order)
    raise TypeError(f"cannot combine PowerSeries with {type(other).__name__}")
