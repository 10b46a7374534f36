import math
import pickle
from fractions import Fraction

import numpy as np
import pytest

from lacunary_ldp.errors import InvalidArgument, InvariantViolation, NumericError
from lacunary_ldp.moments import lambda_taylor, tilde_lambda_taylor
from lacunary_ldp.ratefn import (PLUS_INFINITY, RateCurve, figure1_curves, is_infinite,
                                 legendre_numeric, rate_at_one_bound, rate_q, rate_taylor,
                                 rate_tilde)
from lacunary_ldp.series import PowerSeries
from lacunary_ldp.spectral import lambda_tilde

F = Fraction
GRID = 1 << 14


def test_legendre_trivial_and_symmetric():
    assert tuple(legendre_numeric(lambda_tilde, 0.0)) == (0.0, 0.0)
    a, b = legendre_numeric(lambda_tilde, 0.3), legendre_numeric(lambda_tilde, -0.3)
    assert a.value == pytest.approx(b.value, abs=1e-12)
    assert a.theta == pytest.approx(-b.theta, abs=1e-7)


def test_legendre_against_dense_grid():
    thetas = np.arange(0, 4, 1e-4)
    oracle = max(t * 0.5 - lambda_tilde(t) for t in thetas)
    got = legendre_numeric(lambda_tilde, 0.5).value
    assert got == pytest.approx(0.26828, abs=5e-4)
    assert oracle - 1e-9 <= got <= oracle + 1e-6


def test_legendre_cap_and_errors():
    res = legendre_numeric(lambda t: math.log(math.cosh(t)) / 10, 0.5)
    assert res.lower_bound and abs(res.theta) == 64
    with pytest.raises(InvalidArgument):
        legendre_numeric(lambda_tilde, 1.0)
    with pytest.raises(NumericError):
        legendre_numeric(lambda t: float("nan"), 0.3)
    with pytest.raises(NumericError):
        legendre_numeric(lambda_tilde, float("nan"))


def test_rate_taylor_tilde():
    s = rate_taylor(tilde_lambda_taylor(12))
    assert s.coeffs == (0, 0, 1, 0, F(1, 4), 0, F(5, 36), 0, F(19, 192), 0, F(143, 1800), 0,
                        F(1769, 25920))


def test_rate_taylor_q2_q3_q4():
    assert rate_taylor(lambda_taylor(2, 11)).coeffs[:11] == (
        0, 0, 1, -1, F(3, 2), F(-13, 6), F(29, 9), F(-23, 5), F(1127, 180), F(-29083, 3780),
        F(12077, 1575))
    assert rate_taylor(lambda_taylor(3, 11)).coeffs[:11] == (
        0, 0, 1, 0, F(-1, 12), 0, F(1, 6), 0, F(-39, 320), 0, F(18113, 100800))
    assert rate_taylor(lambda_taylor(4, 6)).coeffs == (0, 0, 1, 0, F(1, 4), F(-1, 12), F(5, 36))


def test_rate_taylor_quadratic():
    # Lambda = t^2/2 gives I = x^2/2
    assert rate_taylor(PowerSeries([0, 0, F(1, 2), 0, 0])).coeffs == (0, 0, F(1, 2), 0, 0)
    with pytest.raises(InvalidArgument):
        rate_taylor(PowerSeries([0, 0, -1]))
    with pytest.raises(InvalidArgument):
        rate_taylor(PowerSeries([0, 1, 1]))


def test_sentinel():
    assert rate_q(2, 1.5) is PLUS_INFINITY and rate_tilde(-1.2) is PLUS_INFINITY
    assert is_infinite(rate_tilde(1.0))
    assert not isinstance(PLUS_INFINITY, float)
    assert pickle.loads(pickle.dumps(PLUS_INFINITY)) is PLUS_INFINITY
    with pytest.raises(NumericError):
        rate_q(2, float("inf"))


def test_rate_q_below_tilde_and_symmetry():
    assert rate_q(2, 0.3, GRID).value < rate_tilde(0.3).value
    for x in (0.2, 0.5):
        assert rate_q(3, -x, GRID).value == pytest.approx(rate_q(3, x, GRID).value, abs=1e-6)


def test_rate_q_matches_taylor_near_zero():
    series = rate_taylor(lambda_taylor(2, 11))
    for x in (-0.3, -0.1, 0.1, 0.3):
        assert abs(rate_q(2, x, GRID).value - float(series(F(x)))) < 2e-3


def test_rate_at_one_bound():
    assert rate_at_one_bound(2) <= math.log(2) + 0.05
    vals = [rate_tilde(1 - e).value for e in (0.05, 0.02, 0.01)]
    assert vals[0] < vals[1] < vals[2]


def test_rate_at_one_bound_violation(monkeypatch):
    from lacunary_ldp import ratefn
    monkeypatch.setattr(ratefn, "rate_q", lambda q, x: ratefn.LegendreResult(10.0, 1.0))
    with pytest.raises(InvariantViolation):
        ratefn.rate_at_one_bound(2)


def test_figure_curves_small():
    xs = [-0.2, 0.0, 0.3]
    curves = figure1_curves(xs)
    assert [c.label for c in curves] == ["I_tilde", "I_2", "I_3", "I_4"]
    tilde, i2, i3, _ = (dict(zip(c.xs(), c.values())) for c in curves)
    for c in curves:
        assert c.values()[1] == 0
    assert i2[0.3] < i3[0.3] < tilde[0.3]
    assert i2[-0.2] > tilde[-0.2]
    with pytest.raises(InvalidArgument):
        figure1_curves([1.0])


def test_sampled_convexity_and_positivity():
    xs = np.linspace(-0.6, 0.6, 7)
    for fn in (rate_tilde, lambda x: rate_q(3, x, GRID)):
        vals = [fn(float(x)).value for x in xs]
        for a, b, c in zip(vals, vals[1:], vals[2:]):
            assert b <= 0.5 * (a + c) + 1e-8
        assert all(v > 0 for x, v in zip(xs, vals) if abs(x) > 1e-12)
