from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from lacunary_ldp.diophantine import (am_polynomial, bridge_count, brute_force_count,
                                      carry_bound, constant_term_of_power, count_geometric_dp,
                                      count_laurent, count_signed_zero_sums, lagrange_coefficients,
                                      recurrence_am, recurrence_total, relation_count)
from lacunary_ldp.errors import InvalidArgument, ResourceLimitError
from lacunary_ldp.sequences import custom, geometric


def test_signed_zero_sums_examples():
    assert count_signed_zero_sums(geometric(2, 1), 2) == 2
    assert count_signed_zero_sums(geometric(2, 4), 3) == 18
    assert count_signed_zero_sums(geometric(2, 3), 5) == 450


def test_signed_zero_sums_work_bound():
    with pytest.raises(ResourceLimitError) as err:
        count_signed_zero_sums(geometric(2, 20), 10, bound=1000)
    assert err.value.bound == 1000


def test_dp_examples():
    assert count_geometric_dp(2, 4, 3) == 114
    assert count_geometric_dp(2, 1, 10) == 0
    assert count_geometric_dp(3, 11, 12) == count_laurent(3, 11, 12)
    assert count_geometric_dp(3, 10, 6) == count_laurent(3, 10, 6)


def test_laurent_examples():
    assert count_laurent(2, 2, 5) == 10
    # the polynomial 120n^3 + 900n^2 - 3310n + 870 evaluates to 9710 at n = 4
    assert count_laurent(2, 6, 4) == 120 * 64 + 900 * 16 - 3310 * 4 + 870 == 9710
    for n in range(1, 5):
        assert count_laurent(5, 3, n) == 0 == brute_force_count(5, 3, n)


def test_carry_bound():
    assert carry_bound(2, 4) == 5
    assert carry_bound(3, 7) == 5


def _closed_walks(m, n):
    steps = [tuple((s if i == d else 0) for i in range(n)) for d in range(n) for s in (1, -1)]
    return sum(1 for walk in product(steps, repeat=m)
               if all(sum(st[i] for st in walk) == 0 for i in range(n)))


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 7) for n in range(1, 4)])
def test_bridge_count_enumeration(m, n):
    assert bridge_count(m, n) == _closed_walks(m, n)


def test_bridge_examples():
    assert bridge_count(3, 5) == 0
    assert bridge_count(2, 3) == 6
    assert bridge_count(4, 2) == 36


def test_am_polynomial_examples():
    p2 = am_polynomial(2, 2)
    assert p2.coefficients == (0, 2) and p2.valid_from == 1
    p7 = am_polynomial(2, 7)
    assert p7.coefficients == (48552, -40446, 840, 2520) and p7.valid_from == 5
    p34 = am_polynomial(3, 4)
    assert p34.coefficients == (-8, 2, 12)


@pytest.mark.parametrize("q,m", [(2, m) for m in range(1, 9)] + [(3, 5), (4, 6)])
def test_am_polynomial_extra_points(q, m):
    poly = am_polynomial(q, m)
    assert poly.degree <= m // 2
    for n in range(poly.valid_from, poly.valid_from + 8):
        assert poly(n) == count_geometric_dp(q, m, n)


def test_lagrange():
    assert lagrange_coefficients([0, 1, 2], [1, 2, 5]) == [1, 0, 1]


def test_recurrence_examples():
    # A_{2,1,1}(n) counts (+q, -q) plus nothing else: exactly one tuple
    assert all(recurrence_am(2, 2, 1, 1, n) == 1 for n in range(1, 6))
    assert recurrence_am(2, 3, 1, 0, 4) == 0
    assert recurrence_am(2, 1, 0, 0, 5) == 0
    assert all(recurrence_am(2, 2, 0, 0, n) == 2 * n - 2 for n in range(1, 6))
    assert recurrence_total(2, 5, 6) == count_geometric_dp(2, 5, 6) == 3300
    with pytest.raises(InvalidArgument):
        recurrence_am(2, 2, 2, 1, 3)


@given(st.integers(2, 4), st.integers(1, 8), st.integers(1, 7))
def test_recurrence_matches_dp(q, m, n):
    assert recurrence_total(q, m, n) == count_geometric_dp(q, m, n)


def test_relation_count():
    assert relation_count(geometric(2, 2), 2, 1) == 4
    assert relation_count(geometric(2, 3), 2, 2) == 20
    with pytest.raises(InvalidArgument):
        relation_count(geometric(2, 3), 1, 2)


def test_relation_count_brute():
    seq = custom([3, 7, 12])
    brute = sum(1 for ks in product(range(3), repeat=3) for js in product((1, 2), repeat=3)
                for ss in product((1, -1), repeat=3)
                if sum(s * j * seq[k] for k, j, s in zip(ks, js, ss)) == 0)
    assert relation_count(seq, 3, 2) == brute


def test_constant_term_of_power():
    assert constant_term_of_power([1, -1], 4) == 6
    with pytest.raises(ResourceLimitError):
        constant_term_of_power(list(range(-50, 51)), 8, bound=1000)


@given(st.integers(2, 5), st.integers(1, 8), st.integers(1, 10))
def test_lemma_inequality_and_symmetry(q, m, n):
    a = count_geometric_dp(q, m, n)
    b = bridge_count(m, n)
    assert a >= b
    if m <= q:
        assert a == b
    if m == q + 1:
        assert a == b + 2 * (q + 1) * (n - 1)
    assert a % 2 == 0
