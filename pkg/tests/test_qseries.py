from __future__ import annotations

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from falsetheta.cyclotomic import CyclotomicNumber, root_power
from falsetheta.qseries import (
    FractionalQSeries,
    QPolynomial,
    TruncatedQSeries,
    eval_at,
    eval_at_root,
    gaussian_binomial,
    pochhammer,
)


def series(order, *coeffs):
    return TruncatedQSeries(order, coeffs)


def test_pochhammer_examples():
    assert pochhammer(+1, 1, 1, 0) == QPolynomial.one()
    assert pochhammer(+1, 1, 1, 2) == QPolynomial([1, -1, -1, 1])
    assert pochhammer(-1, 1, 2, 1) == QPolynomial([1, 1])


def test_gaussian_binomial_examples():
    assert gaussian_binomial(7, 0) == QPolynomial.one()
    assert gaussian_binomial(2, 1) == QPolynomial([1, 1])
    assert gaussian_binomial(4, 2) == QPolynomial([1, 1, 2, 1, 1])
    assert gaussian_binomial(3, 5).is_zero()
    assert gaussian_binomial(3, -1).is_zero()
    assert gaussian_binomial(2, 1, base=2) == QPolynomial([1, 0, 1])


def test_gaussian_binomial_matches_product_formula():
    # [n, k] (q;q)_k (q;q)_{n-k} = (q;q)_n
    for n in range(12):
        for k in range(n + 1):
            lhs = gaussian_binomial(n, k) * pochhammer(1, 1, 1, k) * pochhammer(1, 1, 1, n - k)
            assert lhs == pochhammer(1, 1, 1, n)


def test_gaussian_symmetry_and_pascal():
    for n in range(1, 21):
        for k in range(n + 1):
            g = gaussian_binomial(n, k)
            assert g == gaussian_binomial(n, n - k)
            assert g == gaussian_binomial(n - 1, k) + gaussian_binomial(n - 1, k - 1).shift(n - k)


def test_eval_at_examples():
    assert eval_at(QPolynomial([1, 1]), CyclotomicNumber(2, [-1])).is_zero()
    z3 = root_power(3, 1)
    assert eval_at(pochhammer(1, 1, 1, 4), root_power(5, 1)) == 5
    expected = 1 + z3 + 2 * z3**2 + z3**3 + z3**4
    assert eval_at(gaussian_binomial(4, 2), z3) == expected
    # reduced form: 1 + z + 2 z^2 + 1 + z = 2 + 2z + 2z^2 = 0 on Q(zeta_3)
    assert expected.is_zero()


def test_q_pochhammer_at_roots_equals_N():
    for N in range(1, 51):
        poch = pochhammer(1, 1, 1, N - 1)
        for M in (1, N - 1) if N > 2 else (1,):
            if gcd(M, N) == 1:
                assert eval_at_root(poch, N, M) == N


def test_invert_unit_examples():
    assert series(3, 1, -1).invert_unit() == series(3, 1, 1, 1, 1)
    assert series(2, 1, 1).invert_unit() == series(2, 1, -1, 1)
    assert pochhammer(1, 1, 1, 2).to_series(3).invert_unit() == series(3, 1, 1, 2, 2)


def test_invert_requires_unit():
    with pytest.raises(ZeroDivisionError):
        series(4, 0, 1).invert_unit()


def test_order_propagates_minimum():
    s = series(5, 1, 2, 3) * series(3, 1, 1)
    assert s.order == 3
    assert (series(5, 1) + series(2, 1)).order == 2


def test_comparison_needs_equal_orders():
    with pytest.raises(ValueError):
        series(3, 1) == series(4, 1)


def test_terms_beyond_order_are_dropped():
    s = TruncatedQSeries(2, [1, 2, 3, 4, 5])
    assert s.coeffs[-1] == 3 and len(s.coeffs) <= 3


def test_zero_series_is_canonical():
    assert series(4, 0, 0, 0) == TruncatedQSeries.zero(4)
    assert series(4, 0, 0).is_zero()


def test_negative_power_inversion_identity():
    # (q^-n)_k = (-1)^k q^(C(k,2) - n k) (q)_n / (q)_{n-k}; multiplying each factor
    # 1 - q^(j-n) by q^(n-j) clears the negative powers
    for n in range(9):
        for k in range(n + 1):
            cleared = QPolynomial.one()
            for j in range(k):
                cleared = cleared * (QPolynomial.monomial(n - j) - 1)
            lhs = pochhammer(1, 1, 1, n - k) * cleared
            assert lhs.to_series(40) == (pochhammer(1, 1, 1, n) * (-1) ** k).to_series(40)


def test_fractional_series_offsets():
    body = series(6, 1, -1, 0, 1)
    f = FractionalQSeries.from_qseries(body, 8, Fraction(1, 8), order=2)
    assert f.order == 2
    assert f.coefficient(Fraction(1, 8)) == 1
    assert f.coefficient(Fraction(9, 8)) == -1
    assert f.coefficient(Fraction(1, 2)) == 0
    assert list(f.terms()) == [(Fraction(1, 8), 1), (Fraction(9, 8), -1)]
    assert f.first_difference(f) is None


polys = st.lists(st.integers(-4, 4), min_size=1, max_size=8).map(QPolynomial)


@settings(max_examples=80, deadline=None)
@given(polys, polys, st.integers(1, 15), st.integers(0, 14))
def test_eval_is_ring_homomorphism(p, r, N, M):
    z = root_power(N, M)
    assert eval_at(p * r, z) == eval_at(p, z) * eval_at(r, z)
    assert eval_at(p + r, z) == eval_at(p, z) + eval_at(r, z)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=10), st.integers(0, 12))
def test_unit_inverse_roundtrip(coeffs, order):
    coeffs = [1] + coeffs
    s = TruncatedQSeries(order, coeffs)
    assert s * s.invert_unit() == TruncatedQSeries.one(order)
