from __future__ import annotations

from math import gcd

import pytest

from falsetheta.bailey import (
    finite_transform_identity,
    lemma31_identity,
    pair_ex1,
    pair_ex2,
    pair_ex3,
    pair_prop41,
    root_specialization,
    verify_pair_definition,
)
from falsetheta.errors import DomainError
from falsetheta.qseries import QPolynomial, TruncatedQSeries


def series(order, *coeffs):
    return TruncatedQSeries(order, coeffs)


def all_pairs(max_m=3):
    for m in range(1, max_m + 1):
        for a in range(m):
            yield pair_prop41(m, a)
            yield pair_ex3(m, a)
        yield pair_ex1(m)
        yield pair_ex2(m)


def test_prop41_small_values():
    p = pair_prop41(1, 0)
    assert p.relative_parameter == "(q,q)"
    assert p.beta(0, 6) == TruncatedQSeries.one(6)
    assert p.alpha(0, 6) == TruncatedQSeries.one(6)
    assert p.beta(2, 4) == series(4, 1, 1, 2, 2, 3)
    # alpha_1 = -(1 - q^3) q^2 / (1 - q) = -q^2 - q^3 - q^4
    assert p.alpha(1, 10) == series(10, 0, 0, -1, -1, -1)
    assert pair_prop41(2, 1).beta(0, 5) == series(5, 1, 1)
    assert pair_ex2(2).relative_parameter == "(q^2,q^2)"


def test_alpha_zero_is_geometric():
    for m in (1, 2, 3):
        for a in range(m):
            assert pair_prop41(m, a).alpha(0, 8) == series(8, *([1] * (a + 1)))


def test_pair_definition_n1_by_hand():
    p = pair_prop41(1, 0)
    K = 10
    inv = lambda poly: poly.to_series(K).invert_unit()
    q = QPolynomial.monomial
    rhs = p.alpha(0, K) * inv((1 - q(1)) * (1 - q(2))) + p.alpha(1, K) * inv((1 - q(2)) * (1 - q(3)))
    assert rhs == inv(1 - q(1))
    assert verify_pair_definition(p, 1, K)


def test_pairs_satisfy_definition():
    for p in all_pairs(3):
        res = verify_pair_definition(p, 5, 30)
        assert res, (p.name, p.params, res.first_failure)


def test_sign_reverted_ex3_is_not_a_pair():
    for m in (1, 2, 3):
        for a in range(m):
            res = verify_pair_definition(pair_ex3(m, a, sign_reverted=True), 2, 20)
            assert not res
            assert res.first_failure[0] <= 2


def test_perturbed_beta_fails_at_n1():
    p = pair_prop41(1, 0)
    bad = p.perturbed(beta=lambda pair, n, K: pair.beta(n, K) + (TruncatedQSeries.monomial(1, K) if n == 1 else 0))
    res = verify_pair_definition(bad, 3, 12)
    assert not res and res.first_failure == (1, 1)


def test_finite_transform_examples():
    for p in all_pairs(2):
        assert finite_transform_identity(p, 0, 20)
    assert finite_transform_identity(pair_prop41(2, 0), 2, 40)


def test_finite_transform_negative_control():
    p = pair_prop41(2, 0)
    bad = p.perturbed(alpha=lambda pair, n, K: pair.alpha(n, K) * (2 if n == 1 else 1))
    assert not finite_transform_identity(bad, 2, 40)


def test_finite_transform_small_grid():
    for p in all_pairs(2):
        for n in range(4):
            assert finite_transform_identity(p, n, 30), (p.name, p.params, n)


def test_lemma31_examples():
    assert lemma31_identity(pair_ex1(1), 20)
    assert lemma31_identity(pair_prop41(2, 0), 30)
    for p in all_pairs(2):
        assert lemma31_identity(p, 0)


def test_lemma31_ex1_closed_form():
    # the (-1)^n inside alpha_n cancels the lemma's sign:
    # both sides equal sum q^(C(n+1,2) + n^2) (1 - q^(2n+1))
    K = 20
    expected = TruncatedQSeries.zero(K)
    n = 0
    while n * (n + 1) // 2 + n * n <= K:
        e = n * (n + 1) // 2 + n * n
        expected = expected + (QPolynomial.monomial(e) - QPolynomial.monomial(e + 2 * n + 1)).to_series(K)
        n += 1
    res = lemma31_identity(pair_ex1(1), K)
    assert res.lhs == expected and res.rhs == expected


def test_root_specialization_vanishes():
    for N in (1, 2, 3, 4, 5):
        for M in range(1, N + 1):
            if gcd(M, N) != 1:
                continue
            for m in (1, 2, 3):
                for a in range(m):
                    lhs, rhs = root_specialization(pair_prop41(m, a), N, M)
                    assert lhs.is_zero() and rhs.is_zero()
                if N % 2:
                    for p in (pair_ex1(m), pair_ex2(m), pair_ex3(m, 0)):
                        lhs, rhs = root_specialization(p, N, M)
                        assert lhs.is_zero() and rhs.is_zero()


def test_constructors_validate():
    with pytest.raises(DomainError):
        pair_prop41(2, 2)
    with pytest.raises(DomainError):
        pair_ex3(0, 0)
    with pytest.raises(DomainError):
        root_specialization(pair_ex2(2), 4, 1)
