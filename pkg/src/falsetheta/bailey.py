"""Bailey pairs relative to (q, q) and (q^2, q^2), and identities derived from them.

A pair is stored as two generators n -> alpha_n, n -> beta_n.  Pairs relative
to (q^2, q^2) are handled by running every Pochhammer symbol in base q^2.
Only the two limiting cases of the Bailey lemma that the false theta
families need are implemented:

* the finite transform (b, c -> infinity), checked after rewriting
  (q^-n)_k (-1)^k q^(C(k+1,2) + (n+1)k) as q^(k^2+k) (q)_n/(q)_{n-k};
* the infinite transform (b = a = q, c -> infinity), which turns a pair
  into an identity between sum (q)_n (-1)^n q^C(n+1,2) beta_n and an
  alternating sum over alpha_n.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import gcd
from typing import Callable

from .cyclotomic import CyclotomicNumber, root_power, zeta_power
from .errors import DomainError
from .nested import NestedSumSpec, _PointRing, _inner_sums, family_spec, inner_sums_series
from .qseries import QPolynomial, TruncatedQSeries, eval_at, pochhammer

__all__ = [
    "BaileyPair",
    "PairCheck",
    "pair_prop41",
    "pair_ex1",
    "pair_ex2",
    "pair_ex3",
    "verify_pair_definition",
    "finite_transform_identity",
    "lemma31_identity",
    "root_specialization",
]


@dataclass(frozen=True)
class BaileyPair:
    """(alpha_n, beta_n) relative to (q^base, q^base).

    ``alpha_rational(n)`` returns (numerator, denominator) polynomials with
    denominator 1 - q^base; the series generators are derived from it unless
    overridden.
    """

    name: str
    base: int
    params: tuple
    alpha_rational: Callable[[int], tuple[QPolynomial, QPolynomial]]
    beta_spec: NestedSumSpec | None = None
    alpha_override: Callable[[int, int], TruncatedQSeries] | None = field(default=None, compare=False)
    beta_override: Callable[[int, int], TruncatedQSeries] | None = field(default=None, compare=False)

    @property
    def relative_parameter(self) -> str:
        return "(q,q)" if self.base == 1 else f"(q^{self.base},q^{self.base})"

    def alpha(self, n: int, K: int) -> TruncatedQSeries:
        if self.alpha_override is not None:
            return self.alpha_override(n, K)
        num, den = self.alpha_rational(n)
        return num.to_series(K) * den.to_series(K).invert_unit()

    def beta(self, n: int, K: int) -> TruncatedQSeries:
        if self.beta_override is not None:
            return self.beta_override(n, K)
        return self.betas(n, K)[n]

    def betas(self, nmax: int, K: int) -> list[TruncatedQSeries]:
        """beta_0..beta_nmax through q^K, sharing one nested-sum fold."""
        if self.beta_override is not None:
            return [self.beta_override(n, K) for n in range(nmax + 1)]
        return list(_betas_cached(self.beta_spec, self.base, nmax, K))

    def perturbed(self, *, alpha=None, beta=None) -> BaileyPair:
        """A copy with alpha and/or beta replaced by ``f(pair, n, K)`` callables."""
        changes = {}
        if alpha is not None:
            changes["alpha_override"] = lambda n, K, _p=self: alpha(_p, n, K)
        if beta is not None:
            changes["beta_override"] = lambda n, K, _p=self: beta(_p, n, K)
        return replace(self, name=self.name + "*", **changes)


@lru_cache(maxsize=256)
def _betas_cached(spec: NestedSumSpec, base: int, nmax: int, K: int) -> tuple:
    inner = inner_sums_series(spec, K, nmax)
    return tuple(
        inner[n] * pochhammer(1, base, base, n).to_series(K).invert_unit()
        for n in range(nmax + 1)
    )


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def pair_prop41(m: int, a: int) -> BaileyPair:
    """The pair behind the Hikami family, relative to (q, q); m >= 1, 0 <= a <= m-1."""
    if m < 1 or not 0 <= a <= m - 1:
        raise DomainError(f"pair_prop41 needs m >= 1 and 0 <= a <= m-1, got m={m}, a={a}")

    def alpha(n: int):
        e = n * (n + 1) // 2 + (a + 1) * n * n + (m - a - 1) * (n * n + n)
        num = (1 - QPolynomial.monomial((a + 1) * (2 * n + 1))).shift(e) * _sign(n)
        return num, QPolynomial([1, -1])

    return BaileyPair("prop41", 1, (m, a), alpha, family_spec("hikami", m + 1, a))


def pair_ex1(m: int) -> BaileyPair:
    """Relative to (q, q); beta carries 1/(-q)_{n_1}."""
    if m < 1:
        raise DomainError(f"pair_ex1 needs m >= 1, got {m}")

    def alpha(n: int):
        num = (1 - QPolynomial.monomial(2 * n + 1)).shift(m * n * n + (m - 1) * n) * _sign(n)
        return num, QPolynomial([1, -1])

    return BaileyPair("ex1", 1, (m,), alpha, family_spec("example1", m + 1, 0))


def pair_ex2(m: int) -> BaileyPair:
    """Relative to (q^2, q^2)."""
    if m < 1:
        raise DomainError(f"pair_ex2 needs m >= 1, got {m}")

    def alpha(n: int):
        num = (1 - QPolynomial.monomial(2 * n + 1)).shift((2 * m - 1) * n * n + (2 * m - 2) * n) * _sign(n)
        return num, QPolynomial([1, 0, -1])

    return BaileyPair("ex2", 2, (m,), alpha, family_spec("example2", m + 1, 0))


def pair_ex3(m: int, a: int, sign_reverted: bool = False) -> BaileyPair:
    """Relative to (q^2, q^2); m >= 1, 0 <= a <= m-1.

    ``sign_reverted=True`` builds alpha with (1 + q^((2a+1)(2n+1))) in place of
    (1 - q^((2a+1)(2n+1))); that variant is not a Bailey pair.
    """
    if m < 1 or not 0 <= a <= m - 1:
        raise DomainError(f"pair_ex3 needs m >= 1 and 0 <= a <= m-1, got m={m}, a={a}")
    s = 1 if sign_reverted else -1

    def alpha(n: int):
        e = 2 * (m - a - 1) * (n * n + n) + 2 * (a + 1) * n * n + n
        num = (1 + s * QPolynomial.monomial((2 * a + 1) * (2 * n + 1))).shift(e) * _sign(n)
        return num, QPolynomial([1, 0, -1])

    name = "ex3-reverted" if sign_reverted else "ex3"
    return BaileyPair(name, 2, (m, a), alpha, family_spec("example3", m + 1, a))


@dataclass
class PairCheck:
    ok: bool
    failures: list = field(default_factory=list)   # (n, first differing exponent)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def first_failure(self):
        return self.failures[0] if self.failures else None


def _poch(b: int, shift: int, n: int, K: int) -> TruncatedQSeries:
    return pochhammer(1, shift, b, n).to_series(K)


def verify_pair_definition(pair: BaileyPair, nmax: int, K: int) -> PairCheck:
    """Check beta_n = sum_{k<=n} alpha_k / ((Q;Q)_{n-k} (Q^2;Q)_{n+k}), Q = q^base, through q^K."""
    b = pair.base
    betas = pair.betas(nmax, K)
    alphas = [pair.alpha(k, K) for k in range(nmax + 1)]
    failures = []
    for n in range(nmax + 1):
        rhs = TruncatedQSeries.zero(K)
        for k in range(n + 1):
            den = _poch(b, b, n - k, K) * _poch(b, 2 * b, n + k, K)
            rhs = rhs + alphas[k] * den.invert_unit()
        e = betas[n].first_difference(rhs)
        if e is not None:
            failures.append((n, e))
    return PairCheck(not failures, failures)


@dataclass
class TransformCheck:
    ok: bool
    lhs: TruncatedQSeries
    rhs: TruncatedQSeries
    first_discrepancy: int | None

    def __bool__(self) -> bool:
        return self.ok


def finite_transform_identity(pair: BaileyPair, n: int, K: int = 40) -> TransformCheck:
    """Both sides of the b, c -> infinity Bailey-lemma identity at index n, through q^K.

    With Q = q^base, the negative powers are cleared using
    (Q^-n;Q)_k (-1)^k Q^(C(k+1,2)+(n+1)k) = Q^(k^2+k) (Q;Q)_n/(Q;Q)_{n-k},
    and both sides are multiplied by (Q^(2+n);Q)_n to clear the remaining
    denominators:

        lhs = (Q^(2+n);Q)_n (Q^2;Q)_n sum_k Q^(k^2+k) [(Q;Q)_n/(Q;Q)_{n-k}] beta_k
        rhs = sum_k Q^(k^2+k) [(Q;Q)_n/(Q;Q)_{n-k}] (Q^(2+n+k);Q)_{n-k} alpha_k
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    b = pair.base
    betas = pair.betas(n, K)
    lhs_sum = TruncatedQSeries.zero(K)
    rhs = TruncatedQSeries.zero(K)
    for k in range(n + 1):
        ratio = pochhammer(1, b * (n - k + 1), b, k).to_series(K)   # (Q;Q)_n/(Q;Q)_{n-k}
        w = ratio.shift(b * (k * k + k)) if b * (k * k + k) <= K else TruncatedQSeries.zero(K)
        lhs_sum = lhs_sum + w * betas[k]
        rhs = rhs + w * _poch(b, b * (2 + n + k), n - k, K) * pair.alpha(k, K)
    lhs = _poch(b, b * (2 + n), n, K) * _poch(b, 2 * b, n, K) * lhs_sum
    e = lhs.first_difference(rhs)
    return TransformCheck(e is None, lhs, rhs, e)


def lemma31_identity(pair: BaileyPair, K: int) -> TransformCheck:
    """sum_n (Q;Q)_n (-1)^n Q^C(n+1,2) beta_n = (1-Q) sum_n (-1)^n Q^C(n+1,2) alpha_n through q^K."""
    if K < 0:
        raise DomainError("K must be nonnegative")
    b = pair.base
    top = 0
    while b * (top + 1) * (top + 2) // 2 <= K:
        top += 1
    betas = pair.betas(top, K)
    lhs = TruncatedQSeries.zero(K)
    rhs = TruncatedQSeries.zero(K)
    for n in range(top + 1):
        e = b * n * (n + 1) // 2
        lhs = lhs + (_poch(b, b, n, K) * betas[n]).shift(e) * _sign(n)
        rhs = rhs + pair.alpha(n, K).shift(e) * _sign(n)
    rhs = rhs * (1 - TruncatedQSeries.monomial(b, K))
    d = lhs.first_difference(rhs)
    return TransformCheck(d is None, lhs, rhs, d)


def root_specialization(pair: BaileyPair, N: int, M: int) -> tuple[CyclotomicNumber, CyclotomicNumber]:
    """(1 - Q) times both sides of the finite transform with n = N-1, at q = zeta_N^M.

    Uses the uncleared form: (Q^-n;Q)_k is evaluated directly as a product of
    root-of-unity factors.  The left side carries (Q;Q)_N and is zero; the
    right side must agree.
    """
    if N < 1 or gcd(M, N) != 1:
        raise DomainError(f"zeta_{N}^{M} is not primitive")
    b = pair.base
    if b == 2 and N % 2 == 0:
        raise DomainError("pairs relative to (q^2,q^2) are specialized at odd N only")
    if pair.beta_spec.denominator_kind != "none" and N % 2 == 0:
        raise DomainError("beta has poles at even-order roots")
    n = N - 1
    z = zeta_power(N, M)
    one = CyclotomicNumber.one(N)

    def Q(e: int) -> CyclotomicNumber:
        return root_power(N, M * b * e)

    def poch(start: int, length: int) -> CyclotomicNumber:
        # (Q^start; Q)_length with possibly negative start
        out = one
        for j in range(length):
            out = out * (one - Q(start + j))
        return out

    ring = _PointRing(pair.beta_spec, z)
    inner = _inner_sums(pair.beta_spec, ring, n)
    lhs_sum = CyclotomicNumber.zero(N)
    rhs = CyclotomicNumber.zero(N)
    for k in range(n + 1):
        core = poch(-n, k) * Q(k * (k + 1) // 2 + (n + 1) * k) * _sign(k)
        beta_k = inner[k] / poch(1, k)
        lhs_sum = lhs_sum + core * beta_k
        num, _den = pair.alpha_rational(k)
        rhs = rhs + core * eval_at(num, z) / poch(2 + n, k)
    lhs = (one - Q(1)) * poch(2, n) * lhs_sum
    return lhs, rhs
