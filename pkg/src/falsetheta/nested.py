"""Nested q-hypergeometric sums: truncated evaluation at roots of unity and series expansion.

Every family handled here has the same skeleton.  With chain length r and
base b (q or q^2) the summand over n_1, ..., n_r is

    (-1)^{n_r} q^{b*C(n_r+1, 2)}
      * prod_{i<r} q^{b*n_i^2 + b*[i in window]*n_i}
      * prod_{i<r} [n_{i+1} + delta_{i,a} choose n_i]_{q^b}
      * den(n_1)

where den is one of four denominator factors.  The sum is folded from n_1
outward, one level at a time, so the cost is O(r * N^2) ring operations
instead of N^r.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Literal

from .characters import character_qseries, get_family
from .cyclotomic import CyclotomicNumber, zeta_power
from .errors import DomainError
from .qseries import (
    FractionalQSeries,
    QPolynomial,
    TruncatedQSeries,
    eval_at,
    gaussian_binomial,
    pochhammer,
)

__all__ = [
    "NestedSumSpec",
    "family_spec",
    "evaluate_truncated",
    "evaluate_at_root",
    "enumerate_truncated",
    "inner_sums_series",
    "expand_series_part",
    "expand_series",
    "series_identity_check",
    "SeriesCheck",
    "quantum_identity",
]

Support = Literal["natural", "printed"]

DENOMINATOR_KINDS = (
    "none",
    "inv_negq_n1",                      # 1/(-q;q)_{n1}
    "ratio_qq2_n1_over_negq_2n1p1",     # (q;q^2)_{n1}/(-q;q)_{2n1+1}
    "inv_negq_q2_n1_plus_delta",        # 1/(-q;q^2)_{n1+delta_{a,0}}
)


@dataclass(frozen=True)
class NestedSumSpec:
    family: str
    chain_length: int
    base: int
    delta_position: int
    linear_window: frozenset
    denominator_kind: str
    denominator_shift: int = 0

    def delta(self, i: int) -> int:
        return 1 if i == self.delta_position else 0

    def denominator_polys(self, n1: int) -> tuple[QPolynomial, QPolynomial]:
        """(numerator, denominator) of the n_1-dependent factor."""
        kind = self.denominator_kind
        one = QPolynomial.one()
        if kind == "none":
            return one, one
        if kind == "inv_negq_n1":
            return one, pochhammer(-1, 1, 1, n1)
        if kind == "ratio_qq2_n1_over_negq_2n1p1":
            return pochhammer(1, 1, 2, n1), pochhammer(-1, 1, 1, 2 * n1 + 1)
        if kind == "inv_negq_q2_n1_plus_delta":
            return one, pochhammer(-1, 1, 2, n1 + self.denominator_shift)
        raise ValueError(f"unknown denominator kind {kind!r}")


def family_spec(family, m: int, a: int = 0) -> NestedSumSpec:
    """The summand description of a family's series/truncated sum.

    The same spec with m -> m+1 describes the beta_n chain of the Bailey pair
    behind that family.
    """
    fam = get_family(family)
    fam.validate(m, a)
    r = m - 1
    name = fam.name
    if name == "hikami":
        return NestedSumSpec(name, r, 1, a if a >= 1 else -1, frozenset(range(a + 1, r)), "none")
    if name == "example1":
        return NestedSumSpec(name, r, 1, -1, frozenset(range(1, r)), "inv_negq_n1")
    if name == "example2":
        return NestedSumSpec(name, r, 2, -1, frozenset(range(1, r)), "ratio_qq2_n1_over_negq_2n1p1")
    if name == "example3":
        return NestedSumSpec(name, r, 2, a if a >= 1 else -1, frozenset(range(a + 1, r)),
                             "inv_negq_q2_n1_plus_delta", 1 if a == 0 else 0)
    raise DomainError(f"no nested sum registered for family {name!r}")


class _PointRing:
    """Ring operations specialised to q = point in a cyclotomic field."""

    def __init__(self, spec: NestedSumSpec, point: CyclotomicNumber):
        self.spec = spec
        self.point = point
        self.order = point.order
        self._pows = [CyclotomicNumber.one(self.order)]
        self._binom: list[list[CyclotomicNumber]] = []
        self._den: dict[int, CyclotomicNumber] = {}

    def zero(self):
        return CyclotomicNumber.zero(self.order)

    def qpow(self, e: int) -> CyclotomicNumber:
        while len(self._pows) <= e:
            self._pows.append(self._pows[-1] * self.point)
        return self._pows[e]

    def binom(self, n: int, k: int) -> CyclotomicNumber:
        # q-Pascal in the field: [n,k] = [n-1,k-1] + Q^k [n-1,k], Q = q^base
        if k < 0 or k > n:
            return self.zero()
        b = self.spec.base
        while len(self._binom) <= n:
            t = len(self._binom)
            if t == 0:
                self._binom.append([CyclotomicNumber.one(self.order)])
                continue
            prev = self._binom[-1]
            row = [prev[0]]
            for j in range(1, t):
                row.append(prev[j - 1] + self.qpow(b * j) * prev[j])
            row.append(prev[t - 1])
            self._binom.append(row)
        return self._binom[n][k]

    def denominator(self, n1: int) -> CyclotomicNumber:
        if n1 not in self._den:
            num, den = self.spec.denominator_polys(n1)
            dv = eval_at(den, self.point)
            if dv.is_zero():
                raise DomainError(
                    f"{self.spec.family}: denominator vanishes at n_1={n1} for this point")
            self._den[n1] = eval_at(num, self.point) * dv.inverse()
        return self._den[n1]


class _SeriesRing:
    """Ring operations in power series truncated at q^order."""

    def __init__(self, spec: NestedSumSpec, order: int):
        self.spec = spec
        self.order = order
        self._den: dict[int, TruncatedQSeries] = {}

    def zero(self):
        return TruncatedQSeries.zero(self.order)

    def qpow(self, e: int) -> TruncatedQSeries:
        return TruncatedQSeries.monomial(e, self.order)

    def binom(self, n: int, k: int) -> TruncatedQSeries:
        return gaussian_binomial(n, k, self.spec.base).to_series(self.order)

    def denominator(self, n1: int) -> TruncatedQSeries:
        if n1 not in self._den:
            num, den = self.spec.denominator_polys(n1)
            self._den[n1] = num.to_series(self.order) * den.to_series(self.order).invert_unit()
        return self._den[n1]


def _inner_sums(spec: NestedSumSpec, ring, top_cap: int, caps: list[int] | None = None) -> list:
    """inner(n) for n = 0..top_cap: the sum over n_1..n_{r-1} with n_r = n fixed.

    Includes den(n_1) and the level weights below the top, but not the top
    level's own weight.  ``caps[i]`` bounds n_i (index 1-based; caps[r] = top_cap).
    """
    r = spec.chain_length
    b = spec.base
    if caps is None:
        caps = [0] * (r + 1)
        caps[r] = top_cap
        for i in range(r - 1, 0, -1):
            caps[i] = caps[i + 1] + spec.delta(i)
    if r == 1:
        return [ring.denominator(n) for n in range(top_cap + 1)]

    def weight(i: int, n: int):
        return ring.qpow(b * n * n + (b * n if i in spec.linear_window else 0))

    level = [ring.denominator(n) * weight(1, n) for n in range(caps[1] + 1)]
    for i in range(1, r):
        d = spec.delta(i)
        nxt = []
        for n in range(caps[i + 1] + 1):
            acc = ring.zero()
            for k in range(min(caps[i], n + d) + 1):
                acc = acc + ring.binom(n + d, k) * level[k]
            nxt.append(acc if i + 1 == r else acc * weight(i + 1, n))
        level = nxt
    return level


def _truncated_caps(spec: NestedSumSpec, N: int, support: Support) -> list[int]:
    r = spec.chain_length
    caps = [0] * (r + 1)
    caps[r] = N - 1
    for i in range(r - 1, 0, -1):
        if support == "natural":
            caps[i] = caps[i + 1] + spec.delta(i)
        elif support == "printed":
            caps[i] = N - 1
        else:
            raise ValueError(f"support must be 'natural' or 'printed', got {support!r}")
    return caps


def _resolve_spec(family, m: int, a: int) -> NestedSumSpec:
    return family if isinstance(family, NestedSumSpec) else family_spec(family, m, a)


def evaluate_truncated(family, m: int, a: int, N: int, point: CyclotomicNumber,
                       support: Support = "natural") -> CyclotomicNumber:
    """The truncated sum (outer index 0..N-1) at q = point, exactly.

    ``support="natural"`` lets inner indices run over the full support of
    the Gaussian binomials (an index just below a delta position can reach
    N); ``support="printed"`` caps every index at N-1.
    """
    if N < 1:
        raise DomainError("N must be positive")
    spec = _resolve_spec(family, m, a)
    ring = _PointRing(spec, point)
    caps = _truncated_caps(spec, N, support)
    inner = _inner_sums(spec, ring, N - 1, caps)
    b = spec.base
    total = ring.zero()
    for n in range(N):
        term = inner[n] * ring.qpow(b * n * (n + 1) // 2)
        total = total - term if n % 2 else total + term
    return total


def evaluate_at_root(family, m: int, a: int, N: int, M: int,
                     support: Support = "natural") -> CyclotomicNumber:
    """Truncated sum at q = zeta_N^M, with the family's hypotheses enforced."""
    fam = get_family(family)
    fam.validate(m, a)
    if N < 1 or gcd(M, N) != 1:
        raise DomainError(f"zeta_{N}^{M} is not a primitive N-th root of unity")
    if fam.name != "hikami" and N % 2 == 0:
        raise DomainError(f"{fam.name}: the truncated sum has poles at even-order roots (N={N})")
    return evaluate_truncated(fam.name, m, a, N, zeta_power(N, M), support)


def enumerate_truncated(family, m: int, a: int, N: int, point: CyclotomicNumber,
                        support: Support = "natural") -> CyclotomicNumber:
    """Brute-force oracle for :func:`evaluate_truncated`.

    Walks the whole index box and builds each summand from Gaussian
    polynomials and Pochhammer products evaluated at the point; zero
    binomials take care of the support.
    """
    spec = _resolve_spec(family, m, a)
    r, b = spec.chain_length, spec.base
    inner_top = N if support == "natural" else N - 1
    total = CyclotomicNumber.zero(point.order)
    ranges = [range(inner_top + 1)] * (r - 1) + [range(N)]
    for idx in itertools.product(*ranges):
        n = (None,) + idx  # 1-based
        e = b * n[r] * (n[r] + 1) // 2
        binom = QPolynomial.one()
        for i in range(1, r):
            e += b * n[i] ** 2 + (b * n[i] if i in spec.linear_window else 0)
            binom = binom * gaussian_binomial(n[i + 1] + spec.delta(i), n[i], b)
        if binom.is_zero():
            continue
        num, den = spec.denominator_polys(n[1])
        dv = eval_at(den, point)
        if dv.is_zero():
            raise DomainError("denominator vanishes at this point")
        term = eval_at(binom.shift(e) * num, point) / dv
        total = total - term if n[r] % 2 else total + term
    return total


def inner_sums_series(spec: NestedSumSpec, K: int, top_cap: int) -> list[TruncatedQSeries]:
    """inner(n) for n = 0..top_cap as series through q^K (see :func:`_inner_sums`)."""
    ring = _SeriesRing(spec, K)
    r = spec.chain_length
    caps = [0] * (r + 1)
    caps[r] = top_cap
    limit = isqrt(K // spec.base) if K >= 0 else 0
    for i in range(r - 1, 0, -1):
        # b*n_i^2 > K contributes nothing below the truncation
        caps[i] = min(caps[i + 1] + spec.delta(i), limit)
    return _inner_sums(spec, ring, top_cap, caps)


def _outer_cap(b: int, K: int) -> int:
    n = 0
    while b * (n + 1) * (n + 2) // 2 <= K:
        n += 1
    return n


def expand_series_part(family, m: int, a: int, K: int) -> TruncatedQSeries:
    """The integer-exponent nested sum (no prefactor, no weight) through q^K."""
    spec = _resolve_spec(family, m, a)
    b = spec.base
    top = _outer_cap(b, K)
    inner = inner_sums_series(spec, K, top)
    total = TruncatedQSeries.zero(K)
    for n in range(top + 1):
        term = inner[n].shift(b * n * (n + 1) // 2)
        total = total - term if n % 2 else total + term
    return total


def expand_series(family, m: int, a: int, K: Fraction | int) -> FractionalQSeries:
    """weight * q^offset * (nested sum), known through q^K, in powers of q^(1/D)."""
    fam = get_family(family)
    fam.validate(m, a)
    K = Fraction(K)
    D = fam.denominator(m)
    offset = fam.offset(m, a)
    qorder = max(0, int(K - offset)) if K >= offset else 0
    part = expand_series_part(fam.name, m, a, qorder)
    return FractionalQSeries.from_qseries(part, D, offset, order=K) * fam.weight(m)


@dataclass
class SeriesCheck:
    ok: bool
    first_discrepancy: Fraction | None
    lhs: FractionalQSeries
    rhs: FractionalQSeries

    def __bool__(self) -> bool:
        return self.ok


def series_identity_check(family, m: int, a: int, K: Fraction | int, character=None) -> SeriesCheck:
    """Compare the expanded nested sum with weight * sum chi(n) q^(n^2/D) through q^K.

    ``character`` overrides the family's character (used for negative controls).
    """
    fam = get_family(family)
    fam.validate(m, a)
    if K < 1:
        raise DomainError("K must be at least 1")
    D = fam.denominator(m)
    chi = character if character is not None else fam.character(m, a)
    lhs = expand_series(fam, m, a, K)
    rhs = character_qseries(chi, D, K) * fam.weight(m)
    # both sides are known through x^floor(K*D)
    xorder = min(lhs.body.order, rhs.body.order)
    lhs = FractionalQSeries(D, lhs.body.truncate(xorder))
    rhs = FractionalQSeries(D, rhs.body.truncate(xorder))
    diff = lhs.first_difference(rhs)
    return SeriesCheck(diff is None, diff, lhs, rhs)


def quantum_identity(kind: Literal["V", "U"], m: int, a: int, N: int, M: int
                     ) -> tuple[CyclotomicNumber, CyclotomicNumber]:
    """Both sides of an identity that holds only at roots of unity.

    kind "V": Y_{2m-1,N}^{(2a)}(zeta) against 2 V_{m,N}^{(a)}(zeta);
    kind "U": Y_{2m-2,N}^{(0)}(zeta) against 2 U_{m,N}(zeta).
    zeta = zeta_N^M must have odd order.
    """
    if kind == "V":
        lhs = evaluate_at_root("hikami", 2 * m - 1, 2 * a, N, M)
        rhs = evaluate_at_root("example3", m, a, N, M) * 2
    elif kind == "U":
        if a != 0:
            raise DomainError("the U identity has no parameter a")
        lhs = evaluate_at_root("hikami", 2 * m - 2, 0, N, M)
        rhs = evaluate_at_root("example2", m, 0, N, M) * 2
    else:
        raise ValueError(f"kind must be 'V' or 'U', got {kind!r}")
    return lhs, rhs
