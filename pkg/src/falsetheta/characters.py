"""Periodic sign characters, L-values at negative integers, and exact radial limits.

Four families of odd sign characters appear as coefficients of the false
theta functions handled by this package:

==========  ==============  ==========  ==============  =========================
family      modulus         +1 at       -1 at           q-exponent n^2/D
==========  ==============  ==========  ==============  =========================
hikami      2m              m-a-1       m+a+1           D = 4m
example1    4m-2            2m-3        2m+1            D = 8(2m-1)
example2    4(m-1)          2m-3        2m-1            D = 8(m-1)
example3    2(2m-1)         2(m-a-1)    2(m+a)          D = 4(2m-1)
==========  ==============  ==========  ==============  =========================
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Callable

from .cyclotomic import CyclotomicNumber, root_of_unity
from .errors import DomainError
from .qseries import FractionalQSeries, QPolynomial, TruncatedQSeries

__all__ = [
    "PeriodicSignCharacter",
    "TwistedPeriodicFunction",
    "chi_hikami",
    "chi_ex1",
    "chi_ex2",
    "chi_ex3",
    "bernoulli_number",
    "bernoulli_polynomial",
    "L_value",
    "limit_value_hikami",
    "limit_value_quadratic_form",
    "character_qseries",
    "full_period_sum",
    "FalseThetaFamily",
    "FAMILIES",
    "get_family",
    "prefactor",
    "radial_limit",
    "finite_evaluation",
    "limit_via_L_value",
    "twisted_function",
]


@dataclass(frozen=True)
class PeriodicSignCharacter:
    """chi(n) = +1 if n = plus_residue, -1 if n = minus_residue (mod modulus), else 0.

    Either residue may be None, which drops that sign class; with both None
    the character is identically zero.
    """

    modulus: int
    plus_residue: int | None
    minus_residue: int | None

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        for r in (self.plus_residue, self.minus_residue):
            if r is not None and not 0 <= r < self.modulus:
                raise ValueError(f"residue {r} not in [0, {self.modulus})")
        if self.plus_residue is not None and self.plus_residue == self.minus_residue:
            raise ValueError("plus and minus residues coincide")

    @classmethod
    def zero(cls, modulus: int) -> PeriodicSignCharacter:
        return cls(modulus, None, None)

    def __call__(self, n: int) -> int:
        r = n % self.modulus
        if r == self.plus_residue:
            return 1
        if r == self.minus_residue:
            return -1
        return 0

    def support(self) -> tuple[tuple[int, int], ...]:
        """(residue, sign) pairs with nonzero value."""
        out = []
        if self.plus_residue is not None:
            out.append((self.plus_residue, 1))
        if self.minus_residue is not None:
            out.append((self.minus_residue, -1))
        return tuple(out)

    def is_odd(self) -> bool:
        f = self.modulus
        return all(self(f - n) == -self(n) for n in range(f))

    def period_sum(self) -> int:
        return sum(self(n) for n in range(self.modulus))


def chi_hikami(m: int, a: int) -> PeriodicSignCharacter:
    if m < 2 or not 0 <= a <= m - 2:
        raise DomainError(f"chi_hikami needs m >= 2 and 0 <= a <= m-2, got m={m}, a={a}")
    f = 2 * m
    return PeriodicSignCharacter(f, (m - a - 1) % f, (m + a + 1) % f)


def chi_ex1(m: int) -> PeriodicSignCharacter:
    if m < 2:
        raise DomainError(f"chi_ex1 needs m >= 2, got {m}")
    f = 4 * m - 2
    return PeriodicSignCharacter(f, (2 * m - 3) % f, (2 * m + 1) % f)


def chi_ex2(m: int) -> PeriodicSignCharacter:
    if m < 2:
        raise DomainError(f"chi_ex2 needs m >= 2, got {m}")
    f = 4 * (m - 1)
    return PeriodicSignCharacter(f, (2 * m - 3) % f, (2 * m - 1) % f)


def chi_ex3(m: int, a: int) -> PeriodicSignCharacter:
    if m < 2 or not 0 <= a <= m - 2:
        raise DomainError(f"chi_ex3 needs m >= 2 and 0 <= a <= m-2, got m={m}, a={a}")
    f = 2 * (2 * m - 1)
    return PeriodicSignCharacter(f, (2 * (m - a - 1)) % f, (2 * (m + a)) % f)


@dataclass(frozen=True)
class TwistedPeriodicFunction:
    """C(n) = chi(n) * exp(2*pi*i*M*n^2 / (D*N)).

    The period is not assumed: the constructor checks C(n + f*N) = C(n) over
    one period and falls back to 2*f*N (where C is antiperiodic) otherwise.
    """

    base: PeriodicSignCharacter
    twist_denominator: int
    N: int
    M: int
    period: int = field(init=False)

    def __post_init__(self):
        if self.N < 1 or self.twist_denominator < 1:
            raise DomainError("N and the twist denominator must be positive")
        fN = self.base.modulus * self.N
        if all(self._exponent_matches(n, fN) for n in range(fN)):
            period = fN
        elif all(self._exponent_matches(n, 2 * fN) for n in range(2 * fN)):
            period = 2 * fN
        else:
            raise DomainError("twisted function has no period dividing 2*f*N")
        object.__setattr__(self, "period", period)

    @property
    def value_order(self) -> int:
        return self.twist_denominator * self.N

    def _twist(self, n: int) -> int:
        # exponent of zeta_{D*N}
        return (self.M * n * n) % self.value_order

    def _exponent_matches(self, n: int, shift: int) -> bool:
        a, b = self.base(n), self.base(n + shift)
        if a != b:
            return False
        return a == 0 or self._twist(n) == self._twist(n + shift)

    def __call__(self, n: int) -> CyclotomicNumber:
        s = self.base(n)
        if s == 0:
            return CyclotomicNumber.zero(self.value_order)
        return s * root_of_unity(Fraction(self._twist(n), self.value_order), self.value_order)

    def weighted_sum(self, weight: Callable[[int], Fraction | int], start: int, stop: int) -> CyclotomicNumber:
        """sum_{n=start}^{stop} weight(n) * C(n), exactly."""
        L = self.value_order
        counts = [0] * L
        for n in range(start, stop + 1):
            s = self.base(n)
            if s:
                w = weight(n)
                if w:
                    counts[self._twist(n)] += s * w
        return CyclotomicNumber.from_exponent_counts(L, counts)

    def period_sum(self) -> CyclotomicNumber:
        return self.weighted_sum(lambda n: 1, 1, self.period)

    def is_mean_zero(self) -> bool:
        return self.period_sum().is_zero()

    def odd_symmetry_holds(self) -> bool:
        P = self.period
        return all(self(P - n) == -self(n) for n in range(P + 1))


@lru_cache(maxsize=None)
def bernoulli_number(k: int) -> Fraction:
    """B_k with the convention B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return Fraction(1)
    # sum_{j=0}^{k} C(k+1, j) B_j = 0
    acc = sum(comb(k + 1, j) * bernoulli_number(j) for j in range(k))
    return -acc / (k + 1)


@lru_cache(maxsize=None)
def bernoulli_polynomial(k: int) -> QPolynomial:
    """B_k(x) = sum_j C(k, j) B_j x^(k-j), coefficients lowest degree first."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    coeffs = [0] * (k + 1)
    for j in range(k + 1):
        coeffs[k - j] = comb(k, j) * bernoulli_number(j)
    return QPolynomial(coeffs)


def _eval_rational(p: QPolynomial, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def L_value(C: TwistedPeriodicFunction, k: int) -> CyclotomicNumber:
    """L(-k, C) = -(P^k/(k+1)) sum_{n=1}^{P} C(n) B_{k+1}(n/P), P the verified period."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not C.is_mean_zero():
        raise DomainError("L-values at negative integers need a mean-zero periodic function")
    P = C.period
    B = bernoulli_polynomial(k + 1)
    scale = -Fraction(P**k, k + 1)
    return C.weighted_sum(lambda n: scale * _eval_rational(B, Fraction(n, P)), 1, P)


def _check_root(N: int, M: int) -> None:
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    if gcd(M, N) != 1:
        raise DomainError(f"M={M} and N={N} are not coprime")


def limit_value_hikami(m: int, a: int, N: int, M: int) -> CyclotomicNumber:
    """Radial limit of the Hikami false theta function at zeta_N^M.

    m * sum_{n=0}^{mN} chi(n) (1 - n/(mN)) zeta_N^(M n^2 / 4m), in Q(zeta_{4mN}).
    """
    _check_root(N, M)
    chi = chi_hikami(m, a)
    L = 4 * m * N
    counts = [0] * L
    for n in range(m * N + 1):
        s = chi(n)
        if s:
            counts[(M * n * n) % L] += s * (m - Fraction(n, N))
    return CyclotomicNumber.from_exponent_counts(L, counts)


def limit_value_quadratic_form(chi: PeriodicSignCharacter, D: int, scale: Fraction | int,
                               N: int, M: int) -> CyclotomicNumber:
    """scale * sum_{k=0}^{fN} k^2 chi(k) exp(2*pi*i*M*k^2/(D*N)), f = chi.modulus."""
    _check_root(N, M)
    if D < 1:
        raise DomainError("D must be positive")
    L = D * N
    counts = [0] * L
    for k in range(chi.modulus * N + 1):
        s = chi(k)
        if s:
            counts[(M * k * k) % L] += s * k * k
    return CyclotomicNumber.from_exponent_counts(L, counts) * Fraction(scale)


def character_qseries(chi: PeriodicSignCharacter, D: int, K: Fraction | int) -> FractionalQSeries:
    """sum_{n >= 0, n^2/D <= K} chi(n) q^(n^2/D) as a series in q^(1/D)."""
    xorder = int(Fraction(K) * D)
    out = [0] * (xorder + 1)
    n = 0
    while n * n <= xorder:
        out[n * n] += chi(n)
        n += 1
    return FractionalQSeries(D, TruncatedQSeries(xorder, out))


def full_period_sum(m: int, a: int, N: int, M: int) -> CyclotomicNumber:
    """sum_{k=0}^{N-1} (1 - z^((a+1)(2k+1))) z^(mk^2 + (m-a-1)k) at z = zeta_N^M."""
    _check_root(N, M)
    counts = [0] * N
    for k in range(N):
        e = m * k * k + (m - a - 1) * k
        counts[(M * e) % N] += 1
        counts[(M * (e + (a + 1) * (2 * k + 1))) % N] -= 1
    return CyclotomicNumber.from_exponent_counts(N, counts)


@dataclass(frozen=True)
class FalseThetaFamily:
    """Metadata tying a false theta family to its character and closed forms.

    The series equals weight * sum_n chi(n) q^(n^2/D); its truncated
    counterpart, multiplied by q^offset, gives the radial limits.
    """

    name: str
    uses_a: bool
    odd_N_only: bool
    character: Callable[[int, int], PeriodicSignCharacter]
    denominator: Callable[[int], int]
    weight: Callable[[int], Fraction]
    offset: Callable[[int, int], Fraction]
    quadratic_scale: Callable[[int, int], Fraction]
    min_m: int = 2

    def validate(self, m: int, a: int = 0) -> None:
        if m < self.min_m:
            raise DomainError(f"{self.name}: need m >= {self.min_m}, got m={m}")
        if self.uses_a:
            if not 0 <= a <= m - 2:
                raise DomainError(f"{self.name}: need 0 <= a <= m-2, got m={m}, a={a}")
        elif a != 0:
            raise DomainError(f"{self.name}: family has no parameter a (got a={a})")

    def validate_root(self, N: int, M: int) -> None:
        _check_root(N, M)
        if self.odd_N_only and N % 2 == 0:
            raise DomainError(f"{self.name}: only odd N are admissible, got N={N}")


FAMILIES: dict[str, FalseThetaFamily] = {
    "hikami": FalseThetaFamily(
        name="hikami",
        uses_a=True,
        odd_N_only=False,
        character=chi_hikami,
        denominator=lambda m: 4 * m,
        weight=lambda m: Fraction(m),
        offset=lambda m, a: Fraction((m - a - 1) ** 2, 4 * m),
        quadratic_scale=lambda m, N: Fraction(-1, 4 * m * N * N),
    ),
    "example1": FalseThetaFamily(
        name="example1",
        uses_a=False,
        odd_N_only=True,
        character=lambda m, a=0: chi_ex1(m),
        denominator=lambda m: 8 * (2 * m - 1),
        weight=lambda m: Fraction(2 * m - 1, 2),
        offset=lambda m, a: Fraction((2 * m - 3) ** 2, 8 * (2 * m - 1)),
        quadratic_scale=lambda m, N: Fraction(-1, 8 * (2 * m - 1) * N * N),
    ),
    "example2": FalseThetaFamily(
        name="example2",
        uses_a=False,
        odd_N_only=True,
        character=lambda m, a=0: chi_ex2(m),
        denominator=lambda m: 8 * (m - 1),
        weight=lambda m: Fraction(m - 1),
        offset=lambda m, a: Fraction((2 * m - 3) ** 2, 8 * (m - 1)),
        quadratic_scale=lambda m, N: Fraction(-1, 16 * (m - 1) * N * N),
    ),
    # the limit formula holds for every N; only the truncated sum needs N odd
    "example3": FalseThetaFamily(
        name="example3",
        uses_a=True,
        odd_N_only=False,
        character=chi_ex3,
        denominator=lambda m: 4 * (2 * m - 1),
        weight=lambda m: Fraction(2 * m - 1, 2),
        offset=lambda m, a: Fraction((m - a - 1) ** 2, 2 * m - 1),
        quadratic_scale=lambda m, N: Fraction(-1, 8 * (2 * m - 1) * N * N),
    ),
}


def get_family(family: str | FalseThetaFamily) -> FalseThetaFamily:
    if isinstance(family, FalseThetaFamily):
        return family
    try:
        return FAMILIES[family]
    except KeyError:
        raise DomainError(f"unknown family {family!r}; expected one of {sorted(FAMILIES)}") from None


def prefactor(family, m: int, a: int, N: int, M: int) -> CyclotomicNumber:
    """zeta_N^(M * offset), the root-of-unity factor in front of the truncated sum."""
    fam = get_family(family)
    fam.validate(m, a)
    _check_root(N, M)
    return root_of_unity(Fraction(M) * fam.offset(m, a) / N)


def twisted_function(family, m: int, a: int, N: int, M: int) -> TwistedPeriodicFunction:
    fam = get_family(family)
    fam.validate(m, a)
    _check_root(N, M)
    return TwistedPeriodicFunction(fam.character(m, a), fam.denominator(m), N, M)


def _quadratic_form(fam: FalseThetaFamily, m: int, a: int, N: int, M: int) -> CyclotomicNumber:
    return limit_value_quadratic_form(fam.character(m, a), fam.denominator(m),
                                      fam.quadratic_scale(m, N), N, M)


def radial_limit(family, m: int, a: int, N: int, M: int) -> CyclotomicNumber:
    """Exact radial limit of the false theta function at zeta_N^M.

    For the Hikami family this is the weighted character sum; for the other
    families it is the k^2-weighted quadratic form.
    """
    fam = get_family(family)
    fam.validate(m, a)
    fam.validate_root(N, M)
    if fam.name == "hikami":
        return limit_value_hikami(m, a, N, M)
    return _quadratic_form(fam, m, a, N, M)


def finite_evaluation(family, m: int, a: int, N: int, M: int) -> CyclotomicNumber:
    """Closed-form value of the truncated sum at zeta_N^M: zeta_N^(-M*offset) * quadratic form."""
    fam = get_family(family)
    fam.validate(m, a)
    fam.validate_root(N, M)
    return _quadratic_form(fam, m, a, N, M) * prefactor(fam, m, a, N, M).inverse()


def limit_via_L_value(family, m: int, a: int, N: int, M: int) -> CyclotomicNumber:
    """weight * L(0, C): the radial limit by way of Bernoulli polynomials."""
    fam = get_family(family)
    fam.validate(m, a)
    _check_root(N, M)
    C = twisted_function(fam, m, a, N, M)
    return L_value(C, 0) * fam.weight(m)
