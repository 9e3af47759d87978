"""Exact arithmetic in cyclotomic fields Q(zeta_L).

Elements are stored as coefficient vectors against the power basis
1, x, ..., x^(phi(L)-1) of Q[x]/(Phi_L), so equality inside one field is
plain vector equality.  Binary operations between elements of different
orders embed both operands into the field of the least common order.

Coefficients are Python ints where possible and ``Fraction`` otherwise;
the two mix freely under ``+``, ``-`` and ``*``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

import mpmath

Rational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "CyclotomicNumber",
    "RootOfUnityExponent",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_power",
    "root_of_unity",
    "zeta_power",
    "embed",
    "complex_approximation",
]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"euler_phi needs n >= 1, got {n}")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple[int, ...]:
    """Return the coefficients of Phi_L, lowest degree first.

    Computed by exact division of x^L - 1 by Phi_d for every proper divisor d.
    """
    if L < 1:
        raise ValueError(f"cyclotomic_polynomial needs L >= 1, got {L}")
    num = [-1] + [0] * (L - 1) + [1]
    for d in range(1, L):
        if L % d == 0:
            num = _exact_divide(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_divide(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic
    num = list(num)
    dq = len(den) - 1
    quot = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c:
            quot[i - dq] = c
            for j in range(dq + 1):
                num[i - dq + j] -= c * den[j]
    if any(num[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def _power_table(L: int) -> tuple[tuple[int, ...], ...]:
    """x^e mod Phi_L for 0 <= e < L, as integer vectors of length phi(L)."""
    phi = cyclotomic_polynomial(L)
    d = len(phi) - 1
    rows = []
    cur = [1] + [0] * (d - 1) if d > 0 else []
    for _ in range(L):
        rows.append(tuple(cur))
        # multiply by x, then reduce the x^d term
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi)]
    return tuple(rows)


def _reduce(poly: Sequence, L: int) -> tuple:
    """Reduce an arbitrary-length coefficient list modulo Phi_L."""
    phi = cyclotomic_polynomial(L)
    d = len(phi) - 1
    if len(poly) <= d:
        out = list(poly) + [0] * (d - len(poly))
        return tuple(_norm(c) for c in out)
    if len(poly) > 2 * L:
        # fold with x^L = 1 first
        folded = [0] * L
        for e, c in enumerate(poly):
            if c:
                folded[e % L] += c
        poly = folded
    work = list(poly)
    for i in range(len(work) - 1, d - 1, -1):
        c = work[i]
        if c:
            base = i - d
            for j in range(d):
                pj = phi[j]
                if pj:
                    work[base + j] -= c * pj
            work[i] = 0
    return tuple(_norm(c) for c in work[:d])


class CyclotomicNumber:
    """An element of Q(zeta_L), zeta_L = exp(2*pi*i/L).

    >>> z = root_power(3, 1)
    >>> (1 + z) * (1 + z).inverse() == 1
    True
    """

    __slots__ = ("_order", "_coeffs")

    def __init__(self, order: int, coeffs: Iterable[Scalar] = ()):
        if order < 1:
            raise ValueError(f"order must be positive, got {order}")
        coeffs = [_as_scalar(c) for c in coeffs]
        self._order = order
        self._coeffs = _reduce(coeffs, order)

    @classmethod
    def _raw(cls, order: int, coeffs: tuple) -> CyclotomicNumber:
        obj = object.__new__(cls)
        obj._order = order
        obj._coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, order: int = 1) -> CyclotomicNumber:
        return cls._raw(order, (0,) * euler_phi(order))

    @classmethod
    def one(cls, order: int = 1) -> CyclotomicNumber:
        return cls.from_scalar(1, order)

    @classmethod
    def from_scalar(cls, c: Scalar, order: int = 1) -> CyclotomicNumber:
        d = euler_phi(order)
        return cls._raw(order, (_norm(_as_scalar(c)),) + (0,) * (d - 1))

    @classmethod
    def from_exponent_counts(cls, order: int, counts: Sequence[Scalar]) -> CyclotomicNumber:
        """Sum of counts[e] * zeta_order^e over e (indices taken mod order)."""
        table = _power_table(order)
        acc = [0] * euler_phi(order)
        for e, c in enumerate(counts):
            if c:
                row = table[e % order]
                for j, r in enumerate(row):
                    if r:
                        acc[j] += c * r
        return cls._raw(order, tuple(_norm(c) for c in acc))

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c) for c in self._coeffs)

    @property
    def raw_coeffs(self) -> tuple:
        return self._coeffs

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def is_rational(self) -> bool:
        return not any(self._coeffs[1:])

    def embed(self, order: int) -> CyclotomicNumber:
        if order == self._order:
            return self
        if order % self._order:
            raise ValueError(f"cannot embed Q(zeta_{self._order}) into Q(zeta_{order})")
        step = order // self._order
        table = _power_table(order)
        acc = [0] * euler_phi(order)
        for i, c in enumerate(self._coeffs):
            if c:
                row = table[(i * step) % order]
                for j, r in enumerate(row):
                    if r:
                        acc[j] += c * r
        return CyclotomicNumber._raw(order, tuple(_norm(c) for c in acc))

    def _coerce(self, other) -> tuple[CyclotomicNumber, CyclotomicNumber] | None:
        if isinstance(other, CyclotomicNumber):
            if other._order == self._order:
                return self, other
            L = _lcm(self._order, other._order)
            return self.embed(L), other.embed(L)
        if isinstance(other, (int, _RationalABC)):
            return self, CyclotomicNumber.from_scalar(other, self._order)
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CyclotomicNumber._raw(a._order, tuple(_norm(x + y) for x, y in zip(a._coeffs, b._coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self._order, tuple(-c for c in self._coeffs))

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CyclotomicNumber._raw(a._order, tuple(_norm(x - y) for x, y in zip(a._coeffs, b._coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            c = _norm(_as_scalar(other))
            return CyclotomicNumber._raw(self._order, tuple(_norm(x * c) for x in self._coeffs))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        xs, ys = a._coeffs, b._coeffs
        prod = [0] * (len(xs) + len(ys) - 1)
        for i, x in enumerate(xs):
            if x:
                for j, y in enumerate(ys):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber._raw(a._order, _reduce(prod, a._order))

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_L."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self._order)]
        u = _poly_inverse_mod([Fraction(c) for c in self._coeffs], phi)
        return CyclotomicNumber(self._order, u)

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int) -> CyclotomicNumber:
        if e < 0:
            return self.inverse() ** (-e)
        result = CyclotomicNumber.one(self._order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a._coeffs == b._coeffs

    __hash__ = None  # equality crosses orders, so no consistent hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self._order}, {list(map(str, self._coeffs))})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self._coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if i and c == 1:
                terms.append(mono)
            elif i and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}" if mono else f"{c}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        return f"{body} (z = zeta_{self._order})"

    def approx(self, precision: int = 53) -> mpmath.mpc:
        return complex_approximation(self, precision)


def _as_scalar(c) -> Scalar:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, _RationalABC):
        return _norm(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
        _trim(a)
    return _trim(q), a


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def _poly_inverse_mod(a: list, modulus: list) -> list:
    # invariant: s * a == r (mod modulus)
    r0, r1 = list(modulus), _trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1:
            raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


@dataclass(frozen=True)
class RootOfUnityExponent:
    """exp(2*pi*i*p/L) in canonical form: 0 <= p < L and gcd(p, L) == 1 (or p == 0, L == 1)."""

    p: int
    L: int

    def __post_init__(self):
        if self.L < 1:
            raise ValueError("L must be positive")
        p = self.p % self.L
        g = gcd(p, self.L)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "L", self.L // g)

    @classmethod
    def from_fraction(cls, r: Fraction | int) -> RootOfUnityExponent:
        r = Fraction(r)
        return cls(r.numerator, r.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, self.L)

    def __mul__(self, other: RootOfUnityExponent) -> RootOfUnityExponent:
        if not isinstance(other, RootOfUnityExponent):
            return NotImplemented
        return RootOfUnityExponent.from_fraction(self.as_fraction() + other.as_fraction())

    def __pow__(self, e: int) -> RootOfUnityExponent:
        return RootOfUnityExponent.from_fraction(self.as_fraction() * e)

    def inverse(self) -> RootOfUnityExponent:
        return RootOfUnityExponent(-self.p, self.L)

    def to_cyclotomic(self, order: int | None = None) -> CyclotomicNumber:
        z = root_power(self.L, self.p)
        return z if order is None else z.embed(order)


def root_power(L: int, p: int) -> CyclotomicNumber:
    """zeta_L^p as an element of Q(zeta_L)."""
    if L < 1:
        raise ValueError(f"root_power needs L >= 1, got {L}")
    row = _power_table(L)[p % L]
    return CyclotomicNumber._raw(L, row)


def root_of_unity(r: Fraction | int, order: int | None = None) -> CyclotomicNumber:
    """exp(2*pi*i*r) for rational r, in its minimal field unless ``order`` is given."""
    e = RootOfUnityExponent.from_fraction(r)
    return e.to_cyclotomic(order)


def zeta_power(N: int, M: int, y: Fraction | int = 1, order: int | None = None) -> CyclotomicNumber:
    """zeta_N^(M*y) = exp(2*pi*i*M*y/N), the fractional-exponent convention used throughout."""
    return root_of_unity(Fraction(M) * Fraction(y) / N, order)


def embed(z: CyclotomicNumber, order: int) -> CyclotomicNumber:
    return z.embed(order)


def complex_approximation(z: CyclotomicNumber, precision: int = 53) -> mpmath.mpc:
    """Numerical value of z at zeta_L = exp(2*pi*i/L) using ``precision`` mantissa bits."""
    if precision < 53:
        raise ValueError("precision must be at least 53 bits")
    L = z.order
    with mpmath.workprec(precision + 10):
        total = mpmath.mpc(0)
        for j, c in enumerate(z.raw_coeffs):
            if c:
                c = Fraction(c)
                total += mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(mpmath.mpf(2 * j) / L)
    with mpmath.workprec(precision):
        return +total
