"""Polynomials and truncated power series in q with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .cyclotomic import CyclotomicNumber, _as_scalar, _norm

__all__ = [
    "QPolynomial",
    "TruncatedQSeries",
    "pochhammer",
    "gaussian_binomial",
    "eval_at",
    "eval_at_root",
    "FractionalQSeries",
]


def _trimmed(coeffs: Iterable) -> tuple:
    out = [_norm(_as_scalar(c)) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _convolve(xs: Sequence, ys: Sequence, limit: int | None = None) -> list:
    n = len(xs) + len(ys) - 1
    if limit is not None:
        n = min(n, limit + 1)
    if n <= 0:
        return []
    out = [0] * n
    for i, x in enumerate(xs):
        if not x or i >= n:
            continue
        top = min(len(ys), n - i)
        for j in range(top):
            y = ys[j]
            if y:
                out[i + j] += x * y
    return out


class QPolynomial:
    """A polynomial in q with exact rational coefficients (lowest degree first)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        self._c = _trimmed(coeffs)

    @classmethod
    def _raw(cls, c: tuple) -> QPolynomial:
        obj = object.__new__(cls)
        obj._c = c
        return obj

    @classmethod
    def monomial(cls, e: int, c=1) -> QPolynomial:
        if e < 0:
            raise ValueError("negative powers of q are not polynomials")
        return cls([0] * e + [c])

    @classmethod
    def one(cls) -> QPolynomial:
        return cls._raw((1,))

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def __getitem__(self, e: int):
        return self._c[e] if 0 <= e < len(self._c) else 0

    def is_zero(self) -> bool:
        return not self._c

    def _lift(self, other) -> QPolynomial | None:
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, (int, _RationalABC)):
            return QPolynomial([other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self._c), len(o._c))
        return QPolynomial(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial._raw(tuple(-c for c in self._c))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QPolynomial(_convolve(self._c, o._c))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QPolynomial:
        out = QPolynomial.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self) -> int:
        return hash(self._c)

    def shift(self, s: int) -> QPolynomial:
        """Multiply by q^s (s >= 0)."""
        if s < 0:
            raise ValueError("negative shift")
        if not self._c:
            return self
        return QPolynomial._raw((0,) * s + self._c)

    def dilate(self, b: int) -> QPolynomial:
        """Substitute q -> q^b."""
        if b == 1 or not self._c:
            return self
        out = [0] * (b * (len(self._c) - 1) + 1)
        for i, c in enumerate(self._c):
            out[b * i] = c
        return QPolynomial._raw(tuple(out))

    def to_series(self, order: int) -> TruncatedQSeries:
        return TruncatedQSeries(order, self._c[: order + 1])

    def __call__(self, z):
        return eval_at(self, z)

    def __repr__(self) -> str:
        return f"QPolynomial({list(map(str, self._c))})"

    def __str__(self) -> str:
        return _format_terms(self._c) or "0"


def _format_terms(coeffs: Sequence) -> str:
    parts = []
    for e, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
        if mono and c == 1:
            parts.append(mono)
        elif mono and c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}" if mono else str(c))
    return " + ".join(parts).replace("+ -", "- ")


class TruncatedQSeries:
    """A power series in q known through q^order.

    Every operation drops terms above the smaller of the operands' orders.
    Comparing series that claim different orders is an error, since the
    shorter one cannot certify the higher coefficients.
    """

    __slots__ = ("_order", "_c")

    def __init__(self, order: int, coeffs: Iterable = ()):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        c = [_norm(_as_scalar(x)) for x in coeffs][: order + 1]
        c += [0] * (order + 1 - len(c))
        self._order = order
        self._c = c

    @classmethod
    def _raw(cls, order: int, c: list) -> TruncatedQSeries:
        obj = object.__new__(cls)
        obj._order = order
        obj._c = c
        return obj

    @classmethod
    def one(cls, order: int) -> TruncatedQSeries:
        return cls._raw(order, [1] + [0] * order)

    @classmethod
    def zero(cls, order: int) -> TruncatedQSeries:
        return cls._raw(order, [0] * (order + 1))

    @classmethod
    def monomial(cls, e: int, order: int, c=1) -> TruncatedQSeries:
        s = cls.zero(order)
        if e < 0:
            raise ValueError("negative powers of q are not allowed in a power series")
        if e <= order:
            s._c[e] = _norm(_as_scalar(c))
        return s

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple:
        return tuple(self._c)

    def __getitem__(self, e: int):
        if e > self._order:
            raise IndexError(f"coefficient of q^{e} is beyond the truncation order {self._order}")
        return self._c[e] if e >= 0 else 0

    def is_zero(self) -> bool:
        return not any(self._c)

    def _lift(self, other) -> TruncatedQSeries | None:
        if isinstance(other, TruncatedQSeries):
            return other
        if isinstance(other, QPolynomial):
            return other.to_series(self._order)
        if isinstance(other, (int, _RationalABC)):
            return TruncatedQSeries(self._order, [other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        K = min(self._order, o._order)
        return TruncatedQSeries._raw(K, [_norm(self._c[i] + o._c[i]) for i in range(K + 1)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedQSeries._raw(self._order, [-c for c in self._c])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        K = min(self._order, o._order)
        return TruncatedQSeries._raw(K, [_norm(self._c[i] - o._c[i]) for i in range(K + 1)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            c = _norm(_as_scalar(other))
            return TruncatedQSeries._raw(self._order, [_norm(x * c) for x in self._c])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        K = min(self._order, o._order)
        prod = _convolve(self._c[: K + 1], o._c[: K + 1], K)
        prod += [0] * (K + 1 - len(prod))
        return TruncatedQSeries._raw(K, [_norm(c) for c in prod])

    __rmul__ = __mul__

    def invert_unit(self) -> TruncatedQSeries:
        """1/s for a series with nonzero constant term."""
        c0 = self._c[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        inv0 = Fraction(1) / c0
        K = self._order
        out = [0] * (K + 1)
        out[0] = _norm(inv0)
        s = self._c
        for n in range(1, K + 1):
            acc = 0
            for j in range(1, n + 1):
                sj = s[j]
                if sj:
                    acc += sj * out[n - j]
            out[n] = _norm(-acc * inv0) if acc else 0
        return TruncatedQSeries._raw(K, out)

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            return self * (Fraction(1) / Fraction(other))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.invert_unit()

    def __rtruediv__(self, other):
        return self.invert_unit() * other

    def __pow__(self, e: int) -> TruncatedQSeries:
        if e < 0:
            return self.invert_unit() ** (-e)
        out = TruncatedQSeries.one(self._order)
        for _ in range(e):
            out = out * self
        return out

    def shift(self, s: int) -> TruncatedQSeries:
        """Multiply by q^s (s >= 0)."""
        if s < 0:
            raise ValueError("negative shift")
        K = self._order
        return TruncatedQSeries._raw(K, ([0] * s + self._c)[: K + 1])

    def dilate(self, b: int) -> TruncatedQSeries:
        """Substitute q -> q^b; the result is known through q^(b*order)."""
        K = self._order * b
        out = [0] * (K + 1)
        for i, c in enumerate(self._c):
            out[b * i] = c
        return TruncatedQSeries._raw(K, out)

    def truncate(self, order: int) -> TruncatedQSeries:
        if order > self._order:
            raise ValueError(f"cannot raise the truncation order from {self._order} to {order}")
        return TruncatedQSeries._raw(order, self._c[: order + 1])

    def first_difference(self, other: TruncatedQSeries) -> int | None:
        """Smallest exponent at which the two series differ, or None."""
        o = self._lift(other)
        if o._order != self._order:
            raise ValueError(f"series claim different orders ({self._order} vs {o._order})")
        for e, (x, y) in enumerate(zip(self._c, o._c)):
            if x != y:
                return e
        return None

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.first_difference(o) is None

    __hash__ = None

    def __repr__(self) -> str:
        return f"TruncatedQSeries({self._order}, {list(map(str, self._c))})"

    def __str__(self) -> str:
        return (_format_terms(self._c) or "0") + f" + O(q^{self._order + 1})"


def pochhammer(sign: int, shift: int, step: int, n: int) -> QPolynomial:
    """(sign*q^shift; q^step)_n as a polynomial.

    ``sign=+1`` gives prod (1 - q^(shift + j*step)), ``sign=-1`` gives
    prod (1 + q^(shift + j*step)), for j = 0..n-1.

    >>> str(pochhammer(+1, 1, 1, 2))
    '1 - q - q^2 + q^3'
    """
    if n < 0:
        raise ValueError("pochhammer length must be nonnegative")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if shift < 0 or step < 1:
        raise ValueError("need shift >= 0 and step >= 1")
    return QPolynomial(_pochhammer_int(sign, shift, step, n))


@lru_cache(maxsize=4096)
def _pochhammer_int(sign: int, shift: int, step: int, n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _pochhammer_int(sign, shift, step, n - 1)
    e = shift + (n - 1) * step
    out = list(prev) + [0] * e
    for i, c in enumerate(prev):
        out[i + e] -= sign * c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@lru_cache(maxsize=None)
def _gauss_int(n: int, k: int) -> tuple[int, ...]:
    # q-Pascal: [n, k] = [n-1, k] + q^(n-k) [n-1, k-1]
    if k < 0 or k > n:
        return ()
    if k == 0 or k == n:
        return (1,)
    a = _gauss_int(n - 1, k)
    b = _gauss_int(n - 1, k - 1)
    s = n - k
    out = [0] * max(len(a), len(b) + s)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + s] += c
    return tuple(out)


def gaussian_binomial(n: int, k: int, base: int = 1) -> QPolynomial:
    """The Gaussian polynomial [n choose k] in q^base; zero unless 0 <= k <= n."""
    if base < 1:
        raise ValueError("base must be a positive integer")
    if n < 0 or k < 0 or k > n:
        return QPolynomial()
    return QPolynomial._raw(_gauss_int(n, k)).dilate(base)


def eval_at(p: QPolynomial, z):
    """Evaluate p at z (a CyclotomicNumber, a rational, or any ring element) by Horner's rule."""
    if isinstance(z, CyclotomicNumber):
        acc = CyclotomicNumber.zero(z.order)
    else:
        acc = 0
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def eval_at_root(p: QPolynomial, N: int, M: int) -> CyclotomicNumber:
    """Evaluate p at zeta_N^M, folding exponents mod N before reducing."""
    counts = [0] * N
    for e, c in enumerate(p.coeffs):
        if c:
            counts[(e * M) % N] += c
    return CyclotomicNumber.from_exponent_counts(N, counts)


class FractionalQSeries:
    """A series in q with exponents in (1/D)Z, stored as a power series in x = q^(1/D).

    ``order`` is the truncation order in q (a Fraction); coefficients of
    x^e are known for e <= floor(order * D).
    """

    __slots__ = ("denominator", "body")

    def __init__(self, denominator: int, body: TruncatedQSeries):
        if denominator < 1:
            raise ValueError("denominator must be positive")
        self.denominator = denominator
        self.body = body

    @classmethod
    def from_qseries(cls, s: TruncatedQSeries, denominator: int, offset: Fraction | int = 0,
                     order: Fraction | int | None = None) -> FractionalQSeries:
        """q^offset * s(q), re-expressed in x = q^(1/denominator)."""
        off = Fraction(offset) * denominator
        if off.denominator != 1 or off < 0:
            raise ValueError(f"offset {offset} is not a nonnegative multiple of 1/{denominator}")
        off = int(off)
        xorder = (s.order + 1) * denominator - 1 + off
        if order is not None:
            xorder = min(xorder, int(Fraction(order) * denominator))
        out = [0] * (xorder + 1)
        for e, c in enumerate(s.coeffs):
            x = e * denominator + off
            if x > xorder:
                break
            out[x] = c
        return cls(denominator, TruncatedQSeries._raw(xorder, out))

    @property
    def order(self) -> Fraction:
        return Fraction(self.body.order, self.denominator)

    def terms(self):
        """Nonzero terms as (exponent in q, coefficient) pairs."""
        for e, c in enumerate(self.body.coeffs):
            if c:
                yield Fraction(e, self.denominator), c

    def coefficient(self, exponent: Fraction | int):
        x = Fraction(exponent) * self.denominator
        if x.denominator != 1:
            return 0
        return self.body[int(x)]

    def truncate(self, order: Fraction | int) -> FractionalQSeries:
        return FractionalQSeries(self.denominator, self.body.truncate(int(Fraction(order) * self.denominator)))

    def __mul__(self, c):
        if isinstance(c, (int, _RationalABC)) and not isinstance(c, bool):
            return FractionalQSeries(self.denominator, self.body * c)
        return NotImplemented

    __rmul__ = __mul__

    def first_difference(self, other: FractionalQSeries) -> Fraction | None:
        if other.denominator != self.denominator:
            raise ValueError("series use different exponent denominators")
        e = self.body.first_difference(other.body)
        return None if e is None else Fraction(e, self.denominator)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FractionalQSeries):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None

    def __str__(self) -> str:
        parts = []
        for e, c in self.terms():
            mono = "" if e == 0 else ("q" if e == 1 else f"q^({e})")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}" if mono else str(c))
        body = " + ".join(parts).replace("+ -", "- ") or "0"
        return f"{body} + O(q^({self.order}+))"

    def __repr__(self) -> str:
        return f"FractionalQSeries(D={self.denominator}, order={self.order}, {self})"
