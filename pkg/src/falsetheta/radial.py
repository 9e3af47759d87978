"""Numerical radial limits of the false theta functions.

Along q = zeta_N^M * exp(-t) a family's series is

    F(t) = weight * sum_{n>=1} C(n) exp(-n^2 s),    s = t/D,

with C(n) = chi(n) exp(2 pi i M n^2 / (D N)) periodic of period P.  For a
mean-zero C this has the asymptotic expansion

    F(t) ~ weight * sum_k L(-2k, C) (-s)^k / k!,

so after subtracting the k = 1, 2 terms (with exact L-values) the remainder
is c_0 + O(s^3), and a small least-squares fit in s^3, s^4, s^5 recovers
c_0, the radial limit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import mpmath

from .characters import L_value, get_family, twisted_function
from .cyclotomic import complex_approximation
from .errors import DomainError

__all__ = [
    "RadialPath",
    "RadialEstimate",
    "default_path",
    "partial_sum_at",
    "radial_value",
    "extrapolate_limit",
]


@dataclass(frozen=True)
class RadialPath:
    """Sample points q_j = exp(2 pi i M/N - t_j) approaching zeta_N^M from inside the disk."""

    N: int
    M: int
    t_schedule: tuple
    precision: int = 106

    def __post_init__(self):
        if self.N < 1 or gcd(self.M, self.N) != 1:
            raise DomainError(f"zeta_{self.N}^{self.M} is not a primitive root of unity")
        with mpmath.workprec(max(self.precision, 53)):
            ts = tuple(mpmath.mpf(t) for t in self.t_schedule)
        if any(t <= 0 for t in ts):
            raise DomainError("t values must be positive (|q| < 1)")
        if any(b >= a for a, b in zip(ts, ts[1:])):
            raise DomainError("t schedule must be strictly decreasing")
        if self.precision < 53:
            raise DomainError("precision must be at least 53 bits")
        object.__setattr__(self, "t_schedule", ts)

    def points(self):
        with mpmath.workprec(self.precision):
            for t in self.t_schedule:
                yield mpmath.expjpi(mpmath.mpf(2 * self.M) / self.N) * mpmath.exp(-t)


@dataclass
class RadialEstimate:
    value: mpmath.mpc
    error: float
    leading_coefficient: mpmath.mpc
    samples: list = field(default_factory=list)     # (t, F(t)) pairs
    fit_residual: float = 0.0

    def __complex__(self) -> complex:
        return complex(self.value)


def default_path(family, m: int, a: int, N: int, M: int, points: int = 6,
                 precision: int = 106) -> RadialPath:
    """t_j chosen so that s*P^2 runs over 2^-5 .. 2^-(4+points), P the period of C."""
    fam = get_family(family)
    C = twisted_function(fam, m, a, N, M)
    D = fam.denominator(m)
    P = C.period
    ts = [mpmath.mpf(D) * mpmath.mpf(2) ** (-(5 + j)) / P**2 for j in range(points)]
    return RadialPath(N, M, tuple(ts), precision)


def partial_sum_at(family, m: int, a: int, q, terms: int, log_q=None, precision: int = 106) -> mpmath.mpc:
    """weight * sum_{n < terms} chi(n) q^(n^2/D) by direct summation.

    Fractional powers are exp((n^2/D) * log q); pass ``log_q`` to pick the
    branch (on the radial path log q = 2 pi i M/N - t), otherwise the
    principal logarithm is used.
    """
    fam = get_family(family)
    fam.validate(m, a)
    chi = fam.character(m, a)
    D = fam.denominator(m)
    with mpmath.workprec(precision):
        if log_q is None:
            q = mpmath.mpmathify(q)
            if abs(q) >= 1:
                raise DomainError(f"|q| = {abs(q)} >= 1: the series does not converge")
            if q == 0:
                return mpmath.mpc(0)
            log_q = mpmath.log(q)
        else:
            log_q = mpmath.mpmathify(log_q)
            if mpmath.re(log_q) >= 0:
                raise DomainError("|q| >= 1: the series does not converge")
        total = mpmath.mpc(0)
        for n in range(terms):
            s = chi(n)
            if s:
                total += s * mpmath.exp(log_q * n * n / D)
        w = fam.weight(m)
        return total * w.numerator / w.denominator


def _residue_sum(rho: int, P: int, s, eps) -> mpmath.mpf:
    """sum_{j>=0} exp(-s (rho + j P)^2), summed until terms drop below eps."""
    n = rho
    term = mpmath.exp(-s * n * n)
    # ratio between consecutive terms: exp(-s (2 n P + P^2)), itself shrinking by exp(-2 s P^2)
    ratio = mpmath.exp(-s * (2 * n * P + P * P))
    step = mpmath.exp(-2 * s * P * P)
    total = mpmath.mpf(0)
    while term > eps:
        total += term
        term *= ratio
        ratio *= step
    return total


def radial_value(family, m: int, a: int, N: int, M: int, t, precision: int = 106) -> mpmath.mpc:
    """The full series at q = zeta_N^M exp(-t), summed residue class by residue class."""
    fam = get_family(family)
    C = twisted_function(fam, m, a, N, M)
    D = fam.denominator(m)
    P = C.period
    chi = C.base
    with mpmath.workprec(precision + 20):
        s = mpmath.mpf(t) / D
        eps = mpmath.mpf(2) ** (-(precision + 10))
        total = mpmath.mpc(0)
        for rho in range(1, P + 1):
            sign = chi(rho)
            if not sign:
                continue
            phase = mpmath.expjpi(mpmath.mpf(2 * M * rho * rho) / (D * N))
            total += sign * phase * _residue_sum(rho, P, s, eps)
        w = fam.weight(m)
        out = total * w.numerator / w.denominator
    with mpmath.workprec(precision):
        return +out


def _approx(z, precision):
    return complex_approximation(z, precision)


def extrapolate_limit(family, m: int, a: int, path: RadialPath, known_terms: int = 2,
                      fit_powers: tuple = (3, 4, 5)) -> RadialEstimate:
    """Estimate the t -> 0 limit of the series along ``path``.

    Subtracts weight * L(-2k, C) (-s)^k / k! for k = 1..known_terms, then fits
    c_0 + sum_p c_p s^p over the schedule.  Short schedules drop the highest
    powers so the fit keeps a spare degree of freedom.  The error estimate
    combines the fit residual with the change in c_0 when the largest-t
    sample is dropped.
    """
    fam = get_family(family)
    fam.validate(m, a)
    ts = path.t_schedule
    if len(ts) < 3:
        raise DomainError(f"need at least 3 schedule points, got {len(ts)}")
    fit_powers = tuple(fit_powers)[: len(ts) - 2]
    nparams = 1 + len(fit_powers)
    C = twisted_function(fam, m, a, path.N, path.M)
    D = fam.denominator(m)
    w = fam.weight(m)
    prec = path.precision
    Ls = [_approx(L_value(C, 2 * k) * w, prec) for k in range(known_terms + 1)]

    with mpmath.workprec(prec):
        samples, ys, ss = [], [], []
        for t in ts:
            F = radial_value(fam, m, a, path.N, path.M, t, prec)
            samples.append((t, F))
            s = t / D
            y = F
            for k in range(1, known_terms + 1):
                y -= Ls[k] * (-s) ** k / mpmath.factorial(k)
            ys.append(y)
            ss.append(s)

        def fit(idx):
            A = mpmath.matrix(len(idx), nparams)
            for r, i in enumerate(idx):
                A[r, 0] = 1
                for c, p in enumerate(fit_powers, start=1):
                    A[r, c] = (ss[i] / ss[idx[0]]) ** p     # column scaling keeps A well conditioned
            try:
                cond = mpmath.cond(A.T * A)
            except ZeroDivisionError:
                cond = mpmath.inf
            if cond > mpmath.mpf(10) ** 30:
                raise DomainError("ill-conditioned extrapolation fit (schedule points too close)")
            re = mpmath.qr_solve(A, mpmath.matrix([mpmath.re(ys[i]) for i in idx]))
            im = mpmath.qr_solve(A, mpmath.matrix([mpmath.im(ys[i]) for i in idx]))
            coeffs = [mpmath.mpc(re[0][j], im[0][j]) for j in range(nparams)]
            resid = max(abs(sum(A[r, j] * coeffs[j] for j in range(nparams)) - ys[i])
                        for r, i in enumerate(idx))
            return coeffs, resid

        all_idx = list(range(len(ts)))
        coeffs, resid = fit(all_idx)
        c0 = coeffs[0]
        if len(ts) > nparams:
            c0_alt, _ = fit(all_idx[1:])
            drift = abs(c0_alt[0] - c0)
        else:
            drift = abs(ys[-1] - c0)
        return RadialEstimate(
            value=c0,
            error=float(resid + drift),
            leading_coefficient=c0,
            samples=samples,
            fit_residual=float(resid),
        )
