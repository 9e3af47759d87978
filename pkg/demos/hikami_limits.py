"""Radial limits of the hikami family of false theta functions, computed two ways.

For each primitive root of unity zeta = zeta_N^M the truncated sum Y is
evaluated exactly in a cyclotomic field, multiplied by its root-of-unity
prefactor, and compared with the closed-form limit.  Along the way the
script shows why the inner summation indices must run over the natural
support of the Gaussian binomials rather than the printed 0..N-1 range.

Run with:  python3 demos/hikami_limits.py
"""
from __future__ import annotations

from math import gcd

from falsetheta import evaluate_at_root, limit_value_hikami, prefactor

print("m a N M  prefactor*Y == limit   printed range agrees")
for m in (2, 3, 4):
    for a in range(m - 1):
        for N in (1, 2, 3):
            for M in (M for M in range(1, N + 1) if gcd(M, N) == 1):
                Y = evaluate_at_root("hikami", m, a, N, M)
                Y_printed = evaluate_at_root("hikami", m, a, N, M, support="printed")
                lim = limit_value_hikami(m, a, N, M)
                pre = prefactor("hikami", m, a, N, M)
                print(f"{m} {a} {N} {M}  {str(pre * Y == lim):20s} {pre * Y_printed == lim}")

# the smallest case where the two readings part ways
Y = evaluate_at_root("hikami", 3, 1, 1, 1)
Y_printed = evaluate_at_root("hikami", 3, 1, 1, 1, support="printed")
print()
print("m=3, a=1, N=1: natural support gives", Y, "; printed range gives", Y_printed)
print("limit value:", limit_value_hikami(3, 1, 1, 1))
