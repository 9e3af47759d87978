"""Watch the series approach its radial limit along q = zeta_N^M exp(-t)."""
from __future__ import annotations

from falsetheta import complex_approximation, radial_limit
from falsetheta.radial import default_path, extrapolate_limit

family, m, a, N, M = "example1", 3, 0, 3, 1
exact = complex(complex_approximation(radial_limit(family, m, a, N, M)))
print(f"{family} m={m} N={N} M={M}: exact limit {exact:.12f}")

path = default_path(family, m, a, N, M, points=8)
est = extrapolate_limit(family, m, a, path)

# raw values converge only linearly in t; the fit removes the known terms
print(f"{'t':>12s}  {'|F(t) - limit|':>16s}")
for t, F in est.samples:
    print(f"{float(t):12.3e}  {abs(complex(F) - exact):16.3e}")
print(f"extrapolated: {complex(est.value):.12f}  (error {abs(complex(est.value) - exact):.1e}, "
      f"estimate {est.error:.1e})")
