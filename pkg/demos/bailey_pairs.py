"""Checking the Bailey pairs behind each family, including a broken one.

A pair (alpha_n, beta_n) relative to (a, q) must satisfy

    beta_n = sum_k alpha_k / ((q)_{n-k} (aq)_{n+k}).

Each pair is checked as power series through q^30.  The last check flips
the sign in alpha for the Example-3 pair; the definition then fails
immediately, which is how the corrected sign is pinned down.
"""
from __future__ import annotations

from falsetheta import lemma31_identity, pair_ex1, pair_ex2, pair_ex3, pair_prop41, verify_pair_definition

K = 30
for pair in (pair_prop41(2, 1), pair_ex1(3), pair_ex2(2), pair_ex3(2, 1)):
    ok = bool(verify_pair_definition(pair, 5, K))
    lemma = bool(lemma31_identity(pair, K))
    print(f"{pair.name:7s} {pair.params}  relative to {pair.relative_parameter:10s} "
          f"definition: {ok}  infinite transform: {lemma}")

broken = verify_pair_definition(pair_ex3(2, 1, sign_reverted=True), 4, K)
print("sign-reverted ex3: definition holds =", broken.ok, "; first failure (n, exponent) =", broken.first_failure)

print("beta_0 of prop41(2, 1):", pair_prop41(2, 1).beta(0, 6))
