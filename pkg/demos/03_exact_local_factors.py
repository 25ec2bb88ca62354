"""
Exact Euler factors, no floating point
======================================

Restricted to squarefree q built from a finite prime set P, the series

    sum_q mu(q) c_q^s(n^s) / J_{s+k}(q)

factors exactly into prod_{p in P} (1 + mu(p) c_p^s(n^s)/J_{s+k}(p)).
Over a finite P this is an identity of rational numbers, so it is
checked with exact arithmetic: equality, not tolerance.
"""

from itertools import combinations

from cohenram import local_factor_cases, local_factor_exact

primes = (2, 3, 5, 7, 11, 13)

print("one case in full, s=1 k=1 n=1, P={2}:")
lhs, rhs = local_factor_exact(1, 1, 1, (2,))
print(f"   sum side  = {lhs}\n   prod side = {rhs}\n   equal: {lhs == rhs}")
print()

print("sweep: every subset of {2,3,5,7,11,13}, s,k in {1,2,3}, n in 1..30")
cases = 0
for s in (1, 2, 3):
    for k in (1, 2, 3):
        for n in range(1, 31):
            for size in range(len(primes) + 1):
                for subset in combinations(primes, size):
                    lhs, rhs = local_factor_exact(s, k, n, subset)
                    assert lhs == rhs, (s, k, n, subset)
                    cases += 1
print(f"   {cases} cases, all exactly equal")
print()

print("each local factor also has a closed form, split on p | n:")
for p, s, k, n in [(2, 1, 1, 3), (2, 1, 1, 2), (3, 2, 2, 1), (5, 2, 1, 10)]:
    rel = "divides" if n % p == 0 else "does not divide"
    print(f"   p={p} {rel} n={n}:  factor = {local_factor_cases(s, k, p, n)}")
