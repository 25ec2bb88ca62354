"""
Cohen-Ramanujan sums, three ways
================================

c_r^s(n) sums e^(2*pi*i*n*h/r^s) over 1 <= h <= r^s whose generalized
gcd (h, r^s)_s is 1.  The library evaluates it three independent ways;
this script shows them agreeing and the structure that makes the fast
route work.
"""

from cohenram import (
    crs_direct,
    crs_divisor_sum,
    crs_fast,
    generalized_gcd,
    jordan,
    kvector_sum,
)

print("generalized gcd: (12, 18)_1 =", generalized_gcd(12, 18, 1),
      "  (4, 8)_2 =", generalized_gcd(4, 8, 2),
      "  (7, 9)_2 =", generalized_gcd(7, 9, 2))
print()

print("three evaluators on a small grid (r, s, n):")
for r, s, n in [(2, 2, 4), (2, 2, 2), (6, 1, 3), (9, 1, 3), (12, 2, 36)]:
    d, v, f = crs_direct(r, s, n), crs_divisor_sum(r, s, n), crs_fast(r, s, n)
    assert d == v == f
    print(f"  c_{r}^{s}({n}) = {d:>4}   (direct = divisor-sum = multiplicative)")
print()

print("prime-power three-case rule at r = 3^e, s = 2:")
for r, args in ((3, (9, 3)), (9, (81, 9, 1))):
    for n in args:
        print(f"  c_{r}^2({n:>3}) = {crs_fast(r, 2, n):>4}")
print()

print("special arguments:")
print("  c_r^s(0) counts the admissible h, so it equals J_s(r):",
      crs_fast(10, 2, 0), "=", jordan(2, 10))
print("  c_r^s(1) collapses to the Mobius function:",
      [crs_fast(r, 2, 1) for r in range(1, 11)])
print()

print("at s = 1 everything reduces to the classical Ramanujan sum,")
print("and the 1-vector Cohen sum is the same object:")
row_f = [crs_fast(r, 1, 6) for r in range(1, 13)]
row_k = [kvector_sum(1, 6, r) for r in range(1, 13)]
assert row_f == row_k
print("  c_r(6) for r = 1..12:", row_f)
