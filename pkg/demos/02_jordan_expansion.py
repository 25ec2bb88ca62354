"""
The Jordan-totient expansion identity
=====================================

For positive integers s, k, n:

    J_k(n)/n^k * zeta(s+k)  =  sum_{q>=1} mu(q)/J_{s+k}(q) * c_q^s(n^s).

The script truncates the series at increasing cutoffs and watches the
partial sums close in on the left-hand side.  At n = 1 both sides
collapse to zeta(s+k), which recovers the classical zeta series; at
s = 1 the series is Ramanujan's expansion of phi(n)/n * zeta(k+1).
"""

from cohenram import ExpansionQuery, expansion_partial_sum, sivaramakrishnan_check

for s, k, n in [(1, 1, 1), (1, 1, 6), (2, 1, 2), (2, 2, 12), (3, 2, 7)]:
    rep = expansion_partial_sum(ExpansionQuery(s, k, n, 10**4))
    print(f"s={s} k={k} n={n}: target = zeta({s+k}) * J_{k}({n})/{n}^{k} "
          f"= {rep.target:.12f}")
    for q, ps in rep.partial_sums:
        print(f"   Q={q:>6}  S_Q = {ps: .12f}   |S_Q - target| = {abs(ps - rep.target):.2e}")
    print(f"   converged: {rep.converged} (tolerance {rep.tolerance:.1e})")
    print()

print("the k-vector variant of the same identity, evidence-grade")
print("(brute-force vector sums, so the cutoff stays small):")
rep = sivaramakrishnan_check(2, 1, 2, 40)
for q, ps in rep.partial_sums:
    print(f"   R={q:>4}  S_R = {ps: .9f}   target = {rep.target:.9f}")
print(f"   relative error {rep.final_abs_error / rep.target:.2e}")
