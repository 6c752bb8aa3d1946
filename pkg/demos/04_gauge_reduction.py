"""Gauge reduction onto the complementary plane, step by step.

A random matrix in A_0^+ + b^- is conjugated by root group elements
exp(rho X) until, outside A_0^+, only the complementary root spaces carry
nonzero coefficients.  The result is checked by recomputing the gauge action
from scratch: u A u^{-1} + u' u^{-1} must equal the reduced matrix exactly.
"""

import random

from paramode import build_rep, gauge_apply, matrices_equal, reduce_to_complement
from paramode.verify import random_plane_matrix

rng = random.Random(2024)
rep = build_rep("C", 2)
gammas = rep.rs.closed_form_complementary_roots()
print(f"sp_4: complementary roots {[str(g) for g in gammas]}")

a = random_plane_matrix(rep, rng)
print("\nrandom matrix in A_0^+ + b^-:")
for row in a:
    print("  [" + ", ".join(str(e) for e in row) + "]")

u, b = reduce_to_complement(a, rep, gammas, "flipped")
print(f"\nreduction used {len(u.factors)} root group factors:")
for beta, rho in u.factors:
    print(f"  exp(rho X) with root {beta}, rho = {rho}")

print("\nreduced matrix (supported on A_0^+ and the X_{-gamma} spaces):")
for row in b:
    print("  [" + ", ".join(str(e) for e in row) + "]")

print("\noracle gauge_apply(u, A) == B:", matrices_equal(gauge_apply(u, a), b))
