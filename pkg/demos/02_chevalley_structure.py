"""Explicit Chevalley matrices and the structure behind the parameter planes.

Builds the 7x7 realization of g2 (the one place where sqrt2 shows up),
inspects the grading element H_0, the centralizer of the principal nilpotent
A_0^+, and the two direct-sum decompositions of the Borel subalgebra that
make the complementary root spaces work.
"""

from paramode import (build_rep, bracket, centralizer_basis,
                      find_complementary_roots, principal_nilpotents,
                      verify_bplus_decomposition, w_basis)

rep = build_rep("G2", 2)
print(f"g2 as {rep.n}x{rep.n} matrices, dimension {rep.dim}")
print("grading element H_0 (diagonal):", [str(rep.h0[i][i]) for i in range(rep.n)])

a0p, a0m = principal_nilpotents(rep)
print("\n[H_0, X_alpha] = ht(alpha) X_alpha for every root vector:")
for root in rep.rs.positive_roots[:3]:
    x = rep.root_vector(root)
    br = bracket(rep.h0, x)
    ratio = next(br[i][j] / x[i][j] for i in range(7) for j in range(7) if x[i][j])
    print(f"  {root}: eigenvalue {ratio} (height {root.height})")

print("\ncentralizer of A_0^+ is graded by the exponents:")
for kind, rank in [("A", 3), ("C", 3), ("D", 4), ("G2", 2)]:
    r = build_rep(kind, rank)
    grades = [g for g, _ in centralizer_basis(r)]
    print(f"  {kind}{rank}: kernel grades {grades}, exponents {r.rs.exponents()}")

print("\nBorel direct sum b+ = centralizer (+) [A_0^-, u+]:")
for kind, rank in [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G2", 2)]:
    rpt = verify_bplus_decomposition(build_rep(kind, rank))
    print(f"  {kind}{rank}: dim b+ = {rpt['dim_b']} = {rpt['centralizer_dim']} + "
          f"{rpt['image_dim']}, full rank: {rpt['full_rank']}")

print("\ngreedy complementary-root search (may differ from the closed form):")
for kind, rank in [("A", 3), ("D", 4)]:
    r = build_rep(kind, rank)
    found = find_complementary_roots(r)
    closed = r.rs.closed_form_complementary_roots()
    print(f"  {kind}{rank}: greedy {[str(g) for g in found]}")
    print(f"       closed form {[str(g) for g in closed]}")

print("\nW basis sizes match the number of positive roots:")
r = build_rep("C", 3)
print(f"  C3: |W| = {len(w_basis(r))} = |Phi+| = {len(r.rs.positive_roots)}")
