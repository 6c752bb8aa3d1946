"""Truncated Taylor solutions and the specialization diagram.

The recursion A_1 = A, A_k = d(A_{k-1}) + A_{k-1} A produces all formal
derivatives of a fundamental solution of d(y) = A y.  Evaluating the jets at
a point gives an exact truncated series solution; substituting polynomials
t_i -> r_i(z) first and expanding around z = c gives a second series, and the
two agree coefficient by coefficient.
"""

from fractions import Fraction

from paramode import (DiffRat, JetPoint, UniPoly, diagram_check, ode_residual,
                      parameter_matrix, taylor_solution)

# warm-up: y' = t y with t expanding to T gives exp(T^2/2)
a = [[DiffRat.jet(1)]]
point = JetPoint.from_rows([[0, 1] + [0] * 12])
x = taylor_solution(a, point, 9)
print("y' = t y with t -> T: series of exp(T^2/2):")
print("  ", [str(x.coeffs[k][0][0]) for k in range(9)])

print("\nODE residual dX/dT - Ahat X vanishes identically (mod T^9):",
      ode_residual(a, point, 10).is_zero())

# the same machinery on a 7x7 parameter matrix
g2 = parameter_matrix("G2", 2, "g2")
pt = JetPoint.from_rows([[Fraction(1, 2), 1] + [0] * 20,
                         [2, 0, 1] + [0] * 20])
print("\ng2 parameter matrix: residual zero at a rational jet point:",
      ode_residual(g2, pt, 10).is_zero())

# specialize t1 -> 1 + z, t2 -> z^2 and compare the two series routes
sl = parameter_matrix("A", 2, "sl")
polys = [UniPoly([1, 1]), UniPoly([0, 0, 1])]
print("\nsl_3 with t1 -> 1 + z, t2 -> z^2 at c = 0:")
print("  Taylor-then-specialize == specialize-then-Taylor:",
      diagram_check(sl, polys, 0, 10))

g2_polys = [UniPoly([0, 1, 1]), UniPoly([2, -1])]
print("g2 with t1 -> z + z^2, t2 -> 2 - z at c = 1:",
      diagram_check(g2, g2_polys, 1, 10))
