"""Root systems, height censuses, exponents, complementary roots.

The exponents of a simple Lie algebra can be read off the positive roots:
if c_k counts the positive roots of height k, then k occurs c_k - c_{k+1}
times as an exponent.  The script prints the census for each supported type
and the closed-form complementary-root lists whose heights reproduce the
exponents.
"""

from paramode import build_root_system, supported_systems

print("height census and exponents")
print("-" * 60)
for kind, rank in supported_systems(5):
    rs = build_root_system(kind, rank)
    label = f"{kind}{rank}"
    print(f"{label:>4}  c_k = {rs.census()}  ->  exponents {rs.exponents()}")

print()
print("closed-form complementary roots (heights = exponents)")
print("-" * 60)
for kind, rank in [("A", 4), ("B", 3), ("C", 3), ("D", 4), ("G2", 2)]:
    rs = build_root_system(kind, rank)
    gammas = rs.closed_form_complementary_roots()
    pretty = ", ".join(f"{g} (ht {g.height})" for g in gammas)
    print(f"{kind}{rank}: {pretty}")

print()
print("the D4 census shows the doubled exponent l-1 = 3:")
rs = build_root_system("D", 4)
print(f"  census {rs.census()} -> exponents {rs.exponents()}")
