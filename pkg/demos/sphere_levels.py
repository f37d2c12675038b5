"""Level dimensions on the sphere chart.

With 2nu/kappa = 2, level m carries 2nu/kappa + 2m + 1 square-integrable
eigenfunctions. Past 2nu/kappa + m the polynomial loses its top degree
(P_{1,4} = -4 z^3), which is why the count grows by two per level.
"""
from twistlap import SurfaceMagneticParams, level_spec, norm_squared
from twistlap.polynomials import P_via_ladder, ladder_eigenfunction

params = SurfaceMagneticParams(1, 1)
for m in range(5):
    norms = [norm_squared(params, ladder_eigenfunction(1, 1, m, n)) for n in range(2 * m + 5)]
    finite = [n for n, v in enumerate(norms) if v.is_finite]
    print(f"m={m}: finite for n in {finite[0]}..{finite[-1]} -> dimension {len(finite)}"
          f" (level_spec says {level_spec(params, m).dimension})")

print("\nP_1,4 =", P_via_ladder(params, 1, 4))
