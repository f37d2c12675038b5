"""Exact Gram matrix on the disc.

Inner products reduce to Beta integrals in |z|^2, so they come out as exact
rational multiples of pi. Off-diagonal entries vanish either by angular
momentum or by radial Jacobi orthogonality.
"""
from twistlap import SurfaceMagneticParams, gram_matrix

params = SurfaceMagneticParams(-1, 3)
entries = [(m, n) for m in range(3) for n in range(3)]
gram = gram_matrix(params, entries)

width = max(len(str(v)) for row in gram for v in row)
print("     " + "  ".join(f"{str(e):>{width}}" for e in entries))
for e, row in zip(entries, gram):
    print(f"{str(e):>5}" + "  ".join(f"{str(v):>{width}}" for v in row))

# (1,0) and (2,1) share angular momentum -1; the zero is radial
print("\n<Phi_10, Phi_21> =", gram_matrix(params, [(1, 0), (2, 1)])[0][1])
