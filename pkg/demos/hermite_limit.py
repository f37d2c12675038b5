"""Flatten the disc and watch P_{m,n} turn into the complex Hermite polynomial.

The coefficients of P_{m,n} are polynomials in kappa, so the gap to H_{m,n}
shrinks linearly; interpolating the coefficients to kappa = 0 lands on
H_{m,n} to rounding.
"""
from twistlap import complex_hermite, hermite_limit_probe
from twistlap.limits import default_kappa_sequence

nu = 1
seq = default_kappa_sequence(nu)
for m, n in [(1, 1), (2, 1), (3, 3)]:
    rep = hermite_limit_probe(nu, m, n, seq)
    print(f"H_{m},{n} = {complex_hermite(m, n, nu)}")
    for k, d in zip(rep.kappas, rep.diffs):
        print(f"   kappa={str(k):>8}  max coeff diff {d:.3e}")
    order = "exact" if rep.order is None else f"{rep.order:.3f}"
    print(f"   order {order}, extrapolated gap {rep.extrapolated_diff:.1e}\n")
