import math
import random
from fractions import Fraction as F

import pytest
from scipy.integrate import quad

from twistlap.algebra import BiPoly, WeightedFn
from twistlap.operators import nabla, nabla_star, random_poly
from twistlap.params import InvalidParamsError, LevelRangeError, SurfaceMagneticParams, validate_params
from twistlap.polynomials import complex_hermite, ladder_eigenfunction
from twistlap.spectral import (
    DIVERGENT,
    PiRational,
    basis_index,
    eigenfunction,
    eigenvalue,
    gram_matrix,
    inner_product,
    level_spec,
    norm_squared,
    prop_basis_element,
    radial_moment,
    verify_eigen,
)

DISC = SurfaceMagneticParams(-1, 3)


def test_validate_params():
    assert validate_params(-1, 3) == (True, 2)
    assert validate_params(1, F(3, 2)) == (True, None)
    assert validate_params(1, F(7, 10)) == (False, None)
    assert validate_params(0, 1) == (True, None)
    assert validate_params(-1, F(1, 2))[0] is False
    assert validate_params(-1, 0)[0] is False
    # bound exactly an integer: level 2 sits on the boundary and is excluded
    assert validate_params(-1, F(5, 2)) == (True, 1)
    with pytest.raises(InvalidParamsError):
        SurfaceMagneticParams(1, F(7, 10))


def test_eigenvalue():
    assert eigenvalue(-1, 3, 0) == 3
    assert eigenvalue(-1, 3, 1) == 7
    assert eigenvalue(-1, 3, 2) == 9
    assert eigenvalue(0, 1, 2) == 5
    assert eigenvalue(F(1, 2), 2, 3) == 2 * 7 + 12 * F(1, 2)
    with pytest.raises(LevelRangeError):
        eigenvalue(-1, 3, 3)


def test_radial_moment_examples():
    assert radial_moment(-1, 0, -4) == PiRational(F(1, 5))
    assert radial_moment(0, 1, 1) == PiRational(1)
    assert radial_moment(-1, 0, 1) is DIVERGENT
    assert radial_moment(1, 2, 3) is DIVERGENT
    assert radial_moment(0, 0, 0) is DIVERGENT


@pytest.mark.parametrize(
    "kappa,j,sigma",
    [(F(-1), 2, F(-3, 2)), (F(-1, 2), 1, F(1, 3)), (F(2), 1, F(9, 2)), (F(1, 3), 0, F(5, 4)), (F(0), 3, F(3, 2))],
)
def test_radial_moment_against_quadrature(kappa, j, sigma):
    k, s = float(kappa), float(sigma)
    if kappa < 0:
        # substitute u = -kappa r^2 on the unit interval
        val, _ = quad(lambda u: u**j * (1 - u) ** (-s), 0, 1)
        ref = math.pi * val / (-k) ** (j + 1)
    elif kappa > 0:
        val, _ = quad(lambda u: u**j * (1 + k * u) ** (-s), 0, math.inf)
        ref = math.pi * val
    else:
        val, _ = quad(lambda u: u**j * math.exp(-s * u), 0, math.inf)
        ref = math.pi * val
    got = float(radial_moment(kappa, j, sigma))
    assert abs(got - ref) <= 1e-8 * abs(ref)


def test_pi_rational_formatting():
    assert str(PiRational(F(1, 5))) == "π/5"
    assert PiRational(F(2, 3)).to_json() == {"pi_multiple": "2/3"}
    assert DIVERGENT.to_json() == {"divergent": True}


def test_inner_product_examples():
    phi00 = eigenfunction(DISC, 0, 0)
    assert norm_squared(DISC, phi00) == PiRational(F(1, 5))
    assert inner_product(DISC, phi00, eigenfunction(DISC, 0, 1)) == PiRational(0)
    flat = SurfaceMagneticParams(0, F(1, 2))
    g = WeightedFn.exp(F(-1, 2))
    assert inner_product(flat, g, g) == PiRational(1)


def test_level_spec():
    assert level_spec(DISC, 1).n_max is None
    sphere = SurfaceMagneticParams(1, 1)
    assert list(level_spec(sphere, 0).indices()) == [0, 1, 2]
    # full L^2 range is 2nu/kappa + 2m (see the sphere dimension test)
    assert level_spec(sphere, 2).dimension == 7
    assert 7 not in level_spec(sphere, 2)
    with pytest.raises(ValueError):
        level_spec(DISC, 0).indices()


def test_eigenfunction_examples():
    phi = eigenfunction(DISC, 0, 0)
    assert phi.exponent == 3 and phi.poly == 1
    phi = eigenfunction(DISC, 1, 1)
    assert phi.exponent == 2 and phi.poly == BiPoly({(1, 1): 5, (0, 0): -1})
    flat = SurfaceMagneticParams(0, 2)
    assert eigenfunction(flat, 1, 1) == WeightedFn.exp(-2, complex_hermite(1, 1, 2))
    with pytest.raises(LevelRangeError):
        eigenfunction(SurfaceMagneticParams(1, 1), 0, 3)


def test_verify_eigen_grid():
    params = SurfaceMagneticParams(-1, 4)
    for m in range(4):
        for n in range(6):
            assert verify_eigen(params, m, n)
    assert verify_eigen(SurfaceMagneticParams(0, 1), 2, 3)


def test_gram_examples():
    gram = gram_matrix(DISC, [(0, 0), (0, 1), (1, 1)])
    assert [str(gram[i][i]) for i in range(3)] == ["π/5", "π/30", "π/3"]
    assert all(gram[i][j] == PiRational(0) for i in range(3) for j in range(3) if i != j)
    # same angular momentum, different levels
    gram = gram_matrix(DISC, [(1, 0), (2, 1)])
    assert gram[0][1] == PiRational(0)
    assert gram_matrix(DISC, [(2, 2)])[0][0].q > 0


def test_gram_sphere_includes_extended_range():
    sphere = SurfaceMagneticParams(1, 1)
    entries = [(1, n) for n in range(5)] + [(0, 0), (2, 6)]
    gram = gram_matrix(sphere, entries)
    for i in range(len(entries)):
        for j in range(len(entries)):
            assert gram[i][j].is_finite
            assert (gram[i][j].q > 0) if i == j else gram[i][j].q == 0


def test_prop_basis_element():
    assert prop_basis_element(DISC, 0, 3, 0) == eigenfunction(DISC, 0, 3)
    for m, n in [(1, 0), (1, 2), (2, 0), (2, 5), (1, 1)]:
        p, q = basis_index(m, n)
        elem = prop_basis_element(DISC, m, p, q)
        phi = eigenfunction(DISC, m, n)
        assert elem.exponent == phi.exponent
        assert elem.poly.ratio_to(phi.poly) not in (None, 0)
    with pytest.raises(ValueError):
        prop_basis_element(DISC, 2, 1, 1)


# ---------------------------------------------------------------------------
# analytic properties


@pytest.mark.parametrize("kappa,s", [(F(-1), F(4)), (F(-1, 2), F(7, 2)), (F(1), F(-8)), (F(2), F(-15, 2))])
def test_ladder_operators_are_adjoint(kappa, s):
    # probes vanish fast enough at the boundary for integration by parts
    params = SurfaceMagneticParams(kappa, 4)
    rng = random.Random(2)
    for alpha in (F(3), F(5, 2), F(-1, 3)):
        for _ in range(4):
            f = WeightedFn.power(kappa, s, random_poly(rng, 3))
            g = WeightedFn.power(kappa, s, random_poly(rng, 3))
            assert inner_product(params, nabla(alpha, f, kappa), g) == inner_product(
                params, f, nabla_star(alpha, g, kappa)
            )


def test_divergence_boundary_generic_nu():
    # 2nu/|kappa| = 13/2 is not an integer; bound (2nu+kappa)/(-2kappa) = 11/4
    kappa, nu = F(-1), F(13, 4)
    for m in range(4):
        for n in range(6):
            value = norm_squared(SurfaceMagneticParams(kappa, nu), ladder_eigenfunction(kappa, nu, m, n))
            assert value.is_finite == (m <= 2)


def test_sphere_dimension_law():
    sphere = SurfaceMagneticParams(1, 1)
    for m in range(5):
        top = 2 + 2 * m
        for n in range(top + 2):
            value = norm_squared(sphere, ladder_eigenfunction(1, 1, m, n))
            assert value.is_finite == (n <= top), (m, n)
        assert level_spec(sphere, m).dimension == top + 1


def test_disc_level_past_bound_collapses():
    # nabla_{nu+3kappa} = nabla_0 at kappa=-1, nu=3
    kappa, nu = F(-1), F(3)
    assert ladder_eigenfunction(kappa, nu, 3, 0).is_zero()
    for n in range(1, 6):
        assert ladder_eigenfunction(kappa, nu, 3, n) == ladder_eigenfunction(kappa, nu, 2, n - 1) * -n
