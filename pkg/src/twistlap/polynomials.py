"""Jacobi, complex Hermite and the two-variable family ``P_{m,n}``.

``P_{m,n}`` is built four ways:

* ``ladder`` -- strip the weight off the ladder-chain image of the lowest-level
  generator ``(1 + kappa|z|^2)^(-(nu/kappa + m)) z^n``. This route is normative.
* ``d`` -- the ``m``-th power of ``(1 + kappa|z|^2)^2 d/dz``.
* ``mixed`` -- a mixed ``d^(m+n)/dz^m dzbar^n`` derivative of a pure weight,
  scaled by :func:`rodrigues_constant`.
* ``jacobi`` -- a monomial times a Jacobi polynomial in ``1 + 2 kappa|z|^2``.

For ``m > n`` the Jacobi closed form differs from the other three by a
nonzero rational factor; :func:`jacobi_ratio` measures it exactly.
"""
from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction

from .algebra import (
    BiPoly,
    RationalLike,
    UniPoly,
    WeightedFn,
    as_rational,
    binomial,
    pochhammer,
)
from .operators import D_power, raw_ladder_chain
from .params import SurfaceMagneticParams


class UndefinedConstantError(ArithmeticError):
    """The Gamma ratio of the mixed Rodrigues constant hits a pole."""


class InternalConsistencyError(ArithmeticError):
    """A construction that must cancel its weight did not."""


class Route(str, Enum):
    LADDER = "ladder"
    RODRIGUES_D = "d"
    RODRIGUES_MIXED = "mixed"
    JACOBI_CLOSED = "jacobi"


# ---------------------------------------------------------------------------
# Jacobi polynomials with arbitrary rational parameters


def jacobi(l: int, a: RationalLike, b: RationalLike) -> UniPoly:
    """``P_l^{(a,b)}(x)`` from the finite binomial sum.

    ``sum_k C(l+a, l-k) C(l+b, k) ((x-1)/2)^k ((x+1)/2)^(l-k)``, valid for any
    rational ``a``, ``b``.
    """
    if l < 0:
        raise ValueError("degree must be nonnegative")
    a, b = as_rational(a), as_rational(b)
    minus = UniPoly([Fraction(-1, 2), Fraction(1, 2)])
    plus = UniPoly([Fraction(1, 2), Fraction(1, 2)])
    out = UniPoly()
    for k in range(l + 1):
        c = binomial(l + a, l - k) * binomial(l + b, k)
        if c:
            out = out + (minus**k) * (plus ** (l - k)) * c
    return out


def jacobi_contiguous_check(j: int, a: RationalLike, b: RationalLike) -> bool:
    """``(x^2-1) P' + [(a-b) + (a+b)x] P == 2(j+1) P_{j+1}^{(a-1,b-1)}`` with ``P = P_j^{(a,b)}``."""
    a, b = as_rational(a), as_rational(b)
    p = jacobi(j, a, b)
    lhs = UniPoly([-1, 0, 1]) * p.diff() + UniPoly([a - b, a + b]) * p
    return lhs == jacobi(j + 1, a - 1, b - 1) * (2 * (j + 1))


def jacobi_derivative_check(j: int, a: RationalLike, b: RationalLike) -> bool:
    """``d/dx P_{j+1}^{(a-1,b-1)} == (j+a+b)/2 P_j^{(a,b)}``."""
    a, b = as_rational(a), as_rational(b)
    return jacobi(j + 1, a - 1, b - 1).diff() == jacobi(j, a, b) * ((j + a + b) / 2)


def jacobi_ode_residual(l: int, alpha: RationalLike, beta: RationalLike) -> tuple[UniPoly, UniPoly]:
    """Residuals of ``y = P_l^{(alpha,beta)}`` in two forms of the Jacobi ODE.

    Returns ``(printed, corrected)`` where the first-order and zeroth-order
    parts are ``[(alpha-beta) + (alpha+beta+2)x] y' - l(l+alpha+beta+1) y``
    and the leading part is ``(1-x^2) y''`` for ``printed`` and
    ``(x^2-1) y''`` for ``corrected``. Only the corrected one vanishes.
    """
    alpha, beta = as_rational(alpha), as_rational(beta)
    y = jacobi(l, alpha, beta)
    y1 = y.diff()
    rest = UniPoly([alpha - beta, alpha + beta + 2]) * y1 - y * (l * (l + alpha + beta + 1))
    y2 = y1.diff()
    printed = UniPoly([1, 0, -1]) * y2 + rest
    corrected = UniPoly([-1, 0, 1]) * y2 + rest
    return printed, corrected


# ---------------------------------------------------------------------------
# complex Hermite


def complex_hermite(m: int, n: int, nu: RationalLike) -> BiPoly:
    """``H_{m,n}^nu`` by symbolic Rodrigues differentiation of ``exp(-2 nu|z|^2)``."""
    nu = as_rational(nu)
    if nu <= 0:
        raise ValueError("nu must be positive")
    g = WeightedFn.exp(-2 * nu)
    for _ in range(n):
        g = g.diff("zbar")
    for _ in range(m):
        g = g.diff("z")
    return g.poly.scale(Fraction((-1) ** (m + n)) / (2 * nu) ** n)


# ---------------------------------------------------------------------------
# the two-variable family


def ladder_eigenfunction(kappa: RationalLike, nu: RationalLike, m: int, n: int) -> WeightedFn:
    """Ladder-chain image of the lowest-level generator, with no range checks.

    For ``kappa = 0`` the generator is ``exp(-nu|z|^2) z^n`` and every factor
    of the chain is ``nabla_nu``.
    """
    kappa, nu = as_rational(kappa), as_rational(nu)
    zn = BiPoly.monomial(n, 0)
    if kappa == 0:
        seed = WeightedFn.exp(-nu, zn)
    else:
        seed = WeightedFn.power(kappa, -(nu / kappa + m), zn)
    return raw_ladder_chain(kappa, nu, m, seed)


def _strip(f: WeightedFn, route: str) -> BiPoly:
    try:
        return f.to_polynomial()
    except ValueError as exc:
        raise InternalConsistencyError(f"{route}: {exc}") from None


def _checked(params: SurfaceMagneticParams, m: int) -> tuple[Fraction, Fraction]:
    if params.kappa == 0:
        raise ValueError("this route needs kappa != 0; use complex_hermite on the plane")
    params.check_level(m)
    return params.kappa, params.ratio


def P_via_ladder(params: SurfaceMagneticParams, m: int, n: int) -> BiPoly:
    kappa, t = _checked(params, m)
    phi = ladder_eigenfunction(kappa, params.nu, m, n)
    return _strip(phi.times_h(t + m), "ladder")


def P_via_D(params: SurfaceMagneticParams, m: int, n: int) -> BiPoly:
    kappa, t = _checked(params, m)
    g = WeightedFn.power(kappa, -2 * (t + m), BiPoly.monomial(n, 0))
    g = D_power(m, g, kappa).times_h(2 * t + m) * (-1) ** m
    return _strip(g, "d")


def rodrigues_constant(params: SurfaceMagneticParams, m: int, n: int) -> Fraction:
    """``(-1)^(m+n) / (kappa^n (A-n)_n)`` with ``A = 2(nu/kappa + m) - m + 1``.

    This is the Gamma ratio ``Gamma(A - n) / Gamma(A)`` written as a finite
    product, so it stays exact across the poles of Gamma.
    """
    if params.kappa == 0:
        raise ValueError("rodrigues_constant needs kappa != 0")
    kappa, t = params.kappa, params.ratio
    A = 2 * (t + m) - m + 1
    poch = pochhammer(A - n, n)
    if not poch:
        raise UndefinedConstantError(
            f"Gamma ratio degenerates at m={m}, n={n} (kappa={kappa}, nu={params.nu})"
        )
    return Fraction((-1) ** (m + n)) / (kappa**n * poch)


def P_via_mixed_rodrigues(params: SurfaceMagneticParams, m: int, n: int) -> BiPoly:
    kappa, t = _checked(params, m)
    c = rodrigues_constant(params, m, n)
    g = WeightedFn.power(kappa, -2 * (t + m) + m + n - 1)
    for _ in range(n):
        g = g.diff("zbar")
    for _ in range(m):
        g = g.diff("z")
    return _strip(g.times_h(2 * (t + m) + 1) * c, "mixed")


def P_via_jacobi(params: SurfaceMagneticParams, m: int, n: int) -> BiPoly:
    """Monomial times Jacobi polynomial in ``1 + 2 kappa|z|^2``, split on ``m <= n``."""
    kappa, t = _checked(params, m)
    beta = -2 * (t + m) - 1
    low = min(m, n)
    radial = jacobi(low, abs(m - n), beta).compose_affine(1, 2 * kappa).radial()
    mono = BiPoly.monomial(n - m, 0) if m <= n else BiPoly.monomial(0, m - n)
    return (mono * radial).scale((-1) ** m * math.factorial(low))


_ROUTES = {
    Route.LADDER: P_via_ladder,
    Route.RODRIGUES_D: P_via_D,
    Route.RODRIGUES_MIXED: P_via_mixed_rodrigues,
    Route.JACOBI_CLOSED: P_via_jacobi,
}


def P(params: SurfaceMagneticParams, m: int, n: int, route: Route | str = Route.LADDER) -> BiPoly:
    """``P_{m,n}`` along the chosen route; the plane falls back to complex Hermite."""
    route = Route(route)
    if params.kappa == 0:
        params.check_level(m)
        return complex_hermite(m, n, params.nu)
    return _ROUTES[route](params, m, n)


def jacobi_ratio(params: SurfaceMagneticParams, m: int, n: int) -> Fraction | None:
    """Exact ``r`` with ``P_via_jacobi == r * P_via_ladder``, or None if not proportional."""
    return P_via_jacobi(params, m, n).ratio_to(P_via_ladder(params, m, n))


def disc_polynomial(m: int, n: int, nu: RationalLike) -> BiPoly:
    """``P_{m,n}`` on the unit hyperbolic disc (``kappa = -1``)."""
    params = SurfaceMagneticParams(-1, nu)
    poly = P_via_ladder(params, m, n)
    if P_via_jacobi(params, m, n).ratio_to(poly) in (None, 0):
        raise InternalConsistencyError(f"disc polynomial ({m}, {n}) not proportional to its Jacobi form")
    return poly
