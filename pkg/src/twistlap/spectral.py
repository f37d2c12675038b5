"""Eigenvalues, eigenfunctions and exact L^2 inner products.

Inner products are returned as exact rational multiples of pi. Angular
integration kills every monomial ``z^i zbar^j`` with ``i != j``; what is left
is a one-dimensional Beta integral in ``u = |z|^2``, evaluated as a finite
product.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .algebra import (
    BiPoly,
    ExpWeight,
    PowerWeight,
    RationalLike,
    WeightedFn,
    WeightMismatchError,
    _divide_by_h,
    as_rational,
    format_rational,
    pochhammer,
)
from .operators import twisted_laplacian
from .params import (
    InvalidParamsError,
    LevelRangeError,
    SurfaceMagneticParams,
    validate_params,
)
from .polynomials import complex_hermite, jacobi, ladder_eigenfunction

__all__ = [
    "DIVERGENT",
    "Divergent",
    "InvalidParamsError",
    "LevelRangeError",
    "LevelSpec",
    "PiRational",
    "SurfaceMagneticParams",
    "eigenfunction",
    "eigenvalue",
    "gram_matrix",
    "inner_product",
    "level_spec",
    "norm_squared",
    "prop_basis_element",
    "radial_moment",
    "validate_params",
    "verify_eigen",
]


@dataclass(frozen=True)
class PiRational:
    """The exact value ``q * pi``."""

    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", as_rational(self.q))

    def __add__(self, other: "PiRational") -> "PiRational":
        return PiRational(self.q + other.q)

    def scale(self, r: RationalLike) -> "PiRational":
        return PiRational(self.q * as_rational(r))

    @property
    def is_finite(self) -> bool:
        return True

    def __float__(self) -> float:
        return float(self.q) * math.pi

    def to_json(self) -> dict:
        return {"pi_multiple": format_rational(self.q)}

    def __str__(self) -> str:
        q = self.q
        if not q:
            return "0"
        num = "π" if abs(q.numerator) == 1 else f"{abs(q.numerator)}π"
        sign = "−" if q < 0 else ""
        return f"{sign}{num}" if q.denominator == 1 else f"{sign}{num}/{q.denominator}"


class Divergent:
    """The integral does not converge; the function is not in L^2."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    is_finite = False

    def to_json(self) -> dict:
        return {"divergent": True}

    def __repr__(self) -> str:
        return "DIVERGENT"

    __str__ = __repr__


DIVERGENT = Divergent()
MomentResult = Union[PiRational, Divergent]


def eigenvalue(kappa: RationalLike, nu: RationalLike, m: int) -> Fraction:
    """Landau level ``nu(2m+1) + m(m+1) kappa``."""
    params = SurfaceMagneticParams(kappa, nu)
    params.check_level(m)
    return params.nu * (2 * m + 1) + m * (m + 1) * params.kappa


@dataclass(frozen=True)
class LevelSpec:
    """Admissible ``n`` at level ``m``: ``0..n_max``, or all naturals when ``n_max`` is None."""

    m: int
    n_max: int | None

    @property
    def dimension(self) -> int | None:
        return None if self.n_max is None else self.n_max + 1

    def __contains__(self, n: int) -> bool:
        return n >= 0 and (self.n_max is None or n <= self.n_max)

    def indices(self, cap: int | None = None) -> range:
        top = self.n_max if cap is None else (cap if self.n_max is None else min(cap, self.n_max))
        if top is None:
            raise ValueError("infinite level: pass a cap")
        return range(top + 1)


def level_spec(params: SurfaceMagneticParams, m: int) -> LevelSpec:
    """Square-integrable generators at level ``m``.

    On the sphere chart (``kappa > 0``) the eigenfunction with index ``n`` is
    in L^2 iff ``n <= 2 nu/kappa + 2m``: for ``2nu/kappa + m < n`` the top
    Jacobi coefficient vanishes and the degree drops far enough to keep the
    norm finite. Everywhere else every ``n`` is admissible.
    """
    params.check_level(m)
    if params.kappa > 0:
        return LevelSpec(m, int(2 * params.ratio) + 2 * m)
    return LevelSpec(m, None)


def eigenfunction(params: SurfaceMagneticParams, m: int, n: int) -> WeightedFn:
    """``Phi_{m,n}``: weight times ``P_{m,n}`` (or ``H_{m,n}`` on the plane)."""
    if n not in level_spec(params, m):
        raise LevelRangeError(f"n={n} is outside the square-integrable range at level m={m}")
    if params.kappa == 0:
        return WeightedFn.exp(-params.nu, complex_hermite(m, n, params.nu))
    return ladder_eigenfunction(params.kappa, params.nu, m, n)


def verify_eigen(params: SurfaceMagneticParams, m: int, n: int) -> bool:
    phi = eigenfunction(params, m, n)
    return twisted_laplacian(params, phi).equals(phi * eigenvalue(params.kappa, params.nu, m))


def _beta(j: int, c: Fraction) -> Fraction:
    # B(j+1, c) = j! / (c (c+1) ... (c+j))
    return Fraction(math.factorial(j)) / pochhammer(c, j + 1)


def radial_moment(kappa: RationalLike, j: int, sigma: RationalLike) -> MomentResult:
    """``integral |z|^(2j) (1 + kappa|z|^2)^(-sigma) dlambda`` over the surface.

    For ``kappa = 0`` the integrand is ``|z|^(2j) exp(-sigma |z|^2)`` instead.
    """
    kappa, sigma = as_rational(kappa), as_rational(sigma)
    if kappa < 0:
        if 1 - sigma <= 0:
            return DIVERGENT
        return PiRational((-kappa) ** (-j - 1) * _beta(j, 1 - sigma))
    if kappa > 0:
        if sigma - j - 1 <= 0:
            return DIVERGENT
        return PiRational(kappa ** (-j - 1) * _beta(j, sigma - j - 1))
    if sigma <= 0:
        return DIVERGENT
    return PiRational(Fraction(math.factorial(j)) / sigma ** (j + 1))


def inner_product(params: SurfaceMagneticParams, f: WeightedFn, g: WeightedFn) -> MomentResult:
    """``<f, g> = integral f conj(g) dmu`` with ``dmu = (1 + kappa|z|^2)^(-2) dlambda``."""
    kappa = params.kappa
    for fn in (f, g):
        w = fn.weight
        if kappa == 0 and not isinstance(w, ExpWeight):
            raise WeightMismatchError("plane inner products need Gaussian weights")
        if kappa != 0 and not (isinstance(w, PowerWeight) and (w.kappa == kappa or fn.is_zero())):
            raise WeightMismatchError(f"weight {w!r} does not live on kappa={kappa}")
    if f.is_zero() or g.is_zero():
        return PiRational(0)
    product = f.poly * g.poly.conj()
    radial = BiPoly({(i, i): c for (i, j), c in product.items() if i == j})
    if kappa == 0:
        sigma = -(f.weight.c + g.weight.c)
    else:
        sigma = 2 - f.weight.s - g.weight.s
        # absorb boundary zeros of the radial profile before testing convergence
        while radial:
            q = _divide_by_h(radial, kappa)
            if q is None:
                break
            radial, sigma = q, sigma - 1
    total = PiRational(0)
    for (j, _), c in radial.items():
        moment = radial_moment(kappa, j, sigma)
        if not moment.is_finite:
            return DIVERGENT
        total = total + moment.scale(c)
    return total


def norm_squared(params: SurfaceMagneticParams, f: WeightedFn) -> MomentResult:
    return inner_product(params, f, f)


def gram_matrix(params: SurfaceMagneticParams, entries: Sequence[tuple[int, int]]) -> list[list[MomentResult]]:
    funcs = [eigenfunction(params, m, n) for m, n in entries]
    size = len(funcs)
    gram: list[list[MomentResult]] = [[PiRational(0)] * size for _ in range(size)]
    for a in range(size):
        for b in range(a, size):
            value = inner_product(params, funcs[a], funcs[b])
            gram[a][b] = value
            # real polynomials and real weights: the Gram matrix is symmetric
            gram[b][a] = value
    return gram


def prop_basis_element(params: SurfaceMagneticParams, m: int, p: int, q: int) -> WeightedFn:
    """``h^(-(nu/kappa+m)) z^p zbar^q P_{m-q}^{(p+q, -2(nu/kappa+m)-1)}(1 + 2 kappa|z|^2)``."""
    if params.kappa == 0:
        raise ValueError("the Jacobi basis is stated for kappa != 0")
    if q > m or p < 0 or q < 0:
        raise ValueError(f"need 0 <= q <= m, got p={p}, q={q}, m={m}")
    if p and q:
        raise ValueError("convention pq = 0 violated")
    params.check_level(m)
    t = params.ratio
    radial = jacobi(m - q, p + q, -2 * (t + m) - 1).compose_affine(1, 2 * params.kappa).radial()
    return WeightedFn.power(params.kappa, -(t + m), BiPoly.monomial(p, q) * radial)


def basis_index(m: int, n: int) -> tuple[int, int]:
    """``(p, q)`` of the Jacobi basis element matching ``Phi_{m,n}``."""
    return (n - m, 0) if m <= n else (0, m - n)
