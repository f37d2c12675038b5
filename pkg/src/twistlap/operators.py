"""Ladder operators, the twisted Laplacian and exact identity checkers.

Every operator acts on :class:`~twistlap.algebra.WeightedFn` and returns a
canonical result in the same weight family. ``kappa = 0`` uses the Gaussian
family; multiplication by ``1 + kappa|z|^2`` then collapses to the identity.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import (
    BiPoly,
    ExpWeight,
    PowerWeight,
    RationalLike,
    WeightedFn,
    WeightMismatchError,
    as_rational,
)
from .params import SurfaceMagneticParams

Z = BiPoly.z()
ZBAR = BiPoly.zbar()
ZZBAR = BiPoly.monomial(1, 1)


def _check_family(f: WeightedFn, kappa: Fraction) -> None:
    w = f.weight
    if kappa == 0:
        if not isinstance(w, ExpWeight):
            raise WeightMismatchError("kappa = 0 operators act on the Gaussian weight family")
    elif not isinstance(w, PowerWeight) or w.kappa != kappa:
        if f.is_zero() and isinstance(w, PowerWeight):
            return
        raise WeightMismatchError(f"function weight {w!r} does not match kappa={kappa}")


def nabla(alpha: RationalLike, f: WeightedFn, kappa: RationalLike) -> WeightedFn:
    """``-(1 + kappa|z|^2) d/dz + alpha zbar``."""
    alpha, kappa = as_rational(alpha), as_rational(kappa)
    _check_family(f, kappa)
    if f.is_zero():
        return f
    return f * ZBAR * alpha - f.diff("z").times_h(1)


def nabla_star(alpha: RationalLike, f: WeightedFn, kappa: RationalLike) -> WeightedFn:
    """``(1 + kappa|z|^2) d/dzbar + (alpha - kappa) z``."""
    alpha, kappa = as_rational(alpha), as_rational(kappa)
    _check_family(f, kappa)
    if f.is_zero():
        return f
    return f.diff("zbar").times_h(1) + f * Z * (alpha - kappa)


def laplacian(kappa: RationalLike, nu: RationalLike, f: WeightedFn) -> WeightedFn:
    """The twisted Laplacian for arbitrary ``(kappa, nu)``, without validation.

    ``-{h^2 d2/dz dzbar + nu h (z d/dz - zbar d/dzbar) - nu^2 |z|^2}``
    with ``h = 1 + kappa|z|^2``.
    """
    kappa, nu = as_rational(kappa), as_rational(nu)
    _check_family(f, kappa)
    if f.is_zero():
        return f
    fz = f.diff("z")
    second = fz.diff("zbar").times_h(2)
    drift = (fz * Z - f.diff("zbar") * ZBAR).times_h(1) * nu
    potential = f * ZZBAR * (nu * nu)
    return -(second + drift - potential)


def twisted_laplacian(params: SurfaceMagneticParams, f: WeightedFn) -> WeightedFn:
    return laplacian(params.kappa, params.nu, f)


def D(f: WeightedFn, kappa: RationalLike) -> WeightedFn:
    """``(1 + kappa|z|^2)^2 d/dz``."""
    kappa = as_rational(kappa)
    if kappa == 0:
        raise ValueError("D is only defined for kappa != 0; use plain d/dz on the plane")
    _check_family(f, kappa)
    return f.diff("z").times_h(2)


def D_power(m: int, f: WeightedFn, kappa: RationalLike) -> WeightedFn:
    """``m``-fold application of :func:`D`; ``m = 0`` is the identity."""
    if as_rational(kappa) == 0:
        raise ValueError("D is only defined for kappa != 0; use plain d/dz on the plane")
    for _ in range(m):
        f = D(f, kappa)
    return f


def ladder_chain(params: SurfaceMagneticParams, m: int, f: WeightedFn) -> WeightedFn:
    """``nabla_{nu+kappa} o nabla_{nu+2kappa} o ... o nabla_{nu+m kappa}`` applied to ``f``.

    The rightmost factor ``nabla_{nu+m kappa}`` acts first.
    """
    return raw_ladder_chain(params.kappa, params.nu, m, f)


def raw_ladder_chain(kappa: RationalLike, nu: RationalLike, m: int, f: WeightedFn) -> WeightedFn:
    kappa, nu = as_rational(kappa), as_rational(nu)
    if m < 0:
        raise ValueError("m must be nonnegative")
    for k in range(m, 0, -1):
        f = nabla(nu + k * kappa, f, kappa)
    return f


# ---------------------------------------------------------------------------
# identity verification


@dataclass
class OperatorReport:
    identity: str
    probe_count: int
    all_passed: bool
    first_failure: dict | None = None

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "probes": self.probe_count,
            "passed": self.all_passed,
            "failure": self.first_failure,
        }


def random_poly(rng: random.Random, max_degree: int = 5, max_terms: int = 6) -> BiPoly:
    """Random polynomial with coefficients in {-9..9}/{1..4}."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        i, j = rng.randint(0, max_degree), rng.randint(0, max_degree)
        terms[(i, j)] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return BiPoly(terms)


def random_exponent(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-8, 8), rng.randint(1, 4))


def random_probe(rng: random.Random, kappa: RationalLike, max_degree: int = 5) -> WeightedFn:
    kappa = as_rational(kappa)
    poly = random_poly(rng, max_degree)
    if kappa == 0:
        return WeightedFn.exp(random_exponent(rng), poly)
    return WeightedFn.power(kappa, random_exponent(rng), poly)


def random_probes(kappa: RationalLike, count: int = 100, seed: int = 0, max_degree: int = 5) -> list[WeightedFn]:
    rng = random.Random(seed)
    return [random_probe(rng, kappa, max_degree) for _ in range(count)]


def _run_identity(
    name: str,
    probes: Sequence[WeightedFn],
    lhs: Callable[[WeightedFn], WeightedFn],
    rhs: Callable[[WeightedFn], WeightedFn],
) -> OperatorReport:
    for idx, f in enumerate(probes):
        left, right = lhs(f), rhs(f)
        if not left.equals(right):
            failure = {
                "probe_index": idx,
                "probe": f.to_json(),
                "lhs": left.to_json(),
                "rhs": right.to_json(),
            }
            return OperatorReport(name, len(probes), False, failure)
    return OperatorReport(name, len(probes), True)


def verify_factorization(params: SurfaceMagneticParams, probes: Sequence[WeightedFn]) -> list[OperatorReport]:
    """Check both factorization identities of the lowered/raised Laplacian."""
    k, nu = params.kappa, params.nu
    a = nu + k
    down = _run_identity(
        "nabla nabla* = L^nu - nu",
        probes,
        lambda f: nabla(a, nabla_star(a, f, k), k),
        lambda f: laplacian(k, nu, f) - f * nu,
    )
    up = _run_identity(
        "nabla* nabla = L^(nu+kappa) + (nu+kappa)",
        probes,
        lambda f: nabla_star(a, nabla(a, f, k), k),
        lambda f: laplacian(k, a, f) + f * a,
    )
    return [down, up]


def verify_intertwining(params: SurfaceMagneticParams, probes: Sequence[WeightedFn]) -> OperatorReport:
    k, nu = params.kappa, params.nu
    a = nu + k
    return _run_identity(
        "L^nu nabla = nabla L^(nu+kappa) + (2nu+kappa) nabla",
        probes,
        lambda f: laplacian(k, nu, nabla(a, f, k)),
        lambda f: nabla(a, laplacian(k, a, f), k) + nabla(a, f, k) * (2 * nu + k),
    )


def verify_claim_D(m: int, kappa: RationalLike, probes: Sequence[WeightedFn]) -> OperatorReport:
    """``D^m f == h^(m+1) d^m/dz^m (h^(m-1) f)`` on every probe."""
    kappa = as_rational(kappa)

    def rhs(f: WeightedFn) -> WeightedFn:
        g = f.times_h(m - 1)
        for _ in range(m):
            g = g.diff("z")
        return g.times_h(m + 1)

    return _run_identity(f"D^{m} power identity", probes, lambda f: D_power(m, f, kappa), rhs)
