"""The flat limit ``kappa -> 0`` and the four-route cross-check."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .algebra import BiPoly, DomainError, RationalLike, as_rational, format_rational
from .params import InvalidParamsError, SurfaceMagneticParams, validate_params
from .polynomials import (
    P_via_D,
    P_via_jacobi,
    P_via_ladder,
    P_via_mixed_rodrigues,
    UndefinedConstantError,
    complex_hermite,
)
from .spectral import level_spec


def default_kappa_sequence(nu: RationalLike, kmin: int = 4, kmax: int = 12, sign: int = -1) -> list[Fraction]:
    """``sign * 2^-k`` for ``k = kmin..kmax``."""
    nu = as_rational(nu)
    seq = [Fraction(sign, 2**k) for k in range(kmin, kmax + 1)]
    for kappa in seq:
        if not validate_params(kappa, nu)[0]:
            raise InvalidParamsError(f"kappa={kappa} is not valid with nu={nu}")
    return seq


def _max_coeff_diff(p: BiPoly, q: BiPoly) -> float:
    keys = set(p) | set(q)
    return max((abs(float(p.coefficient(*k) - q.coefficient(*k))) for k in keys), default=0.0)


def _neville_at_zero(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Value at 0 of the interpolating polynomial through ``(xs, ys)``."""
    p = list(ys)
    n = len(xs)
    for level in range(1, n):
        for i in range(n - level):
            x0, x1 = xs[i], xs[i + level]
            p[i] = (x1 * p[i] - x0 * p[i + 1]) / (x1 - x0)
    return p[0]


@dataclass
class ConvergenceReport:
    m: int
    n: int
    nu: Fraction
    kappas: list[Fraction]
    diffs: list[float]
    order: float | None
    extrapolated_diff: float
    tolerance: float
    match: bool

    @property
    def monotone(self) -> bool:
        return all(b < a or (a == b == 0.0) for a, b in zip(self.diffs, self.diffs[1:]))

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "nu": format_rational(self.nu),
            "points": [{"kappa": format_rational(k), "diff": d} for k, d in zip(self.kappas, self.diffs)],
            "order": self.order,
            "extrapolated_diff": self.extrapolated_diff,
            "match": self.match,
        }


def hermite_limit_probe(nu: RationalLike, m: int, n: int, kappa_seq: Sequence[RationalLike]) -> ConvergenceReport:
    """Compare ``P_{m,n}`` along a shrinking ``kappa`` sequence with ``H_{m,n}``.

    ``order`` is the least-squares slope of ``log diff`` against ``log |kappa|``
    (None when every difference is exactly zero). The coefficients of
    ``P_{m,n}`` are polynomial in ``kappa``, so interpolating them to
    ``kappa = 0`` (Neville) recovers the limit; ``extrapolated_diff`` is its
    distance to ``H_{m,n}``. ``match`` requires strictly shrinking
    differences and ``extrapolated_diff <= 1e-8 (1 + max |H coeff|)``.
    """
    nu = as_rational(nu)
    kappas = [as_rational(k) for k in kappa_seq]
    if any(abs(b) >= abs(a) for a, b in zip(kappas, kappas[1:])):
        raise ValueError("kappa sequence must shrink strictly in magnitude")
    target = complex_hermite(m, n, nu)
    polys = [P_via_ladder(SurfaceMagneticParams(k, nu), m, n) for k in kappas]
    diffs = [_max_coeff_diff(p, target) for p in polys]

    nonzero = [(abs(float(k)), d) for k, d in zip(kappas, diffs) if d > 0]
    if nonzero:
        x, y = np.log([k for k, _ in nonzero]), np.log([d for _, d in nonzero])
        order = float(np.polyfit(x, y, 1)[0]) if len(nonzero) > 1 else float("nan")
    else:
        order = None

    xs = [float(k) for k in kappas]
    keys = sorted(set(target).union(*polys))
    extrapolated = 0.0
    for key in keys:
        value = _neville_at_zero(xs, [float(p.coefficient(*key)) for p in polys])
        extrapolated = max(extrapolated, abs(value - float(target.coefficient(*key))))
    scale = max((abs(float(c)) for _, c in target.items()), default=0.0)
    tol = 1e-8 * (1 + scale)

    report = ConvergenceReport(m, n, nu, kappas, diffs, order, extrapolated, tol, False)
    report.match = report.monotone and extrapolated <= tol
    return report


def weight_limit_check(
    nu: RationalLike, m: int, kappa_seq: Sequence[RationalLike], sample_points: Iterable[complex]
) -> list[float]:
    """Max over the samples of ``|(1 + kappa|z|^2)^(nu/kappa + m) - exp(nu|z|^2)|`` per ``kappa``."""
    nu_f = float(as_rational(nu))
    r2 = np.abs(np.asarray(list(sample_points), dtype=complex)) ** 2
    target = np.exp(nu_f * r2)
    errors = []
    for kappa in kappa_seq:
        k = as_rational(kappa)
        base = 1.0 + float(k) * r2
        if np.any(base <= 0):
            raise DomainError(f"sample point outside the surface for kappa={k}")
        approx = base ** float(as_rational(nu) / k + m)
        errors.append(float(np.max(np.abs(approx - target))) if len(r2) else 0.0)
    return errors


# ---------------------------------------------------------------------------
# cross-check


@dataclass
class CrossCheckEntry:
    m: int
    n: int
    routes_equal: bool
    jacobi_ratio: Fraction | None
    mixed_defined: bool = True

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "routes_equal": self.routes_equal,
            "jacobi_ratio": None if self.jacobi_ratio is None else format_rational(self.jacobi_ratio),
            "mixed_defined": self.mixed_defined,
        }


@dataclass
class CrossCheckReport:
    kappa: Fraction
    nu: Fraction
    entries: list[CrossCheckEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(
            e.routes_equal and e.jacobi_ratio not in (None, 0) and (e.m > e.n or e.jacobi_ratio == 1)
            for e in self.entries
        )

    def first_failure(self) -> CrossCheckEntry | None:
        return next(
            (
                e
                for e in self.entries
                if not (e.routes_equal and e.jacobi_ratio not in (None, 0) and (e.m > e.n or e.jacobi_ratio == 1))
            ),
            None,
        )

    def to_json(self) -> dict:
        return {
            "kappa": format_rational(self.kappa),
            "nu": format_rational(self.nu),
            "entries": [e.to_json() for e in self.entries],
        }


def crosscheck_cell(params: SurfaceMagneticParams, m: int, n: int) -> CrossCheckEntry:
    ladder = P_via_ladder(params, m, n)
    equal = P_via_D(params, m, n) == ladder
    try:
        equal = equal and P_via_mixed_rodrigues(params, m, n) == ladder
        defined = True
    except UndefinedConstantError:
        defined = False
    return CrossCheckEntry(m, n, equal, P_via_jacobi(params, m, n).ratio_to(ladder), defined)


def route_crosscheck(params: SurfaceMagneticParams, m_max: int, n_max: int) -> CrossCheckReport:
    """All routes on ``0 <= m <= m_max``, ``0 <= n <= n_max`` (``n`` capped by :func:`level_spec`).

    Where the mixed-Rodrigues constant is undefined the entry records
    ``mixed_defined = False`` and compares the remaining routes.
    """
    if params.kappa == 0:
        raise ValueError("route cross-check needs kappa != 0")
    params.check_level(m_max)
    report = CrossCheckReport(params.kappa, params.nu)
    for m in range(m_max + 1):
        for n in level_spec(params, m).indices(cap=n_max):
            report.entries.append(crosscheck_cell(params, m, n))
    return report
