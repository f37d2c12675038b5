"""Curvature / field-strength parameters and the Landau-level bound."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import RationalLike, as_rational


class InvalidParamsError(ValueError):
    pass


class LevelRangeError(ValueError):
    """A level ``m`` or index ``n`` outside the square-integrable range."""


def validate_params(kappa: RationalLike, nu: RationalLike) -> tuple[bool, int | None]:
    """Return ``(valid, max_m)``.

    ``max_m`` is the largest admissible level for ``kappa < 0`` and None
    (unbounded) for ``kappa >= 0``. For invalid pairs ``max_m`` is None.
    """
    kappa, nu = as_rational(kappa), as_rational(nu)
    if nu <= 0:
        return False, None
    if kappa > 0:
        ratio = 2 * nu / kappa
        return ratio.denominator == 1 and ratio > 0, None
    if 2 * nu + kappa <= 0:
        return False, None
    if kappa == 0:
        return True, None
    # greatest integer strictly below (2nu + kappa) / (-2 kappa)
    bound = (2 * nu + kappa) / (-2 * kappa)
    return True, math.ceil(bound) - 1


@dataclass(frozen=True)
class SurfaceMagneticParams:
    """A validated ``(kappa, nu)`` pair."""

    kappa: Fraction
    nu: Fraction

    def __post_init__(self):
        object.__setattr__(self, "kappa", as_rational(self.kappa))
        object.__setattr__(self, "nu", as_rational(self.nu))
        valid, _ = validate_params(self.kappa, self.nu)
        if not valid:
            raise InvalidParamsError(
                f"invalid parameters kappa={self.kappa}, nu={self.nu}: need nu > 0, "
                "2nu + kappa > 0 when kappa <= 0, and 2nu/kappa a positive integer when kappa > 0"
            )

    @property
    def ratio(self) -> Fraction:
        """``nu / kappa``; undefined on the plane."""
        if not self.kappa:
            raise ZeroDivisionError("nu/kappa is undefined for kappa = 0")
        return self.nu / self.kappa

    @property
    def max_level(self) -> int | None:
        return validate_params(self.kappa, self.nu)[1]

    def check_level(self, m: int) -> None:
        if m < 0:
            raise LevelRangeError(f"level m={m} is negative")
        top = self.max_level
        if top is not None and m > top:
            raise LevelRangeError(
                f"level m={m} exceeds the bound m <= {top} for kappa={self.kappa}, nu={self.nu}"
            )
