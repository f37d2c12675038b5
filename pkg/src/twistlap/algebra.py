"""Exact scalar and polynomial kernel.

Scalars are :class:`fractions.Fraction`. Polynomials live in the two formal
variables ``z`` and ``zbar``; since every coefficient is real, complex
conjugation only swaps the two exponents.

A :class:`WeightedFn` is ``weight * poly`` where the weight is either
``(1 + kappa*z*zbar)**s`` or ``exp(c*z*zbar)``. This class is closed under
``d/dz``, ``d/dzbar`` and multiplication by polynomials, which is all the
operator layer needs.
"""
from __future__ import annotations

import math
import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

import numpy as np

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_ZBAR = "z̄"
_MINUS = "−"


class WeightMismatchError(ValueError):
    """Operands live in different weight families (or a different kappa)."""


class DomainError(ValueError):
    """Evaluation requested outside the surface, where 1 + kappa|z|^2 <= 0."""


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ``x`` to an exact rational. Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if not _RATIONAL_RE.match(x):
            raise ValueError(f"not an exact rational 'p' or 'p/q': {x!r}")
        return Fraction(x.replace(" ", ""))
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def format_rational(q: RationalLike) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(as_rational(q))


def pochhammer(a: RationalLike, k: int) -> Fraction:
    """Rising factorial ``a (a+1) ... (a+k-1)``; empty product for ``k == 0``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    a = as_rational(a)
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def binomial(r: RationalLike, k: int) -> Fraction:
    """Generalized binomial coefficient C(r, k) for rational ``r``."""
    if k < 0:
        return Fraction(0)
    return pochhammer(as_rational(r) - k + 1, k) / math.factorial(k)


def _superscript(e: int) -> str:
    return "" if e == 1 else str(e).translate(_SUPERSCRIPTS)


class BiPoly:
    """Polynomial in ``z`` and ``zbar`` with rational coefficients.

    Stored as a map ``(i, j) -> c`` for the monomial ``c z**i zbar**j``;
    zero coefficients are never stored. Instances are treated as immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], RationalLike] | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in {(i, j)}")
                c = as_rational(c)
                if c:
                    key = (int(i), int(j))
                    clean[key] = clean.get(key, Fraction(0)) + c
                    if not clean[key]:
                        del clean[key]
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict[tuple[int, int], Fraction]) -> "BiPoly":
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: RationalLike) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: RationalLike = 1) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def z(cls) -> "BiPoly":
        return cls.monomial(1, 0)

    @classmethod
    def zbar(cls) -> "BiPoly":
        return cls.monomial(0, 1)

    # -- container protocol -------------------------------------------------
    def items(self) -> list[tuple[tuple[int, int], Fraction]]:
        """Terms sorted by ``(i, j)``."""
        return sorted(self._terms.items())

    def coefficient(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self._terms), default=-1)

    def angular_momenta(self) -> set[int]:
        """The set of ``i - j`` over all terms."""
        return {i - j for i, j in self._terms}

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "BiPoly | None":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return BiPoly.constant(other)
        return None

    def __add__(self, other) -> "BiPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return BiPoly._from_clean(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly._from_clean({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "BiPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, r: RationalLike) -> "BiPoly":
        r = as_rational(r)
        if not r:
            return BiPoly()
        return BiPoly._from_clean({k: c * r for k, c in self._terms.items()})

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BiPoly._from_clean({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BiPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, di: int, dj: int) -> "BiPoly":
        """Multiply by the monomial ``z**di zbar**dj``."""
        return BiPoly._from_clean({(i + di, j + dj): c for (i, j), c in self._terms.items()})

    def diff(self, var: str) -> "BiPoly":
        """Formal partial derivative in ``"z"`` or ``"zbar"``."""
        out = {}
        if var == "z":
            for (i, j), c in self._terms.items():
                if i:
                    out[(i - 1, j)] = c * i
        elif var == "zbar":
            for (i, j), c in self._terms.items():
                if j:
                    out[(i, j - 1)] = c * j
        else:
            raise ValueError(f"unknown variable {var!r}")
        return BiPoly._from_clean(out)

    def conj(self) -> "BiPoly":
        return BiPoly._from_clean({(j, i): c for (i, j), c in self._terms.items()})

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def ratio_to(self, other: "BiPoly") -> Fraction | None:
        """Return ``r`` with ``self == r * other``, or None if not proportional."""
        if other.is_zero():
            return Fraction(0) if self.is_zero() else None
        key = next(iter(other._terms))
        r = self.coefficient(*key) / other._terms[key]
        return r if self == other.scale(r) else None

    # -- evaluation / serialization -----------------------------------------
    def evaluate(self, z):
        """Float evaluation at complex ``z`` (scalar or array)."""
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z)
        out = np.zeros_like(z)
        for (i, j), c in self._terms.items():
            out = out + float(c) * z**i * zb**j
        return out[()] if out.ndim == 0 else out

    def to_json(self) -> list[dict]:
        return [{"i": i, "j": j, "c": format_rational(c)} for (i, j), c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "BiPoly":
        return cls({(int(t["i"]), int(t["j"])): as_rational(str(t["c"])) for t in data})

    def __repr__(self) -> str:
        body = ", ".join(f"({i}, {j}): {format_rational(c)!r}" for (i, j), c in self.items())
        return f"BiPoly({{{body}}})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        ordered = sorted(self._terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))
        parts = []
        for n, ((i, j), c) in enumerate(ordered):
            mono = " ".join(
                f"{sym}{_superscript(e)}" for sym, e in (("z", i), (_ZBAR, j)) if e
            )
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag} {mono}"
            else:
                body = str(mag)
            if n == 0:
                parts.append(f"{_MINUS}{body}" if c < 0 else body)
            else:
                parts.append(f"{_MINUS if c < 0 else '+'} {body}")
        return " ".join(parts)


class UniPoly:
    """Univariate polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly(c * other for c in self.coeffs)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        out = UniPoly([1])
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def diff(self) -> "UniPoly":
        return UniPoly(c * k for k, c in enumerate(self.coeffs) if k)

    def compose_affine(self, a: RationalLike, b: RationalLike) -> "UniPoly":
        """The polynomial ``u -> self(a + b*u)``."""
        lin = UniPoly([a, b])
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def radial(self) -> BiPoly:
        """Substitute ``u = z*zbar``."""
        return BiPoly({(k, k): c for k, c in enumerate(self.coeffs) if c})

    def __repr__(self) -> str:
        return f"UniPoly({[format_rational(c) for c in self.coeffs]})"


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class PowerWeight:
    """The weight ``(1 + kappa*z*zbar)**s`` with ``kappa != 0``."""

    kappa: Fraction
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, "kappa", as_rational(self.kappa))
        object.__setattr__(self, "s", as_rational(self.s))
        if not self.kappa:
            raise ValueError("PowerWeight needs kappa != 0; use ExpWeight for the plane")

    def to_json(self) -> dict:
        return {"kind": "power", "kappa": format_rational(self.kappa), "s": format_rational(self.s)}


@dataclass(frozen=True)
class ExpWeight:
    """The weight ``exp(c*z*zbar)`` (flat case)."""

    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))

    def to_json(self) -> dict:
        return {"kind": "exp", "c": format_rational(self.c)}


Weight = Union[PowerWeight, ExpWeight]


@lru_cache(maxsize=512)
def h_power(kappa: Fraction, k: int) -> BiPoly:
    """``(1 + kappa*z*zbar)**k`` expanded, for integer ``k >= 0``."""
    return UniPoly([1, kappa]).__pow__(k).radial()


def _divide_by_h(poly: BiPoly, kappa: Fraction) -> BiPoly | None:
    """Exact quotient ``poly / (1 + kappa*z*zbar)``, or None if it does not divide.

    ``1 + kappa*u`` (``u = z*zbar``) has angular momentum 0, so it divides
    ``poly`` iff it divides every angular component ``q_d(u)`` where
    ``poly = sum_d z**max(d,0) zbar**max(-d,0) q_d(u)``. Each component is
    handled by synthetic division at the root ``u = -1/kappa``.
    """
    groups: dict[int, dict[int, Fraction]] = defaultdict(dict)
    for (i, j), c in poly._terms.items():
        groups[i - j][min(i, j)] = c
    root = -1 / kappa
    out: dict[tuple[int, int], Fraction] = {}
    for d, comp in groups.items():
        top = max(comp)
        if top == 0:
            return None
        quotient = [Fraction(0)] * top
        acc = Fraction(0)
        for k in range(top, -1, -1):
            acc = acc * root + comp.get(k, 0)
            if k:
                quotient[k - 1] = acc
        if acc:
            return None
        di, dj = max(d, 0), max(-d, 0)
        for k, c in enumerate(quotient):
            if c:
                out[(k + di, k + dj)] = c / kappa
    return BiPoly._from_clean(out)


def canonicalize(kappa: RationalLike, s: RationalLike, poly: BiPoly) -> tuple[Fraction, BiPoly]:
    """Move every factor ``1 + kappa*z*zbar`` of ``poly`` into the exponent ``s``.

    Returns the canonical ``(s, poly)``; the zero function maps to ``(0, 0)``.
    """
    kappa, s = as_rational(kappa), as_rational(s)
    if poly.is_zero():
        return Fraction(0), poly
    while True:
        q = _divide_by_h(poly, kappa)
        if q is None:
            return s, poly
        poly, s = q, s + 1


@dataclass(frozen=True, eq=False)
class WeightedFn:
    """``weight * poly``, always held in canonical form.

    For a power weight, ``poly`` is never divisible by ``1 + kappa*z*zbar``,
    so two instances represent the same function iff their fields agree.
    """

    weight: Weight
    poly: BiPoly

    def __post_init__(self):
        poly = self.poly
        if not isinstance(poly, BiPoly):
            poly = BiPoly.constant(poly)
            object.__setattr__(self, "poly", poly)
        if isinstance(self.weight, PowerWeight):
            s, p = canonicalize(self.weight.kappa, self.weight.s, poly)
            if p is not poly or s != self.weight.s:
                object.__setattr__(self, "weight", PowerWeight(self.weight.kappa, s))
                object.__setattr__(self, "poly", p)
        elif not isinstance(self.weight, ExpWeight):
            raise TypeError(f"unknown weight {self.weight!r}")

    @classmethod
    def power(cls, kappa: RationalLike, s: RationalLike, poly: BiPoly | RationalLike = 1) -> "WeightedFn":
        return cls(PowerWeight(as_rational(kappa), as_rational(s)), _as_poly(poly))

    @classmethod
    def exp(cls, c: RationalLike, poly: BiPoly | RationalLike = 1) -> "WeightedFn":
        return cls(ExpWeight(as_rational(c)), _as_poly(poly))

    @property
    def kappa(self) -> Fraction:
        return self.weight.kappa if isinstance(self.weight, PowerWeight) else Fraction(0)

    @property
    def exponent(self) -> Fraction:
        """``s`` for a power weight, ``c`` for an exponential one."""
        w = self.weight
        return w.s if isinstance(w, PowerWeight) else w.c

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def _same_family(self, other: "WeightedFn") -> None:
        a, b = self.weight, other.weight
        if type(a) is not type(b):
            raise WeightMismatchError("cannot mix power and exponential weights")
        if isinstance(a, PowerWeight) and a.kappa != b.kappa:
            raise WeightMismatchError(f"kappa mismatch: {a.kappa} vs {b.kappa}")

    def _with(self, exponent: Fraction, poly: BiPoly) -> "WeightedFn":
        if isinstance(self.weight, PowerWeight):
            return WeightedFn(PowerWeight(self.weight.kappa, exponent), poly)
        return WeightedFn(ExpWeight(exponent), poly)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: "WeightedFn") -> "WeightedFn":
        if not isinstance(other, WeightedFn):
            return NotImplemented
        self._same_family(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if isinstance(self.weight, ExpWeight):
            if self.weight.c != other.weight.c:
                raise WeightMismatchError("sum of different Gaussian weights is not in the class")
            return self._with(self.weight.c, self.poly + other.poly)
        kappa = self.weight.kappa
        s1, s2 = self.weight.s, other.weight.s
        gap = s1 - s2
        if gap.denominator != 1:
            raise WeightMismatchError(f"exponents {s1} and {s2} differ by a non-integer")
        gap = int(gap)
        if gap >= 0:
            poly = self.poly * h_power(kappa, gap) + other.poly
            return self._with(s2, poly)
        poly = self.poly + other.poly * h_power(kappa, -gap)
        return self._with(s1, poly)

    def __neg__(self) -> "WeightedFn":
        return self._with(self.exponent, -self.poly)

    def __sub__(self, other: "WeightedFn") -> "WeightedFn":
        if not isinstance(other, WeightedFn):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "WeightedFn":
        """Multiply by a rational scalar, a :class:`BiPoly` or another weighted function."""
        if isinstance(other, WeightedFn):
            self._same_family(other)
            return self._with(self.exponent + other.exponent, self.poly * other.poly)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return self._with(self.exponent, BiPoly())
            return WeightedFn._trusted(self.weight, self.poly.scale(other))
        if isinstance(other, BiPoly):
            return self._with(self.exponent, self.poly * other)
        return NotImplemented

    __rmul__ = __mul__

    @classmethod
    def _trusted(cls, weight: Weight, poly: BiPoly) -> "WeightedFn":
        # caller guarantees canonical form
        obj = object.__new__(cls)
        object.__setattr__(obj, "weight", weight)
        object.__setattr__(obj, "poly", poly)
        return obj

    def times_h(self, k: RationalLike) -> "WeightedFn":
        """Multiply by ``(1 + kappa*z*zbar)**k``; a no-op for the flat weight."""
        if isinstance(self.weight, ExpWeight) or self.is_zero():
            return self
        k = as_rational(k)
        # a power of h never changes divisibility of the polynomial part
        return WeightedFn._trusted(PowerWeight(self.weight.kappa, self.weight.s + k), self.poly)

    def diff(self, var: str) -> "WeightedFn":
        """Exact ``d/dz`` or ``d/dzbar`` within the class."""
        if self.is_zero():
            return self
        mono = BiPoly.zbar() if var == "z" else BiPoly.z()
        dp = self.poly.diff(var)
        w = self.weight
        if isinstance(w, ExpWeight):
            return self._with(w.c, (mono * self.poly).scale(w.c) + dp)
        # d(h^s p) = h^(s-1) (s kappa mono p + h dp)
        poly = (mono * self.poly).scale(w.s * w.kappa) + dp * h_power(w.kappa, 1)
        return self._with(w.s - 1, poly)

    def to_polynomial(self) -> BiPoly:
        """Expand into a plain polynomial; requires a nonnegative integer exponent."""
        if self.is_zero():
            return BiPoly()
        w = self.weight
        if isinstance(w, ExpWeight):
            if w.c:
                raise ValueError("Gaussian weight does not cancel")
            return self.poly
        if w.s.denominator != 1 or w.s < 0:
            raise ValueError(f"weight exponent {w.s} does not cancel to a polynomial")
        return self.poly * h_power(w.kappa, int(w.s))

    # -- evaluation ---------------------------------------------------------
    def weight_value(self, z):
        z = np.asarray(z, dtype=complex)
        r2 = (z * np.conj(z)).real
        w = self.weight
        if isinstance(w, ExpWeight):
            return np.exp(float(w.c) * r2)
        base = 1.0 + float(w.kappa) * r2
        if np.any(base <= 0):
            raise DomainError("1 + kappa|z|^2 <= 0: point lies outside the surface")
        return base ** float(w.s)

    def evaluate(self, z):
        """Float value at complex ``z`` (scalar or array)."""
        return self.weight_value(z) * self.poly.evaluate(z)

    def equals(self, other: "WeightedFn") -> bool:
        """Function equality; raises :class:`WeightMismatchError` across families."""
        self._same_family(other)
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.exponent == other.exponent and self.poly == other.poly

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedFn):
            return NotImplemented
        try:
            return self.equals(other)
        except WeightMismatchError:
            return False

    def __hash__(self) -> int:
        if self.is_zero():
            return hash(0)
        return hash((self.weight, self.poly))

    def to_json(self) -> dict:
        return {"weight": self.weight.to_json(), "poly": self.poly.to_json()}

    def __repr__(self) -> str:
        return f"WeightedFn({self.weight!r}, {self.poly})"


def _as_poly(p) -> BiPoly:
    return p if isinstance(p, BiPoly) else BiPoly.constant(p)


def wf_equal(f: WeightedFn, g: WeightedFn) -> bool:
    return f.equals(g)
