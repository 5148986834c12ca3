"""Num(X_r) for the blow-up of a ruled surface at r very general points.

Basis: ``H`` (pullback of the normalised section), ``F`` (pullback of a
fibre) and the exceptional classes ``E_1..E_r``.  A class is stored as
``a*H + b*F - sum(n_i * E_i)``; note the sign convention on ``mults``.

Pairing::

    H.H = -e,  H.F = 1,  F.F = 0,  E_i.E_j = -delta_ij,  E_i orthogonal to H, F
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .errors import DimensionMismatch, DomainError, InvalidSurface
from .exactnum import QuadraticValue


@dataclass(frozen=True)
class SurfaceParams:
    """A ruled surface ``X -> Gamma`` reduced to genus, invariant and product flag."""

    g: int
    e: int
    is_product: bool = False

    def __post_init__(self) -> None:
        for name in ("g", "e"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise InvalidSurface(f"{name} must be an integer, got {v!r}")
        if self.g < 0:
            raise InvalidSurface(f"genus must be nonnegative (g={self.g})")
        if self.is_product and self.e != 0:
            raise InvalidSurface(f"a product surface Gamma x P^1 has e = 0 (got e={self.e})")
        if self.e < -self.g:
            raise InvalidSurface(f"invariant must satisfy e >= -g (e={self.e}, g={self.g})")

    @property
    def anticanonical_f(self) -> int:
        """Coefficient ``e + 2 - 2g`` of F in ``-K_X``."""
        return self.e + 2 - 2 * self.g

    def to_json(self) -> dict:
        return {"g": self.g, "e": self.e, "is_product": self.is_product}

    @classmethod
    def from_json(cls, obj: dict) -> "SurfaceParams":
        return make_surface(int(obj["g"]), int(obj["e"]), bool(obj.get("is_product", False)))


def make_surface(g: int, e: int, is_product: bool = False) -> SurfaceParams:
    return SurfaceParams(g, e, bool(is_product))


@dataclass(frozen=True)
class DivisorClass:
    a: int
    b: int
    mults: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "mults", tuple(map(int, self.mults)))

    @property
    def r(self) -> int:
        return len(self.mults)

    @property
    def image(self) -> tuple[int, int]:
        return self.a, self.b

    @property
    def passes_through_points(self) -> bool:
        return any(self.mults)

    def _check_r(self, other: "DivisorClass") -> None:
        if self.r != other.r:
            raise DimensionMismatch(f"classes live on X_{self.r} and X_{other.r}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_r(other)
        return DivisorClass(
            self.a + other.a, self.b + other.b, tuple(x + y for x, y in zip(self.mults, other.mults))
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-1) * other

    def __neg__(self) -> "DivisorClass":
        return (-1) * self

    def __mul__(self, k: int) -> "DivisorClass":
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        return DivisorClass(k * self.a, k * self.b, tuple(k * m for m in self.mults))

    __rmul__ = __mul__

    def padded(self, r: int) -> "DivisorClass":
        """The same class viewed on ``X_r`` with ``r >= self.r`` (extra multiplicities zero)."""
        if r < self.r:
            raise DimensionMismatch(f"cannot pad a class on X_{self.r} down to X_{r}")
        return DivisorClass(self.a, self.b, self.mults + (0,) * (r - self.r))

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "mults": list(self.mults)}

    @classmethod
    def from_json(cls, obj: dict) -> "DivisorClass":
        return cls(int(obj["a"]), int(obj["b"]), tuple(int(m) for m in obj.get("mults", [])))

    def __str__(self) -> str:
        ms = ",".join(str(m) for m in self.mults)
        return f"({self.a},{self.b};{ms})"


@dataclass(frozen=True)
class ExtendedDivisorClass:
    """``pi_x^* base - ex_mult * E_x`` on the blow-up of ``X_r`` at one more point."""

    base: DivisorClass
    ex_mult: QuadraticValue

    def __post_init__(self) -> None:
        object.__setattr__(self, "ex_mult", QuadraticValue.coerce(self.ex_mult))

    @property
    def a(self) -> int:
        return self.base.a

    @property
    def b(self) -> int:
        return self.base.b

    @property
    def mults(self) -> tuple[QuadraticValue, ...]:
        return tuple(QuadraticValue(m) for m in self.base.mults) + (self.ex_mult,)

    def to_json(self) -> dict:
        out = self.base.to_json()
        out["ex_mult"] = self.ex_mult.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "ExtendedDivisorClass":
        return cls(DivisorClass.from_json(obj), QuadraticValue.from_json(obj["ex_mult"]))


AnyClass = Union[DivisorClass, ExtendedDivisorClass]


def hirzebruch_basis(r: int) -> list[DivisorClass]:
    """``[H, F, E_1, ..., E_r]`` on ``X_r``."""
    out = [DivisorClass(1, 0, (0,) * r), DivisorClass(0, 1, (0,) * r)]
    for i in range(r):
        out.append(exceptional(i, r))
    return out


def exceptional(i: int, r: int) -> DivisorClass:
    """``E_{i+1}`` on ``X_r`` (zero-based index ``i``)."""
    if not 0 <= i < r:
        raise DomainError(f"exceptional index {i} out of range for r={r}")
    mults = [0] * r
    mults[i] = -1
    return DivisorClass(0, 0, tuple(mults))


def image_self_intersection(a: int, b: int, s: SurfaceParams) -> int:
    """Self-intersection on X of ``a*Gamma_e + b*f``."""
    return 2 * a * b - a * a * s.e


def intersect(d1: DivisorClass, d2: DivisorClass, s: SurfaceParams) -> int:
    if d1.r != d2.r:
        raise DimensionMismatch(f"classes live on X_{d1.r} and X_{d2.r}")
    return (
        -s.e * d1.a * d2.a
        + d1.a * d2.b
        + d2.a * d1.b
        - sum(map(operator.mul, d1.mults, d2.mults))
    )


def intersect_ext(l: AnyClass, c: AnyClass, s: SurfaceParams) -> QuadraticValue:
    """Pairing on ``Bl_x(X_r)``; plain classes are treated as having ``E_x``-coefficient 0."""
    lb, lx = (l.base, l.ex_mult) if isinstance(l, ExtendedDivisorClass) else (l, QuadraticValue(0))
    cb, cx = (c.base, c.ex_mult) if isinstance(c, ExtendedDivisorClass) else (c, QuadraticValue(0))
    return intersect(lb, cb, s) - lx * cx


def self_intersection(c: DivisorClass, s: SurfaceParams) -> int:
    return intersect(c, c, s)


def canonical_class(s: SurfaceParams, r: int) -> DivisorClass:
    """``K_{X_r} = -2H - (e+2-2g)F + sum E_i``."""
    if r < 0:
        raise DomainError(f"r must be nonnegative (r={r})")
    return DivisorClass(-2, -s.anticanonical_f, (-1,) * r)


def anticanonical_degree(c: DivisorClass, s: SurfaceParams) -> int:
    """``-K.C``, written out: ``a(2-e-2g) + 2b - sum n_i``."""
    return -intersect(canonical_class(s, c.r), c, s)


def arithmetic_genus(c: DivisorClass, s: SurfaceParams) -> Fraction:
    k = canonical_class(s, c.r)
    return 1 + Fraction(intersect(c, c, s) + intersect(k, c, s), 2)


def strict_transform(a: int, b: int, mults: Sequence[int]) -> DivisorClass:
    """Numerical strict transform of ``a*Gamma_e + b*f`` with the given point multiplicities."""
    mults = tuple(int(m) for m in mults)
    bad = [m for m in mults if m < 0]
    if bad:
        raise DomainError(f"multiplicities of an effective curve must be >= 0, got {bad}")
    return DivisorClass(a, b, mults)


def gram_matrix(s: SurfaceParams, r: int) -> list[list[int]]:
    basis = hirzebruch_basis(r)
    n = len(basis)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = intersect(basis[i], basis[j], s)
    return g
