"""Exact rationals and quadratic irrationals ``p + q*sqrt(d)``.

Every positivity test in the package goes through :func:`quad_cmp`; nothing
here touches binary floating point.  Rationals are plain
:class:`fractions.Fraction` values.
"""

from __future__ import annotations

import decimal
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError, UnsupportedComparison

RationalLike = Union[int, Fraction, str]


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @property
    def label(self) -> str:
        return self.name.lower()


def to_fraction(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction, refusing floats and bools."""
    if isinstance(x, bool):
        raise TypeError("bool is not an exact scalar")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def rational_str(x: Fraction) -> str:
    """Canonical ``"num/den"`` rendering (denominator always present)."""
    x = to_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    k = math.isqrt(n)
    return k * k == n


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, d)`` with ``n == k*k*d`` and ``d`` square-free."""
    if n < 0:
        raise DomainError(f"square-free split of negative integer {n}")
    if n == 0:
        return 0, 0
    k, d = 1, 1
    rest = n
    p = 2
    while p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            k *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    # whatever is left over is a prime (or 1)
    d *= rest
    return k, d


def _sign(x: Fraction | int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True, eq=False)
class QuadraticValue:
    """The real number ``p + q*sqrt(d)`` in canonical form.

    Construction normalises ``d`` to be square-free, folds ``q`` into ``p``
    when ``d`` is 0 or 1, and resets ``d`` to 0 whenever ``q`` vanishes, so
    equality and hashing are structural.
    """

    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self) -> None:
        p = to_fraction(self.p)
        q = to_fraction(self.q)
        d = self.d
        if isinstance(d, bool) or not isinstance(d, int):
            raise TypeError("radicand must be an int")
        if d < 0:
            raise DomainError(f"negative radicand {d}")
        k, d = squarefree_split(d)
        q *= k
        if d == 1:
            p, q = p + q, Fraction(0)
        if q == 0 or d == 0:
            q, d = Fraction(0), 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    @classmethod
    def coerce(cls, x: "QuadraticValue | RationalLike") -> "QuadraticValue":
        if isinstance(x, QuadraticValue):
            return x
        return cls(to_fraction(x))

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def sign(self) -> int:
        sp, sq = _sign(self.p), _sign(self.q)
        if sq == 0 or sp == sq:
            return sp if sp else sq
        if sp == 0:
            return sq
        # opposite signs: the larger magnitude wins
        lhs, rhs = self.p * self.p, self.q * self.q * self.d
        if lhs > rhs:
            return sp
        if lhs < rhs:
            return sq
        return 0

    def _common_d(self, other: "QuadraticValue") -> int:
        if self.d and other.d and self.d != other.d:
            raise UnsupportedComparison(
                f"radicands {self.d} and {other.d} differ; mixed radicals are not supported"
            )
        return self.d or other.d

    def __add__(self, other):
        try:
            other = QuadraticValue.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticValue(self.p + other.p, self.q + other.q, self._common_d(other))

    __radd__ = __add__

    def __neg__(self) -> "QuadraticValue":
        return QuadraticValue(-self.p, -self.q, self.d)

    def __sub__(self, other):
        try:
            other = QuadraticValue.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = QuadraticValue.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common_d(other)
        p = self.p * other.p + self.q * other.q * d
        q = self.p * other.q + self.q * other.p
        return QuadraticValue(p, q, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QuadraticValue):
            if not other.is_rational:
                # multiply through by the conjugate
                conj = QuadraticValue(other.p, -other.q, other.d)
                den = other * conj
                return (self * conj) / den.p
            other = other.p
        try:
            other = to_fraction(other)
        except TypeError:
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division of a quadratic value by zero")
        return QuadraticValue(self.p / other, self.q / other, self.d)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.q == 0 and self.p == other
        if isinstance(other, QuadraticValue):
            return (self.p, self.q, self.d) == (other.p, other.q, other.d)
        return NotImplemented

    def __hash__(self) -> int:
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __lt__(self, other) -> bool:
        return quad_cmp(self, other) is Ordering.LESS

    def __le__(self, other) -> bool:
        return quad_cmp(self, other) is not Ordering.GREATER

    def __gt__(self, other) -> bool:
        return quad_cmp(self, other) is Ordering.GREATER

    def __ge__(self, other) -> bool:
        return quad_cmp(self, other) is not Ordering.LESS

    def __repr__(self) -> str:
        return f"QuadraticValue({self})"

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.p)
        rad = f"√{self.d}"
        if self.q == 1:
            qs = rad
        elif self.q == -1:
            qs = "-" + rad
        else:
            qs = f"{self.q}{rad}"
        if self.p == 0:
            return qs
        sep = " - " if self.q < 0 else " + "
        return f"{self.p}{sep}{qs.lstrip('-')}"

    def to_json(self) -> dict:
        return {"p": rational_str(self.p), "q": rational_str(self.q), "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> "QuadraticValue":
        return cls(to_fraction(obj["p"]), to_fraction(obj.get("q", "0/1")), int(obj.get("d", 0)))

    def approx(self, digits: int = 30) -> str:
        """Decimal rendering with ``digits`` significant digits (display only)."""
        ctx = decimal.Context(prec=digits + 10)
        p = ctx.divide(decimal.Decimal(self.p.numerator), decimal.Decimal(self.p.denominator))
        val = p
        if self.q:
            q = ctx.divide(decimal.Decimal(self.q.numerator), decimal.Decimal(self.q.denominator))
            val = ctx.add(p, ctx.multiply(q, ctx.sqrt(decimal.Decimal(self.d))))
        return format(decimal.Context(prec=digits).plus(val), "f")


QV = QuadraticValue


def quad_cmp(x, y) -> Ordering:
    """Order two quadratic values exactly.

    Raises :class:`UnsupportedComparison` when both sides carry different
    irrational radicands.
    """
    x = QuadraticValue.coerce(x)
    y = QuadraticValue.coerce(y)
    return Ordering((x - y).sign())


def sqrt_symbolic(n: int) -> QuadraticValue:
    """``sqrt(n)`` as ``k*sqrt(d)`` with ``d`` square-free."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError("sqrt_symbolic expects an int")
    if n < 0:
        raise DomainError(f"square root of negative integer {n}")
    k, d = squarefree_split(n)
    return QuadraticValue(0, k, d) if d != 1 else QuadraticValue(k)


def sqrt_rational(x: RationalLike) -> QuadraticValue:
    """``sqrt(x)`` for a nonnegative rational, via ``sqrt(num*den)/den``."""
    x = to_fraction(x)
    if x < 0:
        raise DomainError(f"square root of negative rational {x}")
    return sqrt_symbolic(x.numerator * x.denominator) / x.denominator
