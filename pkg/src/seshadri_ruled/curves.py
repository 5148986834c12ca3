"""Negative curve classes on X_r: classification, the Xu-type multiplicity
filter, rigidity rules, and exhaustive enumeration of numerical (-1)-classes.

Everything here works with *candidate* numerical classes.  Whether an
irreducible curve actually exists in a class is not decidable from the class
alone; a ``ConjectureViolationCandidate`` verdict means "this would violate
the classification if an irreducible curve with these multiplicities at very
general points existed".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import DomainError, PreconditionError
from .lattice import (
    DivisorClass,
    SurfaceParams,
    anticanonical_degree,
    exceptional,
    image_self_intersection,
    self_intersection,
)


class Verdict(str, enum.Enum):
    EXCEPTIONAL = "Exceptional"
    MINUS_ONE = "MinusOne"
    NON_POSITIVE_IMAGE = "NonPositiveImage"
    GAMMA_E_TRANSFORM = "GammaETransform"
    RIGID_EXCLUDED = "RigidExcluded"
    CONJECTURE_VIOLATION_CANDIDATE = "ConjectureViolationCandidate"


class BoundCheck(str, enum.Enum):
    STRICT = "strict"
    EQUALITY_MINUS_ONE = "equality_minus_one"
    EQUALITY_GAMMA = "equality_gamma"
    VIOLATION = "violation"


@dataclass(frozen=True)
class CurveClassification:
    verdict: Verdict
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value, "detail": self.detail}


@dataclass(frozen=True)
class EnumerationBounds:
    alpha_max: int
    beta_max: int
    mult_max: int
    r: int

    def __post_init__(self) -> None:
        for name in ("alpha_max", "beta_max", "mult_max", "r"):
            if getattr(self, name) < 0:
                raise DomainError(f"enumeration bound {name} must be >= 0")

    def with_r(self, r: int) -> "EnumerationBounds":
        return EnumerationBounds(self.alpha_max, self.beta_max, self.mult_max, r)

    def to_json(self) -> dict:
        return {
            "alpha_max": self.alpha_max,
            "beta_max": self.beta_max,
            "mult_max": self.mult_max,
            "r": self.r,
        }


def xu_filter(image_sq: int, mults: Sequence[int]) -> bool:
    """``image_sq >= sum(m_i^2) - m`` with ``m`` the least nonzero multiplicity."""
    nonzero = [m for m in mults if m != 0]
    if not nonzero:
        raise PreconditionError("xu_filter needs a curve through at least one point")
    m = min(nonzero)
    return image_sq >= sum(x * x for x in mults) - m


def is_exceptional(c: DivisorClass) -> bool:
    return c.a == 0 and c.b == 0 and sorted(c.mults)[:1] == [-1] and sum(map(abs, c.mults)) == 1


def is_minus_one_class(c: DivisorClass, s: SurfaceParams) -> bool:
    return self_intersection(c, s) == -1 and anticanonical_degree(c, s) == 1


def _is_gamma_e(alpha: int, beta: int) -> bool:
    return alpha == 1 and beta == 0


def rigid_rule(alpha: int, beta: int, s: SurfaceParams) -> str | None:
    """Name of the rigidity rule excluding ``alpha*Gamma_e + beta*f`` from very general points."""
    if alpha >= 1 and s.e != 0 and 2 * beta == alpha * s.e:
        return "isolated_square_zero"
    if _is_gamma_e(alpha, beta):
        if s.e > 0:
            return "negative_section"
        if not s.is_product:
            return "section_not_moving"
    return None


def is_rigid_class(c: DivisorClass, s: SurfaceParams) -> bool:
    if any(c.mults):
        raise PreconditionError("is_rigid_class applies to classes on X (all multiplicities zero)")
    return rigid_rule(c.a, c.b, s) is not None


def _gamma_pattern(alpha: int, beta: int, s: SurfaceParams) -> bool:
    if beta != 0:
        return False
    return alpha == 1 or (s.e == 0 and alpha >= 1)


def classify_negative_class(c: DivisorClass, s: SurfaceParams) -> CurveClassification:
    """Place a class with ``C^2 < 0`` into exactly one branch.

    Priority: Exceptional, MinusOne, NonPositiveImage, GammaETransform,
    RigidExcluded, ConjectureViolationCandidate.
    """
    c_sq = self_intersection(c, s)
    if c_sq >= 0:
        raise PreconditionError(f"classify_negative_class needs C^2 < 0 (got {c_sq})")
    kc = anticanonical_degree(c, s)
    img_sq = c_sq + sum(m * m for m in c.mults)
    detail: dict = {
        "self_intersection": c_sq,
        "anticanonical_degree": kc,
        "image_self_intersection": img_sq,
        "notes": [],
    }

    def verdict(v: Verdict, fired: str) -> CurveClassification:
        detail["fired"] = fired
        return CurveClassification(v, detail)

    if is_exceptional(c):
        return verdict(Verdict.EXCEPTIONAL, "exceptional_divisor")
    if c_sq == -1 and kc == 1:
        if _gamma_pattern(c.a, c.b, s):
            detail["notes"].append("class is also numerically a Gamma_e transform")
        return verdict(Verdict.MINUS_ONE, "minus_one_class")
    if not any(c.mults):
        return verdict(Verdict.NON_POSITIVE_IMAGE, "image_not_through_points")
    if any(m < 0 for m in c.mults) or c.a < 0:
        detail["notes"].append("not the strict transform of an effective curve")
        return verdict(Verdict.RIGID_EXCLUDED, "not_a_strict_transform")
    if _gamma_pattern(c.a, c.b, s):
        if c.a > 1:
            detail["notes"].append("multiple alpha*Gamma_e pattern (alpha > 1) accepted numerically")
        return verdict(Verdict.GAMMA_E_TRANSFORM, "gamma_e_pattern")
    rule = rigid_rule(c.a, c.b, s)
    if rule is not None:
        detail["notes"].append(f"rigidity rule: {rule}")
        return verdict(Verdict.RIGID_EXCLUDED, "rigid_image")
    if not xu_filter(img_sq, c.mults):
        return verdict(Verdict.RIGID_EXCLUDED, "xu_filter")
    return verdict(Verdict.CONJECTURE_VIOLATION_CANDIDATE, "no_branch")


def self_intersection_bound_check(image: tuple[int, int], mults: Sequence[int], s: SurfaceParams) -> BoundCheck:
    """Compare ``image^2`` with ``sum(m_i^2) - 1`` and sort out the permitted equality cases."""
    mults = tuple(mults)
    if not any(m > 0 for m in mults):
        raise PreconditionError("the lower bound concerns curves through at least one point")
    alpha, beta = image
    img_sq = image_self_intersection(alpha, beta, s)
    bound = sum(m * m for m in mults) - 1
    if img_sq > bound:
        return BoundCheck.STRICT
    if img_sq < bound:
        return BoundCheck.VIOLATION
    transform = DivisorClass(alpha, beta, mults)
    if is_minus_one_class(transform, s):
        return BoundCheck.EQUALITY_MINUS_ONE
    if _gamma_pattern(alpha, beta, s):
        return BoundCheck.EQUALITY_GAMMA
    return BoundCheck.VIOLATION


# alias under the original operation name
conjecture2_check = self_intersection_bound_check


def excluded_by_rules(image: tuple[int, int], mults: Sequence[int], s: SurfaceParams) -> bool:
    """Rigidity or the Xu-type filter rule the class out at very general points."""
    alpha, beta = image
    if rigid_rule(alpha, beta, s) is not None:
        return True
    return not xu_filter(image_self_intersection(alpha, beta, s), mults)


# --- enumeration -----------------------------------------------------------


def _multisets(total: int, sqsum: int, mmax: int, slots: int) -> Iterator[tuple[int, ...]]:
    """Descending tuples of length ``slots`` over ``0..mmax`` with given sum and sum of squares."""
    if total < 0 or sqsum < 0:
        return

    def rec(k: int, t: int, q: int, used: int, acc: list[int]):
        if k == 1:
            if t == q and used + t <= slots:
                yield tuple(acc + [1] * t + [0] * (slots - used - t))
            return
        # values left are <= k, so q <= k*t; and >= 1 so q >= t
        if q > k * t or q < t:
            return
        top = min(t // k, q // (k * k), slots - used)
        for ck in range(top, -1, -1):
            yield from rec(k - 1, t - k * ck, q - k * k * ck, used + ck, acc + [k] * ck)

    if mmax == 0:
        if total == 0 and sqsum == 0:
            yield (0,) * slots
        return
    yield from rec(mmax, total, sqsum, 0, [])


def _distinct_permutations(seq: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct permutations in lexicographic order."""
    a = sorted(seq)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1 :] = reversed(a[i + 1 :])


def minus_one_classes_for_image(
    alpha: int, beta: int, s: SurfaceParams, mult_max: int, r: int, symmetric: bool = False
) -> list[DivisorClass]:
    """All (-1)-classes on X_r over the image ``(alpha, beta)``, sorted lexicographically.

    With ``symmetric=True`` only the descending representative of each
    orbit under permutation of the points is returned.
    """
    img_sq = image_self_intersection(alpha, beta, s)
    kc = alpha * (2 - s.e - 2 * s.g) + 2 * beta
    out = []
    for ms in _multisets(kc - 1, img_sq + 1, mult_max, r):
        if symmetric:
            out.append(DivisorClass(alpha, beta, ms))
        else:
            out.extend(DivisorClass(alpha, beta, p) for p in _distinct_permutations(ms))
    out.sort(key=lambda c: c.mults)
    return out


def enumerate_minus_one_classes(
    s: SurfaceParams, bounds: EnumerationBounds, symmetric: bool = False
) -> list[DivisorClass]:
    """Numerical (-1)-classes in the search box plus the exceptional classes.

    The box is ``0 <= alpha <= alpha_max``, ``|beta| <= beta_max``,
    ``0 <= m_i <= mult_max``.  Output is in lexicographic order of
    ``(a, b, mults)``.
    """
    out: list[DivisorClass] = []
    r = bounds.r
    for alpha in range(bounds.alpha_max + 1):
        for beta in range(-bounds.beta_max, bounds.beta_max + 1):
            group = minus_one_classes_for_image(alpha, beta, s, bounds.mult_max, r, symmetric)
            if alpha == 0 and beta == 0 and r:
                excs = [exceptional(0, r)] if symmetric else [exceptional(i, r) for i in range(r)]
                group = sorted(group + excs, key=lambda c: c.mults)
            out.extend(group)
    return out


def unit_multiplicity_patterns(
    s: SurfaceParams, bounds: EnumerationBounds, symmetric: bool = False
) -> list[DivisorClass]:
    """Square-zero and section images through exactly one point with multiplicity 1.

    Covers the fibre, ``Gamma_e``, ``alpha*Gamma_e`` (e = 0) and the rigid
    ``2*beta = alpha*e`` classes inside the box.
    """
    images: list[tuple[int, int]] = [(0, 1), (1, 0)]
    for alpha in range(1, bounds.alpha_max + 1):
        if s.e == 0:
            if alpha >= 2:
                images.append((alpha, 0))
        elif (alpha * s.e) % 2 == 0 and abs(alpha * s.e // 2) <= bounds.beta_max:
            images.append((alpha, alpha * s.e // 2))
    r = bounds.r
    out = []
    if r == 0:
        return out
    positions = [0] if symmetric else range(r)
    for alpha, beta in sorted(set(images)):
        for i in positions:
            mults = [0] * r
            mults[i] = 1
            out.append(DivisorClass(alpha, beta, tuple(mults)))
    return out


def gamma_e_transforms(s: SurfaceParams, r: int, symmetric: bool = False) -> list[DivisorClass]:
    """Numerical strict transforms of ``Gamma_e`` compatible with very general points.

    A rigid section misses the points; a moving one (product case) passes
    through at most one of them, with multiplicity 1.
    """
    out = [DivisorClass(1, 0, (0,) * r)]
    if rigid_rule(1, 0, s) is None and r:
        positions = [0] if symmetric else range(r)
        for i in positions:
            mults = [0] * r
            mults[i] = 1
            out.append(DivisorClass(1, 0, tuple(mults)))
    return out
