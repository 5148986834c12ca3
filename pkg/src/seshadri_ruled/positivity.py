"""Ampleness tests and the good-form criterion.

A class ``L = aH + bF - sum n_i E_i`` (multiplicities possibly quadratic
irrationals, as for ``pi_x^*L - sqrt(L^2) E_x``) is in good form when, after
sorting the multiplicities in decreasing order,

    (i)   n_1 >= ... >= n_r >= 0
    (ii)  a >= 2 n_1
    (iii) b >= (e + 2 - 2g) n_1
    (iv)  b >= a e + n_1   on a product surface, b >= a e otherwise.

Equivalently every coefficient of L against ``H, F, H'_1..H'_r`` with
``H'_i = 2H + (e+2-2g)F - E_1 - ... - E_i`` is nonnegative and (iv) holds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .curves import EnumerationBounds, enumerate_minus_one_classes, gamma_e_transforms
from .errors import ConditionalHypothesisError, PreconditionError
from .exactnum import QuadraticValue, quad_cmp
from .lattice import AnyClass, DivisorClass, ExtendedDivisorClass, SurfaceParams

QV = QuadraticValue


def is_ample_base(s: SurfaceParams, a: int, b: int) -> bool:
    """Ampleness of ``a*Gamma_e + b*f`` on X."""
    if a <= 0:
        return False
    if s.e >= 0:
        return b > a * s.e
    return 2 * b > a * s.e


@dataclass(frozen=True)
class Decomposition:
    """Coefficients of L against ``(H, F, H'_1, ..., H'_r)`` after sorting.

    ``order[k]`` is the original index of the k-th largest multiplicity.
    """

    c_h: QuadraticValue
    c_f: QuadraticValue
    coeffs: tuple[QuadraticValue, ...]
    order: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "c_H": self.c_h.to_json(),
            "c_F": self.c_f.to_json(),
            "c_H_prime": [c.to_json() for c in self.coeffs],
            "sort_order": list(self.order),
        }


@dataclass(frozen=True)
class GoodFormReport:
    is_good: bool
    failed_condition: Optional[str]
    decomposition: Decomposition

    def to_json(self) -> dict:
        return {
            "is_good": self.is_good,
            "failed_condition": self.failed_condition,
            "decomposition": self.decomposition.to_json(),
        }


def _parts(l: AnyClass) -> tuple[int, int, list[QuadraticValue]]:
    if isinstance(l, ExtendedDivisorClass):
        return l.a, l.b, list(l.mults)
    return l.a, l.b, [QV(m) for m in l.mults]


def _sorted_desc(mults: Sequence[QuadraticValue]) -> tuple[int, ...]:
    # stable: equal multiplicities keep their original relative order
    idx = list(range(len(mults)))
    idx.sort(key=lambda i: mults[i], reverse=True)
    return tuple(idx)


def decompose_good_form(l: AnyClass, s: SurfaceParams) -> Decomposition:
    a, b, mults = _parts(l)
    order = _sorted_desc(mults)
    n = [mults[i] for i in order]
    n1 = n[0] if n else QV(0)
    c_h = QV(a) - 2 * n1
    c_f = QV(b) - s.anticanonical_f * n1
    coeffs = tuple(n[i] - n[i + 1] for i in range(len(n) - 1)) + ((n[-1],) if n else ())
    return Decomposition(c_h, c_f, coeffs, order)


def _first_failure(a, b, n1, nr, s: SurfaceParams, ge) -> Optional[str]:
    if not ge(nr, 0):
        return "i"
    if not ge(a, 2 * n1):
        return "ii"
    if not ge(b, s.anticanonical_f * n1):
        return "iii"
    rhs = a * s.e + n1 if s.is_product else a * s.e
    if not ge(b, rhs):
        return "iv"
    return None


def good_form_failure(a: int, b: int, mults: Sequence[int], s: SurfaceParams) -> Optional[str]:
    """Integer fast path of :func:`is_good_form`: the first failed condition or ``None``."""
    if mults:
        n1, nr = max(mults), min(mults)
    else:
        n1 = nr = 0
    return _first_failure(a, b, n1, nr, s, lambda x, y: x >= y)


def is_good_form(l: AnyClass, s: SurfaceParams) -> GoodFormReport:
    a, b, mults = _parts(l)
    dec = decompose_good_form(l, s)
    if mults:
        n1, nr = mults[dec.order[0]], mults[dec.order[-1]]
    else:
        n1 = nr = QV(0)
    failed = _first_failure(QV(a), QV(b), n1, nr, s, lambda x, y: quad_cmp(x, y) >= 0)
    return GoodFormReport(failed is None, failed, dec)


def is_ample_uniform(
    s: SurfaceParams, base: tuple[int, int], r: int, m: int = 1, assume_conjecture: bool = False
) -> bool:
    """Ampleness of ``pi^*(aH + bF) - m(E_1 + ... + E_r)`` by the ``L^2 > 0`` criterion.

    The criterion needs the multi-point inequality for every curve through
    the points, which the threshold analysis supplies once ``r`` is at least
    :func:`nbs.certified_threshold`.  Below it the call refuses with
    :class:`ConditionalHypothesisError` unless ``assume_conjecture`` is set.
    """
    from .nbs import certified_threshold

    a, b = base
    if m <= 0:
        raise PreconditionError(f"uniform multiplicity must be positive (m={m})")
    if not is_ample_base(s, a, b):
        raise PreconditionError(f"base bundle ({a},{b}) is not ample on X")
    if r < 1:
        raise PreconditionError("need at least one blown-up point")
    r0 = certified_threshold(s, a, b).r0
    if r < r0 and not assume_conjecture:
        raise ConditionalHypothesisError(
            "multi-point Seshadri inequality for the base bundle",
            f"r={r} is below the certified threshold r0={r0}",
        )
    l_sq = 2 * a * b - a * a * s.e
    return l_sq - r * m * m > 0


@dataclass
class NonnegReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "checked": self.checked,
            "violations": [
                {"class": c.to_json(), "intersection": v.to_json()} for c, v in self.violations
            ],
        }


def worst_pairing(l: AnyClass, c: DivisorClass, s: SurfaceParams) -> QuadraticValue:
    """Minimum of ``L . sigma(C)`` over all permutations ``sigma`` of C's multiplicities.

    By the rearrangement inequality the minimum pairs the largest
    multiplicities of L with the largest of C.
    """
    a, b, n = _parts(l)
    if len(n) != c.r:
        raise PreconditionError(f"L lives on {len(n)} points, C on {c.r}")
    n_sorted = [n[i] for i in _sorted_desc(n)]
    m_sorted = sorted(c.mults, reverse=True)
    base = -s.e * a * c.a + a * c.b + b * c.a
    return QV(base) - sum((x * y for x, y in zip(n_sorted, m_sorted)), QV(0))


def nonneg_on_candidates(
    l: AnyClass,
    s: SurfaceParams,
    bounds: EnumerationBounds,
    require_good_form: bool = True,
) -> NonnegReport:
    """Check ``L . C >= 0`` for every (-1)-class and Gamma_e transform in the box.

    Candidates are enumerated up to permutation of the points and each orbit
    is tested at its worst pairing, so the check covers every ordering.
    An extended class is tested on the r+1 points including x.
    """
    if require_good_form and not is_good_form(l, s).is_good:
        raise PreconditionError("L is not in good form")
    r = len(l.mults)
    b = bounds.with_r(r)
    cands = enumerate_minus_one_classes(s, b, symmetric=True) + gamma_e_transforms(s, r, symmetric=True)
    rep = NonnegReport()
    for c in cands:
        v = worst_pairing(l, c, s)
        rep.checked += 1
        if v.sign() < 0:
            rep.violations.append((c, v))
    return rep
