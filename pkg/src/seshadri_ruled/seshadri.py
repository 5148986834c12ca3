"""Construction and certification of ample bundles with ``eps(X_r, L, x) = sqrt(L^2)``.

The bundle is ``L = pi^*(s * L0) - (E_1 + ... + E_r)`` with the default ample
``L0`` on X.  Writing ``q = L0^2`` (``e + 2`` for e >= 0, ``2 - e`` for
e < 0), ``pi_x^*L - sqrt(L^2) E_x`` is in good form exactly when

    4 s^2 q - 4  >=  4 r  >=  4 s^2 q - s^2,

i.e. ``L^2 >= 1`` and ``s >= 2 sqrt(L^2)``.  The very general point x is
modelled as one extra exceptional multiplicity appended after the r points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .curves import EnumerationBounds, rigid_rule, enumerate_minus_one_classes
from .errors import ConditionalHypothesisError, PreconditionError, WindowEmptyError
from .exactnum import QuadraticValue, is_perfect_square, sqrt_symbolic
from .lattice import DivisorClass, ExtendedDivisorClass, SurfaceParams
from .nbs import certified_threshold, primitive, r_threshold
from .positivity import GoodFormReport, is_ample_base, is_good_form, worst_pairing

CONDITIONALITY = "negative-curve-conjecture"
DEFAULT_UPPER_BOUNDS = (2, 3, 2)


def base_bundle_default(s: SurfaceParams) -> tuple[int, int]:
    return (1, s.e + 1) if s.e >= 0 else (1, 1)


def window_q(s: SurfaceParams) -> int:
    """Self-intersection of the default base bundle."""
    return s.e + 2 if s.e >= 0 else 2 - s.e


def find_r_window(s: SurfaceParams, s_mult: int) -> range:
    """Integers r with ``4 s^2 q - 4 >= 4r >= 4 s^2 q - s^2`` (possibly empty)."""
    if s_mult < 1:
        raise PreconditionError(f"s must be >= 1 (s={s_mult})")
    q = window_q(s)
    lo = -((s_mult * s_mult - 4 * s_mult * s_mult * q) // 4)  # ceil((4 s^2 q - s^2) / 4)
    hi = s_mult * s_mult * q - 1
    return range(lo, hi + 1)


def admissible_s(s: SurfaceParams, r: int) -> list[int]:
    q = window_q(s)
    out = []
    t = 1
    # s^2 (4q - 1) <= 4r is necessary for the lower window edge
    while t * t * (4 * q - 1) <= 4 * r:
        if r in find_r_window(s, t):
            out.append(t)
        t += 1
    return out


def nearest_windows(s: SurfaceParams, r: int) -> list[dict]:
    below = above = None
    t = 1
    while True:
        w = find_r_window(s, t)
        if len(w):
            if w.stop - 1 < r:
                below = (t, w)
            elif w.start > r:
                above = (t, w)
                break
        t += 1
    out = []
    for item in (below, above):
        if item is not None:
            out.append({"s": item[0], "r_min": item[1].start, "r_max": item[1].stop - 1})
    return out


def existence_bound(s: SurfaceParams) -> Fraction:
    """Past this many points every r lies in some window."""
    k = 15 + 8 * abs(s.e)
    return Fraction(k * k * window_q(s)) - Fraction(k * k, 4)


def _bundle(s: SurfaceParams, s_mult: int, r: int) -> DivisorClass:
    a0, b0 = base_bundle_default(s)
    return DivisorClass(s_mult * a0, s_mult * b0, (1,) * r)


def construct_pair(
    s: SurfaceParams,
    r: Optional[int] = None,
    require_irrational: bool = False,
    assume_conjecture: bool = False,
) -> tuple[int, int, DivisorClass]:
    """Pick ``(r, s)`` inside a good-form window and build ``L``.

    Smallest admissible s wins.  With ``r`` omitted, the smallest r past the
    existence bound (and past the certified threshold) is used.
    """
    a0, b0 = base_bundle_default(s)
    r0 = certified_threshold(s, a0, b0).r0
    q = window_q(s)

    def pick(rr: int) -> Optional[int]:
        for t in admissible_s(s, rr):
            if require_irrational and is_perfect_square(t * t * q - rr):
                continue
            return t
        return None

    if r is None:
        rr = max(math.ceil(existence_bound(s)), r0)
        while (t := pick(rr)) is None:
            rr += 1
        return rr, t, _bundle(s, t, rr)

    if r < 1:
        raise PreconditionError(f"r must be positive (r={r})")
    t = pick(r)
    if t is None:
        raise WindowEmptyError(r, nearest_windows(s, r))
    if r < r0 and not assume_conjecture:
        raise ConditionalHypothesisError(
            "multi-point Seshadri inequality for the base bundle",
            f"r={r} is below the certified threshold r0={r0}",
        )
    return r, t, _bundle(s, t, r)


@dataclass
class SeshadriCertificate:
    surface: SurfaceParams
    base_bundle: tuple[int, int]
    s: int
    r: int
    L_sq: int
    epsilon: Optional[QuadraticValue]
    is_irrational: Optional[bool]
    checks: dict
    good_form: GoodFormReport
    threshold_r0: int
    case_threshold_r0: int
    epsilon_interval: Optional[tuple[QuadraticValue, QuadraticValue]] = None
    conditionality: str = CONDITIONALITY

    @property
    def valid(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        out = {
            "surface": self.surface.to_json(),
            "base_bundle": list(self.base_bundle),
            "s": self.s,
            "r": self.r,
            "L_sq": self.L_sq,
            "epsilon": self.epsilon.to_json() if self.epsilon is not None else None,
            "is_irrational": self.is_irrational,
            "valid": self.valid,
            "checks": dict(self.checks),
            "threshold": {"certified_r0": self.threshold_r0, "case_analysis_r0": self.case_threshold_r0},
            "good_form": self.good_form.to_json(),
            "conditionality": self.conditionality,
        }
        if self.epsilon_interval is not None:
            ub, top = self.epsilon_interval
            out["epsilon_interval"] = {"upper_bound": ub.to_json(), "sqrt_L_sq": top.to_json()}
        return out


def _uniform_mult(l: DivisorClass) -> int:
    ms = set(l.mults)
    if len(ms) > 1:
        raise PreconditionError("certification expects equal multiplicities at the r points")
    return ms.pop() if ms else 0


def seshadri_certify(
    s: SurfaceParams,
    l: DivisorClass,
    r: Optional[int] = None,
    bounds: Optional[EnumerationBounds] = None,
) -> SeshadriCertificate:
    """Certify ``eps(X_r, L, x) = sqrt(L^2)`` through good form at a generic point.

    When any check fails the certificate is partial: ``epsilon`` is left
    unset and ``epsilon_interval`` holds the best candidate upper bound
    together with ``sqrt(L^2)``.
    """
    if r is not None and r != l.r:
        raise PreconditionError(f"L lives on {l.r} points, not r={r}")
    r = l.r
    m = _uniform_mult(l)
    A, B = l.a, l.b
    l_sq = 2 * A * B - A * A * s.e - r * m * m
    ample_base = is_ample_base(s, A, B)
    if not ample_base or l_sq <= 0 or m < 0:
        raise PreconditionError(f"L is not ample (base ample: {ample_base}, L^2 = {l_sq})")
    pa, pb, k = primitive(A, B)
    r0 = certified_threshold(s, A, B).r0
    root = sqrt_symbolic(l_sq)
    ext = ExtendedDivisorClass(l, root)
    gf = is_good_form(ext, s)
    checks = {
        "ample_base": ample_base,
        "r_ge_threshold": r >= r0,
        "L_sq_positive": l_sq > 0,
        "good_form_at_generic_point": gf.is_good,
    }
    cert = SeshadriCertificate(
        surface=s,
        base_bundle=(pa, pb),
        s=k,
        r=r,
        L_sq=l_sq,
        epsilon=None,
        is_irrational=None,
        checks=checks,
        good_form=gf,
        threshold_r0=r0,
        case_threshold_r0=r_threshold(s, pa, pb).r0,
    )
    if cert.valid:
        cert.epsilon = root
        cert.is_irrational = not is_perfect_square(l_sq)
    else:
        if bounds is None:
            bounds = EnumerationBounds(*DEFAULT_UPPER_BOUNDS, r + 1)
        cert.epsilon_interval = (seshadri_upper_bound(s, l, bounds), root)
    return cert


def seshadri_upper_bound(s: SurfaceParams, l: DivisorClass, bounds: EnumerationBounds) -> QuadraticValue:
    """``min(sqrt(L^2), min (L.C)/mult_x C)`` over candidate curves through x.

    Candidates: the fibre through x, the section through x when it moves,
    and the (-1)-classes of the box on the r+1 points whose multiplicity at
    x is positive.  Each (-1)-class orbit is placed in its least favourable
    position relative to L.
    """
    r = l.r
    l_sq = 2 * l.a * l.b - l.a * l.a * s.e - sum(x * x for x in l.mults)
    if l_sq < 0:
        raise PreconditionError(f"L^2 = {l_sq} < 0")
    best = sqrt_symbolic(l_sq)
    ratios = [QuadraticValue(l.a)]
    if rigid_rule(1, 0, s) is None:
        ratios.append(QuadraticValue(l.b - s.e * l.a))
    for c in enumerate_minus_one_classes(s, bounds.with_r(r + 1), symmetric=True):
        for v in sorted({m for m in c.mults if m > 0}):
            rest = list(c.mults)
            rest.remove(v)
            c_prime = DivisorClass(c.a, c.b, tuple(rest))
            ratios.append(worst_pairing(l, c_prime, s) / v)
    for x in ratios:
        if x < best:
            best = x
    return best


def irrationality_witness(s: SurfaceParams, s_mult: int) -> SeshadriCertificate:
    """Certificate for ``r = s^2 q - 2``, where ``L^2 = 2`` and ``eps = sqrt(2)``."""
    if s_mult < 3:
        raise PreconditionError(f"the L^2 = 2 window needs s >= 3 (s={s_mult})")
    q = window_q(s)
    r = s_mult * s_mult * q - 2
    if r not in find_r_window(s, s_mult):
        raise WindowEmptyError(r, nearest_windows(s, r))
    cert = seshadri_certify(s, _bundle(s, s_mult, r))
    assert cert.L_sq == 2 and cert.valid, "window arithmetic guarantees a valid witness for s >= 3"
    return cert
