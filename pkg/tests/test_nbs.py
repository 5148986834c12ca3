from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from seshadri_ruled.curves import (
    EnumerationBounds,
    enumerate_minus_one_classes,
    rigid_rule,
    unit_multiplicity_patterns,
)
from seshadri_ruled.errors import DomainError, PreconditionError
from seshadri_ruled.exactnum import QuadraticValue as QV
from seshadri_ruled.lattice import make_surface
from seshadri_ruled.nbs import (
    BELOW,
    CERTIFIED,
    certified_threshold,
    multipoint_conjectural,
    nbs_check,
    primitive,
    r_threshold,
    refined_threshold,
)
from seshadri_ruled.positivity import is_ample_base
from seshadri_ruled.verify import sweep_surfaces


class TestCaseThreshold:
    def test_f1(self, f1):
        rep = r_threshold(f1, 1, 2)
        assert rep.r0 == 27
        assert rep.dominant.formula == "(4-e-2g)^2 L^2"
        assert rep.dominant.value == 27

    def test_elliptic_product(self, elliptic_product):
        rep = r_threshold(elliptic_product, 1, 1)
        assert rep.r0 == 32
        assert rep.dominant.formula == "16 L^2"
        values = sorted(c.value for c in rep.contributions)
        assert values == [2, 2, 2, 8, 32]

    def test_genus_two(self, genus2_e_minus1):
        rep = r_threshold(genus2_e_minus1, 1, 1)
        assert rep.r0 == 108
        assert rep.dominant.formula == "36 L^2"
        assert len(rep.contributions) == 6
        by_case = {c.case: c.value for c in rep.contributions}
        assert by_case["e<0/Gamma_e"] == 3

    def test_degenerate_positive_e_bound(self):
        rep = r_threshold(make_surface(1, 3), 1, 4)
        assert rep.contributions[0].degenerate
        assert rep.r0 == 1

    def test_non_ample(self, f1):
        with pytest.raises(PreconditionError):
            r_threshold(f1, 1, 1)

    def test_json(self, f1):
        js = r_threshold(f1, 1, 2).to_json()
        assert js["r0"] == 27
        assert js["contributions"][0]["value"] == "27/1"


class TestRefinedThreshold:
    @pytest.mark.parametrize(
        "g, e, prod, bundle, r0",
        [(1, 0, True, (1, 1), 8), (0, 1, False, (1, 2), 12), (2, -1, False, (1, 1), 12), (0, 3, False, (1, 4), 20)],
    )
    def test_values(self, g, e, prod, bundle, r0):
        assert refined_threshold(make_surface(g, e, prod), *bundle).r0 == r0

    def test_multiples_reduce_to_primitive(self, elliptic_product):
        assert primitive(6, 9) == (2, 3, 3)
        assert certified_threshold(elliptic_product, 3, 3).r0 == certified_threshold(elliptic_product, 1, 1).r0

    @pytest.mark.parametrize("s", sweep_surfaces(range(-2, 4), 2), ids=str)
    def test_holds_on_movable_candidates(self, s):
        # every (-1)-class and unit pattern that can pass through very general
        # points satisfies the inequality once r reaches the refined threshold
        for a in range(1, 3):
            for b in range(-2, 6):
                if not is_ample_base(s, a, b):
                    continue
                r0 = certified_threshold(s, a, b).r0
                if r0 > 30:
                    continue
                bb = EnumerationBounds(4, 8, 3, r0)
                cands = enumerate_minus_one_classes(s, bb, symmetric=True) + unit_multiplicity_patterns(
                    s, bb, symmetric=True
                )
                for c in cands:
                    if any(m > 0 for m in c.mults) and rigid_rule(c.a, c.b, s) is None:
                        assert nbs_check(s, a, b, r0, c.image, c.mults), (a, b, r0, str(c))

    def test_positive_e_case_bound_is_too_small(self):
        # Gamma_e + 4f on F_3 moves in a 6-dimensional system, so it passes
        # through 6 general points; at r = 6 it beats the inequality even
        # though the case-by-case bound says 5 points suffice
        s = make_surface(0, 3)
        assert r_threshold(s, 1, 4).r0 == 5
        assert not nbs_check(s, 1, 4, 6, (1, 4), [1] * 6)
        assert certified_threshold(s, 1, 4).r0 > 6


class TestCheck:
    def test_fibre_at_threshold(self, f1):
        assert nbs_check(f1, 1, 2, 27, (0, 1), [1])

    def test_small_r_fails(self, elliptic_product):
        assert not nbs_check(elliptic_product, 1, 1, 1, (1, 0), [1])

    def test_scaled_bundle(self, f1):
        assert nbs_check(f1, 5, 10, 27, (0, 1), [1])

    def test_needs_a_point(self, f1):
        with pytest.raises(PreconditionError):
            nbs_check(f1, 1, 2, 27, (0, 1), [0])

    def test_r_positive(self, f1):
        with pytest.raises(DomainError):
            nbs_check(f1, 1, 2, 0, (0, 1), [1])

    @given(st.integers(1, 5), st.integers(1, 40), st.integers(0, 3), st.integers(0, 5),
           st.lists(st.integers(0, 3), min_size=1, max_size=4))
    def test_scale_invariance(self, k, r, alpha, beta, ms):
        s = make_surface(1, 0, True)
        if not any(ms):
            return
        assert nbs_check(s, 1, 2, r, (alpha, beta), ms) == nbs_check(s, k, 2 * k, r, (alpha, beta), ms)


class TestMultipoint:
    def test_f1(self, f1):
        assert multipoint_conjectural(f1, 1, 2, 27) == (QV(Fraction(1, 3)), CERTIFIED)

    def test_product(self, elliptic_product):
        assert multipoint_conjectural(elliptic_product, 1, 1, 32) == (QV(Fraction(1, 4)), CERTIFIED)

    def test_below(self, elliptic_product):
        value, status = multipoint_conjectural(elliptic_product, 1, 1, 3)
        assert value == QV(0, Fraction(1, 3), 6)
        assert value * value == QV(Fraction(2, 3))
        assert status == BELOW

    def test_r_positive(self, f1):
        with pytest.raises(DomainError):
            multipoint_conjectural(f1, 1, 2, 0)
