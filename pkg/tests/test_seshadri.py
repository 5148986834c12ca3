import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from seshadri_ruled.curves import EnumerationBounds
from seshadri_ruled.errors import ConditionalHypothesisError, PreconditionError, WindowEmptyError
from seshadri_ruled.exactnum import QuadraticValue as QV, is_perfect_square, sqrt_symbolic
from seshadri_ruled.lattice import DivisorClass, make_surface
from seshadri_ruled.seshadri import (
    CONDITIONALITY,
    base_bundle_default,
    construct_pair,
    existence_bound,
    find_r_window,
    irrationality_witness,
    seshadri_certify,
    seshadri_upper_bound,
    window_q,
)
from seshadri_ruled.verify import WITNESS_SURFACES

ROOT2 = sqrt_symbolic(2)


def uniform(a, b, r, m=1):
    return DivisorClass(a, b, (m,) * r)


class TestDefaults:
    @pytest.mark.parametrize("g, e, expected", [(0, 1, (1, 2)), (1, 0, (1, 1)), (3, -3, (1, 1)), (0, 4, (1, 5))])
    def test_base_bundle(self, g, e, expected):
        assert base_bundle_default(make_surface(g, e)) == expected

    @pytest.mark.parametrize("g, e", [(0, 1), (1, 0), (3, -3), (0, 4), (2, -1)])
    def test_q_is_the_square(self, g, e):
        s = make_surface(g, e)
        a, b = base_bundle_default(s)
        assert window_q(s) == 2 * a * b - a * a * e


class TestWindow:
    @pytest.mark.parametrize(
        "g, e, k, expected",
        [(1, 0, 3, [16, 17]), (1, 0, 4, [28, 29, 30, 31]), (1, -1, 3, [25, 26]), (0, 1, 2, [11])],
    )
    def test_examples(self, g, e, k, expected):
        assert list(find_r_window(make_surface(g, e), k)) == expected

    @given(st.integers(-4, 4), st.integers(1, 30))
    def test_matches_inequalities(self, e, k):
        s = make_surface(max(0, -e), e)
        q = window_q(s)
        brute = [r for r in range(0, k * k * q + 1) if 4 * k * k * q - 4 >= 4 * r >= 4 * k * k * q - k * k]
        assert list(find_r_window(s, k)) == brute

    @pytest.mark.parametrize("e", range(-3, 4))
    def test_every_large_r_is_covered(self, e):
        s = make_surface(max(0, -e), e)
        start = math.ceil(existence_bound(s))
        covered = set()
        k = 1
        while k * k * (4 * window_q(s) - 1) <= 4 * (start + 400):
            covered.update(find_r_window(s, k))
            k += 1
        assert all(r in covered for r in range(start, start + 400))


class TestConstruct:
    def test_product_sixteen(self, elliptic_product):
        r, k, l = construct_pair(elliptic_product, 16)
        assert (r, k, l) == (16, 3, uniform(3, 3, 16))

    def test_genus_two(self, genus2_e_minus1):
        r, k, l = construct_pair(genus2_e_minus1, 25)
        assert (r, k) == (25, 3) and l == uniform(3, 3, 25)

    def test_scan_upward(self, f1):
        r, k, l = construct_pair(f1, 26)
        assert k == 3 and l == uniform(3, 6, 26)
        assert 2 * l.a * l.b - l.a * l.a - r == 1

    def test_empty_window_lists_neighbours(self, f1):
        with pytest.raises(WindowEmptyError) as exc:
            construct_pair(f1, 12)
        assert exc.value.nearest == [{"s": 2, "r_min": 11, "r_max": 11}, {"s": 3, "r_min": 25, "r_max": 26}]

    def test_below_threshold_is_conditional(self, f1):
        with pytest.raises(ConditionalHypothesisError):
            construct_pair(f1, 11)
        assert construct_pair(f1, 11, assume_conjecture=True)[1] == 2

    def test_default_r_is_past_the_existence_bound(self, elliptic_product):
        r, k, l = construct_pair(elliptic_product)
        assert r >= existence_bound(elliptic_product)
        assert r in find_r_window(elliptic_product, k)

    def test_require_irrational(self, elliptic_product):
        r, k, l = construct_pair(elliptic_product, 17, require_irrational=False)
        assert is_perfect_square(k * k * 2 - r)
        with pytest.raises(WindowEmptyError):
            construct_pair(elliptic_product, 17, require_irrational=True)


class TestCertify:
    def test_irrational_witness(self, elliptic_product):
        cert = seshadri_certify(elliptic_product, uniform(3, 3, 16))
        assert cert.valid and cert.epsilon == ROOT2 and cert.is_irrational is True
        assert cert.L_sq == 2 and cert.s == 3 and cert.base_bundle == (1, 1)
        assert cert.conditionality == CONDITIONALITY

    def test_rational_value(self, elliptic_product):
        cert = seshadri_certify(elliptic_product, uniform(3, 3, 17))
        assert cert.valid and cert.epsilon == QV(1) and cert.is_irrational is False

    def test_window_miss_is_partial(self, elliptic_product):
        cert = seshadri_certify(elliptic_product, uniform(2, 2, 6))
        assert not cert.valid and cert.epsilon is None
        assert cert.good_form.failed_condition == "ii"
        ub, top = cert.epsilon_interval
        assert top == ROOT2 and ub <= top
        assert cert.to_json()["epsilon_interval"]["sqrt_L_sq"] == ROOT2.to_json()

    def test_non_ample(self, elliptic_product):
        with pytest.raises(PreconditionError):
            seshadri_certify(elliptic_product, uniform(1, 1, 2))

    def test_mixed_multiplicities(self, elliptic_product):
        with pytest.raises(PreconditionError):
            seshadri_certify(elliptic_product, DivisorClass(3, 3, (1, 2)))


class TestUpperBound:
    def test_witness_bound_is_root_two(self, elliptic_product):
        ub = seshadri_upper_bound(elliptic_product, uniform(3, 3, 16), EnumerationBounds(2, 3, 2, 17))
        assert ub == ROOT2

    def test_fibre_caps_f1(self, f1):
        ub = seshadri_upper_bound(f1, DivisorClass(1, 2), EnumerationBounds(2, 3, 2, 1))
        assert ub == QV(1)

    @pytest.mark.parametrize("g, e, prod", WITNESS_SURFACES)
    def test_never_undercuts_certified_value(self, g, e, prod):
        s = make_surface(g, e, prod)
        cert = irrationality_witness(s, 3)
        l = uniform(3 * base_bundle_default(s)[0], 3 * base_bundle_default(s)[1], cert.r)
        assert seshadri_upper_bound(s, l, EnumerationBounds(2, 3, 2, cert.r + 1)) == cert.epsilon


class TestWitness:
    def test_product_three(self, elliptic_product):
        cert = irrationality_witness(elliptic_product, 3)
        assert cert.r == 16 and cert.epsilon == ROOT2

    def test_product_four(self, elliptic_product):
        cert = irrationality_witness(elliptic_product, 4)
        assert cert.r == 30 and cert.L_sq == 2 and cert.epsilon == ROOT2

    def test_f2(self):
        cert = irrationality_witness(make_surface(0, 2), 3)
        assert cert.r == 34 and cert.epsilon == ROOT2

    def test_small_s(self, elliptic_product):
        with pytest.raises(PreconditionError):
            irrationality_witness(elliptic_product, 2)

    @pytest.mark.parametrize("g, e, prod", WITNESS_SURFACES)
    @pytest.mark.parametrize("k", [3, 5, 10])
    def test_family(self, g, e, prod, k):
        s = make_surface(g, e, prod)
        cert = irrationality_witness(s, k)
        q = window_q(s)
        assert cert.r == k * k * q - 2
        assert 4 * k * k * q - 4 >= 4 * cert.r >= 4 * k * k * q - k * k
        assert cert.valid and cert.L_sq == 2 and cert.is_irrational
