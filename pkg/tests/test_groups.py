"""Cyclic rotation group: group law, duals, and rotated bases."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtapsilou.groups import (
    MAX_ORDER,
    RotationGroup,
    UnsupportedOrderError,
    element,
    rotated_basis,
)
from qtapsilou.quantum import ATOL_ALGEBRA, ry

TWO_PI = 2.0 * math.pi


class TestElement:
    def test_identity_element(self):
        e = element(16, 0)
        assert (e.n, e.k) == (16, 0)
        assert e.angle == 0.0

    def test_exponent_wraps_modulo_order(self):
        assert element(16, 17).k == 1

    def test_negative_exponent_reduces_into_range(self):
        assert element(16, -1).k == 15

    @pytest.mark.parametrize("bad_order", [0, -4, MAX_ORDER + 1])
    def test_rejects_bad_order(self, bad_order):
        with pytest.raises(ValueError):
            element(bad_order, 0)

    def test_rejects_non_integer_exponent(self):
        with pytest.raises(ValueError):
            element(16, 1.5)


class TestGroupLaw:
    def test_compose_adds_exponents(self):
        assert element(16, 3).compose(element(16, 5)) == element(16, 8)

    def test_compose_wraps(self):
        assert element(16, 15).compose(element(16, 1)) == element(16, 0)

    def test_compose_with_inverse_is_identity(self):
        e = element(16, 6)
        assert e.compose(e.inverse()) == element(16, 0)

    def test_compose_rejects_mismatched_orders(self):
        with pytest.raises(ValueError):
            element(16, 1).compose(element(8, 1))

    def test_inverse_examples(self):
        assert element(16, 0).inverse() == element(16, 0)
        assert element(16, 6).inverse() == element(16, 10)

    def test_inverse_angle_cancels(self):
        e = element(16, 5)
        total = (e.angle + e.inverse().angle) % TWO_PI
        assert min(total, TWO_PI - total) < ATOL_ALGEBRA

    @pytest.mark.parametrize("n", range(1, 65))
    def test_group_axioms_exhaustively(self, n):
        ident = element(n, 0)
        for a in range(n):
            ea = element(n, a)
            assert ea.compose(ident) == ea
            assert ea.compose(ea.inverse()) == ident
            for b in range(n):
                composed = ea.compose(element(n, b))
                assert 0 <= composed.k < n  # closure in canonical range

    @given(
        n=st.integers(min_value=1, max_value=MAX_ORDER),
        a=st.integers(),
        b=st.integers(),
        c=st.integers(),
    )
    def test_associativity(self, n, a, b, c):
        ea, eb, ec = element(n, a), element(n, b), element(n, c)
        assert ea.compose(eb).compose(ec) == ea.compose(eb.compose(ec))

    @given(n=st.integers(min_value=1, max_value=MAX_ORDER), a=st.integers(), b=st.integers())
    def test_angle_homomorphism(self, n, a, b):
        ea, eb = element(n, a), element(n, b)
        diff = (ea.angle + eb.angle - ea.compose(eb).angle) % TWO_PI
        assert min(diff, TWO_PI - diff) < 1e-9


class TestDual:
    def test_dual_of_identity_is_half_turn(self):
        assert element(16, 0).dual() == element(16, 8)

    def test_dual_wraps_past_the_order(self):
        assert element(16, 11).dual() == element(16, 3)

    @pytest.mark.parametrize("l", range(16))
    def test_involution(self, l):
        e = element(16, l)
        assert e.dual().dual() == e

    @pytest.mark.parametrize("n", [2, 4, 6, 16, 64, 128])
    def test_fixed_point_free_involution_with_half_turn_angle(self, n):
        seen = set()
        for l in range(n):
            e = element(n, l)
            d = e.dual()
            assert d != e
            assert d.dual() == e
            diff = (d.angle - e.angle) % TWO_PI
            assert diff == pytest.approx(math.pi, abs=ATOL_ALGEBRA)
            seen.add((e.k, d.k))
        assert len(seen) == n

    @pytest.mark.parametrize("n", [1, 3, 15, 1023])
    def test_odd_order_is_unsupported(self, n):
        with pytest.raises(UnsupportedOrderError):
            element(n, 0).dual()


class TestRotatedBasis:
    def test_identity_element_gives_computational_basis(self):
        basis = rotated_basis(element(16, 0))
        np.testing.assert_allclose(basis.ket0, [1, 0], atol=ATOL_ALGEBRA)
        np.testing.assert_allclose(basis.ket1, [0, 1], atol=ATOL_ALGEBRA)
        np.testing.assert_allclose(basis.change_matrix, np.eye(2), atol=ATOL_ALGEBRA)

    def test_half_turn_element_swaps_kets(self):
        basis = rotated_basis(element(16, 8))
        np.testing.assert_allclose(basis.ket0, [0, 1], atol=ATOL_ALGEBRA)
        np.testing.assert_allclose(basis.ket1, [-1, 0], atol=ATOL_ALGEBRA)

    @pytest.mark.parametrize("k", range(16))
    def test_change_matrix_inverts_the_rotation(self, k):
        e = element(16, k)
        basis = rotated_basis(e)
        np.testing.assert_allclose(
            basis.change_matrix @ ry(e.angle), np.eye(2), atol=ATOL_ALGEBRA
        )

    @pytest.mark.parametrize("n", range(1, 65))
    def test_orthonormal_for_every_element(self, n):
        for e in RotationGroup(n):
            basis = rotated_basis(e)
            assert basis.ket0 @ basis.ket1 == pytest.approx(0.0, abs=ATOL_ALGEBRA)
            assert basis.ket0 @ basis.ket0 == pytest.approx(1.0, abs=ATOL_ALGEBRA)
            assert basis.ket1 @ basis.ket1 == pytest.approx(1.0, abs=ATOL_ALGEBRA)

    def test_rows_are_the_kets(self):
        basis = rotated_basis(element(16, 5))
        np.testing.assert_allclose(basis.change_matrix[0], basis.ket0, atol=ATOL_ALGEBRA)
        np.testing.assert_allclose(basis.change_matrix[1], basis.ket1, atol=ATOL_ALGEBRA)


class TestRotationGroup:
    def test_enumerates_all_elements(self):
        group = RotationGroup(6)
        assert len(group) == 6
        assert [e.k for e in group] == [0, 1, 2, 3, 4, 5]

    def test_element_factory(self):
        assert RotationGroup(16).element(20) == element(16, 4)

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            RotationGroup(0)
