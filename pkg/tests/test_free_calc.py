"""
Tests for the free difference quotient, the conjugate variable and
Fisher information.
"""
import math
from fractions import Fraction

import pytest

from tlfree_core.algebra import DELTA, specialize
from tlfree_core.calculus import (
    DerivationResult,
    box_left_trace,
    box_right_trace,
    close_up,
    conjugate_variable,
    cyclic_gradient,
    derive,
    diff_quotient,
    dot_op,
    fisher,
    fisher_profile,
    hash_op,
    held_out_residuals,
    jw2_box,
    number_op,
    partial_prime,
    partial_star,
    projection,
    sigma_op,
    symmetrizer,
)
from tlfree_core.exceptions import ArgumentError, TruncationError
from tlfree_core.planar import (
    PAElement,
    box_identity,
    box_inner,
    build_T,
    cup,
    diagram_basis,
    include_up,
    pa_inner,
    tau_box,
    tau_k,
    unit,
    wedge,
    x_variable,
)
from tlfree_core.probability import named_law


class TestDerivations:
    def test_difference_quotient_of_generator(self):
        assert diff_quotient(x_variable()) == box_identity(1)
        assert diff_quotient(unit(1)).is_zero()
        with pytest.raises(ArgumentError):
            diff_quotient(cup())

    def test_difference_quotient_term_count(self):
        x = PAElement.from_pairs(1, [(1, 2), (3, 4), (5, 6), (7, 8)])
        dq = diff_quotient(x)
        assert sorted((s, t) for s, t, _ in dq.terms) == [(0, 2), (1, 1), (2, 0)]

    def test_hash_with_identity(self):
        b = wedge(x_variable(), x_variable())
        assert hash_op(box_identity(1), b) == b

    def test_close_up(self):
        assert close_up(box_identity(1)) == unit(1).scale(DELTA ** -1)

    def test_dot(self):
        assert dot_op(x_variable(), x_variable()) == PAElement.from_pairs(0, [(1, 4), (2, 3)])

    def test_cyclic_gradient_of_cup(self):
        assert cyclic_gradient(cup()) == unit(1)
        with pytest.raises(ArgumentError):
            cyclic_gradient(x_variable())

    def test_derive_keeps_source(self):
        result = derive(x_variable())
        assert result.value == box_identity(1)
        assert result.source == x_variable()
        payload = result.to_json()
        assert payload["operator"] == "d"
        assert PAElement.from_json(payload["source"]) == x_variable()

    def test_derive_compressed(self):
        assert derive(include_up(cup()), compressed=True).value.is_zero()
        assert derive(x_variable(), compressed=True).to_json()["operator"] == "d'"

    def test_derivation_result_needs_one_strand(self):
        with pytest.raises(ArgumentError):
            DerivationResult(value=box_identity(2))


class TestGradedOperators:
    def test_number_and_sigma(self):
        x = unit(0) + cup() + wedge(cup(), cup()).scale(3)
        assert number_op(x) == cup() + wedge(cup(), cup()).scale(6)
        assert sigma_op(number_op(x)) == projection(x)

    def test_symmetrizer(self):
        d = PAElement.from_pairs(0, [(1, 2), (3, 6), (4, 5)])
        once = symmetrizer(d)
        assert symmetrizer(once) == once
        assert symmetrizer(wedge(cup(), cup())) == wedge(cup(), cup())
        assert symmetrizer(unit(0)).is_zero()


class TestJonesWenzlBox:
    def test_included_cup_is_killed(self):
        assert partial_prime(include_up(cup())).is_zero()

    def test_generator_survives(self):
        assert partial_prime(x_variable()) == jw2_box()


class TestBoxTraces:
    def test_identity_box(self, semicircle_T, poisson_T):
        for T in (semicircle_T, poisson_T):
            assert box_left_trace(box_identity(1), T) == unit(1)
            assert box_right_trace(box_identity(1), T) == unit(1)

    def test_square_semicircle(self, semicircle_T):
        q = diff_quotient(wedge(x_variable(), x_variable()))
        assert box_left_trace(q, semicircle_T) == x_variable()
        assert box_right_trace(q, semicircle_T) == x_variable()

    def test_square_free_poisson(self, poisson_T):
        q = diff_quotient(wedge(x_variable(), x_variable()))
        left = box_left_trace(q, poisson_T)
        assert left == x_variable() + unit(1)
        assert box_right_trace(q, poisson_T) == left
        assert tau_k(left, poisson_T) == tau_box(q, poisson_T)
        assert specialize(tau_box(q, poisson_T), 2) == 2

    def test_needs_one_strand(self, semicircle_T):
        with pytest.raises(ArgumentError):
            box_left_trace(box_identity(2), semicircle_T)
        with pytest.raises(ArgumentError):
            box_right_trace(box_identity(2), semicircle_T)


class TestConjugateVariable:
    def test_semicircle_formal(self, semicircle_T):
        cv = conjugate_variable(semicircle_T, 1)
        assert cv.xi == x_variable()
        assert cv.exact
        assert cv.delta_value is None
        assert all(r == 0 for r in cv.residuals)

    def test_semicircle_specialized(self, semicircle_T):
        cv = conjugate_variable(semicircle_T, 1, 3)
        assert cv.delta_value == 3
        assert cv.residual_norm == 0
        assert cv.to_json()["delta"] == "3"

    @pytest.mark.slow
    def test_semicircle_formal_cutoff_two(self, semicircle_T):
        cv = conjugate_variable(semicircle_T, 2)
        assert cv.xi == x_variable()
        assert all(r == 0 for r in held_out_residuals(cv, semicircle_T, 4))

    def test_fisher(self, semicircle_T):
        assert fisher(semicircle_T, 1) == DELTA
        assert fisher(semicircle_T, 1, 2) == 2

    def test_fisher_profile_is_nondecreasing(self, semicircle_T):
        assert fisher_profile(semicircle_T, 2, 2) == [0, 2, 2]

    def test_free_poisson_truncations_are_finite(self, poisson_T):
        profile = fisher_profile(poisson_T, 1, 2)
        assert profile == sorted(profile)
        assert all(math.isfinite(v) for v in profile)

    def test_free_poisson_cutoff_one(self, poisson_T):
        xi = x_variable() - unit(1)
        cv = conjugate_variable(poisson_T, 1)
        assert cv.xi == xi
        assert cv.exact
        assert cv.residual_norm == 0
        assert fisher(poisson_T, 1) == DELTA
        specialized = conjugate_variable(poisson_T, 1, 2)
        assert specialized.xi == xi
        assert specialized.exact
        assert fisher(poisson_T, 1, 2) == 2
        assert fisher_profile(poisson_T, 1, 2) == [0, 2]

    @pytest.mark.slow
    def test_free_poisson_cutoff_three(self, poisson_T):
        cv = conjugate_variable(poisson_T, 3, 2)
        assert cv.exact
        assert cv.residual_norm == 0
        for degree in range(4):
            assert all(r == 0 for r in held_out_residuals(cv, poisson_T, degree))
        assert cv.residuals == held_out_residuals(cv, poisson_T, 4)
        assert len(cv.residuals) == 42
        assert not cv.held_out_exact
        assert cv.to_json()["held_out_exact"] is False
        value = fisher(poisson_T, 3, 2)
        assert math.isfinite(value)
        assert value >= 2
        assert fisher_profile(poisson_T, 3, 2)[3] == value

    def test_errors(self, semicircle_T):
        with pytest.raises(ArgumentError):
            conjugate_variable(semicircle_T, -1)
        with pytest.raises(ArgumentError):
            conjugate_variable(semicircle_T, 1, 0)
        with pytest.raises(TruncationError):
            conjugate_variable(build_T(named_law("semicircle", 2), 2), 1)


class TestAdjoint:
    def test_identity_box(self, semicircle_T):
        assert partial_star(box_identity(1), semicircle_T, x_variable()) == x_variable()

    @pytest.mark.parametrize("delta", [2, Fraction(5, 2)])
    def test_adjoint_identity(self, semicircle_T, delta):
        xi = x_variable()
        boxes = [diff_quotient(b) for b in diagram_basis(2, 1)] + [jw2_box()]
        for a in diagram_basis(2, 1):
            da = diff_quotient(a)
            for q in boxes:
                lhs = specialize(box_inner(da, q, semicircle_T), delta)
                rhs = specialize(pa_inner(a, partial_star(q, semicircle_T, xi), semicircle_T), delta)
                assert lhs == rhs
