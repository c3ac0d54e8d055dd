"""
Tests for moment and free cumulant sequences.
"""
import itertools
from fractions import Fraction

import pytest

from tlfree_core.algebra import DELTA, LaurentScalar
from tlfree_core.combinatorics import NCPartition, catalan, enumerate_nc
from tlfree_core.exceptions import ArgumentError, SerializationError
from tlfree_core.probability import (
    CumulantSeq,
    MomentSeq,
    convolution_power,
    cumulants_to_moments,
    divisibility_check,
    hankel_matrix,
    law_from_json,
    mixed_cumulant,
    moments_to_cumulants,
    named_law,
    projection_moment,
)


def test_semicircle_moments_are_catalan():
    moments = cumulants_to_moments(named_law("semicircle", 8))
    assert list(moments.m) == [0, 1, 0, 2, 0, 5, 0, 14]
    assert moments.moment(0) == 1


def test_free_poisson_moments_are_catalan():
    moments = cumulants_to_moments(named_law("free-poisson", 5))
    assert list(moments.m) == [catalan(n) for n in range(1, 6)]


def test_moment_cumulant_roundtrip():
    k = CumulantSeq.of([Fraction(1, 2), 3, -1, Fraction(2, 7), 0, 5])
    assert moments_to_cumulants(cumulants_to_moments(k)) == k


def test_convolution_power_scales_cumulants():
    doubled = cumulants_to_moments(convolution_power(named_law("semicircle", 6), 2))
    assert list(doubled.m) == [0, 2, 0, 8, 0, 40]


def test_formal_convolution_power():
    k = convolution_power(named_law("semicircle", 4), DELTA)
    moments = cumulants_to_moments(k)
    assert moments.moment(2) == DELTA
    assert moments.moment(4) == LaurentScalar({2: 2})


class TestHankel:
    def test_shape_and_errors(self):
        moments = cumulants_to_moments(named_law("semicircle", 4))
        assert hankel_matrix(moments, 4) == [[1, 0, 1], [0, 1, 0], [1, 0, 2]]
        with pytest.raises(ArgumentError):
            hankel_matrix(moments, 3)
        with pytest.raises(ArgumentError):
            hankel_matrix(moments, 6)

    def test_divisibility(self):
        assert divisibility_check(named_law("semicircle", 6), 2, 6)
        assert divisibility_check(named_law("free-poisson", 4), 2, 4)
        assert divisibility_check(named_law("free-poisson", 4), 3, 4)
        assert not divisibility_check(CumulantSeq.of([0, -1]), 1, 2)
        with pytest.raises(ArgumentError):
            divisibility_check(named_law("semicircle", 2), 0, 2)

    def test_divisibility_with_formal_parameter(self):
        assert divisibility_check(named_law("semicircle", 4), DELTA, 4, delta_value=2)


class TestNamedLaws:
    def test_custom_is_padded(self):
        assert named_law("custom", 4, [0, 1]).k == (0, 1, 0, 0)

    @pytest.mark.parametrize("args", [
        ("semicircle", 0),
        ("custom", 3),
        ("bernoulli", 3),
    ])
    def test_errors(self, args):
        with pytest.raises(ArgumentError):
            named_law(*args)

    def test_from_json(self):
        assert law_from_json({"moments": [0, 1, 0, 2]}).k == (0, 1, 0, 0)
        assert law_from_json({"cumulants": ["1/2", 1]}).k == (Fraction(1, 2), 1)
        with pytest.raises(SerializationError):
            law_from_json({"D": 2})

    def test_to_json(self):
        assert MomentSeq.of([0, 1]).to_json() == {"D": 2, "moments": ["0", "1"]}


def test_mixed_cumulant_of_one_variable():
    moments = cumulants_to_moments(named_law("free-poisson", 4))
    assert mixed_cumulant(lambda block: moments.moment(len(block)), 4) == 1
    semi = cumulants_to_moments(named_law("semicircle", 4))
    assert mixed_cumulant(lambda block: semi.moment(len(block)), 4) == 0
    assert mixed_cumulant(lambda block: semi.moment(len(block)), 2) == 1


def test_projection_moment_small_case():
    direct, formula = projection_moment(NCPartition.top(2), [0, 1], [Fraction(1, 3), Fraction(2, 3)])
    assert direct == formula == Fraction(2, 9)
    direct, formula = projection_moment(NCPartition.bottom(2), [0, 1], [Fraction(1, 3), Fraction(2, 3)])
    assert direct == formula == 0


@pytest.mark.parametrize("n", [3, 4])
def test_projection_moment_agrees_everywhere(n):
    weights = [Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)]
    for pi in enumerate_nc(n):
        for labels in itertools.product(range(3), repeat=n):
            direct, formula = projection_moment(pi, labels, weights)
            assert direct == formula


def test_projection_moment_label_count():
    with pytest.raises(ArgumentError):
        projection_moment(NCPartition.top(3), [0, 1], [1])
