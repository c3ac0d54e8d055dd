"""
Tests for exact scalars, gluing and the Temperley-Lieb algebra.
"""
from fractions import Fraction

import pytest

from tlfree_core.algebra import (
    DELTA,
    ONE,
    LaurentScalar,
    RationalFunctionScalar,
    TLDiagram,
    TLElement,
    all_diagrams,
    cable2,
    cap_generator,
    close_pair,
    compose,
    count_cycles,
    dagger_element,
    fatten,
    glue,
    identity_diagram,
    is_psd_exact,
    jones_wenzl,
    meander_gram,
    meander_gram_inverse,
    quantum_integer,
    rank,
    rotate,
    rotate_element,
    scalar_from_json,
    scalar_to_json,
    solve_exact,
    specialize,
    tensor_identity,
)
from tlfree_core.combinatorics import NCPartition, catalan, enumerate_nc
from tlfree_core.exceptions import ArgumentError, ResourceLimitError, SerializationError, SingularityError

E = TLDiagram.from_pairs([(1, 2), (3, 4)])
NESTED = TLDiagram.from_pairs([(1, 4), (2, 3)])


class TestScalars:
    def test_arithmetic(self):
        x = DELTA + 1
        assert x * x == LaurentScalar({2: 1, 1: 2, 0: 1})
        assert (x - x).is_zero()
        assert DELTA ** -2 * DELTA ** 2 == ONE
        assert (DELTA * Fraction(1, 2)).coefficient(1) == Fraction(1, 2)

    def test_evaluate(self):
        x = LaurentScalar({1: 1, -1: 1})
        assert x.evaluate(2) == Fraction(5, 2)
        with pytest.raises(SingularityError):
            x.evaluate(0)

    def test_rational_functions_reduce(self):
        # (delta^2 - 1) / (delta - 1) = delta + 1
        r = RationalFunctionScalar(LaurentScalar({2: 1, 0: -1}), LaurentScalar({1: 1, 0: -1}))
        assert r.is_laurent()
        assert r.to_laurent() == DELTA + 1
        q = RationalFunctionScalar(ONE, DELTA + 1)
        assert not q.is_laurent()
        assert q * (DELTA + 1) == ONE
        assert specialize(q, 3) == Fraction(1, 4)
        with pytest.raises(SingularityError):
            q.evaluate(-1)

    def test_json_roundtrip(self):
        x = LaurentScalar({-1: Fraction(2, 3), 2: -1})
        assert scalar_from_json(scalar_to_json(x)) == x
        assert scalar_to_json(x) == {"-1": "2/3", "2": "-1"}
        q = RationalFunctionScalar(ONE, DELTA ** 2 - 1)
        assert scalar_from_json(scalar_to_json(q)) == q
        with pytest.raises(SerializationError):
            scalar_from_json({"x": "1"})


class TestGluing:
    def test_glue_two_caps_into_a_loop(self):
        pairs, loops = glue([[(("a", 1), ("a", 2))], [(("b", 1), ("b", 2))]], [(("a", 1), ("b", 1)), (("a", 2), ("b", 2))], [])
        assert pairs == [] and loops == 1

    def test_glue_passes_strings_through(self):
        pairs, loops = glue([[(1, 2)], [(3, 4)]], [(2, 3)], [1, 4])
        assert pairs == [(1, 2)] and loops == 0

    def test_glue_rejects_unwired_nodes(self):
        with pytest.raises(ArgumentError):
            glue([[(1, 2)]], [], [1])

    @pytest.mark.parametrize("a, b, expected", [
        (E, NESTED, 1),
        (E, E, 2),
        (NESTED, NESTED, 2),
    ])
    def test_close_pair(self, a, b, expected):
        assert close_pair(a.pairs, b.pairs) == expected
        assert count_cycles(a.pairs, b.pairs) == expected


class TestDiagrams:
    def test_validation(self):
        with pytest.raises(ArgumentError):
            TLDiagram.from_pairs([(1, 3), (2, 4)])
        with pytest.raises(ArgumentError):
            TLDiagram.from_pairs([(1, 2)], 4)

    @pytest.mark.parametrize("npoints", [2, 4, 6, 8, 10])
    def test_all_diagrams_count(self, npoints):
        assert len(all_diagrams(npoints)) == catalan(npoints // 2)

    def test_rotation(self):
        assert rotate(E, 1) == TLDiagram.from_pairs([(2, 3), (4, 1)])
        for d in all_diagrams(6):
            assert rotate(d, 6) == d
            assert rotate(rotate(d, 1), -1) == d

    @pytest.mark.parametrize("blocks, n, pairs", [
        ([(1, 4, 5), (2, 3), (6,)], 6, [(1, 10), (2, 7), (8, 9), (3, 6), (4, 5), (11, 12)]),
        ([(1,)], 1, [(1, 2)]),
        ([(1, 2)], 2, [(1, 4), (2, 3)]),
    ])
    def test_fatten(self, blocks, n, pairs):
        assert fatten(NCPartition.from_blocks(n, blocks)) == TLDiagram.from_pairs(pairs)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_fatten_is_a_bijection(self, n):
        images = {fatten(pi) for pi in enumerate_nc(n)}
        assert images == set(all_diagrams(2 * n))

    def test_cable2(self):
        assert cable2(TLDiagram.from_pairs([(1, 2)])) == NESTED
        assert cable2(NESTED) == TLDiagram.from_pairs([(1, 8), (2, 7), (3, 6), (4, 5)])
        for d in all_diagrams(6):
            TLDiagram.from_pairs(cable2(d).pairs)


class TestElements:
    def test_compose(self):
        e = TLElement.from_diagram(E)
        assert compose(e, e) == e.scale(DELTA)
        assert compose(TLElement.identity(2), e) == e
        with pytest.raises(ArgumentError):
            compose(e, TLElement.identity(3))

    def test_jones_wenzl_two(self):
        J = jones_wenzl(2)
        expected = TLElement(2, {identity_diagram(2): ONE, E: -(DELTA ** -1)})
        assert J == expected
        assert compose(J, J) == J
        assert compose(cap_generator(1, 2), J).is_zero()
        assert jones_wenzl(1) == TLElement.identity(1)

    @pytest.mark.parametrize("n", [3, 4])
    def test_jones_wenzl_idempotent_and_killed_by_caps(self, n):
        J = jones_wenzl(n)
        assert compose(J, J) == J
        for i in range(1, n):
            assert compose(cap_generator(i, n), J).is_zero()
            assert compose(J, cap_generator(i, n)).is_zero()

    def test_jones_wenzl_specialized(self):
        J = jones_wenzl(2, 2)
        assert J.coefficient(E) == LaurentScalar.constant(Fraction(-1, 2))
        with pytest.raises(SingularityError):
            # [2] = delta vanishes at delta = 0
            jones_wenzl(2, 0)
        with pytest.raises(SingularityError):
            jones_wenzl(3, 1)
        with pytest.raises(ResourceLimitError):
            jones_wenzl(7)

    def test_quantum_integers(self):
        assert quantum_integer(0).is_zero()
        assert quantum_integer(2) == DELTA
        assert quantum_integer(3) == DELTA ** 2 - 1

    def test_rotation_dagger_and_tensor(self):
        e = TLElement.from_diagram(E)
        assert rotate_element(rotate_element(e, 1), -1) == e
        assert dagger_element(e) == e
        assert tensor_identity(TLElement.identity(1)) == TLElement.identity(2)

    def test_json_roundtrip(self):
        J = jones_wenzl(3)
        assert TLElement.from_json(J.to_json()) == J
        with pytest.raises(SerializationError):
            TLElement.from_json({"terms": []})


class TestLinearAlgebra:
    def test_solve_exact(self):
        sol, nullity = solve_exact([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]], [Fraction(3), Fraction(4)])
        assert sol == [1, 1] and nullity == 0
        sol, nullity = solve_exact([[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]], [Fraction(1), Fraction(3)])
        assert sol is None

    def test_rank_and_psd(self):
        assert rank([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 1
        assert is_psd_exact([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(2)]])
        assert not is_psd_exact([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(1)]])
        assert is_psd_exact([[Fraction(0), Fraction(0)], [Fraction(0), Fraction(1)]])

    def test_meander_gram_inverse(self):
        gram = meander_gram(4)
        inverse = meander_gram_inverse(4)
        for i in range(2):
            for j in range(2):
                total = sum((RationalFunctionScalar(gram[i][k]) * inverse[k][j] for k in range(2)), RationalFunctionScalar(LaurentScalar.zero()))
                assert total == (ONE if i == j else LaurentScalar.zero())
