"""The Alexander-polynomial oracle and its agreement with the skein engine."""

import pytest
import sympy as sp
from hypothesis import given

from braidax import (
    BraidWord,
    LaurentPoly,
    alexander_burau,
    closure_diagram,
    conway_matches_alexander,
    conway_to_laurent,
    equal_up_to_units,
    full_conway,
)
from braidax.burau import _generator_matrix

from conftest import braid_words


def w(n, *letters):
    return BraidWord(n, letters)


class TestRepresentation:
    @pytest.mark.parametrize("n", (3, 4, 5))
    def test_braid_relation(self, n):
        a = _generator_matrix(n, 1) * _generator_matrix(n, 2) * _generator_matrix(n, 1)
        b = _generator_matrix(n, 2) * _generator_matrix(n, 1) * _generator_matrix(n, 2)
        assert sp.simplify(a - b) == sp.zeros(n - 1)

    def test_far_commutation(self):
        a = _generator_matrix(5, 1) * _generator_matrix(5, 4)
        b = _generator_matrix(5, 4) * _generator_matrix(5, 1)
        assert sp.simplify(a - b) == sp.zeros(4)

    @pytest.mark.parametrize("n,i", [(3, 1), (4, 2), (5, 4)])
    def test_inverse_matrices(self, n, i):
        prod = _generator_matrix(n, i) * _generator_matrix(n, -i)
        assert sp.simplify(prod - sp.eye(n - 1)) == sp.zeros(n - 1)


class TestAlexanderValues:
    def test_unknot(self):
        assert alexander_burau(w(2, 1)).unit_normalized() == LaurentPoly(0, (1,))

    def test_trefoil(self):
        # 1x1 reduced matrix (-t)^3 by hand: det(-t^3 - 1), normalized to
        # 1 - t + t^2 in t = s^2
        got = alexander_burau(w(2, 1, 1, 1)).unit_normalized()
        assert got == LaurentPoly(0, (1, 0, -1, 0, 1))

    def test_figure_eight(self):
        got = alexander_burau(w(3, 1, -2, 1, -2)).unit_normalized()
        assert got == LaurentPoly(0, (1, 0, -3, 0, 1))

    def test_hopf(self):
        got = alexander_burau(w(2, 1, 1)).unit_normalized()
        assert got == LaurentPoly(0, (1, 0, -1))

    def test_split_closure_vanishes(self):
        assert alexander_burau(w(3, 1)).is_zero()

    def test_mirror_invariance_up_to_units(self):
        a = alexander_burau(w(2, 1, 1, 1))
        b = alexander_burau(w(2, -1, -1, -1))
        assert equal_up_to_units(a, b)


class TestLaurentHelpers:
    def test_normalization(self):
        p = LaurentPoly(-3, (-2, 0, 4))
        assert p.unit_normalized() == LaurentPoly(0, (2, 0, -4))

    def test_zero(self):
        assert LaurentPoly.from_dict({2: 0}).is_zero()

    def test_conway_substitution_of_z(self):
        # nabla = z becomes s - 1/s
        assert conway_to_laurent((0, 1)) == LaurentPoly(-1, (-1, 0, 1))

    def test_conway_substitution_of_one(self):
        assert conway_to_laurent((1,)) == LaurentPoly(0, (1,))


class TestOracleAgreement:
    @pytest.mark.parametrize(
        "word",
        [
            w(2, 1, 1, 1),
            w(2, 1, 1),
            w(3, 1, -2, 1, -2),
            w(3, 1, 1, 2, 2),
            w(4, 1, 2, 3, 1, -2, 3),
            w(3, ),
            w(4, -1, -2, -3),
            w(2, 1, 1, 1, 1, 1),
        ],
    )
    def test_named_words(self, word):
        coeffs = full_conway(closure_diagram(word)).coeffs
        assert conway_matches_alexander(coeffs, word)

    @given(braid_words(max_letters=10, max_strands=5))
    def test_random_words(self, word):
        coeffs = full_conway(closure_diagram(word)).coeffs
        assert conway_matches_alexander(coeffs, word)
