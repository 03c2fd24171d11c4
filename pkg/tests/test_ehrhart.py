import random
from fractions import Fraction

import pytest

from ehrkit.ehrhart import (
    EhrhartPolynomial,
    count_points,
    ehrhart_polynomial,
    evaluate,
    format_polynomial,
    reciprocity_check,
)
from ehrkit.errors import CapacityError, PreconditionError
from ehrkit.polytope import apply_map, dilate, make_polytope
from oracles import grid_count, polygon_ehrhart, tiny_count
from randgen import random_polytope, random_simplex, random_unimodular

STD2 = make_polytope(2, [(0, 0), (1, 0), (0, 1)])
UNIT_SQUARE = make_polytope(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
S21 = make_polytope(2, [(0, 0), (9, 0), (3, 2)])


class TestCountPoints:
    def test_standard_simplex_counts(self):
        assert count_points(STD2, 2) == 6
        assert count_points(STD2, 1, "interior") == 0
        assert count_points(STD2, 0) == 1
        assert count_points(STD2, 0, "interior") == 0

    def test_r1_at_one(self, corpus_polytopes):
        assert count_points(corpus_polytopes["r1"], 1) == 18

    def test_matches_tiny_oracle(self):
        rng = random.Random(61)
        for _ in range(12):
            dim = rng.choice([2, 3])
            s = random_simplex(rng, dim, bound=3)
            for k in (1, 2):
                for mode in ("closed", "interior"):
                    assert count_points(s, k, mode) == tiny_count(s, k, mode)

    def test_translation_invariance(self):
        rng = random.Random(67)
        for _ in range(10):
            s = random_simplex(rng, 2, bound=4)
            moved = s.translate((10**6, -(10**6)))
            for k in (1, 2, 3):
                assert count_points(moved, k) == count_points(s, k)

    def test_mode_validation(self):
        with pytest.raises(ValueError):
            count_points(STD2, 1, "open")
        with pytest.raises(ValueError):
            count_points(STD2, -1)


class TestEhrhartPolynomial:
    def test_standard_2_simplex(self):
        assert ehrhart_polynomial(STD2).coefficients == (
            Fraction(1, 2),
            Fraction(3, 2),
            1,
        )

    def test_unit_square_is_t_plus_1_squared(self):
        assert ehrhart_polynomial(UNIT_SQUARE).coefficients == (1, 2, 1)

    def test_s21_matches_area_boundary_oracle(self):
        assert ehrhart_polynomial(S21).coefficients == polygon_ehrhart(S21) == (
            9,
            6,
            1,
        )

    def test_random_triangles_match_area_boundary_oracle(self):
        rng = random.Random(71)
        for _ in range(30):
            s = random_simplex(rng, 2, bound=6)
            assert ehrhart_polynomial(s).coefficients == polygon_ehrhart(s)

    def test_corpus_big_coordinate_twins(self, corpus_polytopes):
        # p10, p11, p12 are integer translates of each other (p12 sits
        # near coordinate 1000); counting must not care.
        p10 = ehrhart_polynomial(corpus_polytopes["example2_p10"])
        p11 = ehrhart_polynomial(corpus_polytopes["example2_p11"])
        p12 = ehrhart_polynomial(corpus_polytopes["example2_p12"])
        assert p10 == p11 == p12

    def test_interpolation_matches_grid_oracle_beyond_nodes(self):
        rng = random.Random(73)
        samples = [STD2, UNIT_SQUARE, S21]
        samples += [random_polytope(rng, 3, bound=3) for _ in range(5)]
        for p in samples:
            poly = ehrhart_polynomial(p)
            n = p.dim
            for k in (n + 2, n + 3):
                assert poly.evaluate(k) == grid_count(p, k)

    def test_capacity_guard(self):
        fresh = make_polytope(2, [(0, 0), (9, 0), (3, 2)])
        with pytest.raises(CapacityError):
            ehrhart_polynomial(fresh, max_work=1)


class TestEvaluate:
    def test_constant_term(self):
        poly = ehrhart_polynomial(STD2)
        assert evaluate(poly, 0) == 1

    def test_r1_value(self, corpus_polytopes):
        poly = ehrhart_polynomial(corpus_polytopes["r1"])
        assert evaluate(poly, 1) == 18

    def test_negative_argument(self):
        # Unit triangle has empty interior, so reciprocity forces L(-1) = 0.
        poly = ehrhart_polynomial(STD2)
        assert evaluate(poly, -1) == 0

    def test_rational_argument(self):
        poly = EhrhartPolynomial((Fraction(1, 2), Fraction(3, 2), 1))
        assert poly.evaluate(Fraction(1, 2)) == Fraction(15, 8)


class TestReciprocity:
    def test_standard_simplex(self):
        assert reciprocity_check(STD2, 3)

    def test_example1_p1(self, corpus_polytopes):
        assert reciprocity_check(corpus_polytopes["example1_p1"], 2)

    def test_unit_square(self):
        # L = (t+1)^2 and the open square has (k-1)^2 interior points.
        assert reciprocity_check(UNIT_SQUARE, 2)

    def test_k_max_must_be_positive(self):
        with pytest.raises(PreconditionError):
            reciprocity_check(STD2, 0)


class TestInvariants:
    def test_dilation_identity_on_polynomials(self):
        rng = random.Random(79)
        for _ in range(8):
            dim = rng.choice([2, 3])
            p = random_polytope(rng, dim, bound=3)
            base = ehrhart_polynomial(p)
            for k in (2, 3):
                scaled = ehrhart_polynomial(dilate(p, k))
                expected = tuple(
                    c * k ** (dim - i) for i, c in enumerate(base.coefficients)
                )
                assert scaled.coefficients == expected

    def test_unimodular_invariance(self):
        rng = random.Random(83)
        for _ in range(12):
            dim = rng.choice([2, 3])
            p = random_polytope(rng, dim, bound=3)
            u = random_unimodular(rng, dim)
            assert ehrhart_polynomial(apply_map(u, p)) == ehrhart_polynomial(p)

    def test_equal_polynomials_mean_equal_counts(self, corpus_polytopes):
        left = corpus_polytopes["example4_p1"]
        right = corpus_polytopes["example4_p2"]
        assert ehrhart_polynomial(left) == ehrhart_polynomial(right)
        for k in range(1, 2 * left.dim + 3):
            assert count_points(left, k) == count_points(right, k)

    def test_leading_coefficient_is_volume(self):
        rng = random.Random(89)
        for _ in range(8):
            p = random_polytope(rng, rng.choice([2, 3]), bound=3)
            assert ehrhart_polynomial(p).leading_coefficient == p.volume


class TestRendering:
    def test_fraction_terms(self):
        assert str(ehrhart_polynomial(STD2)) == "1/2 t^2 + 3/2 t + 1"

    def test_unit_coefficient_omitted(self, corpus_polytopes):
        poly = ehrhart_polynomial(corpus_polytopes["example3_p1"])
        assert format_polynomial(poly) == "1/6 t^4 + t^3 + 7/3 t^2 + 5/2 t + 1"

    def test_negative_and_zero_terms(self):
        assert format_polynomial(EhrhartPolynomial((1, -2, 0, 1))) == (
            "t^3 - 2 t^2 + 1"
        )
        assert format_polynomial(EhrhartPolynomial((0,))) == "0"
