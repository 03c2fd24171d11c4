import random
from math import factorial

import pytest

from ehrkit.ehrhart import ehrhart_polynomial
from ehrkit.equivalence import (
    Equivalent,
    EquivalenceWitness,
    NotEquivalent,
    check_equivalence,
    compose_witnesses,
    equivalence_classes,
    invert_witness,
    verify_witness,
)
from ehrkit.errors import (
    CapacityError,
    DimensionMismatch,
    PreconditionError,
)
from ehrkit.linalg import Matrix
from ehrkit.polytope import AffineUnimodularMap, apply_map, make_polytope
from randgen import random_simplex, random_unimodular, shuffled_vertices

S21 = make_polytope(2, [(0, 0), (9, 0), (3, 2)])
S22 = make_polytope(2, [(0, 0), (6, 0), (0, 3)])


class TestCheckEquivalence:
    def test_reflexive_identity_witness(self):
        verdict = check_equivalence(S21, S21)
        assert isinstance(verdict, Equivalent)
        assert verdict.permutations_tried == 1
        witness = verdict.witness
        assert witness.transform.linear == Matrix.identity(2)
        assert witness.transform.translation == (0, 0)
        assert witness.vertex_bijection == (0, 1, 2)

    def test_s21_s22_not_equivalent_despite_equal_polynomial(self):
        assert ehrhart_polynomial(S21) == ehrhart_polynomial(S22)
        verdict = check_equivalence(S21, S22)
        assert isinstance(verdict, NotEquivalent)
        assert verdict.permutations_tried == factorial(3)

    def test_r1_r2_not_equivalent(self, corpus_polytopes):
        verdict = check_equivalence(
            corpus_polytopes["r1"], corpus_polytopes["r2"]
        )
        assert isinstance(verdict, NotEquivalent)
        assert verdict.permutations_tried == 120

    def test_unit_4_simplices_equivalent(self, corpus_polytopes):
        verdict = check_equivalence(
            corpus_polytopes["example2_p7"], corpus_polytopes["example2_p13"]
        )
        assert isinstance(verdict, Equivalent)
        assert verify_witness(
            corpus_polytopes["example2_p7"],
            corpus_polytopes["example2_p13"],
            verdict.witness,
        )

    def test_example5_translation_witness(self, corpus_polytopes):
        verdict = check_equivalence(
            corpus_polytopes["example5_p1"], corpus_polytopes["example5_p2"]
        )
        assert isinstance(verdict, Equivalent)
        assert verdict.witness.transform.linear == Matrix.identity(4)
        assert verdict.witness.transform.translation == (1, 1, 1, 1)

    def test_random_image_with_shuffle_is_equivalent(self):
        rng = random.Random(107)
        for _ in range(30):
            dim = rng.choice([2, 3])
            s = random_simplex(rng, dim)
            image = shuffled_vertices(rng, apply_map(random_unimodular(rng, dim), s))
            verdict = check_equivalence(s, image)
            assert isinstance(verdict, Equivalent)
            assert verify_witness(s, image, verdict.witness)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            check_equivalence(S21, make_polytope(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]))

    def test_non_simplex_rejected(self):
        square = make_polytope(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
        with pytest.raises(PreconditionError):
            check_equivalence(square, S21)

    def test_degenerate_simplex_rejected(self):
        from ehrkit.errors import DegenerateInput
        from ehrkit.polytope import LatticeSimplex

        flat = LatticeSimplex(2, [(0, 0), (1, 0), (2, 0)])
        with pytest.raises(DegenerateInput):
            check_equivalence(flat, S21)

    def test_dimension_capacity_guard(self):
        dim = 9
        points = [tuple(0 for _ in range(dim))] + [
            tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)
        ]
        simplex = make_polytope(dim, points)
        with pytest.raises(CapacityError):
            check_equivalence(simplex, simplex)


class TestModes:
    def test_equal_volume_mode_agrees_with_full(self):
        rng = random.Random(109)
        agree = 0
        while agree < 20:
            dim = rng.choice([2, 3])
            left = random_simplex(rng, dim)
            right = random_simplex(rng, dim)
            if left.normalized_volume != right.normalized_volume:
                continue
            agree += 1
            full = check_equivalence(left, right, mode="full")
            quick = check_equivalence(left, right, mode="equal_volume")
            assert bool(full) == bool(quick)

    def test_equal_volume_mode_checks_precondition(self):
        with pytest.raises(PreconditionError):
            check_equivalence(
                S21, make_polytope(2, [(0, 0), (1, 0), (0, 1)]), mode="equal_volume"
            )

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            check_equivalence(S21, S21, mode="fast")


class TestWitnesses:
    def test_every_returned_witness_verifies(self, corpus_polytopes):
        family = [corpus_polytopes[f"example1_p{i}"] for i in range(1, 10)]
        for other in family[1:]:
            verdict = check_equivalence(family[0], other)
            assert isinstance(verdict, Equivalent)
            assert verdict.permutations_tried <= 120
            assert verify_witness(family[0], other, verdict.witness)

    def test_inverse_witness_verifies(self):
        rng = random.Random(113)
        for _ in range(15):
            s = random_simplex(rng, 2)
            t = shuffled_vertices(rng, apply_map(random_unimodular(rng, 2), s))
            witness = check_equivalence(s, t).witness
            assert verify_witness(t, s, invert_witness(witness))

    def test_composed_witness_verifies(self):
        rng = random.Random(127)
        for _ in range(15):
            s = random_simplex(rng, 2)
            t = shuffled_vertices(rng, apply_map(random_unimodular(rng, 2), s))
            r = shuffled_vertices(rng, apply_map(random_unimodular(rng, 2), t))
            first = check_equivalence(s, t).witness
            second = check_equivalence(t, r).witness
            assert verify_witness(s, r, compose_witnesses(second, first))

    def test_symmetry_of_verdicts(self):
        rng = random.Random(131)
        for _ in range(15):
            left = random_simplex(rng, 2)
            right = random_simplex(rng, 2)
            assert bool(check_equivalence(left, right)) == bool(
                check_equivalence(right, left)
            )

    def test_bad_certificate_fails_verification(self):
        verdict = check_equivalence(S21, S21)
        good = verdict.witness
        doubled = EquivalenceWitness(
            transform=good.transform,
            vertex_bijection=good.vertex_bijection,
            certificate=Matrix([[2, 0, 0], [0, 2, 0], [0, 0, 1]]),
        )
        assert not verify_witness(S21, S21, doubled)
        scrambled = EquivalenceWitness(
            transform=good.transform,
            vertex_bijection=(1, 0, 2),
            certificate=good.certificate,
        )
        assert not verify_witness(S21, S21, scrambled)

    def test_non_unimodular_transform_unrepresentable(self):
        with pytest.raises(ValueError):
            AffineUnimodularMap(Matrix([[2, 0], [0, 1]]), (0, 0))

    def test_equivalent_implies_equal_invariants(self, corpus_polytopes):
        left = corpus_polytopes["example2_p7"]
        right = corpus_polytopes["example2_p13"]
        assert check_equivalence(left, right)
        assert ehrhart_polynomial(left) == ehrhart_polynomial(right)
        assert left.normalized_volume == right.normalized_volume


class TestEquivalenceClasses:
    def test_example1_is_one_class(self, corpus_polytopes):
        family = [corpus_polytopes[f"example1_p{i}"] for i in range(1, 10)]
        assert equivalence_classes(family) == [list(range(9))]

    def test_counterexample_pair_splits(self):
        assert equivalence_classes([S21, S22]) == [[0], [1]]

    def test_singleton(self):
        assert equivalence_classes([S21]) == [[0]]

    def test_empty(self):
        assert equivalence_classes([]) == []

    def test_mixed_dimensions_rejected(self):
        cube_corner = make_polytope(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        with pytest.raises(DimensionMismatch):
            equivalence_classes([S21, cube_corner])
