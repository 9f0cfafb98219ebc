import random

from django.test import TestCase, override_settings

from bordered.structures import DMorphism
from knotlib import fixtures
from knotlib.morphisms import END_NAMES, cycle_morphisms
from torus_algebra.algebra import CHORD_PRODUCTS

from .group import IDENTITY, LAMBDA, GradingConvention, GradingElement, Subgroup, chord_gradings, commutator
from .solver import degree_zero_end_classes, is_degree_preserving, morphism_degree, solve_gradings


def random_element(rng):
    a2 = rng.randint(-4, 4)
    return GradingElement(rng.randint(-6, 6), a2, a2 + 2 * rng.randint(-2, 2))


class GradingGroupTests(TestCase):
    def test_group_laws(self):
        rng = random.Random(3)
        for _ in range(200):
            g, h, k = random_element(rng), random_element(rng), random_element(rng)
            self.assertEqual((g * h) * k, g * (h * k))
            self.assertEqual(g * g.inverse(), IDENTITY)
            self.assertEqual(LAMBDA * g, g * LAMBDA)
            self.assertTrue(commutator(g, h).is_central)

    def test_half_integer_spin_must_sum_to_integer(self):
        with self.assertRaises(ValueError):
            GradingElement(0, 1, 0)

    def test_chord_gradings_multiply(self):
        for convention in GradingConvention:
            table = chord_gradings(convention)
            for (a, b), c in CHORD_PRODUCTS.items():
                self.assertEqual(table[a] * table[b], table[c], (convention, c))

    @override_settings(BFX_GRADING_CONVENTION='rotated')
    def test_convention_read_from_settings(self):
        self.assertEqual(chord_gradings(), chord_gradings(GradingConvention.ROTATED))

    def test_subgroup_membership(self):
        group = Subgroup([LAMBDA ** 2])
        self.assertIn(LAMBDA ** 4, group)
        self.assertNotIn(LAMBDA, group)
        self.assertNotIn(GradingElement(0, 2, 0), group)
        self.assertIn(IDENTITY, Subgroup())

    def test_double_coset_absorbs_commutators(self):
        spin = Subgroup([GradingElement(1, 2, 0)])
        degree = GradingElement(7, 0, -2)
        self.assertEqual(commutator(GradingElement(1, 2, 0), degree), GradingElement(-4, 0, 0))
        both_sides = spin.double_coset(degree)
        self.assertIn(GradingElement(-3, 2, 0), both_sides)
        self.assertNotIn(GradingElement(-3, 2, 0), spin)
        self.assertTrue(both_sides.same_coset(degree, GradingElement(6, 2, -2)))
        self.assertFalse(spin.same_coset(degree, GradingElement(6, 2, -2)))

    def test_subgroup_with_spin_generator(self):
        g = GradingElement(1, 2, 0)
        group = Subgroup([g])
        self.assertIn(g ** 3, group)
        self.assertNotIn(GradingElement(0, 2, 0), group)


class RelativeGradingTests(TestCase):
    def setUp(self):
        self.trefoil = fixtures.cfd_trefoil()
        self.morphisms = cycle_morphisms(self.trefoil)

    def test_every_arrow_satisfies_relations(self):
        for convention in GradingConvention:
            for structure in (self.trefoil, fixtures.square_module(), fixtures.cfd_figure_eight()):
                self.assertTrue(solve_gradings(structure, convention).satisfies_relations())

    def test_identity_is_degree_preserving(self):
        grading = solve_gradings(self.trefoil)
        self.assertTrue(is_degree_preserving(DMorphism.identity(self.trefoil), grading))

    def test_end_generators_are_not_degree_preserving(self):
        for convention in GradingConvention:
            grading = solve_gradings(self.trefoil, convention)
            for name in END_NAMES:
                degree = morphism_degree(self.morphisms[name], grading)
                self.assertTrue(degree.homogeneous, name)
                self.assertFalse(degree.degree_preserving, (convention, name))

    def test_components_agree_up_to_relations_on_both_sides(self):
        degree = morphism_degree(self.morphisms['h2'], solve_gradings(self.trefoil))
        self.assertTrue(degree.homogeneous)
        self.assertEqual(degree.conflicts, [])

    def test_inhomogeneous_morphism_lists_conflicts(self):
        mixed = DMorphism(self.trefoil, self.trefoil, [('s2', 'i0', 's1'), ('s3', 'r1', 't2')], name='mixed')
        degree = morphism_degree(mixed, solve_gradings(self.trefoil))
        self.assertFalse(degree.homogeneous)
        self.assertEqual(degree.conflicts, ['s3->r1.t2'])
        self.assertFalse(degree.as_dict()['homogeneous'])

    def test_degree_zero_endomorphisms(self):
        for convention in GradingConvention:
            classes = degree_zero_end_classes(self.trefoil, convention)
            self.assertEqual(classes.dimension, 1)
            self.assertTrue(classes.identity_present)
