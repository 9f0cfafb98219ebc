from itertools import product

from django.test import TestCase

from .algebra import (CHORDS, AlgebraElement, Idempotent, element, idempotent_compatible, multiply,
                      multiply_sequence, unit)

I0, I1 = AlgebraElement.I0, AlgebraElement.I1
R1, R2, R3 = AlgebraElement.R1, AlgebraElement.R2, AlgebraElement.R3
R12, R23, R123 = AlgebraElement.R12, AlgebraElement.R23, AlgebraElement.R123


class TorusAlgebraTests(TestCase):
    def test_chord_products(self):
        self.assertEqual(multiply(R1, R2), R12)
        self.assertEqual(multiply(R2, R3), R23)
        self.assertEqual(multiply(R1, R23), R123)
        self.assertEqual(multiply(R12, R3), R123)

    def test_other_products_vanish(self):
        self.assertIsNone(multiply(R2, R1))
        self.assertIsNone(multiply(R3, R2))
        self.assertIsNone(multiply(R1, R3))
        self.assertIsNone(multiply(R12, R23))

    def test_idempotents_act_as_units(self):
        for a in CHORDS:
            self.assertEqual(multiply(unit(a.left), a), a)
            self.assertEqual(multiply(a, unit(a.right)), a)
            self.assertIsNone(multiply(unit(1 - a.left), a))

    def test_associativity(self):
        for a, b, c in product(AlgebraElement, repeat=3):
            self.assertEqual(multiply(multiply(a, b), c), multiply(a, multiply(b, c)))

    def test_multiply_sequence(self):
        self.assertEqual(multiply_sequence([R1, R2, R3]), R123)
        self.assertIsNone(multiply_sequence([R3, R1]))

    def test_idempotent_compatibility(self):
        self.assertTrue(idempotent_compatible(R1, Idempotent.ZERO, Idempotent.ONE))
        self.assertFalse(idempotent_compatible(R2, Idempotent.ZERO, Idempotent.ONE))

    def test_lookup_by_name(self):
        self.assertEqual(element('r123'), R123)
        with self.assertRaises(ValueError):
            element('r13')
