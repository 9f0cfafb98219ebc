from django.test import TestCase, override_settings

from f2core.complexes import ChainComplex, Ring
from knotlib import fixtures

from .axioms import Axiom, check_axioms, localized_rank
from .complexes import (CFKComplex, IotaComplex, dual, elements_in_bidegree, horizontal_truncation,
                        linear_combination, phi, phi_is_chain_map, tensor, trivial_complex)
from .exceptions import IotaError, UngradedComplexError
from .local_maps import Comparison, compare, exists_almost_local_map, is_locally_trivial, verify_local_map
from .whitehead import correction_terms, verify_wh_double_splitting


class IotaComplexTests(TestCase):
    def test_axioms_hold_on_model_complexes(self):
        for complex_ in (fixtures.standard_complex(2), fixtures.standard_complex(3), fixtures.trivial(),
                         fixtures.figure_eight_horizontal(), fixtures.trefoil_horizontal()):
            report = check_axioms(complex_)
            self.assertTrue(report.passed, (complex_.name, report.failures))

    def test_axioms_hold_on_tensor_and_dual(self):
        c2, e = fixtures.standard_complex(2), fixtures.figure_eight_horizontal()
        for complex_ in (tensor(c2, e), dual(c2), tensor(e, e)):
            self.assertTrue(check_axioms(complex_).passed, complex_.name)

    def test_phi_is_the_formal_u_derivative(self):
        c3, c2 = fixtures.standard_complex(3), fixtures.standard_complex(2)
        self.assertEqual(phi(c3.complex)['a']['b'].terms, frozenset({(2, 0)}))
        self.assertEqual(phi(c2.complex), {})
        self.assertEqual(phi(fixtures.trivial().complex), {})
        self.assertTrue(phi_is_chain_map(c3.complex))

    def test_identity_iota_is_not_skew_graded(self):
        c2 = fixtures.standard_complex(2)
        complex_ = IotaComplex(c2.complex, {g: [g] for g in c2.generators}, name='C2 with iota = id')
        self.assertEqual(check_axioms(complex_).failures, [Axiom.SKEW_GRADED.value])

    def test_localized_rank(self):
        self.assertEqual(localized_rank(fixtures.standard_complex(3)), 1)
        self.assertEqual(localized_rank(tensor(fixtures.standard_complex(2), fixtures.trivial())), 1)

    def test_iota_on_unknown_generator(self):
        complex_ = ChainComplex(['o'], {}, Ring.F2_U, gradings={'o': (0, 0)})
        with self.assertRaises(IotaError):
            IotaComplex(complex_, {'q': ['o']})

    def test_dual_twice_restores_names(self):
        c2 = fixtures.standard_complex(2)
        twice = dual(dual(c2))
        self.assertEqual(twice.generators, c2.generators)
        self.assertEqual(twice.complex.boundary('a'), c2.complex.boundary('a'))

    def test_empty_linear_combination_is_trivial(self):
        self.assertEqual(len(linear_combination([])), 1)
        self.assertEqual(len(linear_combination([(fixtures.standard_complex(2), 2)])), 25)

    def test_truncation_needs_involution(self):
        with self.assertRaises(IotaError):
            horizontal_truncation(fixtures.staircase([(1, 1)]))

    def test_alexander_gradings(self):
        cfk = fixtures.cfk_trefoil()
        self.assertEqual([cfk.alexander(g) for g in cfk.generators], [1, 0, -1])

    def test_elements_in_bidegree(self):
        cfk = fixtures.cfk_trefoil()
        self.assertEqual(elements_in_bidegree(cfk, (-2, -2)), [('rho', 1, 0), ('tau', 0, 1)])
        self.assertEqual(elements_in_bidegree(cfk, (5, 5)), [])


class LocalMapTests(TestCase):
    def setUp(self):
        self.zero = fixtures.trivial()
        self.c2, self.c3 = fixtures.standard_complex(2), fixtures.standard_complex(3)
        self.e = fixtures.figure_eight_horizontal()

    def test_trivial_complex_below_standard_complex(self):
        self.assertEqual(compare(self.zero, self.c2).relation, Comparison.LESS)
        self.assertEqual(compare(self.c2, self.zero).relation, Comparison.GREATER)

    def test_standard_complexes_increase(self):
        self.assertEqual(compare(self.c2, self.c3).relation, Comparison.LESS)
        doubled = linear_combination([(self.c2, 2)], name='2C2')
        self.assertEqual(compare(doubled, self.c3).relation, Comparison.LESS)

    def test_figure_eight_class(self):
        self.assertEqual(compare(self.e, self.zero).relation, Comparison.INCOMPARABLE)
        self.assertEqual(compare(self.c2, tensor(self.c2, self.e)).relation, Comparison.INCOMPARABLE)
        self.assertTrue(is_locally_trivial(tensor(self.e, self.e)))

    def test_complex_with_its_dual_is_trivial(self):
        self.assertTrue(is_locally_trivial(tensor(self.c2, dual(self.c2))))

    def test_trefoil_below_trivial(self):
        self.assertEqual(compare(fixtures.trefoil_horizontal(), self.zero).relation, Comparison.LESS)

    def test_tensor_is_commutative_up_to_local_equivalence(self):
        t = fixtures.trefoil_horizontal()
        self.assertEqual(compare(tensor(self.e, t), tensor(t, self.e)).relation, Comparison.EQUAL)

    def test_witness_is_independently_verified(self):
        result = exists_almost_local_map(self.c2, self.c3)
        self.assertTrue(result.found)
        self.assertTrue(verify_local_map(self.c2, self.c3, result.map, result.homotopy))
        self.assertTrue(result.as_dict()['complete'])

    def test_exponent_cap_marks_search_incomplete(self):
        # f(b) = U b in C2 -> C3 needs U-power 1
        with override_settings(BFX_MAX_U_POWER=0):
            result = exists_almost_local_map(self.c2, self.c3)
        self.assertFalse(result.complete)
        self.assertFalse(result.as_dict()['complete'])

    def test_no_map_leaves_no_witness(self):
        result = exists_almost_local_map(self.c3, self.c2)
        self.assertFalse(result)
        self.assertIsNone(result.map)

    def test_ungraded_input_rejected(self):
        complex_ = ChainComplex(['o'], {}, Ring.F2_U, name='ungraded')
        with self.assertRaises(UngradedComplexError):
            compare(IotaComplex(complex_, {'o': ['o']}), trivial_complex())


class WhiteheadDoubleTests(TestCase):
    def setUp(self):
        self.cfk = fixtures.wh_double_trefoil_cfk()

    def test_table_validates(self):
        self.assertEqual(len(self.cfk), 15)
        self.assertIsNone(self.cfk.complex.d_squared_failure())
        self.assertIsNone(self.cfk.complex.homogeneity_failure())
        self.assertIsInstance(self.cfk, CFKComplex)

    def test_splitting(self):
        report = verify_wh_double_splitting(self.cfk, fixtures.WH_LOCAL_SUMMAND, fixtures.t_sharp_e())
        self.assertTrue(report.passed, report.as_dict())
        self.assertNotIn('passed', report.as_dict())
        for check in ('d_squared', 'homogeneous', 'iota_splits', 'boxes_acyclic', 'locally_equivalent',
                      'no_v_correction'):
            self.assertTrue(report.checks[check], check)

    def test_beta1_admits_no_correction(self):
        self.assertEqual(correction_terms(self.cfk, 'beta1'), [])

    def test_local_summand_matches_twist_knot_model(self):
        self.assertEqual(compare(fixtures.wh_double_local(), fixtures.t_sharp_e()).relation, Comparison.EQUAL)
