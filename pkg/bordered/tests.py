from django.test import TestCase

from f2core.complexes import ChainComplex, ChainMap, Ring, complex_homology
from f2core.polynomials import ONE
from knotlib import fixtures
from knotlib.morphisms import END_NAMES, MOR_NAMES, cycle_morphisms, printed_morphisms

from .conversion import cfk_to_cfd
from .exceptions import ChainMapError, ConversionError, StructureValidationError, UnboundedPairingError
from .graphs import find_isomorphism, inclusion_morphism, projection_morphism, split_summands
from .morphisms import end_homology, is_nullhomotopic, mor_complex, verify_homotopy
from .reduction import reduce_complex, reduce_type_d
from .structures import DMorphism, TypeDStructure, check_type_a, check_type_d
from .tensor import box_tensor, box_tensor_morphism, pair_name


class TypeDStructureTests(TestCase):
    def test_bundled_structures_are_valid(self):
        for structure in (fixtures.cfd_trefoil(), fixtures.square_module(), fixtures.cfd_figure_eight()):
            self.assertTrue(check_type_d(structure).valid, structure.name)

    def test_structure_equation_failure_is_reported(self):
        structure = TypeDStructure({'x': 0, 'y': 1, 'z': 0}, [('x', 'r1', 'y'), ('y', 'r2', 'z')], name='bad')
        report = check_type_d(structure)
        self.assertFalse(report.valid)
        self.assertEqual(report.violations[0]['kind'], 'structure_equation')
        self.assertEqual(report.violations[0]['path'], ['x', 'r1', 'y', 'r2', 'z'])

    def test_idempotent_clash_is_reported(self):
        structure = TypeDStructure({'x': 1, 'y': 1}, [('x', 'r1', 'y')], name='clash')
        report = check_type_d(structure)
        self.assertEqual(report.violations[0]['kind'], 'idempotent')
        with self.assertRaises(StructureValidationError):
            report.raise_if_invalid()

    def test_undeclared_generator(self):
        with self.assertRaises(StructureValidationError):
            TypeDStructure({'x': 0}, [('x', 'r12', 'q')])

    def test_repeated_arrows_cancel(self):
        structure = TypeDStructure({'x': 0}, [('x', 'r12', 'x'), ('x', 'r12', 'x')])
        self.assertEqual(structure.arrows, ())


class CableModuleTests(TestCase):
    def test_closure_gives_a_infinity_module(self):
        for n in (1, 2, 3):
            self.assertTrue(check_type_a(fixtures.cable_cfa_hat(n)).valid)

    def test_printed_actions_alone_fail(self):
        report = check_type_a(fixtures.cable_cfa_hat(1, closure=False))
        self.assertFalse(report.valid)
        self.assertEqual(report.violations[0]['kind'], 'a_infinity')

    def test_rejects_non_positive_parameter(self):
        with self.assertRaises(StructureValidationError):
            fixtures.cable_cfa_hat(0)


class BoxTensorTests(TestCase):
    def setUp(self):
        self.cable = fixtures.cable_cfa_hat(1)
        self.trefoil = fixtures.cfd_trefoil()
        self.square = fixtures.square_module()

    def test_generator_counts(self):
        for n in (1, 2, 3):
            cable = fixtures.cable_cfa_hat(n)
            self.assertEqual(len(box_tensor(cable, self.trefoil)), 16 * n + 11)
            self.assertEqual(len(box_tensor(cable, self.square)), 16 * n + 12)

    def test_pairing_arrows(self):
        paired = box_tensor(self.cable, self.trefoil)
        self.assertIn(pair_name('b3', 't1'), paired.boundary_set(pair_name('w', 's2')))
        self.assertIn(pair_name('w', 's1'), paired.boundary_set(pair_name('a3', 't1')))
        self.assertIn(pair_name('a2', 't4'), paired.boundary_set(pair_name('a1', 't1')))
        paired = box_tensor(self.cable, self.square)
        self.assertIn(pair_name('w', 'e'), paired.boundary_set(pair_name('a3', 'y3')))

    def test_reduction_preserves_homology(self):
        paired = box_tensor(self.cable, self.trefoil)
        reduction = reduce_complex(paired)
        self.assertLess(len(reduction.reduced), len(paired))
        self.assertEqual(complex_homology(reduction.reduced).total, complex_homology(paired).total)
        self.assertIsNone(reduction.include_map().chain_map_failure())
        self.assertIsNone(reduction.project_map().chain_map_failure())

    def test_idempotent_mismatch_rejected(self):
        clash = TypeDStructure({'x': 1, 'y': 1}, [('x', 'r1', 'y')], name='clash')
        with self.assertRaises(StructureValidationError):
            box_tensor(self.cable, clash)

    def test_divergence_guard_names_cycle(self):
        looping = TypeDStructure({'p': 1, 'z': 0}, [('p', 'r2', 'z'), ('z', 'r12', 'z')], name='loop')
        with self.assertRaises(UnboundedPairingError) as raised:
            box_tensor(fixtures.cable_cfa_hat(3), looping, depth=2)
        self.assertIn('z', raised.exception.details['cycle'])


class MorphismTests(TestCase):
    def setUp(self):
        self.trefoil = fixtures.cfd_trefoil()
        self.square = fixtures.square_module()
        self.morphisms = cycle_morphisms(self.trefoil, self.square)

    def test_mor_homology(self):
        mor = mor_complex(self.trefoil, self.square)
        self.assertEqual(len(mor), 108)
        self.assertEqual(mor.homology().total, 6)
        generators = [self.morphisms[name] for name in MOR_NAMES]
        self.assertTrue(all(mor.is_cycle(m) for m in generators))
        self.assertTrue(mor.spans_homology(generators))

    def test_printed_morphisms_that_are_not_cycles(self):
        printed = printed_morphisms(self.trefoil, self.square)
        mor = mor_complex(self.trefoil, self.square)
        self.assertFalse(mor.is_cycle(printed['f2']))
        self.assertFalse(mor.is_cycle(printed['f3']))
        self.assertTrue(mor.is_cycle(printed['f1']))
        end = mor_complex(self.trefoil, self.trefoil)
        self.assertFalse(end.is_cycle(printed['h2']))

    def test_end_homology(self):
        end = end_homology(self.trefoil)
        self.assertEqual(len(end.mor), 98)
        self.assertEqual(end.dimension, 6)
        self.assertTrue(end.identity_class_present)
        hs = [self.morphisms[name] for name in END_NAMES]
        self.assertEqual(end.mor.homology_rank(hs), 5)
        self.assertEqual(end.mor.homology_rank(hs + [DMorphism.identity(self.trefoil)]), 6)

    def test_morphism_rejects_idempotent_clash(self):
        with self.assertRaises(StructureValidationError):
            DMorphism(self.trefoil, self.square, [('s1', 'i1', 'a')])

    def test_nullhomotopies_after_cabling(self):
        cable = fixtures.cable_cfa_hat(1)
        source = box_tensor(cable, self.trefoil)
        target = box_tensor(cable, self.square)
        for name in ('f1', 'g1', 'g2', 'g3'):
            induced = box_tensor_morphism(cable, self.morphisms[name], source_complex=source, target_complex=target)
            result = is_nullhomotopic(induced)
            self.assertTrue(result.nullhomotopic, name)
            self.assertTrue(verify_homotopy(induced, result.homotopy))

    def test_cabled_f2_carries_obstruction(self):
        cable = fixtures.cable_cfa_hat(1)
        induced = box_tensor_morphism(cable, self.morphisms['f2'])
        result = is_nullhomotopic(induced)
        self.assertFalse(result.nullhomotopic)
        self.assertTrue(result.obstruction)

    def test_induced_map_values(self):
        cable = fixtures.cable_cfa_hat(1)
        induced = box_tensor_morphism(cable, self.morphisms['f1'])
        self.assertIn(pair_name('w', 'e'), induced.image(pair_name('w', 's2')))
        self.assertIn(pair_name('b3', 'y2'), induced.image(pair_name('a3', 't2')))

    def test_non_chain_map_rejected(self):
        complex_ = ChainComplex.from_sets(['a', 'b'], {'a': ['b']})
        with self.assertRaises(ChainMapError):
            is_nullhomotopic(ChainMap(complex_, complex_, {'a': {'a'}}))


class GraphTests(TestCase):
    def test_figure_eight_splits_into_square_and_loop(self):
        summands = split_summands(fixtures.cfd_figure_eight())
        self.assertEqual(sorted(len(s) for s in summands), [1, 8])
        square = next(s for s in summands if len(s) == 8)
        self.assertIsNotNone(find_isomorphism(square, fixtures.square_module()))

    def test_inclusion_then_projection_is_identity(self):
        structure = fixtures.cfd_figure_eight()
        square = next(s for s in split_summands(structure) if len(s) == 8)
        composite = inclusion_morphism(square, structure).then(projection_morphism(structure, square))
        self.assertEqual(composite, DMorphism.identity(square))

    def test_non_isomorphic(self):
        self.assertIsNone(find_isomorphism(fixtures.cfd_trefoil(), fixtures.square_module()))

    def test_type_d_reduction(self):
        structure = TypeDStructure({'x': 0, 'y': 0, 'z': 1}, [('x', 'i0', 'y'), ('x', 'r1', 'z')], name='cancel')
        self.assertTrue(check_type_d(structure).valid)
        reduction = reduce_type_d(structure)
        self.assertEqual(list(reduction.reduced.generators), ['z'])
        self.assertEqual(reduction.cancelled, [('x', 'y')])


class ConversionTests(TestCase):
    def test_trefoil_matches_drawn_structure(self):
        self.assertIsNotNone(find_isomorphism(cfk_to_cfd(fixtures.cfk_trefoil()), fixtures.cfd_trefoil()))

    def test_figure_eight_matches_drawn_structure(self):
        converted = cfk_to_cfd(fixtures.cfk_figure_eight())
        self.assertIsNotNone(find_isomorphism(converted, fixtures.cfd_figure_eight()))

    def test_unknot(self):
        converted = cfk_to_cfd(fixtures.cfk_unknot())
        self.assertEqual(list(converted.generators), ['o'])
        self.assertEqual([(x, a.value, y) for x, a, y in converted.arrows], [('o', 'r12', 'o')])

    def test_framings(self):
        for framing in range(-1, 4):
            structure = cfk_to_cfd(fixtures.cfk_trefoil(), framing=framing)
            self.assertEqual(len(structure), 5 + abs(framing - 2))
            self.assertTrue(check_type_d(structure).valid)

    def test_unreduced_input_rejected(self):
        complex_ = ChainComplex(['x', 'y'], {'x': {'y': ONE}}, Ring.F2_UV,
                                gradings={'x': (0, 0), 'y': (-1, -1)})
        with self.assertRaises(ConversionError):
            cfk_to_cfd(complex_)
