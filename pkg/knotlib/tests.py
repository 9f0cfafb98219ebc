from django.conf import settings
from django.test import TestCase

from bordered.exceptions import StructureValidationError
from bordered.morphisms import mor_complex
from involutive.axioms import check_axioms
from verification.fileformat import parse_file, serialize

from . import fixtures
from .catalog import FIXTURES, build
from .morphisms import PRINTED_OVERRIDES, cycle_morphisms, printed_morphisms


class FixtureCorpusTests(TestCase):
    def test_every_file_is_canonical_and_matches_its_constructor(self):
        for name, fixture in FIXTURES.items():
            path = settings.BFX_FIXTURE_DIR / fixture.filename
            text = path.read_text(encoding='utf-8')
            self.assertEqual(serialize(fixture.build()), text, name)
            self.assertEqual(serialize(parse_file(path)), text, name)

    def test_unknown_fixture(self):
        with self.assertRaises(StructureValidationError):
            build('cfd_unknot_complement')

    def test_every_fixture_has_provenance(self):
        for fixture in FIXTURES.values():
            self.assertTrue(fixture.provenance, fixture.name)


class MorphismDataTests(TestCase):
    def test_corrections_only_touch_three_morphisms(self):
        corrected, printed = cycle_morphisms(), printed_morphisms()
        differing = sorted(name for name in corrected
                           if corrected[name].component_set() != printed[name].component_set())
        self.assertEqual(differing, sorted(PRINTED_OVERRIDES))

    def test_corrected_morphisms_are_cycles(self):
        trefoil, square = fixtures.cfd_trefoil(), fixtures.square_module()
        morphisms = cycle_morphisms(trefoil, square)
        mor, end = mor_complex(trefoil, square), mor_complex(trefoil, trefoil)
        for name, morphism in morphisms.items():
            complex_ = mor if morphism.target is square else end
            self.assertTrue(complex_.is_cycle(morphism), name)


class ModelComplexTests(TestCase):
    def test_standard_complex_starts_at_two(self):
        with self.assertRaises(StructureValidationError):
            fixtures.standard_complex(1)

    def test_standard_complex_shape(self):
        c4 = fixtures.standard_complex(4)
        self.assertEqual(c4.generators, ('a', 'b', 'c', 'd', 'x'))
        self.assertEqual(str(c4.complex.boundary('a')['b']), 'U^4')

    def test_local_summand_satisfies_axioms(self):
        for complex_ in (fixtures.wh_double_local(), fixtures.t_sharp_e()):
            self.assertTrue(check_axioms(complex_).passed, complex_.name)

    def test_staircase_normalization(self):
        cfk = fixtures.staircase([(1, 2), (2, 1)])
        self.assertEqual(len(cfk), 5)
        self.assertEqual(cfk.degree('x0')[0], 0)
        self.assertEqual(cfk.degree('x4')[1], 0)
        self.assertIsNone(cfk.complex.homogeneity_failure())
        self.assertIsNone(cfk.iota)
        with self.assertRaises(StructureValidationError):
            fixtures.staircase([])


class WhiteheadDoubleConversionTests(TestCase):
    def test_complement_splits_into_trefoil_and_squares(self):
        result = fixtures.split_wh_double_cfd()
        self.assertTrue(result.passed, result.as_dict())
        self.assertEqual(len(result.square_summands), 3)
        self.assertEqual(result.inclusion.source.name, 'cfd_trefoil')
        self.assertEqual(len(result.inclusion.components), 7)
        self.assertNotIn('passed', result.as_dict())
