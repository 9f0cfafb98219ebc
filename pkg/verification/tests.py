import json
import random
import shutil
import tempfile
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import TestCase, override_settings

from involutive.axioms import check_axioms
from knotlib import fixtures
from knotlib.catalog import FIXTURES

from .exceptions import FormatError
from .fileformat import Kind, kind_of, parse, parse_file, serialize
from .models import VerificationRun
from .reports import CheckStatus, Report, outcome
from .suites import Suite, conversion, order, properties, random_staircase, run_suites

FIXTURE_DIR = Path(settings.BFX_FIXTURE_DIR)


def fixture_path(name):
    return str(FIXTURE_DIR / FIXTURES[name].filename)


class FileFormatTests(TestCase):
    def test_round_trip_of_constructed_objects(self):
        for obj in (fixtures.cfd_trefoil(), fixtures.cable_cfa_hat(2), fixtures.standard_complex(4),
                    fixtures.cfk_figure_eight(), fixtures.staircase([(2, 1)])):
            text = serialize(obj)
            self.assertEqual(serialize(parse(text)), text)

    def test_comments_and_blank_lines_are_ignored(self):
        text = '# trefoil\n\n' + serialize(fixtures.cfd_trefoil())
        self.assertEqual(serialize(parse(text)), serialize(fixtures.cfd_trefoil()))

    def test_kind_detection(self):
        self.assertEqual(kind_of(parse_file(fixture_path('cable_1'))), Kind.TYPE_A)
        self.assertEqual(kind_of(parse_file(fixture_path('cfk_trefoil'))), Kind.COMPLEX_UV)
        self.assertEqual(kind_of(parse_file(fixture_path('T'))), Kind.COMPLEX_U)
        self.assertEqual(kind_of(parse_file(fixture_path('f1'))), Kind.MORPHISM)

    def test_undeclared_generator_is_positioned(self):
        with self.assertRaises(FormatError) as raised:
            parse('kind typeD\nalgebra torus\ngen x i0\narrow x r12 q\n', source='bad.bfd')
        error = raised.exception
        self.assertEqual((error.line, error.column), (4, 13))
        self.assertEqual(str(error), "bad.bfd:4:13: undeclared generator 'q'")

    def test_unknown_algebra_element(self):
        with self.assertRaises(FormatError) as raised:
            parse('kind typeD\ngen x i0\ngen y i1\narrow x r13 y\n')
        self.assertEqual((raised.exception.line, raised.exception.column), (4, 9))

    def test_idempotent_clash_points_at_declaration(self):
        with self.assertRaises(FormatError) as raised:
            parse('kind typeD\ngen x i1\ngen y i1\narrow x r1 y\n')
        self.assertEqual(raised.exception.line, 2)
        self.assertEqual(raised.exception.error_code, 'format')

    def test_missing_argument(self):
        with self.assertRaises(FormatError) as raised:
            parse('kind typeD\ngen x\n')
        self.assertEqual((raised.exception.line, raised.exception.column), (2, 6))

    def test_header_after_stanza(self):
        with self.assertRaises(FormatError) as raised:
            parse('kind complexU\ngen o 0 0\nname late\n')
        self.assertEqual(raised.exception.line, 3)

    def test_d_squared_failure(self):
        with self.assertRaises(FormatError):
            parse('kind complexU\ngen a 0 0\ngen b 0 0\ngen c 0 0\ndiff a 1 b\ndiff b 1 c\n')

    def test_extension_must_match_kind(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'trefoil.bfa'
            path.write_text(serialize(fixtures.cfd_trefoil()), encoding='utf-8')
            with self.assertRaises(FormatError):
                parse_file(path)

    def test_morphism_ends_resolve_from_the_catalog(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'g1.bfm'
            shutil.copy(fixture_path('g1'), path)
            morphism = parse_file(path)
        self.assertEqual(morphism.target.name, 'square')
        self.assertEqual([(x, a.value, y) for x, a, y in morphism.components], [('s3', 'r3', 'y1')])


class ReportTests(TestCase):
    def test_divergent_checks_do_not_fail_the_run(self):
        report = Report('verify')
        report.run('demo', 'ok', lambda: outcome(True, 'fine'))
        report.run('demo', 'documented', lambda: (CheckStatus.DIVERGENT, 'as drawn', {}))
        self.assertTrue(report.passed)
        report.run('demo', 'broken', lambda: outcome(False, 'nope'))
        self.assertFalse(report.passed)
        self.assertEqual(report.first_failure().name, 'broken')
        self.assertEqual(report.counts(), {'PASS': 1, 'FAIL': 1, 'DIVERGENT': 1})

    def test_engine_errors_become_failures(self):
        report = Report('verify')
        report.run('demo', 'raises', lambda: outcome(len(fixtures.cable_cfa_hat(0)) > 0))
        check = report.checks[0]
        self.assertEqual(check.status, CheckStatus.FAIL)
        self.assertEqual(check.data['error']['error_code'], 'structure_validation')

    def test_unexpected_exceptions_become_failures(self):
        def broken():
            return outcome(True, 'unreachable', size=len(None))

        report = Report('verify')
        with self.assertLogs('verification.reports', level='ERROR'):
            check = report.run('demo', 'type_error', broken)
        self.assertEqual(check.status, CheckStatus.FAIL)
        self.assertTrue(check.detail.startswith('TypeError'))
        self.assertEqual(check.data['error']['error_code'], 'internal')
        self.assertEqual(check.data['error']['details']['type'], 'TypeError')
        self.assertFalse(report.passed)

    def test_payloads_spread_into_outcomes(self):
        axioms = check_axioms(fixtures.standard_complex(2))
        self.assertNotIn('passed', axioms.as_dict())
        report = Report('verify')
        check = report.run('demo', 'axioms', lambda: outcome(axioms.passed, 'C2', **axioms.as_dict()))
        self.assertEqual(check.status, CheckStatus.PASS)
        self.assertEqual(check.data['subject'], axioms.as_dict()['subject'])

    def test_digest_ignores_timings(self):
        first, second = Report('verify'), Report('verify')
        for report in (first, second):
            conversion(report)
        self.assertEqual(first.digest(), second.digest())
        self.assertNotIn('seconds', json.dumps(first.as_dict(timings=False)))

    @override_settings(BFX_REPORT_DIR=Path(tempfile.gettempdir()) / 'bfx-reports')
    def test_relative_paths_go_to_report_dir(self):
        report = Report('verify')
        path = report.write('nested/report.json')
        self.assertEqual(path.parent.parent, settings.BFX_REPORT_DIR)
        self.assertEqual(json.loads(path.read_text())['status'], 'PASS')


class SuiteTests(TestCase):
    def test_conversion_suite(self):
        report = Report('verify')
        conversion(report)
        self.assertTrue(report.passed, report.lines())
        self.assertEqual(len(report.checks), 6)

    def test_order_suite_small(self):
        report = Report('verify')
        order(report, max_m=1, ns=(2, 3))
        self.assertTrue(report.passed, report.lines())
        names = [check.name for check in report.checks]
        self.assertIn('1C2_vs_C3', names)
        self.assertIn('axioms_C2_identity_iota', names)

    def test_order_suite_reports_figure_eight_incomparability(self):
        report = Report('verify')
        order(report, max_m=1, ns=(2,))
        checks = {check.name: check for check in report.checks}
        for name in ('C2_vs_C2#E', 'E_vs_0'):
            self.assertEqual(checks[name].status, CheckStatus.PASS, checks[name].detail)
            self.assertEqual(checks[name].data['expected'], 'incomparable')
        self.assertEqual(checks['axioms_E'].status, CheckStatus.PASS)

    def test_properties_suite_is_seeded(self):
        first, second = Report('verify'), Report('verify')
        properties(first, seed=5, samples=10)
        properties(second, seed=5, samples=10)
        self.assertTrue(first.passed, first.lines())
        self.assertEqual(first.digest(), second.digest())
        self.assertEqual(len(first.fixtures), len(FIXTURES))

    def test_random_staircases_depend_only_on_seed(self):
        first, second = random.Random(9), random.Random(9)
        a = [random_staircase(first).name for _ in range(5)]
        b = [random_staircase(second).name for _ in range(5)]
        self.assertEqual(a, b)

    def test_tensorlem_marks_f2_and_f3_divergent(self):
        report = run_suites([Suite.TENSORLEM.value], Report('verify'), n=1)
        self.assertTrue(report.passed, report.lines())
        statuses = {check.name: check.status for check in report.checks}
        self.assertEqual(statuses['nullhomotopic_f2_n1'], CheckStatus.DIVERGENT)
        self.assertEqual(statuses['nullhomotopic_f1_n1'], CheckStatus.PASS)
        self.assertEqual(statuses['printed_f3'], CheckStatus.DIVERGENT)
        self.assertEqual(statuses['box_sizes_n1'], CheckStatus.PASS)

    def test_trefoillem(self):
        report = run_suites([Suite.TREFOILLEM.value], Report('verify'))
        self.assertTrue(report.passed, report.lines())
        self.assertEqual(report.checks[-1].name, 'convention_invariance')


class CommandTests(TestCase):
    def call(self, *args, **kwargs):
        out = StringIO()
        call_command(*args, stdout=out, **kwargs)
        return out.getvalue()

    def test_verify_conversion(self):
        output = self.call('verify', '--lemma', 'conversion')
        self.assertIn('[PASS] conversion/trefoil', output)
        self.assertIn('✅ verify passed', output)

    def test_verify_iota_kd_and_record(self):
        self.call('verify', '--lemma', 'iotaKD', '--record')
        run = VerificationRun.objects.get()
        self.assertEqual(run.status, CheckStatus.PASS)
        self.assertEqual(run.suites, 'iotaKD')
        self.assertEqual(run.failed_checks, 0)
        self.assertEqual(run.digest, run.report['digest'])

    def test_mor(self):
        output = self.call('mor', fixture_path('cfd_trefoil'), fixture_path('square'), '--dimension', '6')
        self.assertIn('H* dim 6', output)

    def test_mor_wrong_dimension_exits_one(self):
        with self.assertRaises(CommandError) as raised:
            self.call('mor', fixture_path('cfd_trefoil'), fixture_path('cfd_trefoil'), '--dimension', '5')
        self.assertEqual(raised.exception.returncode, 1)

    def test_box(self):
        output = self.call('box', fixture_path('cable_1'), fixture_path('cfd_trefoil'))
        self.assertIn('27 generators', output)

    def test_box_with_swapped_arguments_exits_two(self):
        with self.assertRaises(CommandError) as raised:
            self.call('box', fixture_path('cfd_trefoil'), fixture_path('cable_1'))
        self.assertEqual(raised.exception.returncode, 2)

    def test_box_with_idempotent_clash_exits_two(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'clash.bfd'
            path.write_text('kind typeD\ngen x i1\ngen y i1\narrow x r1 y\n', encoding='utf-8')
            with self.assertRaises(CommandError) as raised:
                self.call('box', fixture_path('cable_1'), str(path))
        self.assertEqual(raised.exception.returncode, 2)
        self.assertIn('clash.bfd:2', str(raised.exception))

    def test_compare(self):
        output = self.call('compare', fixture_path('C2'), fixture_path('C3'), '--expect', 'less')
        self.assertIn('less', output)

    def test_compare_knot_complexes_uses_horizontal_truncation(self):
        output = self.call('compare', fixture_path('cfk_figure_eight'), fixture_path('trivial'))
        self.assertIn('incomparable', output)

    def test_cfk2cfd(self):
        with tempfile.TemporaryDirectory() as directory:
            target = Path(directory) / 'trefoil.bfd'
            self.call('cfk2cfd', fixture_path('cfk_trefoil'), '--output', str(target), '--name', 'cfd_trefoil')
            converted = parse_file(target)
        self.assertEqual(len(converted), 7)

    def test_cfk2cfd_to_stdout(self):
        output = self.call('cfk2cfd', fixture_path('cfk_unknot'), '--framing', '0')
        self.assertIn('arrow o r12 o', output)

    def test_missing_file_exits_two(self):
        with self.assertRaises(CommandError) as raised:
            self.call('mor', 'missing.bfd', fixture_path('square'))
        self.assertEqual(raised.exception.returncode, 2)

    def test_export_fixtures_check(self):
        output = self.call('export_fixtures', '--check')
        self.assertIn(f'{len(FIXTURES)} fixture(s) checked', output)

    def test_export_fixtures_writes_corpus(self):
        with tempfile.TemporaryDirectory() as directory:
            self.call('export_fixtures', '--output-dir', directory, 'C2', 'f1')
            written = sorted(p.name for p in Path(directory).iterdir())
            self.assertEqual(written, ['C2.ick', 'f1.bfm'])
            self.assertEqual((Path(directory) / 'C2.ick').read_text(), Path(fixture_path('C2')).read_text())

    def test_json_report(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'conversion.json'
            self.call('verify', '--lemma', 'conversion', '--json', str(path))
            data = json.loads(path.read_text())
        self.assertEqual(data['status'], 'PASS')
        self.assertEqual(data['parameters']['suites'], ['conversion'])
        self.assertEqual(data['engine_version'], settings.ENGINE_VERSION)
