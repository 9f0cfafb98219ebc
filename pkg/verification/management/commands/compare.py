"""
Local-equivalence comparison of two almost iota-complexes
"""

from involutive.axioms import check_axioms
from involutive.complexes import CFKComplex, horizontal_truncation
from involutive.local_maps import Comparison, compare
from verification.fileformat import Kind
from verification.reports import outcome

from ._base import EngineCommand


class Command(EngineCommand):
    help = 'Decide less / greater / equal / incomparable between two complexes'

    def add_arguments(self, parser):
        parser.add_argument('first', help='Complex file (.ick)')
        parser.add_argument('second', help='Complex file (.ick)')
        parser.add_argument(
            '--expect',
            choices=[c.value for c in Comparison],
            help='Fail unless the relation is this one'
        )
        parser.add_argument(
            '--check-axioms',
            action='store_true',
            help='Also check the axioms on both inputs'
        )
        super().add_arguments(parser)

    def parameters(self, options) -> dict:
        return {'first': options['first'], 'second': options['second'], 'expect': options.get('expect')}

    def load_complex(self, path):
        obj = self.load(path, Kind.COMPLEX_U, Kind.COMPLEX_UV)
        if isinstance(obj, CFKComplex):
            obj = horizontal_truncation(obj)
        return obj

    def run(self, report, **options):
        first = self.load_complex(options['first'])
        second = self.load_complex(options['second'])

        if options['check_axioms']:
            for subject in (first, second):
                axioms = check_axioms(subject)
                report.run('compare', f'axioms_{subject.name}', lambda axioms=axioms: outcome(
                    axioms.passed, ', '.join(axioms.failures) or 'all axioms hold', **axioms.as_dict()))

        result = compare(first, second)
        self.stdout.write(self.style.SUCCESS(result.relation))
        expected = options.get('expect')
        report.run('compare', f'{first.name}_vs_{second.name}', lambda: outcome(
            expected is None or result.relation == expected,
            f'{first.name} vs {second.name}: {result.relation}', **result.as_dict()))
