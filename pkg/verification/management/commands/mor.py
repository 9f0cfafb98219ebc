"""
Homology of the morphism complex between two type-D structures
"""

from bordered.morphisms import homology_representatives, mor_complex
from verification.fileformat import Kind
from verification.reports import outcome

from ._base import EngineCommand


class Command(EngineCommand):
    help = 'Compute H*Mor(A, B) with cycle representatives'

    def add_arguments(self, parser):
        parser.add_argument('source', help='Type-D structure file (.bfd)')
        parser.add_argument('target', help='Type-D structure file (.bfd)')
        parser.add_argument(
            '--dimension',
            type=int,
            help='Fail unless the homology has this dimension'
        )
        super().add_arguments(parser)

    def parameters(self, options) -> dict:
        return {'source': options['source'], 'target': options['target'], 'dimension': options.get('dimension')}

    def run(self, report, **options):
        source = self.load(options['source'], Kind.TYPE_D)
        target = self.load(options['target'], Kind.TYPE_D)
        mor = mor_complex(source, target)
        homology = mor.homology()
        representatives = homology_representatives(mor)

        self.stdout.write(f'Mor({source.name}, {target.name}): {len(mor)} components')
        self.stdout.write(self.style.SUCCESS(f'H* dim {homology.total}'))
        for i, representative in enumerate(representatives, 1):
            terms = ', '.join(f'{x}->{a.value}.{y}' for x, a, y in representative.components)
            self.stdout.write(f'  [{i}] {terms}')

        expected = options.get('dimension')
        report.run('mor', f'{source.name}->{target.name}', lambda: outcome(
            expected is None or homology.total == expected,
            f'H* dim {homology.total}',
            dimension=homology.total,
            basis=len(mor),
            representatives=[m.as_dict() for m in representatives],
        ))
