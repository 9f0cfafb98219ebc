"""
Box tensor product of a type-A and a type-D structure
"""

from bordered.reduction import reduce_complex
from bordered.tensor import box_tensor
from f2core.complexes import complex_homology
from verification.fileformat import Kind
from verification.reports import outcome

from ._base import EngineCommand


class Command(EngineCommand):
    help = 'Pair a type-A structure with a type-D structure and report the homology'

    def add_arguments(self, parser):
        parser.add_argument('module', help='Type-A structure file (.bfa)')
        parser.add_argument('structure', help='Type-D structure file (.bfd)')
        parser.add_argument(
            '--reduce',
            action='store_true',
            help='Also cancel unit arrows and print the reduced complex'
        )
        parser.add_argument(
            '--show-differential',
            action='store_true',
            help='Print every arrow of the paired complex'
        )
        super().add_arguments(parser)

    def parameters(self, options) -> dict:
        return {'module': options['module'], 'structure': options['structure'], 'reduce': options['reduce']}

    def run(self, report, **options):
        module = self.load(options['module'], Kind.TYPE_A)
        structure = self.load(options['structure'], Kind.TYPE_D)
        paired = box_tensor(module, structure)
        homology = complex_homology(paired)

        self.stdout.write(f'{module.name} ⊠ {structure.name}: {len(paired)} generators')
        if options['show_differential']:
            for x, y, _ in paired.arrows():
                self.stdout.write(f'  {x} -> {y}')
        self.stdout.write(self.style.SUCCESS(f'H* dim {homology.total}'))

        data = {'generators': list(paired.generators), 'homology': homology.as_dict()}
        if options['reduce']:
            reduced = reduce_complex(paired).reduced
            self.stdout.write(f'Reduced: {len(reduced)} generators')
            data['reduced'] = list(reduced.generators)
        report.run('box', f'{module.name}*{structure.name}', lambda: outcome(
            True, f'{len(paired)} generators, H* dim {homology.total}', **data))
