"""
Type-D structure of a framed knot complement from a knot complex file
"""

from bordered.conversion import cfk_to_cfd
from bordered.structures import check_type_d
from verification.fileformat import Kind, serialize, write_file
from verification.reports import outcome

from ._base import EngineCommand


class Command(EngineCommand):
    help = 'Convert a reduced, simplified knot complex to the type-D structure of its complement'

    def add_arguments(self, parser):
        parser.add_argument('complex', help='Knot complex file (.ick, kind complexUV)')
        parser.add_argument(
            '--framing',
            type=int,
            default=0,
            help='Framing of the complement (default: 0)'
        )
        parser.add_argument(
            '--output',
            help='Write the type-D structure to this .bfd file instead of stdout'
        )
        parser.add_argument(
            '--name',
            default='',
            help='Name of the resulting structure'
        )
        super().add_arguments(parser)

    def parameters(self, options) -> dict:
        return {'complex': options['complex'], 'framing': options['framing']}

    def run(self, report, **options):
        cfk = self.load(options['complex'], Kind.COMPLEX_UV)
        structure = cfk_to_cfd(cfk, framing=options['framing'], name=options['name'])
        validity = check_type_d(structure)

        if options.get('output'):
            digest = write_file(structure, options['output'])
            self.stdout.write(f'💾 Wrote {options["output"]} (sha256 {digest[:12]})')
        else:
            self.stdout.write(serialize(structure), ending='')

        report.run('cfk2cfd', cfk.name, lambda: outcome(
            validity.valid, f'{len(structure)} generators, {len(structure.arrows)} arrows',
            generators=len(structure), arrows=len(structure.arrows), validity=validity.as_dict()))
