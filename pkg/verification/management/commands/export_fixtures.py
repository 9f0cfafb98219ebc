"""
Regenerate the fixture corpus from the fixture constructors
"""

import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from knotlib.catalog import FIXTURES
from verification.fileformat import file_digest, serialize, write_file

from ._base import CHECK_FAILED, INPUT_ERROR

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Write every bundled fixture in canonical form and print its sha256'

    def add_arguments(self, parser):
        parser.add_argument(
            '--output-dir',
            help='Directory to write to (default: BFX_FIXTURE_DIR)'
        )
        parser.add_argument(
            '--check',
            action='store_true',
            help='Do not write; fail if any file differs from its constructor'
        )
        parser.add_argument(
            'names',
            nargs='*',
            help='Fixture names (default: all)'
        )

    def handle(self, *args, **options):
        directory = Path(options.get('output_dir') or settings.BFX_FIXTURE_DIR)
        names = options['names'] or list(FIXTURES)
        unknown = [name for name in names if name not in FIXTURES]
        if unknown:
            raise CommandError(f'Unknown fixture(s): {", ".join(unknown)}', returncode=INPUT_ERROR)

        stale = []
        for name in names:
            fixture = FIXTURES[name]
            path = directory / fixture.filename
            if options['check']:
                current = path.read_text(encoding='utf-8') if path.exists() else None
                if current != serialize(fixture.build()):
                    stale.append(fixture.filename)
                    self.stdout.write(self.style.ERROR(f'✗ {fixture.filename} is out of date'))
                else:
                    self.stdout.write(f'✓ {fixture.filename} {file_digest(path)}')
                continue
            digest = write_file(fixture.build(), path)
            logger.info(f'Exported {name} to {path}')
            self.stdout.write(f'{fixture.filename} {digest}')

        if stale:
            raise CommandError(f'{len(stale)} fixture file(s) out of date', returncode=CHECK_FAILED)
        verb = 'checked' if options['check'] else 'written to'
        self.stdout.write(self.style.SUCCESS(f'✅ {len(names)} fixture(s) {verb} {directory}'))
