"""
Shared plumbing for the engine's management commands
"""

import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from f2core.exceptions import BorderedFloerError
from verification.exceptions import FormatError
from verification.fileformat import Kind, kind_of, parse_file
from verification.reports import Report

logger = logging.getLogger(__name__)

INPUT_ERROR = 2
CHECK_FAILED = 1


class EngineCommand(BaseCommand):
    """
    Runs `run(report, **options)` and maps the outcome to the exit code:
    0 all checks pass, 1 a check failed, 2 bad input or usage.
    """

    def add_arguments(self, parser):
        parser.add_argument(
            '--json',
            help='Also write the machine-readable report to this path (relative to BFX_REPORT_DIR)'
        )

    def handle(self, *args, **options):
        report = Report(self.name(), self.parameters(options))
        try:
            self.run(report, **options)
        except FormatError as e:
            logger.error(f'{self.name()}: {e}')
            raise CommandError(str(e), returncode=INPUT_ERROR)
        except BorderedFloerError as e:
            logger.error(f'{self.name()}: {e.error_code}: {e.message}')
            raise CommandError(f'{e.message} ({e.error_code})', returncode=INPUT_ERROR)

        for line in report.lines():
            if line.startswith('[FAIL]') or line.startswith('FAIL'):
                self.stdout.write(self.style.ERROR(line))
            elif line.startswith('[DIVERGENT]'):
                self.stdout.write(self.style.WARNING(line))
            else:
                self.stdout.write(line)

        if options.get('json'):
            path = report.write(options['json'])
            self.stdout.write(f'📄 Report written to {path}')
        self.finish(report, options)

        if not report.passed:
            failure = report.first_failure()
            raise CommandError(f'{failure.suite}/{failure.name} failed: {failure.detail}', returncode=CHECK_FAILED)
        self.stdout.write(self.style.SUCCESS(f'✅ {self.name()} passed'))

    def name(self) -> str:
        return self.__module__.rsplit('.', 1)[-1]

    def parameters(self, options) -> dict:
        return {}

    def run(self, report: Report, **options) -> None:
        raise NotImplementedError

    def finish(self, report: Report, options) -> None:
        pass

    def load(self, path: str, *kinds: Kind):
        """Parse a module file, insisting on one of the given kinds"""
        if not Path(path).exists():
            raise CommandError(f'{path}: no such file', returncode=INPUT_ERROR)
        obj = parse_file(path)
        if kinds and kind_of(obj) not in kinds:
            raise CommandError(
                f'{path}: expected {" or ".join(k.value for k in kinds)}, got {kind_of(obj).value}',
                returncode=INPUT_ERROR,
            )
        return obj
