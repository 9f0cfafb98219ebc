"""
Run the verification suites and report the first divergence
"""

import logging

from django.core.management.base import CommandError

from verification.models import VerificationRun
from verification.suites import RANDOM_SAMPLES, Suite, run_suites

from ._base import INPUT_ERROR, EngineCommand

logger = logging.getLogger(__name__)

ALL = 'all'


class Command(EngineCommand):
    help = 'Run the verification suites (exit 0 all pass, 1 a check failed, 2 bad input)'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--lemma',
            action='append',
            choices=[s.value for s in Suite] + [ALL],
            help='Suite to run; repeatable (default: all)'
        )
        parser.add_argument(
            '--n',
            type=int,
            choices=[1, 2, 3],
            help='Cable parameter for tensorlem (default: 1, 2 and 3)'
        )
        parser.add_argument(
            '--max-M',
            dest='max_m',
            type=int,
            default=2,
            help='Largest multiple M in M·C_n < C_n+1 (default: 2)'
        )
        parser.add_argument(
            '--seed',
            type=int,
            default=0,
            help='Seed for the randomized structures in the properties suite'
        )
        parser.add_argument(
            '--samples',
            type=int,
            default=RANDOM_SAMPLES,
            help=f'Number of randomized structures (default: {RANDOM_SAMPLES})'
        )
        parser.add_argument(
            '--record',
            action='store_true',
            help='Store the run and its report in the database'
        )

    def selected(self, options):
        lemmas = options.get('lemma') or [ALL]
        if ALL in lemmas:
            return [s.value for s in Suite]
        return [s.value for s in Suite if s.value in lemmas]

    def parameters(self, options) -> dict:
        return {
            'suites': self.selected(options),
            'n': options.get('n'),
            'max_m': options['max_m'],
            'seed': options['seed'],
            'samples': options['samples'],
        }

    def run(self, report, **options):
        if options['max_m'] < 1:
            raise CommandError('--max-M must be at least 1', returncode=INPUT_ERROR)
        if options['samples'] < 0:
            raise CommandError('--samples must not be negative', returncode=INPUT_ERROR)
        suites = self.selected(options)
        self.stdout.write(self.style.SUCCESS(f'🚀 Running {", ".join(suites)}'))
        run_suites(suites, report, n=options.get('n'), max_m=options['max_m'],
                   seed=options['seed'], samples=options['samples'])

    def finish(self, report, options):
        self.stdout.write(f'🔑 Digest {report.digest()}')
        if options['record']:
            run = VerificationRun.record(report, self.selected(options))
            logger.info(f'Recorded verification run {run.id}')
            self.stdout.write(f'💾 Recorded as {run.id}')
