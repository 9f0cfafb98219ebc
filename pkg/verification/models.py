import uuid

from django.db import models

from .reports import CheckStatus, Report


class VerificationRun(models.Model):
    """A recorded `verify` run and its full report"""
    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    command = models.CharField(max_length=50, default='verify')
    suites = models.CharField(max_length=200, help_text="Comma-separated suite names")
    parameters = models.JSONField(default=dict, blank=True)
    status = models.CharField(max_length=10, choices=CheckStatus.choices)

    # Counts by status
    passed_checks = models.PositiveIntegerField(default=0)
    failed_checks = models.PositiveIntegerField(default=0)
    divergent_checks = models.PositiveIntegerField(default=0)

    report = models.JSONField(default=dict)
    digest = models.CharField(max_length=64, help_text="sha256 of the report without timings")
    engine_version = models.CharField(max_length=20, blank=True)
    total_seconds = models.FloatField(default=0.0)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at']
        verbose_name = 'Verification Run'
        verbose_name_plural = 'Verification Runs'

    def __str__(self):
        return f"{self.suites} - {self.status} ({self.created_at:%Y-%m-%d %H:%M})"

    @classmethod
    def record(cls, report: Report, suites) -> 'VerificationRun':
        data = report.as_dict()
        counts = report.counts()
        return cls.objects.create(
            command=report.command,
            suites=','.join(suites),
            parameters=report.parameters,
            status=report.status,
            passed_checks=counts[CheckStatus.PASS],
            failed_checks=counts[CheckStatus.FAIL],
            divergent_checks=counts[CheckStatus.DIVERGENT],
            report=data,
            digest=data['digest'],
            engine_version=data['engine_version'],
            total_seconds=data['total_seconds'],
        )

    def same_result_as(self, other: 'VerificationRun') -> bool:
        return self.digest == other.digest
