"""
Machine-readable verification reports
"""

import hashlib
import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from django.conf import settings
from django.core.serializers.json import DjangoJSONEncoder
from django.db import models

from f2core.exceptions import BorderedFloerError

logger = logging.getLogger(__name__)


class CheckStatus(models.TextChoices):
    PASS = 'PASS', 'Passed'
    FAIL = 'FAIL', 'Failed'
    # differs from the printed data in a documented way; does not fail the run
    DIVERGENT = 'DIVERGENT', 'Documented divergence'


Outcome = Tuple[str, str, Dict[str, Any]]


@dataclass
class CheckResult:
    suite: str
    name: str
    status: str
    detail: str = ''
    data: Dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    def as_dict(self, timings: bool = True) -> Dict[str, Any]:
        result = {
            'suite': self.suite,
            'name': self.name,
            'status': self.status,
            'detail': self.detail,
            'data': self.data,
        }
        if timings:
            result['seconds'] = round(self.seconds, 4)
        return result


def evaluate(suite: str, name: str, check: Callable[[], Outcome]) -> CheckResult:
    """
    Run one check. A check returns (status, detail, data); any exception
    becomes a FAIL carrying the error payload.
    """
    started = time.perf_counter()
    try:
        status, detail, data = check()
    except BorderedFloerError as e:
        logger.error(f'{suite}/{name}: {e.message}')
        status, detail, data = CheckStatus.FAIL, e.message, {'error': e.to_dict()}
    except Exception as e:
        logger.exception(f'{suite}/{name}: unexpected {type(e).__name__}')
        status, detail = CheckStatus.FAIL, f'{type(e).__name__}: {e}'
        data = {'error': {'error': str(e), 'error_code': 'internal', 'details': {'type': type(e).__name__}}}
    return CheckResult(suite, name, str(status), detail, data, time.perf_counter() - started)


class Report:
    """Ordered list of check results plus the inputs they depend on"""

    def __init__(self, command: str, parameters: Optional[Dict[str, Any]] = None):
        self.command = command
        self.parameters = parameters or {}
        self.checks: List[CheckResult] = []
        self.fixtures: Dict[str, str] = {}

    def run(self, suite: str, name: str, check: Callable[[], Outcome]) -> CheckResult:
        result = evaluate(suite, name, check)
        self.add(result)
        return result

    def add(self, result: CheckResult) -> None:
        self.checks.append(result)
        if result.status == CheckStatus.FAIL:
            logger.error(f'{result.suite}/{result.name}: FAIL {result.detail}')
        else:
            logger.info(f'{result.suite}/{result.name}: {result.status} {result.detail}')

    def extend(self, results: List[CheckResult]) -> None:
        for result in results:
            self.add(result)

    @property
    def passed(self) -> bool:
        return all(c.status != CheckStatus.FAIL for c in self.checks)

    @property
    def status(self) -> str:
        return CheckStatus.PASS.value if self.passed else CheckStatus.FAIL.value

    def counts(self) -> Dict[str, int]:
        counts = {s.value: 0 for s in CheckStatus}
        for check in self.checks:
            counts[check.status] += 1
        return counts

    def first_failure(self) -> Optional[CheckResult]:
        return next((c for c in self.checks if c.status == CheckStatus.FAIL), None)

    def as_dict(self, timings: bool = True) -> Dict[str, Any]:
        result = {
            'schema': getattr(settings, 'REPORT_SCHEMA_VERSION', 1),
            'engine_version': getattr(settings, 'ENGINE_VERSION', ''),
            'command': self.command,
            'parameters': self.parameters,
            'status': self.status,
            'counts': self.counts(),
            'fixtures': dict(sorted(self.fixtures.items())),
            'checks': [c.as_dict(timings) for c in self.checks],
        }
        if timings:
            result['total_seconds'] = round(sum(c.seconds for c in self.checks), 4)
            result['digest'] = self.digest()
        return result

    def digest(self) -> str:
        """sha256 of the report without timings; equal inputs give equal digests"""
        text = json.dumps(self.as_dict(timings=False), sort_keys=True, cls=DjangoJSONEncoder)
        return hashlib.sha256(text.encode('utf-8')).hexdigest()

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, cls=DjangoJSONEncoder)

    def write(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        if not path.is_absolute():
            path = Path(getattr(settings, 'BFX_REPORT_DIR', '.')) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json() + '\n', encoding='utf-8')
        logger.info(f'Report written to {path}')
        return path

    def lines(self) -> List[str]:
        """Human-readable summary, one line per check"""
        lines = []
        for check in self.checks:
            lines.append(f'[{check.status}] {check.suite}/{check.name}' + (f': {check.detail}' if check.detail else ''))
        counts = self.counts()
        lines.append(f'{self.status}: {counts["PASS"]} passed, {counts["FAIL"]} failed, '
                     f'{counts["DIVERGENT"]} divergent')
        return lines


def outcome(passed: bool, detail: str = '', **data) -> Outcome:
    return (CheckStatus.PASS if passed else CheckStatus.FAIL), detail, data
