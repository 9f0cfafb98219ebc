"""
Splitting of the Whitehead double complex into a local part and unit boxes
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List

from f2core.polynomials import format_monomial

from .axioms import localized_rank
from .complexes import CFKComplex, IotaComplex, elements_in_bidegree, horizontal_truncation, swap
from .local_maps import Comparison, compare

logger = logging.getLogger(__name__)


@dataclass
class SplittingReport:
    subject: str
    checks: Dict[str, bool] = field(default_factory=dict)
    notes: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, passed: bool, note: str = '') -> None:
        self.checks[name] = passed
        if note:
            self.notes[name] = note
        if not passed:
            logger.warning(f'{self.subject}: {name} failed {note}')

    def as_dict(self) -> Dict:
        return {'subject': self.subject, 'checks': self.checks, 'notes': self.notes}


def _closed(cfk: CFKComplex, generators: Iterable[str]) -> bool:
    keep = set(generators)
    for x in keep:
        if any(y not in keep for y in cfk.complex.boundary(x)):
            return False
        if any(y not in keep for y in cfk.iota[x]):
            return False
    return True


def _monomial_name(x: str, i: int, j: int) -> str:
    return f'{format_monomial((i, j))}.{x}' if i or j else x


def correction_terms(cfk: CFKComplex, generator: str, v_power: int = 1) -> List[str]:
    """
    Elements c (as U^i V^j x) such that V^v_power c could be added to iota(generator)
    without breaking skew-grading.
    """
    gr_u, gr_v = swap(cfk.degree(generator))
    return [_monomial_name(x, i, j) for x, i, j in elements_in_bidegree(cfk, (gr_u, gr_v + 2 * v_power))]


def verify_wh_double_splitting(cfk: CFKComplex, summand: Iterable[str], local_model: IotaComplex,
                               rejected_generator: str = 'beta1') -> SplittingReport:
    """
    (a) d^2 = 0 and homogeneity; (b) the generators outside summand span an
    iota-invariant summand that dies after localization; (c) the horizontal
    truncation of summand is locally equivalent to local_model. Also records
    that iota(rejected_generator) admits no V-correction.
    """
    report = SplittingReport(subject=cfk.name)
    complex_ = cfk.complex
    report.record('d_squared', complex_.d_squared_failure() is None)
    failure = complex_.homogeneity_failure()
    report.record('homogeneous', failure is None, f'arrow {failure}' if failure else '')

    keep = [g for g in complex_.generators if g in set(summand)]
    rest = [g for g in complex_.generators if g not in set(summand)]
    split = _closed(cfk, keep) and _closed(cfk, rest)
    report.record('iota_splits', split)
    if split:
        boxes = horizontal_truncation(cfk.subcomplex(rest, name=f'{cfk.name}/boxes'))
        rank = localized_rank(boxes)
        report.record('boxes_acyclic', rank == 0, f'localized rank {rank}')

        remainder = horizontal_truncation(cfk.subcomplex(keep, name=f'{cfk.name}/local'))
        relation = compare(remainder, local_model).relation
        report.record('locally_equivalent', relation == Comparison.EQUAL, f'{remainder.name} vs {local_model.name}: {relation}')

    if rejected_generator in complex_:
        candidates = correction_terms(cfk, rejected_generator)
        report.record('no_v_correction', not candidates,
                      f'candidates {candidates}' if candidates else 'no element in the required bidegree')
    return report
