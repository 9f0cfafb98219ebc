"""
Axiom checks for horizontal almost iota_K-complexes
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from django.db import models

from bordered.exceptions import ChainMapError
from bordered.morphisms import is_nullhomotopic
from f2core.complexes import ChainMap, complex_homology, cycle_representatives
from f2core.linalg import rank_kernel_image, solve_equations

from .complexes import IotaComplex, phi_is_chain_map, swap
from .systems import (add_chain_equations, add_hat_map_terms, add_homotopy_terms, hat_part,
                      homotopy_variables, map_variables, solution_map)

logger = logging.getLogger(__name__)


class Axiom(models.TextChoices):
    LOCALIZED_RANK = 'localized_rank', 'U-localized homology has rank one'
    SKEW_GRADED = 'skew_graded', 'iota swaps the two gradings'
    IOTA_EQUIVALENCE = 'iota_equivalence', 'iota is a homotopy equivalence of the hat complex'
    PHI_IOTA_COMMUTE = 'phi_iota_commute', 'Phi iota Phi iota ~ iota Phi iota Phi'
    IOTA_SQUARED = 'iota_squared', 'iota^2 ~ 1 + Phi iota Phi iota'
    LIFT = 'lift', 'iota Phi iota lifts to a chain map over F2[U]'


@dataclass
class AxiomResult:
    passed: bool
    detail: str = ''
    witness: Optional[Dict] = None

    def as_dict(self) -> Dict:
        return {'passed': self.passed, 'detail': self.detail, 'witness': self.witness}


@dataclass
class AxiomReport:
    subject: str
    results: Dict[str, AxiomResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    @property
    def failures(self) -> List[str]:
        return [name for name, r in self.results.items() if not r.passed]

    def as_dict(self) -> Dict:
        return {
            'subject': self.subject,
            'axioms': {name: r.as_dict() for name, r in self.results.items()},
        }


def localized_rank(complex_: IotaComplex) -> int:
    localized = complex_.complex.localized()
    rank = rank_kernel_image(localized.boundary_matrix()).rank
    return len(localized) - 2 * rank


def check_localized_rank(complex_: IotaComplex) -> AxiomResult:
    rank = localized_rank(complex_)
    return AxiomResult(rank == 1, f'localized homology rank {rank}')


def check_skew_graded(complex_: IotaComplex) -> AxiomResult:
    if not complex_.is_graded:
        return AxiomResult(False, 'complex is not bigraded')
    for x, ys in complex_.iota.items():
        for y in ys:
            if complex_.degree(y) != swap(complex_.degree(x)):
                return AxiomResult(False, f'iota({x}) contains {y} of bidegree {complex_.degree(y)}, '
                                          f'expected {swap(complex_.degree(x))}')
    return AxiomResult(True)


def check_iota_equivalence(complex_: IotaComplex) -> AxiomResult:
    iota = complex_.iota_map()
    offending = iota.chain_map_failure()
    if offending is not None:
        return AxiomResult(False, f'iota does not commute with the differential at {offending}')
    hat = complex_.hat
    homology = complex_homology(hat)
    classes = [rep for reps in homology.representatives.values() for rep in reps]
    boundaries = [hat.boundary_set(g) for g in hat.generators if hat.boundary_set(g)]
    images = [iota.apply(rep) for rep in classes]
    independent = cycle_representatives(images, boundaries, hat.generators)
    if len(independent) != len(classes):
        return AxiomResult(False, f'iota has rank {len(independent)} on a {len(classes)}-dimensional homology')
    return AxiomResult(True, f'iota is an isomorphism on {len(classes)}-dimensional homology')


def _homotopic_to_zero(difference: ChainMap, label: str) -> AxiomResult:
    try:
        result = is_nullhomotopic(difference)
    except ChainMapError as e:
        return AxiomResult(False, f'{label} is not a chain map: {e.message}')
    if result.nullhomotopic:
        return AxiomResult(True, witness={'homotopy': result.homotopy.as_dict()})
    return AxiomResult(False, f'{label} is not nullhomotopic',
                       witness={'obstruction': sorted(result.obstruction) if result.obstruction else None})


def check_phi_iota_commute(complex_: IotaComplex) -> AxiomResult:
    iota, phi = complex_.iota_map(), complex_.phi_hat()
    left = iota.then(phi).then(iota).then(phi)
    right = phi.then(iota).then(phi).then(iota)
    return _homotopic_to_zero(left + right, 'Phi iota Phi iota + iota Phi iota Phi')


def check_iota_squared(complex_: IotaComplex) -> AxiomResult:
    iota, phi = complex_.iota_map(), complex_.phi_hat()
    difference = iota.then(iota) + ChainMap.identity(complex_.hat) + iota.then(phi).then(iota).then(phi)
    return _homotopic_to_zero(difference, 'iota^2 + 1 + Phi iota Phi iota')


LIFT_SHIFT = (-1, 1)


def find_lift(complex_: IotaComplex):
    """
    Chain map f over F2[U] of bidegree (-1, +1) whose U = 0 part is homotopic
    to iota Phi iota, with the homotopy; None when none exists.
    """
    c, hat = complex_.complex, complex_.hat
    iota, phi = complex_.iota_map(), complex_.phi_hat()
    target = iota.then(phi).then(iota)

    f_vars = map_variables(c, c, LIFT_SHIFT)
    h_vars = homotopy_variables(hat, hat, (LIFT_SHIFT[0] + 1, LIFT_SHIFT[1] + 1))
    equations: Dict = {}
    add_chain_equations(equations, c, c, f_vars)
    add_hat_map_terms(equations, f_vars)
    add_homotopy_terms(equations, hat, hat, h_vars)
    rhs = [('hat', x, y) for x in hat.generators for y in target.image(x)]

    solution = solve_equations(equations, f_vars + h_vars, rhs)
    if not solution.feasible:
        return None
    lift = solution_map(solution.solution, c)
    return lift, hat_part(lift, hat, hat)


def check_lift(complex_: IotaComplex) -> AxiomResult:
    if not complex_.is_graded:
        return AxiomResult(False, 'complex is not bigraded')
    found = find_lift(complex_)
    if found is None:
        return AxiomResult(False, 'no chain map of bidegree (-1, 1) lifts iota Phi iota')
    lift, _ = found
    return AxiomResult(True, witness={
        'lift': {x: {y: str(c) for y, c in terms.items()} for x, terms in lift.items() if terms},
    })


CHECKS = {
    Axiom.LOCALIZED_RANK: check_localized_rank,
    Axiom.SKEW_GRADED: check_skew_graded,
    Axiom.IOTA_EQUIVALENCE: check_iota_equivalence,
    Axiom.PHI_IOTA_COMMUTE: check_phi_iota_commute,
    Axiom.IOTA_SQUARED: check_iota_squared,
    Axiom.LIFT: check_lift,
}


def check_axioms(complex_: IotaComplex) -> AxiomReport:
    """Run every axiom check; the report names each failing axiom"""
    report = AxiomReport(subject=complex_.name)
    complex_.complex.check_d_squared()
    if not phi_is_chain_map(complex_.complex):
        logger.warning(f'{complex_.name}: Phi is not a chain map')
    for axiom, check in CHECKS.items():
        report.results[axiom.value] = check(complex_)
    if report.passed:
        logger.info(f'{complex_.name}: all axioms hold')
    else:
        logger.warning(f'{complex_.name}: failing axioms {", ".join(report.failures)}')
    return report
