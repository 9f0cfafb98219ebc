"""
Almost iota_K-local maps and the induced partial order
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional

from django.conf import settings
from django.db import models

from f2core.complexes import ChainComplex, ChainMap, complex_homology
from f2core.linalg import solve_equations
from f2core.polynomials import Coefficient

from .complexes import IotaComplex, swap, trivial_complex
from .exceptions import IotaError, UngradedComplexError
from .systems import (add_chain_equations, add_hat_map_terms, add_homotopy_terms, capped_candidates, hat_part,
                      homotopy_variables, is_polynomial_chain_map, map_variables, solution_homotopy,
                      solution_map)

logger = logging.getLogger(__name__)

LOCALITY_EQUATION = ('local',)


class Comparison(models.TextChoices):
    LESS = 'less', 'less'
    GREATER = 'greater', 'greater'
    EQUAL = 'equal', 'equal'
    INCOMPARABLE = 'incomparable', 'incomparable'


@dataclass
class LocalMapResult:
    found: bool
    source: str
    target: str
    # f(x) = sum of U^k y
    map: Optional[Dict[str, Dict[str, Coefficient]]] = None
    homotopy: Optional[ChainMap] = None
    localized_cycle: FrozenSet[str] = frozenset()
    localized_cocycle: FrozenSet[str] = frozenset()
    unknowns: int = 0
    equations: int = 0
    verified: bool = False
    # no admissible term was dropped by BFX_MAX_U_POWER
    complete: bool = True

    def __bool__(self) -> bool:
        return self.found

    def as_dict(self) -> Dict:
        return {
            'found': self.found,
            'source': self.source,
            'target': self.target,
            'map': {x: {y: str(c) for y, c in terms.items()} for x, terms in (self.map or {}).items() if terms},
            'homotopy': self.homotopy.as_dict() if self.homotopy is not None else None,
            'localized_cycle': sorted(self.localized_cycle),
            'localized_cocycle': sorted(self.localized_cocycle),
            'unknowns': self.unknowns,
            'equations': self.equations,
            'verified': self.verified,
            'complete': self.complete,
        }


def _require_graded(complex_: IotaComplex) -> None:
    if not complex_.is_graded:
        raise UngradedComplexError(
            f'{complex_.name}: local map search needs bidegrees to bound U-powers', complex_name=complex_.name
        )


def _single_class(complex_: ChainComplex) -> FrozenSet[str]:
    homology = complex_homology(complex_)
    reps = [rep for group in homology.representatives.values() for rep in group]
    if len(reps) != 1:
        raise IotaError(f'{complex_.name}: localized homology has rank {len(reps)}, expected 1')
    return reps[0]


def localized_generator(complex_: IotaComplex) -> FrozenSet[str]:
    """A cycle generating the U-localized homology"""
    return _single_class(complex_.complex.localized())


def localized_cogenerator(complex_: IotaComplex) -> FrozenSet[str]:
    """A cocycle pairing to one with the localized generator"""
    localized = complex_.complex.localized()
    transposed: Dict[str, List[str]] = {g: [] for g in localized.generators}
    for x, y, _ in localized.arrows():
        transposed[y].append(x)
    return _single_class(ChainComplex.from_sets(localized.generators, transposed, name=f'{localized.name}*'))


def exists_almost_local_map(source: IotaComplex, target: IotaComplex) -> LocalMapResult:
    """
    Search for f: source -> target of bidegree (0, 0), U-equivariant, with
    f iota_source ~ iota_target f on the hat complexes and f an isomorphism
    on localized homology.

    All conditions are linear over F2 once the localized generator and
    cogenerator are fixed, so one affine solve decides existence.

    Raises:
        UngradedComplexError: either complex lacks bidegrees
    """
    _require_graded(source)
    _require_graded(target)
    c, d = source.complex, target.complex
    c_hat, d_hat = source.hat, target.hat

    f_vars = map_variables(c, d, (0, 0))
    # H raises swapped bidegree by (1, 1)
    h_vars = [
        v for v in homotopy_variables(c_hat, d_hat, None)
        if d_hat.degree(v[2]) == tuple(a + 1 for a in swap(c_hat.degree(v[1])))
    ]
    equations: Dict = {}
    add_chain_equations(equations, c, d, f_vars)
    add_hat_map_terms(equations, f_vars, before=source.iota_map())
    add_hat_map_terms(equations, f_vars, after=target.iota_map())
    add_homotopy_terms(equations, c_hat, d_hat, h_vars)

    cycle = localized_generator(source)
    cocycle = localized_cogenerator(target)
    equations[LOCALITY_EQUATION] = [v for v in f_vars if v[1] in cycle and v[2] in cocycle]

    solution = solve_equations(equations, f_vars + h_vars, [LOCALITY_EQUATION])
    result = LocalMapResult(
        found=solution.feasible, source=source.name, target=target.name,
        localized_cycle=cycle, localized_cocycle=cocycle,
        unknowns=len(f_vars) + len(h_vars), equations=len(equations),
        complete=capped_candidates(c, d, (0, 0)) == 0,
    )
    if not result.complete:
        logger.warning(f'{source.name} -> {target.name}: U-powers above BFX_MAX_U_POWER left out of the search')
    if not solution.feasible:
        logger.info(f'No almost local map {source.name} -> {target.name}')
        return result

    result.map = solution_map(solution.solution, c)
    result.homotopy = solution_homotopy(solution.solution, c_hat, d_hat)
    result.verified = verify_local_map(source, target, result.map, result.homotopy)
    if not result.verified:
        logger.error(f'Local map {source.name} -> {target.name} failed independent verification')
    logger.info(f'Almost local map {source.name} -> {target.name} found')
    return result


def verify_local_map(source: IotaComplex, target: IotaComplex, images: Dict[str, Dict[str, Coefficient]],
                     homotopy: ChainMap) -> bool:
    """Recheck chain map, bidegree, iota square and locality without the solver"""
    c, d = source.complex, target.complex
    for x, terms in images.items():
        for y, coefficient in terms.items():
            for u, v in coefficient.terms:
                if v or (d.degree(y)[0] - 2 * u, d.degree(y)[1]) != c.degree(x):
                    return False
    if not is_polynomial_chain_map(images, c, d):
        return False

    f_hat = hat_part(images, source.hat, target.hat)
    square = source.iota_map().then(f_hat) + f_hat.then(target.iota_map())
    for x in source.hat.generators:
        value = set(homotopy.target_boundary(homotopy.image(x)))
        value ^= homotopy.apply(source.hat.boundary_set(x))
        if frozenset(value) != square.image(x):
            return False

    cycle = localized_generator(source)
    cocycle = localized_cogenerator(target)
    pairing = 0
    for x in cycle:
        for y, coefficient in images.get(x, {}).items():
            if y in cocycle:
                pairing ^= coefficient.evaluate_at_one()
    return pairing == 1


@dataclass
class ComparisonResult:
    relation: str
    forward: LocalMapResult
    backward: LocalMapResult

    def as_dict(self) -> Dict:
        return {
            'relation': self.relation,
            'forward': self.forward.as_dict(),
            'backward': self.backward.as_dict(),
        }


def compare(first: IotaComplex, second: IotaComplex) -> ComparisonResult:
    """
    Order of local equivalence classes: a map first -> second means
    first <= second. Both directions are searched concurrently.
    """
    _require_graded(first)
    _require_graded(second)
    workers = max(1, min(2, getattr(settings, 'BFX_THREADS', 2)))
    with ThreadPoolExecutor(max_workers=workers) as executor:
        forward_future = executor.submit(exists_almost_local_map, first, second)
        backward_future = executor.submit(exists_almost_local_map, second, first)
        forward, backward = forward_future.result(), backward_future.result()

    if forward.found and backward.found:
        relation = Comparison.EQUAL
    elif forward.found:
        relation = Comparison.LESS
    elif backward.found:
        relation = Comparison.GREATER
    else:
        relation = Comparison.INCOMPARABLE
    logger.info(f'{first.name} vs {second.name}: {relation}')
    return ComparisonResult(relation.value, forward, backward)


def is_locally_trivial(complex_: IotaComplex) -> bool:
    return compare(complex_, trivial_complex()).relation == Comparison.EQUAL
