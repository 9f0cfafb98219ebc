"""
Free chain complexes over F2, F2[U] and F2[U,V], and their homology
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from django.conf import settings
from django.db import models

from .exceptions import StructuralIntegrityError
from .linalg import SparseMatrix, eliminate_columns, rank_kernel_image
from .polynomials import ONE, ZERO, Coefficient, add_term

logger = logging.getLogger(__name__)

Bidegree = Tuple[int, int]


class Ring(models.TextChoices):
    F2 = 'F2', 'F2'
    F2_U = 'F2[U]', 'F2[U]'
    F2_UV = 'F2[U,V]', 'F2[U,V]'


# Bidegree shift of multiplication by U and by V
U_DEGREE: Bidegree = (-2, 0)
V_DEGREE: Bidegree = (0, -2)
DIFFERENTIAL_DEGREE: Bidegree = (-1, -1)


def monomial_degree(u: int, v: int) -> Bidegree:
    return (U_DEGREE[0] * u + V_DEGREE[0] * v, U_DEGREE[1] * u + V_DEGREE[1] * v)


class ChainComplex:
    """
    A finitely generated free complex with polynomial coefficients.

    differential maps a generator to {target generator: Coefficient}. Gradings
    are optional; when present they are (gr_U, gr_V) bidegrees and the
    differential is checked to be homogeneous of degree (-1, -1).
    """

    def __init__(self, generators: Sequence[str],
                 differential: Optional[Mapping[str, Mapping[str, Coefficient]]] = None,
                 ring: str = Ring.F2,
                 gradings: Optional[Mapping[str, Bidegree]] = None,
                 name: str = ''):
        self.generators: Tuple[str, ...] = tuple(generators)
        self.ring = Ring(ring)
        self.name = name
        self._generator_set = frozenset(self.generators)
        if len(self._generator_set) != len(self.generators):
            raise StructuralIntegrityError(f'Duplicate generator in {name or "complex"}')

        self._differential: Dict[str, Dict[str, Coefficient]] = {}
        for x, terms in (differential or {}).items():
            if x not in self._generator_set:
                raise StructuralIntegrityError(f'Undeclared generator {x}', generator=x)
            stored = {}
            for y, coefficient in terms.items():
                if y not in self._generator_set:
                    raise StructuralIntegrityError(f'Undeclared generator {y} in boundary of {x}', generator=x)
                self._check_ring(x, coefficient)
                if coefficient:
                    stored[y] = coefficient
            if stored:
                self._differential[x] = stored

        self.gradings: Optional[Dict[str, Bidegree]] = None
        if gradings is not None:
            missing = [g for g in self.generators if g not in gradings]
            if missing:
                raise StructuralIntegrityError(f'Missing bidegree for {missing[0]}', generator=missing[0])
            self.gradings = {g: tuple(gradings[g]) for g in self.generators}

    @classmethod
    def from_sets(cls, generators: Sequence[str], differential: Mapping[str, Iterable[str]],
                  name: str = '') -> 'ChainComplex':
        """F2 complex from {x: targets}; repeated targets cancel"""
        terms = {}
        for x, targets in differential.items():
            accumulator: Dict[str, Coefficient] = {}
            for y in targets:
                add_term(accumulator, y, ONE)
            terms[x] = accumulator
        return cls(generators, terms, Ring.F2, name=name)

    def _check_ring(self, x: str, coefficient: Coefficient) -> None:
        if self.ring == Ring.F2 and not coefficient.is_constant:
            raise StructuralIntegrityError(f'Polynomial coefficient {coefficient} over F2', generator=x)
        if self.ring == Ring.F2_U and coefficient.max_v_power:
            raise StructuralIntegrityError(f'V appears in {coefficient} over F2[U]', generator=x)

    def __len__(self) -> int:
        return len(self.generators)

    def __contains__(self, generator: str) -> bool:
        return generator in self._generator_set

    def __repr__(self) -> str:
        return f'ChainComplex({self.name or "?"}, {self.ring}, {len(self.generators)} generators)'

    def boundary(self, x: str) -> Dict[str, Coefficient]:
        return dict(self._differential.get(x, {}))

    def boundary_set(self, x: str) -> FrozenSet[str]:
        """Targets of x with coefficient 1 (F2 complexes)"""
        return frozenset(y for y, c in self._differential.get(x, {}).items() if c == ONE)

    def arrows(self) -> Iterable[Tuple[str, str, Coefficient]]:
        for x in self.generators:
            for y, coefficient in self._differential.get(x, {}).items():
                yield x, y, coefficient

    def degree(self, x: str) -> Optional[Bidegree]:
        return self.gradings[x] if self.gradings is not None else None

    @property
    def is_graded(self) -> bool:
        return self.gradings is not None

    def boundary_matrix(self) -> SparseMatrix:
        return SparseMatrix(self.generators, self.generators, self._differential)

    def apply(self, chain: Mapping[str, Coefficient]) -> Dict[str, Coefficient]:
        result: Dict[str, Coefficient] = {}
        for x, coefficient in chain.items():
            for y, c in self._differential.get(x, {}).items():
                add_term(result, y, coefficient * c)
        return result

    def d_squared_failure(self) -> Optional[str]:
        """First generator x with d(d(x)) != 0, or None"""
        for x in self.generators:
            if self.apply(self._differential.get(x, {})):
                return x
        return None

    def check_d_squared(self) -> None:
        offending = self.d_squared_failure()
        if offending is not None:
            raise StructuralIntegrityError(
                f'd^2 != 0 on {offending} in {self.name or "complex"}', generator=offending
            )

    def homogeneity_failure(self) -> Optional[Tuple[str, str]]:
        """First arrow x -> c.y that is not of bidegree (-1, -1)"""
        if self.gradings is None:
            return None
        for x, y, coefficient in self.arrows():
            for u, v in coefficient.terms:
                shift = monomial_degree(u, v)
                target = (self.gradings[y][0] + shift[0], self.gradings[y][1] + shift[1])
                expected = (self.gradings[x][0] + DIFFERENTIAL_DEGREE[0],
                            self.gradings[x][1] + DIFFERENTIAL_DEGREE[1])
                if target != expected:
                    return x, y
        return None

    def _specialized(self, transform, ring: str, gradings: bool, suffix: str) -> 'ChainComplex':
        terms = {x: {y: transform(c) for y, c in ts.items()} for x, ts in self._differential.items()}
        return ChainComplex(self.generators, terms, ring,
                            gradings=self.gradings if gradings else None,
                            name=f'{self.name}{suffix}')

    def hat(self) -> 'ChainComplex':
        """Truncation U = V = 0, an F2 complex (bigraded if self is)"""
        return self._specialized(Coefficient.hat, Ring.F2, True, '^')

    def localized(self) -> 'ChainComplex':
        """Set U = V = 1; computes the localized tower up to grading"""
        return self._specialized(lambda c: ONE if c.evaluate_at_one() else ZERO, Ring.F2, False, '[U=1]')

    def horizontal(self) -> 'ChainComplex':
        """V = 0 truncation of an F2[U,V] complex, over F2[U]"""
        return self._specialized(Coefficient.at_v_zero, Ring.F2_U, True, '|V=0')

    def subcomplex(self, generators: Iterable[str], name: str = '') -> 'ChainComplex':
        """Restriction to a set of generators closed under the differential"""
        keep = [g for g in self.generators if g in set(generators)]
        keep_set = set(keep)
        terms = {}
        for x in keep:
            targets = self._differential.get(x, {})
            if any(y not in keep_set for y in targets):
                raise StructuralIntegrityError(f'Generator set not closed under d at {x}', generator=x)
            terms[x] = targets
        gradings = {g: self.gradings[g] for g in keep} if self.gradings else None
        return ChainComplex(keep, terms, self.ring, gradings=gradings, name=name or self.name)


@dataclass(frozen=True)
class ChainMap:
    """F2-linear map between F2 complexes, stored on generators"""

    source: ChainComplex
    target: ChainComplex
    images: Mapping[str, FrozenSet[str]] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for x, ys in self.images.items():
            if x not in self.source:
                raise StructuralIntegrityError(f'Map defined on unknown generator {x}', generator=x)
            ys = frozenset(ys)
            for y in ys:
                if y not in self.target:
                    raise StructuralIntegrityError(f'Map sends {x} to unknown generator {y}', generator=x)
            if ys:
                cleaned[x] = ys
        object.__setattr__(self, 'images', cleaned)

    def image(self, x: str) -> FrozenSet[str]:
        return self.images.get(x, frozenset())

    def apply(self, chain: Iterable[str]) -> FrozenSet[str]:
        result = set()
        for x in chain:
            result ^= self.image(x)
        return frozenset(result)

    def __add__(self, other: 'ChainMap') -> 'ChainMap':
        keys = set(self.images) | set(other.images)
        return ChainMap(self.source, self.target, {x: self.image(x) ^ other.image(x) for x in keys})

    def then(self, other: 'ChainMap') -> 'ChainMap':
        """Composite: first self, then other"""
        return ChainMap(self.source, other.target, {x: other.apply(ys) for x, ys in self.images.items()})

    @classmethod
    def identity(cls, complex_: ChainComplex) -> 'ChainMap':
        return cls(complex_, complex_, {x: frozenset({x}) for x in complex_.generators})

    @classmethod
    def zero(cls, source: ChainComplex, target: ChainComplex) -> 'ChainMap':
        return cls(source, target, {})

    @property
    def is_zero(self) -> bool:
        return not self.images

    def chain_map_failure(self) -> Optional[str]:
        """First source generator where d F + F d != 0"""
        for x in self.source.generators:
            lhs = set(self.target_boundary(self.image(x)))
            lhs ^= self.apply(self.source.boundary_set(x))
            if lhs:
                return x
        return None

    def target_boundary(self, chain: Iterable[str]) -> FrozenSet[str]:
        result = set()
        for y in chain:
            result ^= self.target.boundary_set(y)
        return frozenset(result)

    def as_dict(self) -> Dict[str, List[str]]:
        return {x: sorted(ys) for x, ys in self.images.items()}


@dataclass(frozen=True)
class HomologyResult:
    dimensions: Dict[Optional[Bidegree], int]
    representatives: Dict[Optional[Bidegree], List[FrozenSet[str]]]
    oracle_checked: bool = False

    @property
    def total(self) -> int:
        return sum(self.dimensions.values())

    def as_dict(self) -> Dict:
        return {
            'total': self.total,
            'dimensions': {str(k): v for k, v in self.dimensions.items()},
            'representatives': {
                str(k): [sorted(r) for r in reps] for k, reps in self.representatives.items()
            },
            'oracle_checked': self.oracle_checked,
        }


def cycle_representatives(cycles: Sequence[FrozenSet[str]], boundaries: Sequence[FrozenSet[str]],
                          basis: Sequence[str]) -> List[FrozenSet[str]]:
    """Cycles independent modulo the span of boundaries"""
    index = {g: i for i, g in enumerate(basis)}

    def pack(chain):
        bits = 0
        for g in chain:
            bits ^= 1 << index[g]
        return bits

    packed_boundaries = [pack(b) for b in boundaries]
    pivots, _ = eliminate_columns(packed_boundaries)
    start = len(pivots)
    representatives = []
    for cycle in cycles:
        vector = pack(cycle)
        while vector:
            low = vector & -vector
            hit = pivots.get(low)
            if hit is None:
                pivots[low] = (vector, 0)
                representatives.append(cycle)
                break
            vector ^= hit[0]
    if len(pivots) - start != len(representatives):
        raise StructuralIntegrityError('Representative selection lost track of pivots')
    return representatives


def complex_homology(complex_: ChainComplex, oracle: Optional[bool] = None) -> HomologyResult:
    """
    Homology of an F2 complex, per bidegree when gradings are present.

    Args:
        complex_: an F2 complex; d^2 = 0 is checked first
        oracle: re-verify with the dense reference (default: when the
            complex has at most BFX_ORACLE_LIMIT generators)

    Returns:
        HomologyResult with dimensions and representative cycles
    """
    if complex_.ring != Ring.F2:
        raise StructuralIntegrityError(f'complex_homology expects an F2 complex, got {complex_.ring}')
    complex_.check_d_squared()

    matrix = complex_.boundary_matrix()
    groups: Dict[Optional[Bidegree], List[str]] = {}
    for g in complex_.generators:
        groups.setdefault(complex_.degree(g), []).append(g)

    result = rank_kernel_image(matrix)
    dimensions: Dict[Optional[Bidegree], int] = {}
    representatives: Dict[Optional[Bidegree], List[FrozenSet[str]]] = {}
    for degree, members in groups.items():
        member_set = set(members)
        block = matrix.submatrix(complex_.generators, members)
        cycles = rank_kernel_image(block).kernel
        # image vectors of a homogeneous differential lie in a single degree
        boundaries = [b for b in result.image if b <= member_set] if complex_.is_graded else result.image
        reps = cycle_representatives(cycles, boundaries, complex_.generators)
        dimensions[degree] = len(reps)
        representatives[degree] = reps

    total = sum(dimensions.values())
    if total != len(complex_.generators) - 2 * result.rank:
        raise StructuralIntegrityError(
            f'Homology of {complex_.name or "complex"} is not dim ker - rank; differential not homogeneous?'
        )

    limit = getattr(settings, 'BFX_ORACLE_LIMIT', 200)
    checked = False
    if oracle or (oracle is None and len(complex_.generators) <= limit):
        from .oracle import homology_dimensions
        reference = homology_dimensions(complex_)
        if reference != dimensions:
            logger.error(f'Oracle disagreement on {complex_.name}: sparse={dimensions} dense={reference}')
            raise StructuralIntegrityError(
                f'Sparse and dense homology disagree on {complex_.name or "complex"}',
                details={'sparse': str(dimensions), 'dense': str(reference)},
            )
        checked = True

    logger.info(f'Homology of {complex_.name or "complex"}: total {total} over {len(complex_.generators)} generators')
    return HomologyResult(dimensions=dimensions, representatives=representatives, oracle_checked=checked)
