"""
Morphism complexes of type-D structures and nullhomotopy search
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from f2core.complexes import ChainComplex, ChainMap, HomologyResult, complex_homology
from f2core.linalg import eliminate_columns, solve_equations
from torus_algebra.algebra import AlgebraElement, element, multiply

from .exceptions import ChainMapError
from .structures import Component, DMorphism, TypeDStructure

logger = logging.getLogger(__name__)


def component_label(x: str, a: AlgebraElement, y: str) -> str:
    return f'{x}|{a.value}|{y}'


def parse_label(label: str) -> Component:
    x, a, y = label.split('|')
    return x, element(a), y


class MorComplex:
    """
    Mor(D1, D2) on the unreduced basis of single components x -> a.y.

    d(f) = (f followed by delta of D2) + (delta of D1 followed by f), with
    algebra labels multiplied in path order.
    """

    def __init__(self, source: TypeDStructure, target: TypeDStructure):
        self.source = source
        self.target = target
        self.basis: List[Component] = [
            (x, a, y)
            for x, ix in source.generators.items()
            for a in AlgebraElement
            for y, iy in target.generators.items()
            if a.left == ix and a.right == iy
        ]
        labels = [component_label(*c) for c in self.basis]
        differential = {component_label(*c): self._d_component(*c) for c in self.basis}
        self.complex = ChainComplex.from_sets(labels, differential, name=f'Mor({source.name},{target.name})')
        self._homology: Optional[HomologyResult] = None

    def _d_component(self, x: str, a: AlgebraElement, y: str) -> List[str]:
        terms = []
        for b, q in self.target.delta1(y):
            product = multiply(a, b)
            if product is not None:
                terms.append(component_label(x, product, q))
        for p, b in self.source.incoming(x):
            product = multiply(b, a)
            if product is not None:
                terms.append(component_label(p, product, y))
        return terms

    def __len__(self) -> int:
        return len(self.basis)

    def chain(self, morphism: DMorphism) -> FrozenSet[str]:
        return frozenset(component_label(*c) for c in morphism.components)

    def morphism(self, chain, name: str = '') -> DMorphism:
        return DMorphism(self.source, self.target, [parse_label(label) for label in chain], name=name)

    def differential(self, morphism: DMorphism) -> DMorphism:
        result = set()
        for label in self.chain(morphism):
            result ^= self.complex.boundary_set(label)
        return self.morphism(result, name=f'd({morphism.name})')

    def is_cycle(self, morphism: DMorphism) -> bool:
        return self.differential(morphism).is_zero

    def homology(self) -> HomologyResult:
        if self._homology is None:
            self._homology = complex_homology(self.complex)
        return self._homology

    def boundary_vectors(self) -> List[FrozenSet[str]]:
        return [self.complex.boundary_set(label) for label in self.complex.generators
                if self.complex.boundary_set(label)]

    def homology_rank(self, morphisms: Sequence[DMorphism]) -> int:
        """Dimension of the span of the classes of the given cycles"""
        index = {g: i for i, g in enumerate(self.complex.generators)}

        def pack(chain):
            bits = 0
            for g in chain:
                bits ^= 1 << index[g]
            return bits

        boundaries = [pack(b) for b in self.boundary_vectors()]
        base, _ = eliminate_columns(boundaries)
        full, _ = eliminate_columns(boundaries + [pack(self.chain(m)) for m in morphisms])
        return len(full) - len(base)

    def is_boundary(self, morphism: DMorphism) -> bool:
        return self.homology_rank([morphism]) == 0 and self.is_cycle(morphism)

    def spans_homology(self, morphisms: Sequence[DMorphism]) -> bool:
        return all(self.is_cycle(m) for m in morphisms) and \
            self.homology_rank(morphisms) == self.homology().total


def mor_complex(source: TypeDStructure, target: TypeDStructure) -> MorComplex:
    complex_ = MorComplex(source, target)
    complex_.complex.check_d_squared()
    logger.info(f'{complex_.complex.name}: {len(complex_)} basis components')
    return complex_


@dataclass
class EndHomology:
    dimension: int
    representatives: List[DMorphism]
    identity_class_present: bool
    mor: MorComplex = field(repr=False, default=None)

    def as_dict(self) -> Dict:
        return {
            'dimension': self.dimension,
            'identity_class_present': self.identity_class_present,
            'representatives': [m.as_dict() for m in self.representatives],
        }


def homology_representatives(mor: MorComplex) -> List[DMorphism]:
    homology = mor.homology()
    morphisms = []
    for reps in homology.representatives.values():
        for rep in reps:
            morphisms.append(mor.morphism(rep, name=f'c{len(morphisms) + 1}'))
    return morphisms


def end_homology(structure: TypeDStructure) -> EndHomology:
    mor = mor_complex(structure, structure)
    homology = mor.homology()
    identity = DMorphism.identity(structure)
    present = mor.is_cycle(identity) and mor.homology_rank([identity]) == 1
    if structure.generators and not present:
        logger.error(f'Identity of {structure.name} does not define a nonzero class')
    return EndHomology(
        dimension=homology.total,
        representatives=homology_representatives(mor),
        identity_class_present=present or not structure.generators,
        mor=mor,
    )


@dataclass
class NullhomotopyResult:
    nullhomotopic: bool
    homotopy: Optional[ChainMap] = None
    # a cycle of the source whose image is not a boundary
    obstruction: Optional[FrozenSet[str]] = None

    def __bool__(self) -> bool:
        return self.nullhomotopic

    def as_dict(self) -> Dict:
        return {
            'nullhomotopic': self.nullhomotopic,
            'homotopy': self.homotopy.as_dict() if self.homotopy is not None else None,
            'obstruction': sorted(self.obstruction) if self.obstruction else None,
        }


def _obstruction(induced: ChainMap) -> Optional[FrozenSet[str]]:
    """Source cycle z with F(z) not a boundary, if any"""
    source_homology = complex_homology(induced.source)
    target = induced.target
    index = {g: i for i, g in enumerate(target.generators)}

    def pack(chain):
        bits = 0
        for g in chain:
            bits ^= 1 << index[g]
        return bits

    boundaries = [pack(target.boundary_set(g)) for g in target.generators if target.boundary_set(g)]
    base, _ = eliminate_columns(boundaries)
    for reps in source_homology.representatives.values():
        for rep in reps:
            full, _ = eliminate_columns(boundaries + [pack(induced.apply(rep))])
            if len(full) > len(base):
                return rep
    return None


def is_nullhomotopic(induced: ChainMap) -> NullhomotopyResult:
    """
    Decide F = d H + H d for a chain map F of F2 complexes.

    Unknowns H(u, v) for u in the source and v in the target; one equation per
    (u, w). Returns the homotopy when it exists, otherwise an obstruction cycle.

    Raises:
        ChainMapError: F does not commute with the differentials
    """
    offending = induced.chain_map_failure()
    if offending is not None:
        raise ChainMapError(f'not a chain map at {offending}', generator=offending)

    source, target = induced.source, induced.target
    unknowns = [(u, v) for u in source.generators for v in target.generators]
    equations: Dict[Tuple[str, str], List[Tuple[str, str]]] = {}
    for u in source.generators:
        for v in target.generators:
            for w in target.boundary_set(v):
                equations.setdefault((u, w), []).append((u, v))
        for v in source.boundary_set(u):
            for w in target.generators:
                equations.setdefault((u, w), []).append((v, w))
    rhs = [(u, w) for u, ws in induced.images.items() for w in ws]

    solution = solve_equations(equations, unknowns, rhs)
    if not solution.feasible:
        obstruction = _obstruction(induced)
        logger.info(f'{source.name} -> {target.name}: map is not nullhomotopic')
        return NullhomotopyResult(nullhomotopic=False, obstruction=obstruction)

    images: Dict[str, set] = {}
    for u, v in solution.solution:
        images.setdefault(u, set()).add(v)
    homotopy = ChainMap(source, target, images)
    logger.info(f'{source.name} -> {target.name}: nullhomotopy with {len(solution.solution)} entries')
    return NullhomotopyResult(nullhomotopic=True, homotopy=homotopy)


def verify_homotopy(induced: ChainMap, homotopy: ChainMap) -> bool:
    """Independent check of F = d H + H d"""
    for u in induced.source.generators:
        value = set(homotopy.target_boundary(homotopy.image(u)))
        value ^= homotopy.apply(induced.source.boundary_set(u))
        if frozenset(value) != induced.image(u):
            return False
    return True
