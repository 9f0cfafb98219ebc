"""
Relative gradings on type-D structures and degrees of morphisms
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional

import networkx as nx

from bordered.exceptions import StructureValidationError
from bordered.graphs import to_graph
from bordered.morphisms import MorComplex, mor_complex, parse_label
from bordered.structures import DMorphism, TypeDStructure
from f2core.complexes import cycle_representatives
from f2core.linalg import rank_kernel_image
from torus_algebra.algebra import element

from .group import IDENTITY, LAMBDA, GradingElement, Subgroup, chord_gradings

logger = logging.getLogger(__name__)


@dataclass
class RelativeGrading:
    """
    gr(x) for every generator, fixed up to a shift per connected component.
    Every arrow x -> a.y satisfies gr(x) = lambda^-1 gr(a) gr(y) modulo the
    relation subgroup of its component.
    """

    structure: TypeDStructure
    values: Dict[str, GradingElement]
    component: Dict[str, int]
    relations: List[Subgroup]
    chords: Dict = field(repr=False, default_factory=dict)

    def __getitem__(self, x: str) -> GradingElement:
        return self.values[x]

    def subgroup(self, x: str) -> Subgroup:
        return self.relations[self.component[x]]

    def component_degree(self, x: str, a, y: str, target: Optional['RelativeGrading'] = None) -> GradingElement:
        """Degree gr(x)^-1 gr(a) gr(y) of the component x -> a.y"""
        target = target or self
        return self.values[x].inverse() * self.chords[a] * target.values[y]

    def degree_subgroup(self, x: str, y: str, target: Optional['RelativeGrading'] = None) -> Subgroup:
        """
        Subgroup deciding when a component x -> a.y has degree zero: the
        relation subgroup when both ends share a component, otherwise the
        join of both relation subgroups and their commutators.
        """
        target = target or self
        source_group = self.subgroup(x)
        target_group = target.subgroup(y)
        if target is self and self.component[x] == self.component[y]:
            return source_group
        return source_group.double_coset(IDENTITY, target_group)

    def satisfies_relations(self) -> bool:
        for x, a, y in self.structure.arrows:
            predicted = LAMBDA.inverse() * self.chords[a] * self.values[y]
            if not self.subgroup(x).same_coset(self.values[x], predicted):
                return False
        return True

    def as_dict(self) -> Dict:
        return {
            'values': {x: g.as_list() for x, g in self.values.items()},
            'relations': [[g.as_list() for g in s.generators] for s in self.relations],
        }


def solve_gradings(structure: TypeDStructure, convention: Optional[str] = None) -> RelativeGrading:
    """
    Breadth-first propagation from one base generator per component.

    Tree arrows fix gradings; every other arrow contributes its loop
    discrepancy gr(x)^-1 lambda^-1 gr(a) gr(y) to the relation subgroup.
    Grading hints, when given, seed their component and are checked.
    """
    chords = chord_gradings(convention)
    graph = to_graph(structure)
    undirected = nx.Graph(graph.to_undirected())
    order = {g: i for i, g in enumerate(structure.generators)}
    hints = {g: GradingElement(*v) for g, v in structure.grading_hints.items()}

    values: Dict[str, GradingElement] = {}
    component: Dict[str, int] = {}
    relations: List[Subgroup] = []

    for index, members in enumerate(sorted(nx.connected_components(undirected),
                                           key=lambda c: min(order[g] for g in c))):
        seeded = [g for g in members if g in hints]
        root = min(seeded or members, key=order.get)
        values[root] = hints.get(root, IDENTITY)
        for u, v in nx.bfs_edges(undirected, root, sort_neighbors=lambda ns: sorted(ns, key=order.get)):
            if graph.has_edge(u, v):
                label = graph.get_edge_data(u, v)[0]['label']
                values[v] = chords[element(label)].inverse() * LAMBDA * values[u]
            else:
                label = graph.get_edge_data(v, u)[0]['label']
                values[v] = LAMBDA.inverse() * chords[element(label)] * values[u]
        for g in members:
            component[g] = index

        loops = []
        for x, a, y in structure.arrows:
            if component.get(x) != index:
                continue
            loop = values[x].inverse() * LAMBDA.inverse() * chords[a] * values[y]
            if not loop.is_identity:
                loops.append(loop)
        relations.append(Subgroup(loops))

    grading = RelativeGrading(structure, values, component, relations, chords)
    for g, hint in hints.items():
        if not grading.subgroup(g).same_coset(values[g], hint):
            raise StructureValidationError(
                f'grading hint {hint} for {g} contradicts the propagated value {values[g]}', generator=g
            )
    logger.debug(f'{structure.name}: {len(relations)} grading component(s), relations {relations}')
    return grading


@dataclass
class MorphismDegree:
    homogeneous: bool
    degree: Optional[GradingElement] = None
    degree_preserving: bool = False
    # components whose degree disagrees with the first one
    conflicts: List[str] = field(default_factory=list)

    def as_dict(self) -> Dict:
        return {
            'homogeneous': self.homogeneous,
            'degree': self.degree.as_list() if self.degree is not None else None,
            'degree_preserving': self.degree_preserving,
            'conflicts': self.conflicts,
        }


def morphism_degree(morphism: DMorphism, source: RelativeGrading,
                    target: Optional[RelativeGrading] = None) -> MorphismDegree:
    """
    Degree of a morphism: homogeneous when all components lie in the double
    coset P d P of the first component degree d, P the relation subgroups;
    degree-preserving when every component has degree zero.
    """
    target = target or source
    if not morphism.components:
        return MorphismDegree(homogeneous=True, degree=IDENTITY, degree_preserving=True)

    first = None
    conflicts = []
    preserving = True
    for x, a, y in morphism.components:
        degree = source.component_degree(x, a, y, target)
        group = source.degree_subgroup(x, y, target)
        if degree not in group:
            preserving = False
        if first is None:
            first = (degree, group)
        elif not first[1].joined(group).double_coset(first[0]).same_coset(first[0], degree):
            conflicts.append(f'{x}->{a.value}.{y}')
    return MorphismDegree(
        homogeneous=not conflicts,
        degree=first[0],
        degree_preserving=preserving,
        conflicts=conflicts,
    )


def is_degree_preserving(morphism: DMorphism, grading: RelativeGrading) -> bool:
    return morphism_degree(morphism, grading).degree_preserving


@dataclass
class DegreeZeroClasses:
    dimension: int
    representatives: List[DMorphism]
    degree_zero_components: int
    identity_present: bool

    def as_dict(self) -> Dict:
        return {
            'dimension': self.dimension,
            'degree_zero_components': self.degree_zero_components,
            'identity_present': self.identity_present,
            'representatives': [m.as_dict() for m in self.representatives],
        }


def degree_zero_end_classes(structure: TypeDStructure, convention: Optional[str] = None,
                            mor: Optional[MorComplex] = None) -> DegreeZeroClasses:
    """
    Homology of End(D) in degree zero: cycles supported on degree-zero
    components modulo the degree-zero part of the boundaries.
    """
    grading = solve_gradings(structure, convention)
    mor = mor or mor_complex(structure, structure)
    complex_ = mor.complex

    zero = []
    for label in complex_.generators:
        x, a, y = parse_label(label)
        if grading.component_degree(x, a, y) in grading.degree_subgroup(x, y):
            zero.append(label)
    zero_set: FrozenSet[str] = frozenset(zero)
    others = [g for g in complex_.generators if g not in zero_set]

    matrix = complex_.boundary_matrix()
    cycles = rank_kernel_image(matrix.submatrix(complex_.generators, zero)).kernel
    boundaries = [complex_.boundary_set(g) & zero_set for g in others]
    boundaries = [b for b in boundaries if b]
    reps = cycle_representatives(cycles, boundaries, complex_.generators)

    identity = DMorphism.identity(structure)
    present = True
    if structure.generators:
        identity_chain = mor.chain(identity)
        present = identity_chain <= zero_set and bool(
            cycle_representatives([identity_chain], boundaries, complex_.generators)
        )
    logger.info(f'{structure.name}: {len(reps)} degree-zero endomorphism class(es)')
    return DegreeZeroClasses(
        dimension=len(reps),
        representatives=[mor.morphism(r, name=f'z{i + 1}') for i, r in enumerate(reps)],
        degree_zero_components=len(zero),
        identity_present=present,
    )
