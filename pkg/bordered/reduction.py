"""
Cancellation of unit arrows in complexes and type-D structures
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from f2core.complexes import ChainComplex, ChainMap, Ring
from f2core.polynomials import ONE, ZERO, Coefficient, add_term
from torus_algebra.algebra import multiply, unit

from .structures import DMorphism, TypeDStructure

logger = logging.getLogger(__name__)

PolyMap = Dict[str, Dict[str, Coefficient]]


@dataclass
class ComplexReduction:
    """
    reduced is homotopy equivalent to original through include
    (reduced -> original) and project (original -> reduced);
    project . include = id and id + include . project = d h + h d.
    """

    original: ChainComplex
    reduced: ChainComplex
    include: PolyMap
    project: PolyMap
    homotopy: PolyMap
    cancelled: List[Tuple[str, str]] = field(default_factory=list)

    def include_map(self) -> ChainMap:
        return _to_chain_map(self.reduced, self.original, self.include)

    def project_map(self) -> ChainMap:
        return _to_chain_map(self.original, self.reduced, self.project)

    def homotopy_map(self) -> ChainMap:
        return _to_chain_map(self.original, self.original, self.homotopy)


def _to_chain_map(source: ChainComplex, target: ChainComplex, images: PolyMap) -> ChainMap:
    if source.ring != Ring.F2:
        raise ValueError('F2 chain maps only; use the coefficient dictionaries')
    return ChainMap(source, target, {x: set(ys) for x, ys in images.items()})


def _apply(images: PolyMap, chain: Dict[str, Coefficient]) -> Dict[str, Coefficient]:
    result: Dict[str, Coefficient] = {}
    for x, c in chain.items():
        for y, d in images.get(x, {}).items():
            add_term(result, y, c * d)
    return result


def _compose(first: PolyMap, second: PolyMap, domain) -> PolyMap:
    """second after first"""
    return {x: _apply(second, first.get(x, {})) for x in domain}


def _cancellable_pair(differential: PolyMap, order: List[str]) -> Optional[Tuple[str, str]]:
    for x in order:
        for y, c in differential.get(x, {}).items():
            if c == ONE and y != x:
                return x, y
    return None


def reduce_complex(complex_: ChainComplex) -> ComplexReduction:
    """
    Cancel unit-coefficient arrows x -> y until none remain.

    With W the remaining generators:
        d'(w) = d(w)_W + <dw, y> d(x)_W
        i(w) = w + <dw, y> x,  p(w) = w,  p(x) = 0,  p(y) = d(x)_W,  h(y) = x
    """
    order = list(complex_.generators)
    differential: PolyMap = {x: complex_.boundary(x) for x in order}
    include: PolyMap = {x: {x: ONE} for x in order}
    project: PolyMap = {x: {x: ONE} for x in order}
    homotopy: PolyMap = {x: {} for x in order}
    cancelled = []

    while True:
        pair = _cancellable_pair(differential, order)
        if pair is None:
            break
        x, y = pair
        remaining = [g for g in order if g not in (x, y)]
        dx_rest = {g: c for g, c in differential[x].items() if g not in (x, y)}

        new_differential: PolyMap = {}
        step_include: PolyMap = {}
        for w in remaining:
            boundary = {g: c for g, c in differential[w].items() if g not in (x, y)}
            link = differential[w].get(y, ZERO)
            if link:
                for g, c in dx_rest.items():
                    add_term(boundary, g, link * c)
                step_include[w] = {w: ONE, x: link}
            else:
                step_include[w] = {w: ONE}
            new_differential[w] = boundary

        step_project: PolyMap = {g: {g: ONE} for g in remaining}
        step_project[x] = {}
        step_project[y] = dict(dx_rest)

        # h += i . (y -> x) . p, with i and p still those of the previous stage
        for g in complex_.generators:
            coefficient = project[g].get(y, ZERO)
            if coefficient:
                for target, c in include[x].items():
                    add_term(homotopy[g], target, coefficient * c)

        include = {w: _apply(include, step_include[w]) for w in remaining}
        project = _compose(project, step_project, complex_.generators)
        differential = new_differential
        order = remaining
        cancelled.append((x, y))

    reduced = ChainComplex(
        order, differential, complex_.ring,
        gradings={g: complex_.gradings[g] for g in order} if complex_.gradings else None,
        name=f'{complex_.name}/reduced',
    )
    reduced.check_d_squared()
    logger.info(f'Reduced {complex_.name}: {len(complex_)} -> {len(reduced)} generators')
    return ComplexReduction(complex_, reduced, include, project, homotopy, cancelled)


@dataclass
class StructureReduction:
    original: TypeDStructure
    reduced: TypeDStructure
    include: DMorphism
    project: DMorphism
    cancelled: List[Tuple[str, str]] = field(default_factory=list)


def reduce_type_d(structure: TypeDStructure) -> StructureReduction:
    """
    Cancel idempotent-labelled arrows x -> y:
        delta'(w) = delta_W(w) + sum over w -> a.y and x -> b.z of (a b).z
        p(y) = delta(x)_W,  i(w) = w + sum over w -> a.y of a.x
    """
    current = structure
    include = DMorphism.identity(structure)
    project = DMorphism.identity(structure)
    cancelled = []

    while True:
        pair = next(((x, y) for x, a, y in current.arrows if a.is_idempotent and x != y), None)
        if pair is None:
            break
        x, y = pair
        keep = [g for g in current.generators if g not in (x, y)]
        keep_set = set(keep)
        arrows = [(p, a, q) for p, a, q in current.arrows if p in keep_set and q in keep_set]
        for w in keep:
            for a, target in current.delta1(w):
                if target != y:
                    continue
                for b, z in current.delta1(x):
                    if z in keep_set:
                        product = multiply(a, b)
                        if product is not None:
                            arrows.append((w, product, z))
        reduced = TypeDStructure({g: current.generators[g] for g in keep}, arrows,
                                 name=current.name,
                                 grading_hints={g: v for g, v in current.grading_hints.items() if g in keep_set})

        step_include = [(w, unit(current.generators[w]), w) for w in keep]
        for w in keep:
            for a, target in current.delta1(w):
                if target == y:
                    step_include.append((w, a, x))
        step_project = [(w, unit(current.generators[w]), w) for w in keep]
        step_project += [(y, b, z) for b, z in current.delta1(x) if z in keep_set]

        include = DMorphism(reduced, current, step_include).then(include, name='i')
        include = DMorphism(reduced, structure, include.components, name='i')
        project = project.then(DMorphism(current, reduced, step_project), name='p')
        project = DMorphism(structure, reduced, project.components, name='p')
        current = reduced
        cancelled.append((x, y))

    reduced = TypeDStructure(current.generators, current.arrows, name=f'{structure.name}/reduced',
                             grading_hints=current.grading_hints)
    include = DMorphism(reduced, structure, include.components, name='i')
    project = DMorphism(structure, reduced, project.components, name='p')
    logger.info(f'Reduced {structure.name}: {len(structure)} -> {len(reduced)} generators')
    return StructureReduction(structure, reduced, include, project, cancelled)


def reduce(obj: Union[ChainComplex, TypeDStructure]):
    """Dispatch to the complex or type-D cancellation"""
    if isinstance(obj, TypeDStructure):
        return reduce_type_d(obj)
    return reduce_complex(obj)
