"""
Box tensor products of type-A and type-D structures, and of morphisms
"""

import logging
from typing import Dict, List, Optional, Tuple

from django.conf import settings

from f2core.complexes import ChainComplex, ChainMap, Ring
from f2core.polynomials import ONE, Coefficient, add_term
from torus_algebra.algebra import AlgebraElement

from .exceptions import StructureValidationError, UnboundedPairingError
from .structures import DMorphism, TypeAStructure, TypeDStructure, check_type_a, check_type_d

logger = logging.getLogger(__name__)

SEPARATOR = '⊗'


def pair_name(x: str, y: str) -> str:
    return f'{x}{SEPARATOR}{y}'


def split_pair(name: str) -> Tuple[str, str]:
    x, y = name.split(SEPARATOR, 1)
    return x, y


def _depth_limit(depth: Optional[int]) -> int:
    return depth if depth is not None else getattr(settings, 'BFX_DIVERGENCE_DEPTH', 64)


def _guard(path: List[str], sequence: Tuple[AlgebraElement, ...], depth: int, a_name: str) -> None:
    if len(sequence) <= depth:
        return
    seen: Dict[str, int] = {}
    cycle = path
    for i, g in enumerate(path):
        if g in seen:
            cycle = path[seen[g]:i + 1]
            break
        seen[g] = i
    raise UnboundedPairingError(
        f'unbounded pairing: delta-sequence from {path[0]} exceeds depth {depth} '
        f'while still matching actions of {a_name}; cycle {" -> ".join(cycle)}',
        cycle=cycle, depth=depth,
    )


def _validate_inputs(module: TypeAStructure, structure: TypeDStructure) -> None:
    check_type_a(module).raise_if_invalid()
    check_type_d(structure).raise_if_invalid()


def box_tensor(module: TypeAStructure, structure: TypeDStructure, depth: Optional[int] = None,
               validate: bool = True) -> ChainComplex:
    """
    Pair a type-A structure with a type-D structure.

    Generators are x (x) y with matching idempotents. The differential follows
    delta-sequences y -> a_1.y_1 -> ... -> a_k.y_k of the type-D side and
    applies m(x; a_1, ..., a_k); only sequences that are prefixes of stored
    actions are explored.

    Raises:
        UnboundedPairingError: a sequence grows past the divergence depth
        StructureValidationError: either input fails its validity check
    """
    if validate:
        _validate_inputs(module, structure)
    depth = _depth_limit(depth)
    ring = Ring.F2 if module.mode == 'hat' else Ring.F2_U
    cap = getattr(settings, 'BFX_MAX_U_POWER', 64)

    generators = [
        pair_name(x, y)
        for x, ix in module.generators.items()
        for y, iy in structure.generators.items()
        if ix == iy
    ]
    differential: Dict[str, Dict[str, Coefficient]] = {}
    for name in generators:
        x, y = split_pair(name)
        boundary: Dict[str, Coefficient] = {}

        for target, c in module.act(x, ()).items():
            add_term(boundary, pair_name(target, y), c)

        def explore(current: str, sequence: Tuple[AlgebraElement, ...], path: List[str]):
            for a, z in structure.delta1(current):
                if a.is_idempotent:
                    if not sequence:
                        add_term(boundary, pair_name(x, z), ONE)
                    continue
                extended = sequence + (a,)
                if not module.is_prefix(x, extended):
                    continue
                _guard(path + [z], extended, depth, module.name)
                for target, c in module.act(x, extended).items():
                    add_term(boundary, pair_name(target, z), c.check_cap(cap))
                explore(z, extended, path + [z])

        explore(y, (), [y])
        differential[name] = boundary

    complex_ = ChainComplex(generators, differential, ring, name=f'{module.name}⊠{structure.name}')
    complex_.check_d_squared()
    logger.info(f'Box tensor {complex_.name}: {len(generators)} generators')
    return complex_


def box_tensor_morphism(module: TypeAStructure, morphism: DMorphism, depth: Optional[int] = None,
                        source_complex: Optional[ChainComplex] = None,
                        target_complex: Optional[ChainComplex] = None) -> ChainMap:
    """
    id_A (x) f as a map box_tensor(A, source) -> box_tensor(A, target).

    A term of (id (x) f)(x (x) y) follows delta-steps in the source, then one
    component of f, then delta-steps in the target; the concatenated algebra
    labels must form an action of x. An idempotent component contributes only
    when it is the whole sequence.
    """
    if module.mode != 'hat':
        raise StructureValidationError('box_tensor_morphism is defined for hat-mode type-A structures')
    depth = _depth_limit(depth)
    source, target = morphism.source, morphism.target
    source_complex = source_complex or box_tensor(module, source, depth)
    target_complex = target_complex or box_tensor(module, target, depth)

    images: Dict[str, set] = {}
    for name in source_complex.generators:
        x, y = split_pair(name)
        out: Dict[str, Coefficient] = {}

        def emit(sequence: Tuple[AlgebraElement, ...], z: str):
            for result in module.act(x, sequence):
                add_term(out, pair_name(result, z), ONE)

        def after(current: str, sequence: Tuple[AlgebraElement, ...], path: List[str]):
            for b, z in target.delta1(current):
                if b.is_idempotent:
                    continue
                extended = sequence + (b,)
                if not module.is_prefix(x, extended):
                    continue
                _guard(path + [z], extended, depth, module.name)
                emit(extended, z)
                after(z, extended, path + [z])

        def before(current: str, sequence: Tuple[AlgebraElement, ...], path: List[str]):
            for a, z in morphism.image(current):
                if a.is_idempotent:
                    if not sequence:
                        add_term(out, pair_name(x, z), ONE)
                    continue
                extended = sequence + (a,)
                if not module.is_prefix(x, extended):
                    continue
                emit(extended, z)
                after(z, extended, path + [z])
            for a, z in source.delta1(current):
                if a.is_idempotent:
                    continue
                extended = sequence + (a,)
                if not module.is_prefix(x, extended):
                    continue
                _guard(path + [z], extended, depth, module.name)
                before(z, extended, path + [z])

        before(y, (), [y])
        images[name] = set(out)

    induced = ChainMap(source_complex, target_complex, images)
    offending = induced.chain_map_failure()
    if offending is not None:
        logger.warning(f'id ⊠ {morphism.name} is not a chain map at {offending}')
    return induced
