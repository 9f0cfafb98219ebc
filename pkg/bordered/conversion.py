"""
Type-D structure of a framed knot complement from its knot Floer complex
"""

import logging
from typing import Dict, List, Tuple

from f2core.complexes import ChainComplex, Ring
from torus_algebra.algebra import AlgebraElement, Idempotent

from .exceptions import ConversionError
from .structures import TypeDStructure, check_type_d

logger = logging.getLogger(__name__)

R1 = AlgebraElement.R1
R2 = AlgebraElement.R2
R3 = AlgebraElement.R3
R12 = AlgebraElement.R12
R23 = AlgebraElement.R23
R123 = AlgebraElement.R123


def alexander_grading(complex_: ChainComplex, x: str) -> int:
    gr_u, gr_v = complex_.degree(x)
    if (gr_u - gr_v) % 2:
        raise ConversionError(f'{x} has a half-integral Alexander grading', generator=x)
    return (gr_u - gr_v) // 2


def _split_arrows(complex_: ChainComplex) -> Tuple[List[Tuple[str, str, int]], List[Tuple[str, str, int]]]:
    vertical, horizontal = [], []
    for x, y, coefficient in complex_.arrows():
        if len(coefficient.terms) != 1:
            raise ConversionError(f'{x} -> {y} has coefficient {coefficient}; expected a single monomial', generator=x)
        (u, v), = coefficient.terms
        if u == 0 and v == 0:
            raise ConversionError(f'{x} -> {y} has coefficient 1; reduce the complex first', generator=x)
        if u and v:
            raise ConversionError(f'{x} -> {y} has mixed coefficient {coefficient}', generator=x)
        if v:
            vertical.append((x, y, v))
        else:
            horizontal.append((x, y, u))
    return vertical, horizontal


def _distinguished(complex_: ChainComplex, arrows, kind: str) -> str:
    touched = {x for x, _, _ in arrows} | {y for _, y, _ in arrows}
    free = [g for g in complex_.generators if g not in touched]
    if len(free) != 1:
        raise ConversionError(
            f'{complex_.name or "complex"}: expected exactly one generator without {kind} arrows, found {len(free)}; '
            f'the basis must be {kind}ly simplified'
        )
    return free[0]


def cfk_to_cfd(cfk, framing: int = 0, name: str = '') -> TypeDStructure:
    """
    Build the type-D structure of the n-framed complement.

    Every generator of the knot complex gives an i0 generator. A vertical
    arrow x -> V^l y becomes x -r1-> k_1 <-r23- k_2 ... <-r23- k_l <-r123- y,
    a horizontal arrow x -> U^l y becomes x -r3-> h_1 -r23-> ... -r23-> h_l -r2-> y,
    and the unstable chain joins the generator without vertical arrows to the
    one without horizontal arrows according to framing versus 2 tau.

    Raises:
        ConversionError: the input is not reduced, not graded, or not simplified
    """
    complex_ = getattr(cfk, 'complex', cfk)
    if complex_.ring != Ring.F2_UV:
        raise ConversionError(f'{complex_.name or "complex"}: conversion needs an F2[U,V] complex')
    if not complex_.is_graded:
        raise ConversionError(f'{complex_.name or "complex"}: conversion needs (gr_U, gr_V) gradings')

    vertical, horizontal = _split_arrows(complex_)
    xi = _distinguished(complex_, vertical, 'vertical')
    eta = _distinguished(complex_, horizontal, 'horizontal')
    tau = alexander_grading(complex_, xi)

    generators: Dict[str, int] = {g: Idempotent.ZERO for g in complex_.generators}
    arrows = []

    def chain(prefix: str, length: int) -> List[str]:
        names = [f'{prefix}_{i}' for i in range(1, length + 1)]
        for g in names:
            if g in generators:
                raise ConversionError(f'generator name {g} collides with a knot complex generator', generator=g)
            generators[g] = Idempotent.ONE
        return names

    for x, y, length in vertical:
        kappa = chain(f'v_{x}_{y}', length)
        arrows.append((x, R1, kappa[0]))
        for i in range(length - 1):
            arrows.append((kappa[i + 1], R23, kappa[i]))
        arrows.append((y, R123, kappa[-1]))

    for x, y, length in horizontal:
        lam = chain(f'h_{x}_{y}', length)
        arrows.append((x, R3, lam[0]))
        for i in range(length - 1):
            arrows.append((lam[i], R23, lam[i + 1]))
        arrows.append((lam[-1], R2, y))

    gap = framing - 2 * tau
    if gap < 0:
        mu = chain('u', -gap)
        arrows.append((xi, R1, mu[0]))
        for i in range(len(mu) - 1):
            arrows.append((mu[i + 1], R23, mu[i]))
        arrows.append((eta, R3, mu[-1]))
    elif gap == 0:
        arrows.append((xi, R12, eta))
    else:
        mu = chain('u', gap)
        arrows.append((xi, R123, mu[0]))
        for i in range(len(mu) - 1):
            arrows.append((mu[i], R23, mu[i + 1]))
        arrows.append((mu[-1], R2, eta))

    structure = TypeDStructure(generators, arrows, name=name or f'CFD({complex_.name}, {framing})')
    check_type_d(structure).raise_if_invalid()
    logger.info(f'{structure.name}: tau = {tau}, {len(structure)} generators, {len(structure.arrows)} arrows')
    return structure
