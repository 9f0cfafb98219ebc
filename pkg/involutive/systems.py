"""
Linear systems over F2 for chain maps and homotopies between F2[U] complexes
"""

from typing import Dict, Hashable, Iterable, Iterator, List, Optional, Tuple

from django.conf import settings

from f2core.complexes import Bidegree, ChainComplex, ChainMap
from f2core.polynomials import Coefficient, add_term

Equations = Dict[Hashable, List[Hashable]]


def incoming(complex_: ChainComplex) -> Dict[str, List[Tuple[str, Coefficient]]]:
    result: Dict[str, List[Tuple[str, Coefficient]]] = {g: [] for g in complex_.generators}
    for x, y, coefficient in complex_.arrows():
        result[y].append((x, coefficient))
    return result


def _candidates(source: ChainComplex, target: ChainComplex, shift: Bidegree) -> Iterator[Tuple[str, str, int]]:
    """(x, y, k) with gr(y) - (2k, 0) = gr(x) + shift and k >= 0"""
    for x in source.generators:
        gx = source.degree(x)
        for y in target.generators:
            gy = target.degree(y)
            if gy[1] != gx[1] + shift[1]:
                continue
            gap = gy[0] - gx[0] - shift[0]
            if gap < 0 or gap % 2:
                continue
            yield x, y, gap // 2


def map_variables(source: ChainComplex, target: ChainComplex, shift: Bidegree) -> List[Tuple]:
    """Unknowns ('f', x, y, k) for the term U^k y of f(x), k at most BFX_MAX_U_POWER"""
    cap = getattr(settings, 'BFX_MAX_U_POWER', 64)
    return [('f', x, y, k) for x, y, k in _candidates(source, target, shift) if k <= cap]


def capped_candidates(source: ChainComplex, target: ChainComplex, shift: Bidegree) -> int:
    """Number of admissible terms map_variables leaves out because of BFX_MAX_U_POWER"""
    cap = getattr(settings, 'BFX_MAX_U_POWER', 64)
    return sum(1 for _, _, k in _candidates(source, target, shift) if k > cap)


def add_chain_equations(equations: Equations, source: ChainComplex, target: ChainComplex,
                        variables: Iterable[Tuple]) -> None:
    """d f + f d = 0, one equation per (x, z, U-power)"""
    into_source = incoming(source)
    for variable in variables:
        _, x, y, k = variable
        for z, coefficient in target.boundary(y).items():
            for u, _v in coefficient.terms:
                equations.setdefault(('chain', x, z, k + u), []).append(variable)
        for w, coefficient in into_source[x]:
            for u, _v in coefficient.terms:
                equations.setdefault(('chain', w, y, k + u), []).append(variable)


def homotopy_variables(source: ChainComplex, target: ChainComplex,
                       shift: Optional[Bidegree]) -> List[Tuple]:
    """Unknowns ('H', x, y) on the hat truncations; all pairs when shift is None"""
    variables = []
    for x in source.generators:
        for y in target.generators:
            if shift is not None:
                gx, gy = source.degree(x), target.degree(y)
                if (gy[0] - gx[0], gy[1] - gx[1]) != tuple(shift):
                    continue
            variables.append(('H', x, y))
    return variables


def add_homotopy_terms(equations: Equations, source_hat: ChainComplex, target_hat: ChainComplex,
                       variables: Iterable[Tuple], tag: str = 'hat') -> None:
    """Contributions of d H + H d to the equations (tag, x, w)"""
    into_source = incoming(source_hat)
    for variable in variables:
        _, x, y = variable
        for w in target_hat.boundary_set(y):
            equations.setdefault((tag, x, w), []).append(variable)
        for p, _coefficient in into_source[x]:
            equations.setdefault((tag, p, y), []).append(variable)


def add_hat_map_terms(equations: Equations, variables: Iterable[Tuple], tag: str = 'hat',
                      before=None, after=None) -> None:
    """
    Contributions of the U = 0 part of f to (tag, x, w): the term f(x') = y
    enters as (after . f . before)(x) for x with x' in before(x).
    """
    preimages: Dict[str, List[str]] = {}
    if before is not None:
        for x, targets in before.images.items():
            for t in targets:
                preimages.setdefault(t, []).append(x)
    for variable in variables:
        _, x, y, k = variable
        if k:
            continue
        sources = preimages.get(x, []) if before is not None else [x]
        targets = after.image(y) if after is not None else [y]
        for s in sources:
            for w in targets:
                equations.setdefault((tag, s, w), []).append(variable)


def solution_map(solution: Iterable[Tuple], source: ChainComplex) -> Dict[str, Dict[str, Coefficient]]:
    images: Dict[str, Dict[str, Coefficient]] = {x: {} for x in source.generators}
    for variable in solution:
        if variable[0] == 'f':
            _, x, y, k = variable
            add_term(images[x], y, Coefficient.monomial(k))
    return images


def solution_homotopy(solution: Iterable[Tuple], source_hat: ChainComplex,
                      target_hat: ChainComplex) -> ChainMap:
    images: Dict[str, set] = {}
    for variable in solution:
        if variable[0] == 'H':
            images.setdefault(variable[1], set()).add(variable[2])
    return ChainMap(source_hat, target_hat, images)


def hat_part(images: Dict[str, Dict[str, Coefficient]], source_hat: ChainComplex,
             target_hat: ChainComplex) -> ChainMap:
    return ChainMap(source_hat, target_hat,
                    {x: {y for y, c in terms.items() if c.hat()} for x, terms in images.items()})


def is_polynomial_chain_map(images: Dict[str, Dict[str, Coefficient]], source: ChainComplex,
                            target: ChainComplex) -> bool:
    for x in source.generators:
        total: Dict[str, Coefficient] = {}
        for y, c in images.get(x, {}).items():
            for z, d in target.boundary(y).items():
                add_term(total, z, c * d)
        for y, c in source.boundary(x).items():
            for z, d in images.get(y, {}).items():
                add_term(total, z, c * d)
        if total:
            return False
    return True
