"""
Involutive complexes: horizontal almost iota_K-complexes and UV knot complexes
"""

import logging
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from f2core.complexes import Bidegree, ChainComplex, ChainMap, Ring
from f2core.exceptions import StructuralIntegrityError
from f2core.polynomials import Coefficient, add_term, toggle

from .exceptions import IotaError

logger = logging.getLogger(__name__)

SEPARATOR = '⊗'
DUAL_MARK = '*'

PolyMap = Dict[str, Dict[str, Coefficient]]


def _as_sets(mapping: Mapping[str, Iterable[str]], generators: Sequence[str]) -> Dict[str, FrozenSet[str]]:
    result = {}
    for x in generators:
        accumulator: set = set()
        for y in mapping.get(x, ()):
            toggle(accumulator, y)
        result[x] = frozenset(accumulator)
    return result


def swap(bidegree: Bidegree) -> Bidegree:
    return bidegree[1], bidegree[0]


class IotaComplex:
    """
    A bigraded free complex over F2[U] with an involution iota on its
    U = 0 truncation. iota maps generators to sums of generators.
    """

    def __init__(self, complex_: ChainComplex, iota: Mapping[str, Iterable[str]], name: str = ''):
        if complex_.ring == Ring.F2_UV:
            raise StructuralIntegrityError(f'{complex_.name}: use the horizontal truncation of a UV complex')
        self.complex = complex_
        self.name = name or complex_.name
        for x in iota:
            if x not in complex_:
                raise IotaError(f'iota given on unknown generator {x}', generator=x)
        self.iota: Dict[str, FrozenSet[str]] = _as_sets(iota, complex_.generators)
        for x, ys in self.iota.items():
            for y in ys:
                if y not in complex_:
                    raise IotaError(f'iota({x}) contains unknown generator {y}', generator=x)
        self._hat: Optional[ChainComplex] = None

    def __repr__(self) -> str:
        return f'IotaComplex({self.name}, {len(self.complex)} generators)'

    def __len__(self) -> int:
        return len(self.complex)

    @property
    def generators(self) -> Tuple[str, ...]:
        return self.complex.generators

    @property
    def is_graded(self) -> bool:
        return self.complex.is_graded

    def degree(self, x: str) -> Optional[Bidegree]:
        return self.complex.degree(x)

    @property
    def hat(self) -> ChainComplex:
        if self._hat is None:
            self._hat = self.complex.hat()
        return self._hat

    def iota_map(self) -> ChainMap:
        return ChainMap(self.hat, self.hat, self.iota)

    def phi(self) -> PolyMap:
        return phi(self.complex)

    def phi_hat(self) -> ChainMap:
        return phi_hat(self.complex, self.hat)

    def renamed(self, mapping: Mapping[str, str], name: str = '') -> 'IotaComplex':
        def rename(g):
            return mapping.get(g, g)

        complex_ = self.complex
        differential = {rename(x): {rename(y): c for y, c in complex_.boundary(x).items()}
                        for x in complex_.generators}
        gradings = {rename(g): d for g, d in complex_.gradings.items()} if complex_.gradings else None
        renamed = ChainComplex([rename(g) for g in complex_.generators], differential, complex_.ring,
                               gradings=gradings, name=name or self.name)
        return IotaComplex(renamed, {rename(x): [rename(y) for y in ys] for x, ys in self.iota.items()},
                           name=name or self.name)


def phi(complex_: ChainComplex) -> PolyMap:
    """
    Formal U-derivative of the differential: a term U^k y of d(x) contributes
    U^(k-1) y when k is odd.
    """
    result: PolyMap = {}
    for x, y, coefficient in complex_.arrows():
        derivative = coefficient.u_derivative()
        if derivative:
            add_term(result.setdefault(x, {}), y, derivative)
    return result


def phi_hat(complex_: ChainComplex, hat: Optional[ChainComplex] = None) -> ChainMap:
    hat = hat or complex_.hat()
    images = {x: {y for y, c in terms.items() if c.hat()} for x, terms in phi(complex_).items()}
    return ChainMap(hat, hat, images)


def phi_is_chain_map(complex_: ChainComplex) -> bool:
    """d Phi + Phi d = 0 over the coefficient ring"""
    derivative = phi(complex_)
    for x in complex_.generators:
        total: Dict[str, Coefficient] = {}
        for y, c in derivative.get(x, {}).items():
            for z, d in complex_.boundary(y).items():
                add_term(total, z, c * d)
        for y, c in complex_.boundary(x).items():
            for z, d in derivative.get(y, {}).items():
                add_term(total, z, c * d)
        if total:
            return False
    return True


def trivial_complex(name: str = '0') -> IotaComplex:
    """F2[U] on one generator o in bidegree (0, 0) with iota = id"""
    complex_ = ChainComplex(['o'], {}, Ring.F2_U, gradings={'o': (0, 0)}, name=name)
    return IotaComplex(complex_, {'o': ['o']}, name=name)


def _pair(x: str, y: str) -> str:
    return f'{x}{SEPARATOR}{y}'


def tensor(first: IotaComplex, second: IotaComplex, name: str = '') -> IotaComplex:
    """
    Tensor product over F2[U] with
    iota = iota_C (x) iota_D + (Phi iota_C) (x) (iota_D Phi).
    """
    c, d = first.complex, second.complex
    generators = [_pair(x, y) for x in c.generators for y in d.generators]
    differential: PolyMap = {}
    for x in c.generators:
        for y in d.generators:
            boundary: Dict[str, Coefficient] = {}
            for x2, coefficient in c.boundary(x).items():
                add_term(boundary, _pair(x2, y), coefficient)
            for y2, coefficient in d.boundary(y).items():
                add_term(boundary, _pair(x, y2), coefficient)
            differential[_pair(x, y)] = boundary
    gradings = None
    if c.is_graded and d.is_graded:
        gradings = {
            _pair(x, y): (c.degree(x)[0] + d.degree(y)[0], c.degree(x)[1] + d.degree(y)[1])
            for x in c.generators for y in d.generators
        }
    name = name or f'{first.name}{SEPARATOR}{second.name}'
    complex_ = ChainComplex(generators, differential, Ring.F2_U, gradings=gradings, name=name)

    phi_c, phi_d = first.phi_hat(), second.phi_hat()
    iota: Dict[str, set] = {}
    for x in c.generators:
        phi_iota_x = phi_c.apply(first.iota[x])
        for y in d.generators:
            image: set = set()
            for x2 in first.iota[x]:
                for y2 in second.iota[y]:
                    toggle(image, _pair(x2, y2))
            iota_phi_y = set()
            for y1 in phi_d.image(y):
                for y2 in second.iota[y1]:
                    toggle(iota_phi_y, y2)
            for x2 in phi_iota_x:
                for y2 in iota_phi_y:
                    toggle(image, _pair(x2, y2))
            iota[_pair(x, y)] = image
    return IotaComplex(complex_, iota, name=name)


def dual(complex_: IotaComplex, name: str = '') -> IotaComplex:
    """Transposed differential and iota on starred generators, bidegrees negated"""
    c = complex_.complex
    star = {g: f'{g}{DUAL_MARK}' if not g.endswith(DUAL_MARK) else g[:-1] for g in c.generators}
    differential: PolyMap = {star[g]: {} for g in c.generators}
    for x, y, coefficient in c.arrows():
        add_term(differential[star[y]], star[x], coefficient)
    gradings = {star[g]: (-c.degree(g)[0], -c.degree(g)[1]) for g in c.generators} if c.is_graded else None
    name = name or f'{complex_.name}{DUAL_MARK}'
    dualized = ChainComplex([star[g] for g in c.generators], differential, c.ring, gradings=gradings, name=name)
    iota: Dict[str, List[str]] = {star[g]: [] for g in c.generators}
    for x, ys in complex_.iota.items():
        for y in ys:
            iota[star[y]].append(star[x])
    return IotaComplex(dualized, iota, name=name)


def linear_combination(terms: Sequence[Tuple[IotaComplex, int]], name: str = '') -> IotaComplex:
    """Sum of multiples in the local equivalence group; negative multiples use duals"""
    factors = []
    for complex_, multiplicity in terms:
        factor = complex_ if multiplicity >= 0 else dual(complex_)
        factors.extend([factor] * abs(multiplicity))
    if not factors:
        return trivial_complex(name or '0')
    result = factors[0]
    for factor in factors[1:]:
        result = tensor(result, factor)
    return result.renamed({}, name=name) if name else result


class CFKComplex:
    """
    A knot Floer complex over F2[U,V], bigraded by (gr_U, gr_V), with the
    involution recorded on its U = V = 0 truncation.
    """

    def __init__(self, complex_: ChainComplex, iota: Optional[Mapping[str, Iterable[str]]] = None,
                 name: str = ''):
        if complex_.ring != Ring.F2_UV:
            raise StructuralIntegrityError(f'{complex_.name}: knot complexes live over F2[U,V]')
        self.complex = complex_
        self.name = name or complex_.name
        self.iota = _as_sets(iota, complex_.generators) if iota is not None else None

    def __repr__(self) -> str:
        return f'CFKComplex({self.name}, {len(self.complex)} generators)'

    def __len__(self) -> int:
        return len(self.complex)

    @property
    def generators(self) -> Tuple[str, ...]:
        return self.complex.generators

    def degree(self, x: str) -> Bidegree:
        return self.complex.degree(x)

    def alexander(self, x: str) -> int:
        gr_u, gr_v = self.degree(x)
        return (gr_u - gr_v) // 2

    def subcomplex(self, generators: Iterable[str], name: str = '') -> 'CFKComplex':
        keep = [g for g in self.generators if g in set(generators)]
        iota = None
        if self.iota is not None:
            iota = {x: [y for y in self.iota[x]] for x in keep}
            for x, ys in iota.items():
                outside = [y for y in ys if y not in keep]
                if outside:
                    raise IotaError(f'iota({x}) leaves the generator set through {outside[0]}', generator=x)
        return CFKComplex(self.complex.subcomplex(keep, name=name), iota, name=name or self.name)


def horizontal_truncation(cfk: CFKComplex, name: str = '') -> IotaComplex:
    """Set V = 0, keeping the involution of the hat truncation"""
    if cfk.iota is None:
        raise IotaError(f'{cfk.name} carries no involution')
    complex_ = cfk.complex.horizontal()
    name = name or f'{cfk.name}|V=0'
    complex_ = ChainComplex(complex_.generators, {x: complex_.boundary(x) for x in complex_.generators},
                            complex_.ring, gradings=complex_.gradings, name=name)
    return IotaComplex(complex_, cfk.iota, name=name)


def elements_in_bidegree(complex_, bidegree: Bidegree) -> List[Tuple[str, int, int]]:
    """
    Monomial multiples U^i V^j x lying in the given bidegree, as (x, i, j);
    V-powers only over F2[U,V].
    """
    complex_ = getattr(complex_, 'complex', complex_)
    found = []
    for x in complex_.generators:
        gr_u, gr_v = complex_.degree(x)
        du, dv = gr_u - bidegree[0], gr_v - bidegree[1]
        if du < 0 or dv < 0 or du % 2 or dv % 2:
            continue
        i, j = du // 2, dv // 2
        if j and complex_.ring != Ring.F2_UV:
            continue
        if i and complex_.ring == Ring.F2:
            continue
        found.append((x, i, j))
    return found

