"""
Bundled knot complexes, type-D structures and the cable pattern module

Every constructor returns a fresh object.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from bordered.conversion import cfk_to_cfd
from bordered.exceptions import StructureValidationError
from bordered.graphs import find_isomorphism, inclusion_morphism, split_summands
from bordered.structures import DMorphism, TypeAStructure, TypeDStructure
from f2core.complexes import ChainComplex, Ring
from f2core.polynomials import Coefficient, add_term
from involutive.complexes import CFKComplex, IotaComplex, horizontal_truncation, tensor, trivial_complex
from torus_algebra.algebra import unit

logger = logging.getLogger(__name__)

WH_LOCAL_SUMMAND = ('rho', 'sigma', 'tau', 'alpha0', 'beta0', 'gamma0', 'delta0')


def _complex(name: str, gradings: Dict[str, Tuple[int, int]], arrows: Sequence[Tuple[str, str, str]],
             ring: str) -> ChainComplex:
    """arrows are (x, monomial, y) meaning d(x) contains monomial . y"""
    differential: Dict[str, Dict[str, Coefficient]] = {}
    for x, monomial, y in arrows:
        add_term(differential.setdefault(x, {}), y, Coefficient.parse_monomial(monomial))
    return ChainComplex(list(gradings), differential, ring, gradings=gradings, name=name)


# Type-D structures

def cfd_trefoil() -> TypeDStructure:
    """0-framed complement of the right-handed trefoil"""
    generators = {'s1': 0, 's2': 0, 's3': 0, 't1': 1, 't2': 1, 't3': 1, 't4': 1}
    arrows = [
        ('s1', 'r1', 't4'),
        ('t1', 'r2', 's1'),
        ('s2', 'r3', 't1'),
        ('s2', 'r1', 't2'),
        ('s3', 'r3', 't3'),
        ('s3', 'r123', 't2'),
        ('t3', 'r23', 't4'),
    ]
    return TypeDStructure(generators, arrows, name='cfd_trefoil')


def square_module() -> TypeDStructure:
    generators = {'a': 0, 'b': 0, 'c': 0, 'e': 0, 'y1': 1, 'y2': 1, 'y3': 1, 'y4': 1}
    arrows = [
        ('b', 'r1', 'y2'),
        ('y1', 'r2', 'b'),
        ('a', 'r3', 'y1'),
        ('a', 'r1', 'y4'),
        ('e', 'r123', 'y2'),
        ('y3', 'r2', 'e'),
        ('c', 'r3', 'y3'),
        ('c', 'r123', 'y4'),
    ]
    return TypeDStructure(generators, arrows, name='square')


def cfd_figure_eight() -> TypeDStructure:
    """The square module plus the generator z with its r12 loop"""
    square = square_module()
    generators = dict(square.generators)
    generators['z'] = 0
    return TypeDStructure(generators, list(square.arrows) + [('z', 'r12', 'z')], name='cfd_figure_eight')


# Cable pattern

def cable_cfa_hat(n: int, closure: bool = True) -> TypeAStructure:
    """
    Hat type-A module of the (2n+1, -1) cable pattern in the solid torus.

    The printed actions are m(a_N; r2) = w, m(w; r3) = b_N and
    m(a_i; r2, r1) = a_(i+1). With closure the actions forced by the
    A-infinity relations are added as well; without it the result is
    generally not an A-infinity module.
    """
    if n <= 0:
        raise StructureValidationError(f'Cable parameter must be positive, got {n}')
    size = 2 * n + 1
    a = [f'a{i}' for i in range(1, size + 1)]
    b = [f'b{i}' for i in range(1, size + 1)]
    generators = {'w': 0}
    generators.update({g: 1 for g in a})
    generators.update({g: 1 for g in b})

    actions: List[Tuple] = [
        (a[-1], ['r2'], 'w'),
        ('w', ['r3'], b[-1]),
    ]
    actions += [(a[i - 1], ['r2', 'r1'], a[i]) for i in range(1, size)]
    if closure:
        for i in range(1, size + 1):
            for k in range(2, size - i + 1):
                actions.append((a[i - 1], ['r2'] + ['r12'] * (k - 1) + ['r1'], a[i + k - 1]))
            if i < size:
                actions.append((a[i - 1], ['r2'] + ['r12'] * (size - i), 'w'))
                actions.append((a[i - 1], ['r2'] + ['r12'] * (size - i - 1) + ['r123'], b[-1]))
        actions.append((a[-1], ['r23'], b[-1]))
    suffix = '' if closure else '_printed'
    return TypeAStructure(generators, actions, mode='hat', name=f'cable_{n}{suffix}')


# Knot Floer complexes over F2[U,V]

def cfk_unknot() -> CFKComplex:
    complex_ = _complex('cfk_unknot', {'o': (0, 0)}, [], Ring.F2_UV)
    return CFKComplex(complex_, {'o': ['o']}, name='cfk_unknot')


def cfk_trefoil() -> CFKComplex:
    gradings = {'rho': (0, -2), 'sigma': (-1, -1), 'tau': (-2, 0)}
    complex_ = _complex('cfk_trefoil', gradings, [('sigma', 'U', 'rho'), ('sigma', 'V', 'tau')], Ring.F2_UV)
    return CFKComplex(complex_, {'rho': ['tau'], 'sigma': ['sigma'], 'tau': ['rho']}, name='cfk_trefoil')


def _box_arrows(suffix: str = '') -> List[Tuple[str, str, str]]:
    alpha, beta, gamma, delta = (f'{g}{suffix}' for g in ('alpha', 'beta', 'gamma', 'delta'))
    return [(alpha, 'U', beta), (alpha, 'V', gamma), (beta, 'V', delta), (gamma, 'U', delta)]


def unit_box() -> CFKComplex:
    """The acyclic square d(alpha) = U beta + V gamma, d(beta) = V delta, d(gamma) = U delta"""
    gradings = {'alpha': (0, 0), 'beta': (1, -1), 'gamma': (-1, 1), 'delta': (0, 0)}
    complex_ = _complex('unit_box', gradings, _box_arrows(), Ring.F2_UV)
    iota = {'alpha': ['alpha'], 'beta': ['gamma'], 'gamma': ['beta'], 'delta': ['delta']}
    return CFKComplex(complex_, iota, name='unit_box')


def cfk_figure_eight() -> CFKComplex:
    gradings = {'x': (0, 0), 'alpha': (0, 0), 'beta': (1, -1), 'gamma': (-1, 1), 'delta': (0, 0)}
    complex_ = _complex('cfk_figure_eight', gradings, _box_arrows(), Ring.F2_UV)
    iota = {
        'x': ['x', 'delta'],
        'alpha': ['alpha', 'x'],
        'beta': ['gamma'],
        'gamma': ['beta'],
        'delta': ['delta'],
    }
    return CFKComplex(complex_, iota, name='cfk_figure_eight')


def wh_double_trefoil_cfk() -> CFKComplex:
    """
    Positive Whitehead double of the trefoil: the trefoil staircase, a unit
    box tied to it by iota, and two boxes swapped by iota.
    """
    gradings = {
        'rho': (0, -2), 'sigma': (-1, -1), 'tau': (-2, 0),
        'alpha0': (-1, -1), 'beta0': (0, -2), 'gamma0': (-2, 0), 'delta0': (-1, -1),
    }
    for i in (1, 2):
        gradings.update({f'alpha{i}': (-2, -2), f'beta{i}': (-1, -3), f'gamma{i}': (-3, -1), f'delta{i}': (-2, -2)})
    arrows = [('sigma', 'U', 'rho'), ('sigma', 'V', 'tau')]
    for suffix in ('0', '1', '2'):
        arrows += _box_arrows(suffix)
    complex_ = _complex('wh_double', gradings, arrows, Ring.F2_UV)
    iota = {
        'rho': ['tau'],
        'sigma': ['sigma', 'delta0'],
        'tau': ['rho'],
        'alpha0': ['alpha0', 'sigma'],
        'beta0': ['gamma0', 'tau'],
        'gamma0': ['beta0', 'rho'],
        'delta0': ['delta0'],
        'alpha1': ['alpha2'],
        'beta1': ['gamma2'],
        'gamma1': ['beta2'],
        'delta1': ['delta2'],
        'alpha2': ['alpha1', 'delta1'],
        'beta2': ['gamma1'],
        'gamma2': ['beta1'],
        'delta2': ['delta1'],
    }
    return CFKComplex(complex_, iota, name='wh_double')


# Horizontal iota complexes over F2[U]

def standard_complex(n: int) -> IotaComplex:
    """C_n: d(a) = U^n b, d(c) = U^n d, iota(a) = a + x, iota(b) = c"""
    if n < 2:
        raise StructureValidationError(f'Standard complexes start at n = 2, got {n}')
    gradings = {'a': (0, 0), 'b': (2 * n - 1, -1), 'c': (-1, 2 * n - 1), 'd': (2 * n - 2, 2 * n - 2), 'x': (0, 0)}
    power = f'U^{n}'
    complex_ = _complex(f'C{n}', gradings, [('a', power, 'b'), ('c', power, 'd')], Ring.F2_U)
    iota = {'a': ['a', 'x'], 'b': ['c'], 'c': ['b'], 'd': ['d'], 'x': ['x']}
    return IotaComplex(complex_, iota, name=f'C{n}')


def trivial() -> IotaComplex:
    return trivial_complex('trivial')


def figure_eight_horizontal() -> IotaComplex:
    return horizontal_truncation(cfk_figure_eight(), name='E')


def trefoil_horizontal() -> IotaComplex:
    return horizontal_truncation(cfk_trefoil(), name='T')


def wh_double_local() -> IotaComplex:
    """Horizontal truncation of the seven-generator summand of the Whitehead double"""
    local = wh_double_trefoil_cfk().subcomplex(WH_LOCAL_SUMMAND, name='wh_double_local')
    return horizontal_truncation(local, name='TE7')


def t_sharp_e() -> IotaComplex:
    return tensor(trefoil_horizontal(), figure_eight_horizontal(), name='T#E')


# Conversion of the Whitehead double

def cfd_wh_double() -> TypeDStructure:
    return cfk_to_cfd(wh_double_trefoil_cfk(), framing=0, name='cfd_wh_double')


@dataclass
class WhDoubleSplitting:
    summands: List[TypeDStructure]
    trefoil_summand: Optional[TypeDStructure]
    # generator bijection cfd_trefoil -> summand
    trefoil_map: Optional[Dict[str, str]]
    square_summands: List[TypeDStructure]
    inclusion: Optional[DMorphism]

    @property
    def passed(self) -> bool:
        return self.trefoil_summand is not None and len(self.square_summands) == len(self.summands) - 1 == 3

    def as_dict(self) -> Dict:
        return {
            'summands': [sorted(s.generators) for s in self.summands],
            'trefoil_map': self.trefoil_map,
            'square_summands': len(self.square_summands),
            'inclusion': self.inclusion.as_dict() if self.inclusion is not None else None,
        }


def split_wh_double_cfd(structure: Optional[TypeDStructure] = None) -> WhDoubleSplitting:
    """
    Split CFD of the Whitehead double complement into connected summands and
    identify one trefoil complement and three square modules; the inclusion
    of the trefoil summand is returned as a morphism from cfd_trefoil.
    """
    structure = structure or cfd_wh_double()
    trefoil, square = cfd_trefoil(), square_module()
    summands = split_summands(structure)
    result = WhDoubleSplitting(summands, None, None, [], None)
    for summand in summands:
        if result.trefoil_summand is None:
            mapping = find_isomorphism(trefoil, summand)
            if mapping is not None:
                result.trefoil_summand, result.trefoil_map = summand, mapping
                continue
        if find_isomorphism(square, summand) is not None:
            result.square_summands.append(summand)

    if result.trefoil_summand is not None:
        identification = DMorphism(
            trefoil, result.trefoil_summand,
            [(x, unit(i), result.trefoil_map[x]) for x, i in trefoil.generators.items()],
        )
        result.inclusion = identification.then(inclusion_morphism(result.trefoil_summand, structure), name='i_T')
    logger.info(f'{structure.name}: {len(summands)} summands, trefoil found: {result.trefoil_summand is not None}, '
                f'{len(result.square_summands)} square modules')
    return result


def staircase(steps: Sequence[Tuple[int, int]], name: str = '') -> CFKComplex:
    """
    Staircase complex x0, x1, ..., x2k with d(x_2i+1) = U^a x_2i + V^b x_2i+2
    for steps [(a, b), ...], normalized so gr_U(x0) = 0 and gr_V(x2k) = 0.
    """
    if not steps:
        raise StructureValidationError('A staircase needs at least one step')
    names = [f'x{i}' for i in range(2 * len(steps) + 1)]
    gradings = {names[0]: (0, 0)}
    arrows = []
    for i, (a, b) in enumerate(steps):
        low, mid, high = names[2 * i], names[2 * i + 1], names[2 * i + 2]
        gr_u, gr_v = gradings[low]
        gradings[mid] = (gr_u + 1 - 2 * a, gr_v + 1)
        gradings[high] = (gr_u - 2 * a, gr_v + 2 * b)
        arrows.append((mid, 'U' if a == 1 else f'U^{a}', low))
        arrows.append((mid, 'V' if b == 1 else f'V^{b}', high))
    shift = gradings[names[-1]][1]
    gradings = {g: (u, v - shift) for g, (u, v) in gradings.items()}
    name = name or 'staircase_' + '_'.join(f'{a}{b}' for a, b in steps)
    return CFKComplex(_complex(name, gradings, arrows, Ring.F2_UV), name=name)
