"""
The shipped fixture corpus: every fixture with its constructor and the file
it is stored in under BFX_FIXTURE_DIR
"""

from dataclasses import dataclass
from functools import partial
from typing import Callable, Dict

from bordered.exceptions import StructureValidationError

from . import fixtures
from .morphisms import END_NAMES, MOR_NAMES, cycle_morphisms


@dataclass(frozen=True)
class Fixture:
    name: str
    filename: str
    build: Callable
    provenance: str


def _morphism(name: str):
    return cycle_morphisms()[name]


_ENTRIES = [
    Fixture('cfd_trefoil', 'cfd_trefoil.bfd', fixtures.cfd_trefoil,
            'bordered invariant of the 0-framed trefoil complement, as drawn'),
    Fixture('square', 'square.bfd', fixtures.square_module,
            'summand of the figure-eight complement on a, b, c, e, y1..y4'),
    Fixture('cfd_figure_eight', 'cfd_figure_eight.bfd', fixtures.cfd_figure_eight,
            'bordered invariant of the 0-framed figure-eight complement, as drawn'),
    Fixture('cable_1', 'cable_1.bfa', partial(fixtures.cable_cfa_hat, 1),
            '(3, -1) cable pattern, hat flavor, with closure actions'),
    Fixture('C2', 'C2.ick', partial(fixtures.standard_complex, 2), 'standard complex C_2'),
    Fixture('C3', 'C3.ick', partial(fixtures.standard_complex, 3), 'standard complex C_3'),
    Fixture('trivial', 'trivial.ick', fixtures.trivial, 'F2[U] on one generator, iota = id'),
    Fixture('E', 'E.ick', fixtures.figure_eight_horizontal, 'horizontal truncation of the figure-eight complex'),
    Fixture('T', 'T.ick', fixtures.trefoil_horizontal, 'horizontal truncation of the trefoil complex'),
    Fixture('cfk_unknot', 'cfk_unknot.ick', fixtures.cfk_unknot, 'unknot over F2[U,V]'),
    Fixture('cfk_trefoil', 'cfk_trefoil.ick', fixtures.cfk_trefoil, 'right-handed trefoil over F2[U,V]'),
    Fixture('cfk_figure_eight', 'cfk_figure_eight.ick', fixtures.cfk_figure_eight,
            'figure-eight knot over F2[U,V]'),
    Fixture('wh_double', 'wh_double.ick', fixtures.wh_double_trefoil_cfk,
            'positive Whitehead double of the trefoil, 15 generators with iota'),
]
_ENTRIES += [
    Fixture(name, f'{name}.bfm', partial(_morphism, name),
            'Mor(cfd_trefoil, square) generator' if name in MOR_NAMES else 'End(cfd_trefoil) generator')
    for name in MOR_NAMES + END_NAMES
]

FIXTURES: Dict[str, Fixture] = {fixture.name: fixture for fixture in _ENTRIES}


def build(name: str):
    try:
        fixture = FIXTURES[name]
    except KeyError:
        raise StructureValidationError(f"Unknown fixture '{name}'")
    return fixture.build()
