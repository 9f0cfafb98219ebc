"""
The grading group of the torus algebra

Elements (m; a, b) with m, a, b half-integers and a + b integral, stored as
doubled integers. The product is

    (m; a, b) . (m'; a', b') = (m + m' + (a b' - a' b); a + a', b + b')

and lambda = (1; 0, 0) is central.
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, Optional, Tuple

from django.conf import settings
from django.db import models

from torus_algebra.algebra import CHORD_PRODUCTS, AlgebraElement

logger = logging.getLogger(__name__)


def _half(n: int) -> str:
    return str(n // 2) if n % 2 == 0 else f'{n}/2'


@dataclass(frozen=True)
class GradingElement:
    m2: int = 0
    a2: int = 0
    b2: int = 0

    def __post_init__(self):
        if (self.a2 - self.b2) % 2:
            raise ValueError(f'spin components {_half(self.a2)}, {_half(self.b2)} do not sum to an integer')

    def __mul__(self, other: 'GradingElement') -> 'GradingElement':
        twist = (self.a2 * other.b2 - other.a2 * self.b2) // 2
        return GradingElement(self.m2 + other.m2 + twist, self.a2 + other.a2, self.b2 + other.b2)

    def inverse(self) -> 'GradingElement':
        return GradingElement(-self.m2, -self.a2, -self.b2)

    def __pow__(self, k: int) -> 'GradingElement':
        return GradingElement(k * self.m2, k * self.a2, k * self.b2)

    @property
    def is_identity(self) -> bool:
        return not (self.m2 or self.a2 or self.b2)

    @property
    def is_central(self) -> bool:
        return not (self.a2 or self.b2)

    def as_list(self):
        return [self.m2, self.a2, self.b2]

    def __str__(self) -> str:
        return f'({_half(self.m2)}; {_half(self.a2)}, {_half(self.b2)})'


IDENTITY = GradingElement()
LAMBDA = GradingElement(2, 0, 0)


def commutator(g: GradingElement, h: GradingElement) -> GradingElement:
    return g.inverse() * h.inverse() * g * h


class GradingConvention(models.TextChoices):
    STANDARD = 'standard', 'Standard'
    ROTATED = 'rotated', 'Spin rotated by a quarter turn'
    SHIFTED = 'shifted', 'Maslov shifted by a + b'


def _standard(g: GradingElement) -> GradingElement:
    return g


def _rotated(g: GradingElement) -> GradingElement:
    return GradingElement(g.m2, -g.b2, g.a2)


def _shifted(g: GradingElement) -> GradingElement:
    return GradingElement(g.m2 + g.a2 + g.b2, g.a2, g.b2)


# automorphisms fixing lambda
CONVENTIONS = {
    GradingConvention.STANDARD: _standard,
    GradingConvention.ROTATED: _rotated,
    GradingConvention.SHIFTED: _shifted,
}

BASE_CHORD_GRADINGS = {
    AlgebraElement.R1: GradingElement(-1, 1, -1),
    AlgebraElement.R2: GradingElement(-1, 1, 1),
    AlgebraElement.R3: GradingElement(-1, -1, 1),
}


def chord_gradings(convention: Optional[str] = None) -> Dict[AlgebraElement, GradingElement]:
    """Grading of every algebra element under a convention; products multiply"""
    convention = GradingConvention(convention or getattr(settings, 'BFX_GRADING_CONVENTION', 'standard'))
    transform = CONVENTIONS[convention]
    table: Dict[AlgebraElement, GradingElement] = {}
    for a in AlgebraElement:
        if a.is_idempotent:
            table[a] = IDENTITY
        elif a in BASE_CHORD_GRADINGS:
            table[a] = transform(BASE_CHORD_GRADINGS[a])
    for (a, b), c in CHORD_PRODUCTS.items():
        table.setdefault(c, table[a] * table[b])
    return table


class Subgroup:
    """
    Finitely generated subgroup with a membership test.

    The generators are brought to echelon form on their spin components by
    integer row reduction; what is left is central, and together with the
    commutator of the two echelon rows it gives the central part, cyclic
    with generator gcd.
    """

    def __init__(self, generators: Iterable[GradingElement] = ()):
        self.generators: Tuple[GradingElement, ...] = tuple(g for g in generators if not g.is_identity)
        rows = list(self.generators)
        self.first, rows = self._echelon(rows, lambda g: g.a2)
        self.second, rows = self._echelon(rows, lambda g: g.b2)
        central = [g.m2 for g in rows]
        if self.first is not None and self.second is not None:
            central.append(commutator(self.first, self.second).m2)
        self.center = 0
        for value in central:
            self.center = gcd(self.center, value)

    @staticmethod
    def _echelon(rows, key):
        active = [g for g in rows if key(g)]
        rest = [g for g in rows if not key(g)]
        while len(active) > 1:
            active.sort(key=lambda g: abs(key(g)))
            pivot = active[0]
            reduced = []
            for g in active[1:]:
                g = g * pivot ** (-(key(g) // key(pivot)))
                (reduced if key(g) else rest).append(g)
            active = [pivot] + reduced
        return (active[0] if active else None), rest

    def __contains__(self, g: GradingElement) -> bool:
        if self.first is not None:
            if g.a2 % self.first.a2:
                return False
            g = self.first ** (-(g.a2 // self.first.a2)) * g
        elif g.a2:
            return False
        if self.second is not None:
            if g.b2 % self.second.b2:
                return False
            g = self.second ** (-(g.b2 // self.second.b2)) * g
        elif g.b2:
            return False
        return g.m2 == 0 if self.center == 0 else g.m2 % self.center == 0

    @property
    def is_trivial(self) -> bool:
        return not self.generators

    def joined(self, *others: 'Subgroup', extra: Iterable[GradingElement] = ()) -> 'Subgroup':
        generators = list(self.generators)
        for other in others:
            generators.extend(other.generators)
        generators.extend(extra)
        return Subgroup(generators)

    def double_coset(self, element: GradingElement, other: Optional['Subgroup'] = None) -> 'Subgroup':
        """
        Subgroup K with (self) e (other) contained in e K.

        Conjugating by e changes an element by a central commutator, so
        K = <self, other, [p, e] for p generating self>; equality holds when
        other is self.
        """
        other = other if other is not None else self
        return self.joined(other, extra=[commutator(p, element) for p in self.generators])

    def same_coset(self, g: GradingElement, h: GradingElement) -> bool:
        """g^-1 h in the subgroup"""
        return g.inverse() * h in self

    def __repr__(self) -> str:
        return f'Subgroup({", ".join(str(g) for g in self.generators) or "1"})'
