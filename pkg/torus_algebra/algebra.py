"""
The torus algebra A(T^2)

Two idempotents and six Reeb chords. The algebra differential is zero, so
the only structure is the multiplication table below.
"""

from typing import Dict, Optional, Tuple

from django.db import models


class Idempotent(models.IntegerChoices):
    ZERO = 0, 'ι₀'
    ONE = 1, 'ι₁'


class AlgebraElement(models.TextChoices):
    I0 = 'i0', 'ι₀'
    I1 = 'i1', 'ι₁'
    R1 = 'r1', 'ρ₁'
    R2 = 'r2', 'ρ₂'
    R3 = 'r3', 'ρ₃'
    R12 = 'r12', 'ρ₁₂'
    R23 = 'r23', 'ρ₂₃'
    R123 = 'r123', 'ρ₁₂₃'

    @property
    def left(self) -> Idempotent:
        return IDEMPOTENTS[self][0]

    @property
    def right(self) -> Idempotent:
        return IDEMPOTENTS[self][1]

    @property
    def is_idempotent(self) -> bool:
        return self in (AlgebraElement.I0, AlgebraElement.I1)


# (left, right) idempotents; every arrow of the bundled diagrams type-checks
IDEMPOTENTS: Dict[AlgebraElement, Tuple[Idempotent, Idempotent]] = {
    AlgebraElement.I0: (Idempotent.ZERO, Idempotent.ZERO),
    AlgebraElement.I1: (Idempotent.ONE, Idempotent.ONE),
    AlgebraElement.R1: (Idempotent.ZERO, Idempotent.ONE),
    AlgebraElement.R2: (Idempotent.ONE, Idempotent.ZERO),
    AlgebraElement.R3: (Idempotent.ZERO, Idempotent.ONE),
    AlgebraElement.R12: (Idempotent.ZERO, Idempotent.ZERO),
    AlgebraElement.R23: (Idempotent.ONE, Idempotent.ONE),
    AlgebraElement.R123: (Idempotent.ZERO, Idempotent.ONE),
}

CHORD_PRODUCTS: Dict[Tuple[AlgebraElement, AlgebraElement], AlgebraElement] = {
    (AlgebraElement.R1, AlgebraElement.R2): AlgebraElement.R12,
    (AlgebraElement.R2, AlgebraElement.R3): AlgebraElement.R23,
    (AlgebraElement.R1, AlgebraElement.R23): AlgebraElement.R123,
    (AlgebraElement.R12, AlgebraElement.R3): AlgebraElement.R123,
}

# every way of writing a chord as a product of two chords
FACTORIZATIONS: Dict[AlgebraElement, Tuple[Tuple[AlgebraElement, AlgebraElement], ...]] = {}
for (_a, _b), _c in CHORD_PRODUCTS.items():
    FACTORIZATIONS[_c] = FACTORIZATIONS.get(_c, ()) + ((_a, _b),)

CHORDS = tuple(a for a in AlgebraElement if not a.is_idempotent)


def unit(idempotent: int) -> AlgebraElement:
    return AlgebraElement.I0 if idempotent == Idempotent.ZERO else AlgebraElement.I1


def element(name: str) -> AlgebraElement:
    """Look up by textual name ('r12') or raise ValueError"""
    try:
        return AlgebraElement(name)
    except ValueError:
        raise ValueError(f"Unknown algebra element '{name}'; expected one of {', '.join(AlgebraElement.values)}")


def multiply(a: Optional[AlgebraElement], b: Optional[AlgebraElement]) -> Optional[AlgebraElement]:
    """
    Product in A(T^2); None is the zero element.

    Nonzero only for idempotent units and the four chord concatenations.
    """
    if a is None or b is None:
        return None
    if a.right != b.left:
        return None
    if a.is_idempotent:
        return b
    if b.is_idempotent:
        return a
    return CHORD_PRODUCTS.get((a, b))


def idempotent_compatible(a: AlgebraElement, gen_left: int, gen_right: int) -> bool:
    return a.left == gen_left and a.right == gen_right


def multiply_sequence(elements) -> Optional[AlgebraElement]:
    result = None
    for i, a in enumerate(elements):
        result = a if i == 0 else multiply(result, a)
        if result is None:
            return None
    return result
