"""
Coefficients in F2, F2[U] and F2[U,V]

A coefficient is a finite set of monomials U^i V^j; addition is symmetric
difference since the characteristic is 2.
"""

import re
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, MutableMapping, Optional, Tuple

from .exceptions import CoefficientOverflowError

Monomial = Tuple[int, int]

MONOMIAL_PATTERN = re.compile(r'^(?:U(?:\^(\d+))?)?(?:V(?:\^(\d+))?)?$')


@dataclass(frozen=True)
class Coefficient:
    terms: FrozenSet[Monomial] = frozenset()

    def __post_init__(self):
        for i, j in self.terms:
            if i < 0 or j < 0:
                raise ValueError(f'Negative exponent in monomial U^{i}V^{j}')

    @classmethod
    def monomial(cls, u: int = 0, v: int = 0) -> 'Coefficient':
        return cls(frozenset({(u, v)}))

    @classmethod
    def from_terms(cls, terms: Iterable[Monomial]) -> 'Coefficient':
        counts = Counter(terms)
        return cls(frozenset(m for m, c in counts.items() if c % 2))

    @classmethod
    def parse_monomial(cls, text: str) -> 'Coefficient':
        """Parse '1', 'U', 'U^3', 'V^2', 'UV', 'U^2V^5'"""
        if text == '1':
            return ONE
        match = MONOMIAL_PATTERN.match(text)
        if not text or match is None:
            raise ValueError(f"Not a monomial: '{text}'")
        u = 0 if 'U' not in text else int(match.group(1) or 1)
        v = 0 if 'V' not in text else int(match.group(2) or 1)
        return cls.monomial(u, v)

    def __add__(self, other: 'Coefficient') -> 'Coefficient':
        return Coefficient(self.terms ^ other.terms)

    def __mul__(self, other: 'Coefficient') -> 'Coefficient':
        return Coefficient.from_terms(
            (i + k, j + l) for i, j in self.terms for k, l in other.terms
        )

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_constant(self) -> bool:
        return self.terms <= {(0, 0)}

    @property
    def max_u_power(self) -> int:
        return max((i for i, _ in self.terms), default=0)

    @property
    def max_v_power(self) -> int:
        return max((j for _, j in self.terms), default=0)

    def hat(self) -> 'Coefficient':
        """Truncate at U = V = 0"""
        return Coefficient(self.terms & {(0, 0)})

    def at_v_zero(self) -> 'Coefficient':
        return Coefficient(frozenset(m for m in self.terms if m[1] == 0))

    def at_u_zero(self) -> 'Coefficient':
        return Coefficient(frozenset(m for m in self.terms if m[0] == 0))

    def evaluate_at_one(self) -> int:
        """Value in F2 after setting U = V = 1"""
        return len(self.terms) % 2

    def u_derivative(self) -> 'Coefficient':
        return Coefficient(frozenset((i - 1, j) for i, j in self.terms if i % 2))

    def shift(self, u: int = 0, v: int = 0) -> 'Coefficient':
        return Coefficient(frozenset((i + u, j + v) for i, j in self.terms))

    def check_cap(self, cap: int) -> 'Coefficient':
        if self.max_u_power > cap or self.max_v_power > cap:
            raise CoefficientOverflowError(
                f'Coefficient {self} exceeds exponent cap {cap}', cap=cap
            )
        return self

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        return ' + '.join(format_monomial(m) for m in sorted(self.terms))


ZERO = Coefficient()
ONE = Coefficient.monomial()
U = Coefficient.monomial(1, 0)
V = Coefficient.monomial(0, 1)


def format_monomial(monomial: Monomial) -> str:
    i, j = monomial
    if i == 0 and j == 0:
        return '1'
    text = ''
    if i:
        text += 'U' if i == 1 else f'U^{i}'
    if j:
        text += 'V' if j == 1 else f'V^{j}'
    return text


def add_term(accumulator: MutableMapping[Hashable, Coefficient], key: Hashable,
             coefficient: Coefficient = ONE) -> None:
    """Add coefficient at key in place, dropping the key when it cancels"""
    total = accumulator.get(key, ZERO) + coefficient
    if total:
        accumulator[key] = total
    else:
        accumulator.pop(key, None)


def toggle(accumulator: set, key: Hashable) -> None:
    if key in accumulator:
        accumulator.remove(key)
    else:
        accumulator.add(key)


def clean(mapping: Dict[Hashable, Coefficient], cap: Optional[int] = None) -> Dict[Hashable, Coefficient]:
    result = {k: c for k, c in mapping.items() if c}
    if cap is not None:
        for coefficient in result.values():
            coefficient.check_cap(cap)
    return result
