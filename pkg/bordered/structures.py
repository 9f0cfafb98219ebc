"""
Type-D and type-A structures over the torus algebra, and type-D morphisms
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from f2core.polynomials import ONE, Coefficient, add_term
from torus_algebra.algebra import (
    FACTORIZATIONS,
    AlgebraElement,
    Idempotent,
    element,
    idempotent_compatible,
    multiply,
    unit,
)

from .exceptions import StructureValidationError

logger = logging.getLogger(__name__)

Component = Tuple[str, AlgebraElement, str]

MODES = ('hat', 'minus')


def _as_element(label) -> AlgebraElement:
    return label if isinstance(label, AlgebraElement) else element(label)


def _idempotent(value) -> Idempotent:
    if isinstance(value, str):
        value = {'i0': 0, 'i1': 1}.get(value, value)
    return Idempotent(int(value))


def _toggle_ordered(items: Iterable[tuple]) -> Tuple[tuple, ...]:
    """Cancel repeated entries in pairs, keeping first-seen order"""
    counts: Dict[tuple, int] = {}
    order: List[tuple] = []
    for item in items:
        if item not in counts:
            order.append(item)
            counts[item] = 0
        counts[item] += 1
    return tuple(item for item in order if counts[item] % 2)


@dataclass
class ValidityReport:
    """Report-style result: valid iff no violations were recorded"""

    subject: str
    violations: List[Dict] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, kind: str, generator: str, message: str, path: Optional[List[str]] = None):
        self.violations.append({
            'kind': kind,
            'generator': generator,
            'message': message,
            'path': path or [],
        })

    def as_dict(self) -> Dict:
        return {'subject': self.subject, 'valid': self.valid, 'violations': self.violations}

    def raise_if_invalid(self):
        if self.violations:
            first = self.violations[0]
            raise StructureValidationError(
                f"{self.subject}: {first['message']}", generator=first['generator'], path=first['path']
            )


class TypeDStructure:
    """
    Generators with idempotents and a delta^1 map x -> sum of a (x) y.

    Arrows are (source, algebra element, target) triples; a repeated arrow
    cancels. grading_hints optionally pins the grading of some generators
    (doubled integers [m, a, b]).
    """

    def __init__(self, generators: Mapping[str, int], arrows: Iterable[Sequence] = (),
                 name: str = '', grading_hints: Optional[Mapping[str, Tuple[int, int, int]]] = None):
        self.name = name
        self.generators: Dict[str, Idempotent] = {g: _idempotent(i) for g, i in generators.items()}
        parsed = []
        for source, label, target in arrows:
            for g in (source, target):
                if g not in self.generators:
                    raise StructureValidationError(f'Arrow uses undeclared generator {g}', generator=g)
            parsed.append((source, _as_element(label), target))
        self.arrows: Tuple[Component, ...] = _toggle_ordered(parsed)
        self.grading_hints: Dict[str, Tuple[int, int, int]] = {
            g: tuple(v) for g, v in (grading_hints or {}).items()
        }
        for g in self.grading_hints:
            if g not in self.generators:
                raise StructureValidationError(f'Grading given for undeclared generator {g}', generator=g)

        self._outgoing: Dict[str, List[Tuple[AlgebraElement, str]]] = {g: [] for g in self.generators}
        self._incoming: Dict[str, List[Tuple[str, AlgebraElement]]] = {g: [] for g in self.generators}
        for source, label, target in self.arrows:
            self._outgoing[source].append((label, target))
            self._incoming[target].append((source, label))

    def __repr__(self) -> str:
        return f'TypeDStructure({self.name or "?"}, {len(self.generators)} generators, {len(self.arrows)} arrows)'

    def __len__(self) -> int:
        return len(self.generators)

    def delta1(self, x: str) -> List[Tuple[AlgebraElement, str]]:
        return list(self._outgoing[x])

    def incoming(self, y: str) -> List[Tuple[str, AlgebraElement]]:
        return list(self._incoming[y])

    def idempotent(self, x: str) -> Idempotent:
        return self.generators[x]

    def with_arrows(self, extra: Iterable[Sequence], name: str = None) -> 'TypeDStructure':
        """Copy with additional arrows (an arrow already present cancels)"""
        return TypeDStructure(self.generators, list(self.arrows) + list(extra),
                              name=name or self.name, grading_hints=self.grading_hints)

    def renamed(self, mapping: Mapping[str, str], name: str = None) -> 'TypeDStructure':
        return TypeDStructure(
            {mapping.get(g, g): i for g, i in self.generators.items()},
            [(mapping.get(x, x), a, mapping.get(y, y)) for x, a, y in self.arrows],
            name=name or self.name,
            grading_hints={mapping.get(g, g): v for g, v in self.grading_hints.items()},
        )

    def restricted(self, generators: Iterable[str], name: str = '') -> 'TypeDStructure':
        keep = set(generators)
        return TypeDStructure(
            {g: i for g, i in self.generators.items() if g in keep},
            [(x, a, y) for x, a, y in self.arrows if x in keep and y in keep],
            name=name or self.name,
            grading_hints={g: v for g, v in self.grading_hints.items() if g in keep},
        )

    @classmethod
    def direct_sum(cls, parts: Sequence['TypeDStructure'], name: str = '') -> 'TypeDStructure':
        generators: Dict[str, int] = {}
        arrows: List[Component] = []
        for part in parts:
            for g, i in part.generators.items():
                if g in generators:
                    raise StructureValidationError(f'Generator {g} appears in two summands', generator=g)
                generators[g] = i
            arrows.extend(part.arrows)
        return cls(generators, arrows, name=name)


def check_type_d(structure: TypeDStructure) -> ValidityReport:
    """
    Idempotent compatibility of every arrow and the structure equation
    sum over x -> a.y -> b.z of (a b).z = 0.
    """
    report = ValidityReport(subject=structure.name or 'type-D structure')
    for x, a, y in structure.arrows:
        if not idempotent_compatible(a, structure.idempotent(x), structure.idempotent(y)):
            report.add(
                'idempotent', x,
                f'arrow {x} -{a.value}-> {y} clashes with idempotents '
                f'({structure.idempotent(x).label}, {structure.idempotent(y).label})',
                path=[x, a.value, y],
            )
    if not report.valid:
        return report

    for x in structure.generators:
        total: Dict[Tuple[AlgebraElement, str], Coefficient] = {}
        witnesses: Dict[Tuple[AlgebraElement, str], List[str]] = {}
        for a, y in structure.delta1(x):
            for b, z in structure.delta1(y):
                product = multiply(a, b)
                if product is not None:
                    add_term(total, (product, z), ONE)
                    witnesses.setdefault((product, z), [x, a.value, y, b.value, z])
        for (product, z) in total:
            report.add(
                'structure_equation', x,
                f'delta^2 of {x} contains {product.value}.{z}',
                path=witnesses[(product, z)],
            )
            break
    if report.valid:
        logger.debug(f'{report.subject}: type-D structure equation holds')
    else:
        logger.warning(f'{report.subject}: {len(report.violations)} violation(s)')
    return report


@dataclass(frozen=True)
class Action:
    """m(source; inputs) contains U^u_power . target"""

    source: str
    inputs: Tuple[AlgebraElement, ...]
    target: str
    u_power: int = 0

    def describe(self) -> str:
        inputs = ','.join(a.value for a in self.inputs)
        power = f'U^{self.u_power} ' if self.u_power else ''
        return f'm({self.source}; {inputs}) = {power}{self.target}'


class TypeAStructure:
    """
    A right A-infinity module over the torus algebra given by a finite list of
    actions. In hat mode every action has U-power 0.
    """

    def __init__(self, generators: Mapping[str, int], actions: Iterable, mode: str = 'hat', name: str = ''):
        if mode not in MODES:
            raise StructureValidationError(f"Unknown mode '{mode}'")
        self.name = name
        self.mode = mode
        self.generators: Dict[str, Idempotent] = {g: _idempotent(i) for g, i in generators.items()}

        parsed = []
        for entry in actions:
            action = entry if isinstance(entry, Action) else self._coerce(entry)
            for g in (action.source, action.target):
                if g not in self.generators:
                    raise StructureValidationError(f'Action uses undeclared generator {g}', generator=g)
            if mode == 'hat' and action.u_power:
                raise StructureValidationError(
                    f'Hat-mode action with U-power: {action.describe()}', generator=action.source
                )
            parsed.append(action)
        self.actions: Tuple[Action, ...] = _toggle_ordered(parsed)

        self._table: Dict[Tuple[str, Tuple[AlgebraElement, ...]], Dict[str, Coefficient]] = {}
        self._prefixes: Set[Tuple[str, Tuple[AlgebraElement, ...]]] = set()
        for action in self.actions:
            add_term(self._table.setdefault((action.source, action.inputs), {}),
                     action.target, Coefficient.monomial(action.u_power))
            for i in range(1, len(action.inputs) + 1):
                self._prefixes.add((action.source, action.inputs[:i]))

    @staticmethod
    def _coerce(entry) -> Action:
        source, inputs, target, *rest = entry
        return Action(source, tuple(_as_element(a) for a in inputs), target, rest[0] if rest else 0)

    def __repr__(self) -> str:
        return f'TypeAStructure({self.name or "?"}, {self.mode}, {len(self.generators)} generators, {len(self.actions)} actions)'

    def __len__(self) -> int:
        return len(self.generators)

    def idempotent(self, x: str) -> Idempotent:
        return self.generators[x]

    def act(self, x: str, inputs: Sequence[AlgebraElement]) -> Dict[str, Coefficient]:
        return dict(self._table.get((x, tuple(inputs)), {}))

    def is_prefix(self, x: str, inputs: Sequence[AlgebraElement]) -> bool:
        return (x, tuple(inputs)) in self._prefixes

    @property
    def max_action_length(self) -> int:
        return max((len(a.inputs) for a in self.actions), default=0)

    @property
    def has_m1(self) -> bool:
        return any(not a.inputs for a in self.actions)


def _candidate_sequences(module: TypeAStructure) -> List[Tuple[str, Tuple[AlgebraElement, ...]]]:
    """Input sequences on which an A-infinity relation can have nonzero terms"""
    seen = set()
    ordered = []

    def add(candidate):
        if candidate not in seen:
            seen.add(candidate)
            ordered.append(candidate)

    for first in module.actions:
        for second in module.actions:
            if second.source == first.target:
                add((first.source, first.inputs + second.inputs))
        for j, chord in enumerate(first.inputs):
            for left, right in FACTORIZATIONS.get(chord, ()):
                add((first.source, first.inputs[:j] + (left, right) + first.inputs[j + 1:]))
    return ordered


def _input_chain_problem(module: TypeAStructure, action: Action) -> Optional[str]:
    current = module.idempotent(action.source)
    for a in action.inputs:
        if a.is_idempotent:
            return 'idempotent input'
        if a.left != current:
            return f'input {a.value} does not start at {current.label}'
        current = a.right
    if current != module.idempotent(action.target):
        return f'output {action.target} does not sit at {current.label}'
    return None


def check_type_a(module: TypeAStructure) -> ValidityReport:
    """
    Input-chain idempotent compatibility and the A-infinity relations

        sum_i m(m(x; a_1..a_i); a_i+1..a_k) + sum_j m(x; .., a_j a_j+1, ..) = 0

    on every sequence where some term can be nonzero.
    """
    report = ValidityReport(subject=module.name or 'type-A structure')
    for action in module.actions:
        problem = _input_chain_problem(module, action)
        if problem:
            report.add('idempotent', action.source, f'{problem} in {action.describe()}')
    if not report.valid:
        return report

    for x, sequence in _candidate_sequences(module):
        total: Dict[str, Coefficient] = {}
        for i in range(len(sequence) + 1):
            for y, c in module.act(x, sequence[:i]).items():
                for z, d in module.act(y, sequence[i:]).items():
                    add_term(total, z, c * d)
        for j in range(len(sequence) - 1):
            product = multiply(sequence[j], sequence[j + 1])
            if product is None:
                continue
            merged = sequence[:j] + (product,) + sequence[j + 2:]
            for z, c in module.act(x, merged).items():
                add_term(total, z, c)
        if total:
            z = next(iter(total))
            report.add(
                'a_infinity', x,
                f"A-infinity relation fails on ({x}; {','.join(a.value for a in sequence)}): output {z}",
                path=[x] + [a.value for a in sequence],
            )
    if report.valid:
        logger.debug(f'{report.subject}: A-infinity relations hold')
    else:
        logger.warning(f'{report.subject}: {len(report.violations)} A-infinity violation(s)')
    return report


class DMorphism:
    """
    A map of type-D structures, x -> sum of a (x) y, stored as a set of
    components (x, a, y). Components are idempotent-checked on construction.
    """

    def __init__(self, source: TypeDStructure, target: TypeDStructure,
                 components: Iterable[Sequence] = (), name: str = ''):
        self.source = source
        self.target = target
        self.name = name
        parsed = []
        for x, label, y in components:
            a = _as_element(label)
            if x not in source.generators:
                raise StructureValidationError(f'{name or "morphism"}: unknown source generator {x}', generator=x)
            if y not in target.generators:
                raise StructureValidationError(f'{name or "morphism"}: unknown target generator {y}', generator=y)
            if not idempotent_compatible(a, source.idempotent(x), target.idempotent(y)):
                raise StructureValidationError(
                    f'{name or "morphism"}: component {x} -> {a.value}.{y} is not idempotent-compatible',
                    generator=x, path=[x, a.value, y],
                )
            parsed.append((x, a, y))
        self.components: Tuple[Component, ...] = _toggle_ordered(parsed)

    def __repr__(self) -> str:
        return f'DMorphism({self.name or "?"}: {self.source.name} -> {self.target.name}, {len(self.components)} components)'

    def __eq__(self, other) -> bool:
        return (isinstance(other, DMorphism) and self.source is other.source
                and self.target is other.target and set(self.components) == set(other.components))

    def __hash__(self) -> int:
        return hash(frozenset(self.components))

    def __add__(self, other: 'DMorphism') -> 'DMorphism':
        return DMorphism(self.source, self.target, self.components + other.components,
                         name=f'{self.name}+{other.name}')

    @property
    def is_zero(self) -> bool:
        return not self.components

    def component_set(self) -> FrozenSet[Component]:
        return frozenset(self.components)

    def image(self, x: str) -> List[Tuple[AlgebraElement, str]]:
        return [(a, y) for s, a, y in self.components if s == x]

    def then(self, other: 'DMorphism', name: str = '') -> 'DMorphism':
        """Composite: first self, then other; algebra labels multiply left to right"""
        composed = []
        for x, a, y in self.components:
            for b, z in other.image(y):
                product = multiply(a, b)
                if product is not None:
                    composed.append((x, product, z))
        return DMorphism(self.source, other.target, composed, name=name)

    def as_dict(self) -> Dict[str, List[List[str]]]:
        result: Dict[str, List[List[str]]] = {}
        for x, a, y in self.components:
            result.setdefault(x, []).append([a.value, y])
        return result

    @classmethod
    def identity(cls, structure: TypeDStructure) -> 'DMorphism':
        return cls(structure, structure,
                   [(x, unit(i), x) for x, i in structure.generators.items()], name='id')

    @classmethod
    def zero(cls, source: TypeDStructure, target: TypeDStructure) -> 'DMorphism':
        return cls(source, target, [], name='0')
