"""
Line-oriented text format for type-D/type-A structures, complexes and morphisms

A file is a header followed by stanzas, one per line:

    kind typeD | typeA | complexU | complexUV | morphism
    algebra torus
    mode hat | minus                      (typeA)
    name <name>
    source <name> / target <name>         (morphism)
    gen <name> i0|i1 [m a b]              (typeD)
    gen <name> i0|i1                      (typeA)
    gen <name> [grU grV]                  (complexU, complexUV)
    arrow <x> <chord> <y>
    action <x> <a1,a2,...|-> -> <y> [U^k]
    diff <x> <monomial> <y>
    iota <x> <y>
    map <x> <element> <y>

Lines starting with '#' and blank lines are ignored. serialize writes the
canonical form: header in the order above, then generators, then the
remaining stanzas in stored order.
"""

import hashlib
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union

from django.db import models

from bordered.structures import Action, DMorphism, TypeAStructure, TypeDStructure, check_type_a, check_type_d
from f2core.complexes import ChainComplex, Ring
from f2core.exceptions import BorderedFloerError
from f2core.polynomials import Coefficient, add_term, format_monomial
from involutive.complexes import CFKComplex, IotaComplex
from knotlib.catalog import build
from torus_algebra.algebra import element

from .exceptions import FormatError

logger = logging.getLogger(__name__)

TOKEN = re.compile(r'\S+')
IDEMPOTENT_NAMES = {'i0': 0, 'i1': 1}
NO_INPUTS = '-'


class Kind(models.TextChoices):
    TYPE_D = 'typeD', 'type-D structure'
    TYPE_A = 'typeA', 'type-A structure'
    COMPLEX_U = 'complexU', 'complex over F2[U] with iota'
    COMPLEX_UV = 'complexUV', 'knot complex over F2[U,V]'
    MORPHISM = 'morphism', 'type-D morphism'


EXTENSIONS = {
    '.bfd': (Kind.TYPE_D,),
    '.bfa': (Kind.TYPE_A,),
    '.ick': (Kind.COMPLEX_U, Kind.COMPLEX_UV),
    '.bfm': (Kind.MORPHISM,),
}

HEADER_KEYWORDS = ('kind', 'algebra', 'mode', 'name', 'source', 'target')

STANZAS = {
    Kind.TYPE_D: ('gen', 'arrow'),
    Kind.TYPE_A: ('gen', 'action'),
    Kind.COMPLEX_U: ('gen', 'diff', 'iota'),
    Kind.COMPLEX_UV: ('gen', 'diff', 'iota'),
    Kind.MORPHISM: ('map',),
}

Parsed = Union[TypeDStructure, TypeAStructure, IotaComplex, CFKComplex, DMorphism]
Resolver = Callable[[str], TypeDStructure]


@dataclass
class Token:
    text: str
    column: int


@dataclass
class Statement:
    keyword: Token
    args: List[Token]
    line: int


def _tokenize(text: str) -> List[Statement]:
    statements = []
    for number, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith('#'):
            continue
        tokens = [Token(m.group(), m.start() + 1) for m in TOKEN.finditer(raw)]
        statements.append(Statement(tokens[0], tokens[1:], number))
    return statements


class _Reader:
    def __init__(self, text: str, source: str = '', resolver: Optional[Resolver] = None):
        self.source = source
        self.resolver = resolver
        self.statements = _tokenize(text)
        self.header: Dict[str, Token] = {}
        self.kind: Optional[Kind] = None
        # generator -> line of its declaration
        self.sites: Dict[str, int] = {}

    def error(self, message: str, line: Optional[int] = None, column: Optional[int] = None) -> FormatError:
        return FormatError(message, line, column, self.source)

    def expect(self, statement: Statement, counts: Tuple[int, ...]) -> None:
        n = len(statement.args)
        if n in counts:
            return
        if n > max(counts):
            raise self.error(f"unexpected '{statement.args[max(counts)].text}' in {statement.keyword.text} stanza",
                             statement.line, statement.args[max(counts)].column)
        end = statement.args[-1] if statement.args else statement.keyword
        raise self.error(f'{statement.keyword.text} stanza needs {min(counts)} argument(s), got {n}',
                         statement.line, end.column + len(end.text))

    def declared(self, token: Token, line: int) -> str:
        if token.text not in self.sites:
            raise self.error(f"undeclared generator '{token.text}'", line, token.column)
        return token.text

    def integer(self, token: Token, line: int) -> int:
        try:
            return int(token.text)
        except ValueError:
            raise self.error(f"expected an integer, got '{token.text}'", line, token.column)

    def algebra_element(self, token: Token, line: int):
        try:
            return element(token.text)
        except ValueError as e:
            raise self.error(str(e), line, token.column)

    def monomial(self, token: Token, line: int) -> Coefficient:
        try:
            return Coefficient.parse_monomial(token.text)
        except ValueError as e:
            raise self.error(str(e), line, token.column)

    def read_header(self) -> List[Statement]:
        if not self.statements:
            raise self.error('empty file', 1, 1)
        first = self.statements[0]
        if first.keyword.text != 'kind':
            raise self.error("file must start with a 'kind' line", first.line, first.keyword.column)
        body = []
        for statement in self.statements:
            keyword = statement.keyword.text
            if keyword in HEADER_KEYWORDS:
                if body:
                    raise self.error(f"'{keyword}' must precede the first stanza", statement.line,
                                     statement.keyword.column)
                if keyword in self.header:
                    raise self.error(f"duplicate '{keyword}' line", statement.line, statement.keyword.column)
                self.expect(statement, (1,))
                self.header[keyword] = statement.args[0]
            else:
                body.append(statement)

        kind_token = self.header['kind']
        try:
            self.kind = Kind(kind_token.text)
        except ValueError:
            raise self.error(f"unknown kind '{kind_token.text}'", first.line, kind_token.column)
        algebra = self.header.get('algebra')
        if algebra is not None and algebra.text != 'torus':
            raise self.error(f"unsupported algebra '{algebra.text}'", self._line_of('algebra'), algebra.column)
        if 'mode' in self.header:
            if self.kind != Kind.TYPE_A:
                raise self.error('mode is only meaningful for typeA files', self._line_of('mode'), 1)
            if self.header['mode'].text not in ('hat', 'minus'):
                raise self.error(f"unknown mode '{self.header['mode'].text}'", self._line_of('mode'),
                                 self.header['mode'].column)
        for keyword in ('source', 'target'):
            if self.kind == Kind.MORPHISM and keyword not in self.header:
                raise self.error(f"morphism files need a '{keyword}' line", first.line, 1)

        allowed = STANZAS[self.kind]
        for statement in body:
            if statement.keyword.text not in allowed:
                raise self.error(f"'{statement.keyword.text}' is not a {self.kind.value} stanza",
                                 statement.line, statement.keyword.column)
        return body

    def _line_of(self, keyword: str) -> Optional[int]:
        for statement in self.statements:
            if statement.keyword.text == keyword:
                return statement.line
        return None

    @property
    def name(self) -> str:
        token = self.header.get('name')
        return token.text if token is not None else ''

    def read_generators(self, body: List[Statement], with_idempotent: bool) -> Dict[str, Tuple[Token, ...]]:
        generators: Dict[str, Tuple[Token, ...]] = {}
        for statement in body:
            if statement.keyword.text != 'gen':
                continue
            if not statement.args:
                self.expect(statement, (1,))
            name = statement.args[0]
            if name.text in generators:
                raise self.error(f"generator '{name.text}' declared twice", statement.line, name.column)
            if with_idempotent and statement.args[1:2] and statement.args[1].text not in IDEMPOTENT_NAMES:
                raise self.error(f"expected i0 or i1, got '{statement.args[1].text}'", statement.line,
                                 statement.args[1].column)
            generators[name.text] = tuple(statement.args[1:])
            self.sites[name.text] = statement.line
        return generators

    def build(self, factory: Callable[[], Parsed]) -> Parsed:
        """Run a constructor and pin semantic errors to the declaration of the offending generator"""
        try:
            return factory()
        except FormatError:
            raise
        except BorderedFloerError as e:
            generator = e.details.get('generator')
            line = self.sites.get(generator) if generator else None
            raise self.error(e.message, line, 1 if line else None) from e

    # kinds

    def type_d(self, body: List[Statement]) -> TypeDStructure:
        generators, hints = {}, {}
        for statement in body:
            if statement.keyword.text == 'gen':
                self.expect(statement, (2, 5))
        for name, args in self.read_generators(body, with_idempotent=True).items():
            generators[name] = IDEMPOTENT_NAMES[args[0].text]
            if len(args) == 4:
                hints[name] = tuple(self.integer(t, self.sites[name]) for t in args[1:])
        arrows = []
        for statement in body:
            if statement.keyword.text != 'arrow':
                continue
            self.expect(statement, (3,))
            x, a, y = statement.args
            arrows.append((self.declared(x, statement.line), self.algebra_element(a, statement.line),
                           self.declared(y, statement.line)))

        def construct():
            structure = TypeDStructure(generators, arrows, name=self.name, grading_hints=hints or None)
            check_type_d(structure).raise_if_invalid()
            return structure
        return self.build(construct)

    def type_a(self, body: List[Statement]) -> TypeAStructure:
        generators = {}
        for statement in body:
            if statement.keyword.text == 'gen':
                self.expect(statement, (2,))
        for name, args in self.read_generators(body, with_idempotent=True).items():
            generators[name] = IDEMPOTENT_NAMES[args[0].text]
        mode = self.header['mode'].text if 'mode' in self.header else 'hat'
        actions = []
        for statement in body:
            if statement.keyword.text != 'action':
                continue
            self.expect(statement, (4, 5))
            x, inputs, arrow, y = statement.args[:4]
            if arrow.text != '->':
                raise self.error(f"expected '->', got '{arrow.text}'", statement.line, arrow.column)
            labels = [] if inputs.text == NO_INPUTS else inputs.text.split(',')
            elements = tuple(self.algebra_element(Token(label, inputs.column), statement.line) for label in labels)
            power = 0
            if len(statement.args) == 5:
                coefficient = self.monomial(statement.args[4], statement.line)
                (power, v_power), = coefficient.terms
                if v_power:
                    raise self.error('type-A actions carry powers of U only', statement.line,
                                     statement.args[4].column)
            actions.append(Action(self.declared(x, statement.line), elements, self.declared(y, statement.line), power))

        def construct():
            module = TypeAStructure(generators, actions, mode=mode, name=self.name)
            check_type_a(module).raise_if_invalid()
            return module
        return self.build(construct)

    def complex_(self, body: List[Statement]) -> Union[IotaComplex, CFKComplex]:
        declared = self.read_generators(body, with_idempotent=False)
        gradings: Dict[str, Tuple[int, int]] = {}
        for statement in body:
            if statement.keyword.text == 'gen':
                self.expect(statement, (1, 3))
                if len(statement.args) == 3:
                    gradings[statement.args[0].text] = (self.integer(statement.args[1], statement.line),
                                                        self.integer(statement.args[2], statement.line))
        if gradings and len(gradings) != len(declared):
            missing = next(g for g in declared if g not in gradings)
            raise self.error(f"generator '{missing}' has no bidegree", self.sites[missing], 1)

        ring = Ring.F2_U if self.kind == Kind.COMPLEX_U else Ring.F2_UV
        differential: Dict[str, Dict[str, Coefficient]] = {}
        iota: Dict[str, List[str]] = {}
        for statement in body:
            keyword = statement.keyword.text
            if keyword == 'diff':
                self.expect(statement, (3,))
                x, monomial, y = statement.args
                add_term(differential.setdefault(self.declared(x, statement.line), {}),
                         self.declared(y, statement.line), self.monomial(monomial, statement.line))
            elif keyword == 'iota':
                self.expect(statement, (2,))
                x, y = statement.args
                iota.setdefault(self.declared(x, statement.line), []).append(self.declared(y, statement.line))

        def construct():
            complex_ = ChainComplex(list(declared), differential, ring, gradings=gradings or None, name=self.name)
            complex_.check_d_squared()
            if self.kind == Kind.COMPLEX_U:
                return IotaComplex(complex_, iota, name=self.name)
            return CFKComplex(complex_, iota or None, name=self.name)
        return self.build(construct)

    def morphism(self, body: List[Statement]) -> DMorphism:
        if self.resolver is None:
            raise self.error('morphism files need a resolver for their source and target', 1, 1)
        ends = {}
        for keyword in ('source', 'target'):
            token = self.header[keyword]
            try:
                ends[keyword] = self.resolver(token.text)
            except (BorderedFloerError, OSError) as e:
                raise self.error(f"cannot load {keyword} '{token.text}': {e}", self._line_of(keyword), token.column)
        self.sites.update({g: self._line_of('source') for g in ends['source'].generators})
        targets = set(ends['target'].generators)
        components = []
        for statement in body:
            self.expect(statement, (3,))
            x, a, y = statement.args
            if y.text not in targets:
                raise self.error(f"undeclared generator '{y.text}'", statement.line, y.column)
            components.append((self.declared(x, statement.line), self.algebra_element(a, statement.line), y.text))
        return self.build(lambda: DMorphism(ends['source'], ends['target'], components, name=self.name))

    def parse(self, expected: Tuple[Kind, ...] = ()) -> Parsed:
        body = self.read_header()
        if expected and self.kind not in expected:
            raise self.error(f"expected kind {' or '.join(k.value for k in expected)}, got {self.kind.value}",
                             self.statements[0].line, self.header['kind'].column)
        readers = {
            Kind.TYPE_D: self.type_d,
            Kind.TYPE_A: self.type_a,
            Kind.COMPLEX_U: self.complex_,
            Kind.COMPLEX_UV: self.complex_,
            Kind.MORPHISM: self.morphism,
        }
        parsed = readers[self.kind](body)
        logger.debug(f'{self.source or "<text>"}: parsed {parsed!r}')
        return parsed


def directory_resolver(directory: Path) -> Resolver:
    """Load morphism ends from <directory>/<name>.bfd, falling back to the fixture catalog"""
    def resolve(name: str) -> TypeDStructure:
        path = Path(directory) / f'{name}.bfd'
        if path.exists():
            return parse_file(path)
        return build(name)
    return resolve


def parse(text: str, source: str = '', resolver: Optional[Resolver] = None,
          expected: Tuple[Kind, ...] = ()) -> Parsed:
    """
    Parse and validate one module file.

    Raises:
        FormatError: syntax errors, undeclared generators, and semantic
            failures (idempotent clash, structure relation) with position
    """
    return _Reader(text, source, resolver).parse(expected)


def parse_file(path: Union[str, Path], resolver: Optional[Resolver] = None) -> Parsed:
    path = Path(path)
    expected = EXTENSIONS.get(path.suffix, ())
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise FormatError(f'cannot read file: {e.strerror}', source=str(path))
    return parse(text, str(path), resolver or directory_resolver(path.parent), expected)


def _name(name: str) -> str:
    return re.sub(r'\s+', '', name)


def _idempotent(value: int) -> str:
    return f'i{int(value)}'


def kind_of(obj: Parsed) -> Kind:
    if isinstance(obj, TypeDStructure):
        return Kind.TYPE_D
    if isinstance(obj, TypeAStructure):
        return Kind.TYPE_A
    if isinstance(obj, IotaComplex):
        return Kind.COMPLEX_U
    if isinstance(obj, CFKComplex):
        return Kind.COMPLEX_UV
    if isinstance(obj, DMorphism):
        return Kind.MORPHISM
    raise TypeError(f'cannot serialize {type(obj).__name__}')


def serialize(obj: Parsed) -> str:
    """Canonical text of a structure, complex or morphism"""
    kind = kind_of(obj)
    lines = [f'kind {kind.value}']
    if kind in (Kind.TYPE_D, Kind.TYPE_A, Kind.MORPHISM):
        lines.append('algebra torus')
    if kind == Kind.TYPE_A:
        lines.append(f'mode {obj.mode}')
    if obj.name:
        lines.append(f'name {_name(obj.name)}')

    if kind == Kind.TYPE_D:
        for g, idempotent in obj.generators.items():
            hint = obj.grading_hints.get(g)
            suffix = ' ' + ' '.join(str(v) for v in hint) if hint else ''
            lines.append(f'gen {g} {_idempotent(idempotent)}{suffix}')
        lines += [f'arrow {x} {a.value} {y}' for x, a, y in obj.arrows]

    elif kind == Kind.TYPE_A:
        lines += [f'gen {g} {_idempotent(i)}' for g, i in obj.generators.items()]
        for action in obj.actions:
            inputs = ','.join(a.value for a in action.inputs) or NO_INPUTS
            power = f' {format_monomial((action.u_power, 0))}' if action.u_power else ''
            lines.append(f'action {action.source} {inputs} -> {action.target}{power}')

    elif kind in (Kind.COMPLEX_U, Kind.COMPLEX_UV):
        complex_ = obj.complex
        for g in complex_.generators:
            degree = complex_.degree(g)
            lines.append(f'gen {g} {degree[0]} {degree[1]}' if degree is not None else f'gen {g}')
        for x, y, coefficient in complex_.arrows():
            lines += [f'diff {x} {format_monomial(m)} {y}' for m in sorted(coefficient.terms)]
        if obj.iota is not None:
            for x in complex_.generators:
                lines += [f'iota {x} {y}' for y in complex_.generators if y in obj.iota[x]]

    else:
        lines.insert(3 if obj.name else 2, f'source {_name(obj.source.name)}')
        lines.insert(4 if obj.name else 3, f'target {_name(obj.target.name)}')
        lines += [f'map {x} {a.value} {y}' for x, a, y in obj.components]
    return '\n'.join(lines) + '\n'


def write_file(obj: Parsed, path: Union[str, Path]) -> str:
    """Write the canonical form and return its sha256"""
    text = serialize(obj)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text, encoding='utf-8')
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def file_digest(path: Union[str, Path]) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
