"""
Verification suites: each adds its checks, in a fixed order, to a Report
"""

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from django.conf import settings
from django.db import models

from bordered.conversion import alexander_grading, cfk_to_cfd
from bordered.graphs import find_isomorphism
from bordered.morphisms import end_homology, is_nullhomotopic, mor_complex, verify_homotopy
from bordered.reduction import reduce_complex
from bordered.structures import DMorphism, TypeAStructure, TypeDStructure, check_type_a, check_type_d
from bordered.tensor import box_tensor, box_tensor_morphism, pair_name
from f2core.complexes import complex_homology
from f2core.oracle import homology_dimensions
from gradings.group import GradingConvention
from gradings.solver import degree_zero_end_classes, is_degree_preserving, solve_gradings
from involutive.axioms import Axiom, check_axioms
from involutive.complexes import CFKComplex, IotaComplex, dual, linear_combination, tensor
from involutive.local_maps import Comparison, compare, is_locally_trivial
from involutive.whitehead import verify_wh_double_splitting
from knotlib import fixtures
from knotlib.catalog import FIXTURES
from knotlib.morphisms import END_NAMES, MOR_NAMES, cycle_morphisms, printed_morphisms

from .fileformat import file_digest, parse_file, serialize
from .reports import CheckStatus, Outcome, Report, evaluate, outcome

logger = logging.getLogger(__name__)


class Suite(models.TextChoices):
    TENSORLEM = 'tensorlem', 'Mor(T, S) and nullhomotopies after cabling'
    TREFOILLEM = 'trefoillem', 'Endomorphisms of the trefoil complement'
    IOTAKD = 'iotaKD', 'Whitehead double of the trefoil'
    ORDER = 'order', 'Local equivalence order'
    CONVERSION = 'conversion', 'Knot complex to type-D conversion'
    PROPERTIES = 'properties', 'Structural properties and determinism'


MOR_DIMENSION = 6
END_DIMENSION = 6
# classes whose box tensor with the cable is not nullhomotopic
NOT_NULLHOMOTOPIC = ('f2', 'f3')
RANDOM_SAMPLES = 100

Check = Tuple[str, Callable[[], Outcome]]


def _run_all(report: Report, suite: str, checks: Sequence[Check]) -> None:
    """Evaluate independent checks in parallel and record them in input order"""
    workers = max(1, getattr(settings, 'BFX_THREADS', 1))
    if workers == 1 or len(checks) < 2:
        results = [evaluate(suite, name, check) for name, check in checks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(lambda item: evaluate(suite, item[0], item[1]), checks))
    report.extend(results)


def _printed_cycle(mor, printed: DMorphism, corrected: DMorphism) -> Outcome:
    if mor.is_cycle(printed):
        return outcome(True, f'{printed.name} as drawn is a cycle')
    return (CheckStatus.DIVERGENT,
            f'{printed.name} as drawn is not a cycle; using {corrected.as_dict()}',
            {'boundary': mor.differential(printed).as_dict(), 'corrected': corrected.as_dict()})


# tensorlem

def _nullhomotopy_check(cable: TypeAStructure, morphism: DMorphism, source_complex, target_complex) -> Outcome:
    induced = box_tensor_morphism(cable, morphism, source_complex=source_complex, target_complex=target_complex)
    failure = induced.chain_map_failure()
    if failure is not None:
        return outcome(False, f'id ⊠ {morphism.name} is not a chain map at {failure}')
    result = is_nullhomotopic(induced)
    if result.nullhomotopic:
        verified = verify_homotopy(induced, result.homotopy)
        return outcome(verified, f'id ⊠ {morphism.name} = dH + Hd, {len(result.homotopy.as_dict())} rows',
                       homotopy=result.homotopy.as_dict(), verified=verified)
    if morphism.name in NOT_NULLHOMOTOPIC:
        return (CheckStatus.DIVERGENT, f'id ⊠ {morphism.name} is not nullhomotopic; certificate attached',
                result.as_dict())
    return outcome(False, f'id ⊠ {morphism.name} is not nullhomotopic', **result.as_dict())


def tensorlem(report: Report, ns: Sequence[int] = (1, 2, 3)) -> None:
    suite = Suite.TENSORLEM.value
    trefoil, square = fixtures.cfd_trefoil(), fixtures.square_module()
    morphisms = cycle_morphisms(trefoil, square)
    printed = printed_morphisms(trefoil, square)
    mor = mor_complex(trefoil, square)

    def dimension():
        homology = mor.homology()
        return outcome(homology.total == MOR_DIMENSION,
                       f'dim H*Mor = {homology.total} on {len(mor)} components',
                       dimension=homology.total, basis=len(mor))

    def span():
        generators = [morphisms[name] for name in MOR_NAMES]
        non_cycles = [m.name for m in generators if not mor.is_cycle(m)]
        rank = mor.homology_rank(generators)
        return outcome(not non_cycles and rank == mor.homology().total,
                       f'{", ".join(MOR_NAMES)} span a {rank}-dimensional subspace',
                       non_cycles=non_cycles, rank=rank)

    report.run(suite, 'mor_dimension', dimension)
    report.run(suite, 'mor_span', span)
    for name in ('f2', 'f3'):
        report.run(suite, f'printed_{name}', lambda name=name: _printed_cycle(mor, printed[name], morphisms[name]))

    for n in ns:
        cable = fixtures.cable_cfa_hat(n)
        source_complex = box_tensor(cable, trefoil)
        target_complex = box_tensor(cable, square)
        expected = (16 * n + 11, 16 * n + 12)
        sizes = (len(source_complex), len(target_complex))
        report.run(suite, f'box_sizes_n{n}',
                   lambda sizes=sizes, expected=expected: outcome(
                       sizes == expected, f'{sizes[0]} and {sizes[1]} generators', sizes=list(sizes)))
        checks = [
            (f'nullhomotopic_{name}_n{n}',
             lambda name=name, cable=cable, s=source_complex, t=target_complex:
                 _nullhomotopy_check(cable, morphisms[name], s, t))
            for name in MOR_NAMES
        ]
        _run_all(report, suite, checks)


# trefoillem

def trefoillem(report: Report, conventions: Optional[Sequence[str]] = None) -> None:
    suite = Suite.TREFOILLEM.value
    trefoil = fixtures.cfd_trefoil()
    morphisms = cycle_morphisms(trefoil)
    printed = printed_morphisms(trefoil)
    end = end_homology(trefoil)
    identity = DMorphism.identity(trefoil)
    hs = [morphisms[name] for name in END_NAMES]
    conventions = conventions or [c.value for c in GradingConvention]

    report.run(suite, 'end_dimension', lambda: outcome(
        end.dimension == END_DIMENSION and end.identity_class_present,
        f'dim H*End = {end.dimension} on {len(end.mor)} components',
        dimension=end.dimension, basis=len(end.mor)))

    def generators():
        non_cycles = [m.name for m in hs if not end.mor.is_cycle(m)]
        rank = end.mor.homology_rank(hs)
        with_identity = end.mor.homology_rank(hs + [identity])
        return outcome(not non_cycles and rank == len(hs) and with_identity == END_DIMENSION,
                       f'h1..h5 have rank {rank}, {with_identity} with the identity',
                       non_cycles=non_cycles, rank=rank, rank_with_identity=with_identity)

    report.run(suite, 'end_generators', generators)
    report.run(suite, 'printed_h2', lambda: _printed_cycle(end.mor, printed['h2'], morphisms['h2']))

    verdicts: Dict[str, Dict[str, bool]] = {}
    for convention in conventions:
        def degree_zero(convention=convention):
            classes = degree_zero_end_classes(trefoil, convention, mor=end.mor)
            grading = solve_gradings(trefoil, convention)
            preserving = {m.name: is_degree_preserving(m, grading) for m in hs}
            preserving['id'] = is_degree_preserving(identity, grading)
            verdicts[convention] = preserving
            passed = classes.dimension == 1 and classes.identity_present and preserving['id'] \
                and not any(preserving[name] for name in END_NAMES)
            return outcome(passed, f'{classes.dimension} degree-zero class(es) in the {convention} convention',
                           classes=classes.as_dict(), preserving=preserving)
        report.run(suite, f'degree_zero_{convention}', degree_zero)

    report.run(suite, 'convention_invariance', lambda: outcome(
        len({tuple(sorted(v.items())) for v in verdicts.values()}) == 1,
        f'verdicts agree across {", ".join(verdicts)}', verdicts=verdicts))


# iotaKD

def iota_kd(report: Report) -> None:
    suite = Suite.IOTAKD.value
    cfk = fixtures.wh_double_trefoil_cfk()
    local, model = fixtures.wh_double_local(), fixtures.t_sharp_e()

    def table():
        complex_ = cfk.complex
        problems = []
        if complex_.d_squared_failure() is not None:
            problems.append('d^2 != 0')
        if complex_.homogeneity_failure() is not None:
            problems.append(f'inhomogeneous arrow {complex_.homogeneity_failure()}')
        row = {
            'boundary': sorted(complex_.boundary('sigma')),
            'grading': list(cfk.degree('sigma')),
            'alexander': cfk.alexander('sigma'),
            'iota': sorted(cfk.iota['sigma']),
        }
        if row != {'boundary': ['rho', 'tau'], 'grading': [-1, -1], 'alexander': 0,
                   'iota': ['delta0', 'sigma']}:
            problems.append(f'row sigma reads {row}')
        return outcome(not problems, '; '.join(problems) or f'{len(cfk)} generators validate',
                       alexander={g: cfk.alexander(g) for g in cfk.generators})

    report.run(suite, 'table', table)

    def splitting():
        result = verify_wh_double_splitting(cfk, fixtures.WH_LOCAL_SUMMAND, model)
        return outcome(result.passed, ', '.join(f'{k}={v}' for k, v in result.checks.items()), **result.as_dict())

    report.run(suite, 'splitting', splitting)
    for subject in (local, model):
        report.run(suite, f'axioms_{subject.name}', lambda subject=subject: _axioms(subject))

    def local_maps():
        result = compare(local, model)
        return outcome(result.relation == Comparison.EQUAL and result.forward.verified and result.backward.verified,
                       f'{local.name} vs {model.name}: {result.relation}', **result.as_dict())

    report.run(suite, 'local_maps', local_maps)
    report.run(suite, 'T_vs_0', lambda: _relation(fixtures.trefoil_horizontal(), fixtures.trivial(), Comparison.LESS))


# order

def _axioms(complex_: IotaComplex, expected_failures: Sequence[str] = ()) -> Outcome:
    result = check_axioms(complex_)
    passed = sorted(result.failures) == sorted(expected_failures)
    detail = 'all axioms hold' if result.passed else f'failing: {", ".join(result.failures)}'
    return outcome(passed, detail, **result.as_dict())


def _relation(first: IotaComplex, second: IotaComplex, expected: str) -> Outcome:
    result = compare(first, second)
    return outcome(result.relation == expected, f'{first.name} vs {second.name}: {result.relation}',
                   expected=str(expected), **result.as_dict())


def order(report: Report, max_m: int = 2, ns: Sequence[int] = (2, 3, 4)) -> None:
    suite = Suite.ORDER.value
    standard = {n: fixtures.standard_complex(n) for n in range(2, max(ns) + 2)}
    zero, e = fixtures.trivial(), fixtures.figure_eight_horizontal()

    checks: List[Tuple[str, Callable[[], Outcome]]] = []
    for n in ns:
        c = standard[n]
        checks.append((f'axioms_C{n}', lambda c=c: _axioms(c)))
        checks.append((f'0_vs_C{n}', lambda c=c: _relation(zero, c, Comparison.LESS)))
    for n in ns[:-1]:
        for m in range(1, max_m + 1):
            multiple = linear_combination([(standard[n], m)], name=f'{m}C{n}')
            checks.append((f'{m}C{n}_vs_C{n + 1}',
                           lambda multiple=multiple, n=n: _relation(multiple, standard[n + 1], Comparison.LESS)))
    checks.append((f'C{ns[-1]}_vs_0', lambda: _relation(standard[ns[-1]], zero, Comparison.GREATER)))

    c2 = standard[2]
    c2_e = tensor(c2, e)
    e_e = tensor(e, e)
    c2_dual = dual(c2)
    checks += [
        ('C2_vs_C2#E', lambda: _relation(c2, c2_e, Comparison.INCOMPARABLE)),
        ('E_vs_0', lambda: _relation(e, zero, Comparison.INCOMPARABLE)),
        ('E#E_trivial', lambda: outcome(is_locally_trivial(e_e), f'{e_e.name} is locally trivial')),
        ('C2#C2*_trivial', lambda: outcome(is_locally_trivial(tensor(c2, c2_dual)), 'C2 ⊗ C2* is locally trivial')),
        ('axioms_E', lambda: _axioms(e)),
        ('axioms_C2#E', lambda: _axioms(c2_e)),
        ('axioms_C2*', lambda: _axioms(c2_dual)),
        ('axioms_C2_identity_iota', lambda: _axioms(
            IotaComplex(c2.complex, {g: [g] for g in c2.generators}, name='C2[iota=id]'),
            expected_failures=[Axiom.SKEW_GRADED.value])),
    ]
    _run_all(report, suite, checks)


# conversion

def conversion(report: Report) -> None:
    suite = Suite.CONVERSION.value

    def isomorphic(cfk: CFKComplex, expected: TypeDStructure) -> Outcome:
        converted = cfk_to_cfd(cfk)
        mapping = find_isomorphism(converted, expected)
        return outcome(mapping is not None, f'CFD({cfk.name}) vs {expected.name}: '
                                            f'{"isomorphic" if mapping else "not isomorphic"}', mapping=mapping)

    report.run(suite, 'trefoil', lambda: isomorphic(fixtures.cfk_trefoil(), fixtures.cfd_trefoil()))
    report.run(suite, 'figure_eight', lambda: isomorphic(fixtures.cfk_figure_eight(), fixtures.cfd_figure_eight()))

    def unknot():
        converted = cfk_to_cfd(fixtures.cfk_unknot())
        arrows = [(x, a.value, y) for x, a, y in converted.arrows]
        return outcome(len(converted) == 1 and arrows == [('o', 'r12', 'o')], f'{len(converted)} generator(s)',
                       arrows=arrows)

    report.run(suite, 'unknot', unknot)

    def tau():
        cfk = fixtures.cfk_trefoil()
        value = alexander_grading(cfk.complex, 'rho')
        return outcome(value == 1, f'tau = {value}', tau=value)

    report.run(suite, 'tau_trefoil', tau)

    def framings():
        sizes = {}
        for framing in range(-1, 4):
            structure = cfk_to_cfd(fixtures.cfk_trefoil(), framing=framing)
            sizes[framing] = len(structure) if check_type_d(structure).valid else None
        expected = {framing: 5 + abs(framing - 2) for framing in sizes}
        return outcome(sizes == expected, f'generator counts {sizes}', sizes={str(k): v for k, v in sizes.items()})

    report.run(suite, 'framings', framings)

    def wh_double():
        result = fixtures.split_wh_double_cfd()
        return outcome(result.passed, f'{len(result.summands)} summands, '
                                      f'{len(result.square_summands)} square modules', **result.as_dict())

    report.run(suite, 'wh_double', wh_double)


# properties

CABLE_PAIRINGS = {
    'cfd_trefoil': [
        ('w', 's2', 'b3', 't1'), ('w', 's3', 'b3', 't3'), ('a1', 't1', 'a2', 't4'), ('a2', 't1', 'a3', 't4'),
        ('a3', 't1', 'w', 's1'), ('a3', 't3', 'b3', 't4'),
    ],
    'square': [
        ('w', 'a', 'b3', 'y1'), ('w', 'c', 'b3', 'y3'), ('a1', 'y1', 'a2', 'y2'), ('a2', 'y1', 'a3', 'y2'),
        ('a2', 'y3', 'b3', 'y2'), ('a3', 'y1', 'w', 'b'), ('a3', 'y3', 'w', 'e'),
    ],
}

CABLE_MORPHISM_VALUES = {
    'f1': [('w', 's2', 'w', 'e'), ('a3', 't2', 'b3', 'y2')],
    'g3': [('a1', 't1', 'a2', 'y4'), ('a2', 't1', 'a3', 'y4')],
}


def _fixture_validity(name: str) -> Outcome:
    obj = FIXTURES[name].build()
    if isinstance(obj, TypeDStructure):
        validity = check_type_d(obj)
        return outcome(validity.valid, f'type-D structure equation on {len(obj)} generators', **validity.as_dict())
    if isinstance(obj, TypeAStructure):
        validity = check_type_a(obj)
        return outcome(validity.valid, f'A-infinity relations on {len(obj.actions)} actions', **validity.as_dict())
    if isinstance(obj, DMorphism):
        is_cycle = mor_complex(obj.source, obj.target).is_cycle(obj)
        return outcome(is_cycle, f'{name} is {"a" if is_cycle else "not a"} cycle')
    failure = obj.complex.d_squared_failure()
    return outcome(failure is None, 'd^2 = 0' if failure is None else f'd^2 != 0 at {failure}')


def _round_trip(report: Report, name: str, directory: Path) -> Outcome:
    fixture = FIXTURES[name]
    path = directory / fixture.filename
    if not path.exists():
        return outcome(False, f'{path} is missing; run export_fixtures')
    report.fixtures[fixture.filename] = file_digest(path)
    text = path.read_text(encoding='utf-8')
    from_file = serialize(parse_file(path))
    from_code = serialize(fixture.build())
    return outcome(from_file == text and from_code == text,
                   'canonical' if from_file == text and from_code == text else 'file and constructor disagree',
                   file_canonical=from_file == text, matches_constructor=from_code == text)


def _pairing_facts() -> Outcome:
    cable = fixtures.cable_cfa_hat(1)
    structures = {'cfd_trefoil': fixtures.cfd_trefoil(), 'square': fixtures.square_module()}
    complexes = {name: box_tensor(cable, structure) for name, structure in structures.items()}
    missing = []
    for name, facts in CABLE_PAIRINGS.items():
        for x, y, x2, y2 in facts:
            if pair_name(x2, y2) not in complexes[name].boundary_set(pair_name(x, y)):
                missing.append(f'd({pair_name(x, y)}) lacks {pair_name(x2, y2)}')
    morphisms = cycle_morphisms(structures['cfd_trefoil'], structures['square'])
    for name, values in CABLE_MORPHISM_VALUES.items():
        induced = box_tensor_morphism(cable, morphisms[name], source_complex=complexes['cfd_trefoil'],
                                      target_complex=complexes['square'])
        for x, y, x2, y2 in values:
            if pair_name(x2, y2) not in induced.image(pair_name(x, y)):
                missing.append(f'(id ⊠ {name})({pair_name(x, y)}) lacks {pair_name(x2, y2)}')
    return outcome(not missing, f'{len(missing)} missing pairing fact(s)', missing=missing)


def random_staircase(rng: random.Random) -> CFKComplex:
    steps = [(rng.randint(1, 2), rng.randint(1, 2)) for _ in range(rng.randint(1, 3))]
    return fixtures.staircase(steps)


def _random_structures(seed: int, samples: int) -> Outcome:
    """
    Random staircases: d^2 = 0, the converted type-D structure validates,
    the pairing with the cable has d^2 = 0, sparse and dense homology agree,
    and cancellation keeps the homology dimension.
    """
    rng = random.Random(seed)
    cable = fixtures.cable_cfa_hat(1)
    problems = []
    for i in range(samples):
        cfk = random_staircase(rng)
        framing = rng.randint(-2, 4)
        label = f'{cfk.name}@{framing}'
        if cfk.complex.d_squared_failure() is not None:
            problems.append(f'{label}: d^2 != 0')
            continue
        structure = cfk_to_cfd(cfk, framing=framing)
        if not check_type_d(structure).valid:
            problems.append(f'{label}: type-D structure equation fails')
            continue
        paired = box_tensor(cable, structure)
        sparse = complex_homology(paired, oracle=False)
        if homology_dimensions(paired) != sparse.dimensions:
            problems.append(f'{label}: dense and sparse homology disagree')
        if complex_homology(reduce_complex(paired).reduced, oracle=False).total != sparse.total:
            problems.append(f'{label}: reduction changed the homology')
    return outcome(not problems, f'{samples} random structures, {len(problems)} problem(s)',
                   seed=seed, problems=problems)


def properties(report: Report, seed: int = 0, samples: int = RANDOM_SAMPLES) -> None:
    suite = Suite.PROPERTIES.value
    directory = Path(settings.BFX_FIXTURE_DIR)
    checks = [(f'valid_{name}', lambda name=name: _fixture_validity(name)) for name in FIXTURES]
    checks += [(f'valid_cable_{n}', lambda n=n: _cable_validity(n)) for n in (2, 3)]
    _run_all(report, suite, checks)
    for name in FIXTURES:
        report.run(suite, f'round_trip_{name}', lambda name=name: _round_trip(report, name, directory))
    report.run(suite, 'pairing_facts', _pairing_facts)
    report.run(suite, 'reduce_cable_trefoil', _reduce_cable_trefoil)
    report.run(suite, 'random_structures', lambda: _random_structures(seed, samples))


def _cable_validity(n: int) -> Outcome:
    validity = check_type_a(fixtures.cable_cfa_hat(n))
    return outcome(validity.valid, f'A-infinity relations for n = {n}', **validity.as_dict())


def _reduce_cable_trefoil() -> Outcome:
    paired = box_tensor(fixtures.cable_cfa_hat(1), fixtures.cfd_trefoil())
    reduction = reduce_complex(paired)
    before = complex_homology(paired).total
    after = complex_homology(reduction.reduced).total
    return outcome(before == after, f'{len(paired)} -> {len(reduction.reduced)} generators, homology {before}',
                   before=before, after=after)


SUITE_RUNNERS = {
    Suite.TENSORLEM: tensorlem,
    Suite.TREFOILLEM: trefoillem,
    Suite.IOTAKD: iota_kd,
    Suite.ORDER: order,
    Suite.CONVERSION: conversion,
    Suite.PROPERTIES: properties,
}


def run_suites(selected: Sequence[str], report: Report, n: Optional[int] = None, max_m: int = 2,
               seed: int = 0, samples: int = RANDOM_SAMPLES) -> Report:
    """Run the selected suites in the fixed order of Suite"""
    for suite in Suite:
        if suite.value not in selected:
            continue
        logger.info(f'Running suite {suite.value}')
        if suite == Suite.TENSORLEM:
            tensorlem(report, ns=[n] if n else (1, 2, 3))
        elif suite == Suite.ORDER:
            order(report, max_m=max_m)
        elif suite == Suite.PROPERTIES:
            properties(report, seed=seed, samples=samples)
        else:
            SUITE_RUNNERS[suite](report)
    return report
