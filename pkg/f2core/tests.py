import random

from django.test import TestCase, override_settings

from .complexes import ChainComplex, ChainMap, Ring, complex_homology
from .exceptions import CoefficientOverflowError, StructuralIntegrityError
from .linalg import SparseMatrix, rank_kernel_image, solve_affine, solve_equations
from .oracle import homology_dimensions, matrix_rank
from .polynomials import ONE, U, V, ZERO, Coefficient, format_monomial


def random_matrix(rng, rows, cols, density=0.3):
    entries = {c: [r for r in range(rows) if rng.random() < density] for c in range(cols)}
    return SparseMatrix(range(rows), range(cols), entries)


class CoefficientTests(TestCase):
    def test_addition_is_mod_two(self):
        self.assertEqual(U + U, ZERO)
        self.assertEqual((U + V) + U, V)

    def test_product_cancels_repeated_terms(self):
        # (U + V)^2 = U^2 + V^2 over F2
        self.assertEqual((U + V) * (U + V), Coefficient.monomial(2, 0) + Coefficient.monomial(0, 2))

    def test_parse_and_format_monomials(self):
        for text in ('1', 'U', 'V', 'U^3', 'V^2', 'UV', 'U^2V^5'):
            self.assertEqual(format_monomial(next(iter(Coefficient.parse_monomial(text).terms))), text)
        with self.assertRaises(ValueError):
            Coefficient.parse_monomial('W')

    def test_specializations(self):
        c = ONE + Coefficient.monomial(1, 2)
        self.assertEqual(c.at_v_zero(), ONE)
        self.assertEqual(c.hat(), ONE)
        self.assertEqual(c.evaluate_at_one(), 0)
        self.assertEqual(Coefficient.monomial(3, 0).u_derivative(), Coefficient.monomial(2, 0))
        self.assertEqual(Coefficient.monomial(2, 0).u_derivative(), ZERO)

    def test_exponent_cap(self):
        with self.assertRaises(CoefficientOverflowError):
            Coefficient.monomial(65, 0).check_cap(64)


class SparseEliminationTests(TestCase):
    def test_rank_nullity_on_random_matrices(self):
        rng = random.Random(7)
        for _ in range(50):
            matrix = random_matrix(rng, rng.randint(1, 12), rng.randint(1, 12))
            result = rank_kernel_image(matrix)
            self.assertEqual(result.rank, matrix_rank(matrix))
            self.assertEqual(result.rank + len(result.kernel), len(matrix.cols))
            for vector in result.kernel:
                column_sum = set()
                for col in vector:
                    column_sum ^= set(matrix.column(col))
                self.assertFalse(column_sum)

    def test_solve_affine(self):
        # x0 + x1 = 1, x1 = 1
        matrix = SparseMatrix(['e0', 'e1'], ['x0', 'x1'], {'x0': ['e0'], 'x1': ['e0', 'e1']})
        solution = solve_affine(matrix, ['e0', 'e1'])
        self.assertTrue(solution.feasible)
        self.assertEqual(solution.solution, frozenset({'x1'}))
        self.assertEqual(solution.kernel, [])

    def test_inconsistent_system(self):
        solution = solve_equations({'e0': ['x'], 'e1': ['x']}, ['x'], ['e0'])
        self.assertFalse(solution)

    def test_duplicate_labels_rejected(self):
        with self.assertRaises(ValueError):
            SparseMatrix(['a', 'a'], ['x'])


class ChainComplexTests(TestCase):
    def setUp(self):
        # acyclic pair plus one surviving generator
        self.complex = ChainComplex.from_sets(['a', 'b', 'c'], {'a': ['b']}, name='small')

    def test_homology_of_small_complex(self):
        result = complex_homology(self.complex)
        self.assertEqual(result.total, 1)
        self.assertEqual(result.representatives[None], [frozenset({'c'})])
        self.assertTrue(result.oracle_checked)

    def test_d_squared_detected(self):
        bad = ChainComplex.from_sets(['a', 'b', 'c'], {'a': ['b'], 'b': ['c']}, name='bad')
        self.assertEqual(bad.d_squared_failure(), 'a')
        with self.assertRaises(StructuralIntegrityError):
            complex_homology(bad)

    def test_polynomial_coefficient_rejected_over_f2(self):
        with self.assertRaises(StructuralIntegrityError):
            ChainComplex(['a', 'b'], {'a': {'b': U}}, Ring.F2)

    def test_truncations_of_uv_complex(self):
        complex_ = ChainComplex(['x', 'y', 'z'], {'y': {'x': U, 'z': V}}, Ring.F2_UV,
                                gradings={'x': (0, -2), 'y': (-1, -1), 'z': (-2, 0)})
        self.assertIsNone(complex_.homogeneity_failure())
        self.assertEqual(complex_.horizontal().boundary('y'), {'x': U})
        self.assertEqual(complex_.hat().boundary('y'), {})
        self.assertEqual(complex_homology(complex_.hat()).total, 3)

    def test_inhomogeneous_arrow_reported(self):
        complex_ = ChainComplex(['x', 'y'], {'y': {'x': U}}, Ring.F2_UV, gradings={'x': (0, 0), 'y': (0, 0)})
        self.assertEqual(complex_.homogeneity_failure(), ('y', 'x'))

    def test_chain_map_failure(self):
        identity = ChainMap.identity(self.complex)
        self.assertIsNone(identity.chain_map_failure())
        broken = ChainMap(self.complex, self.complex, {'a': {'a'}})
        self.assertEqual(broken.chain_map_failure(), 'a')

    @override_settings(BFX_ORACLE_LIMIT=0)
    def test_sparse_homology_matches_dense_oracle(self):
        rng = random.Random(11)
        for i in range(30):
            # d = boundary of a random filtration: pair up generators
            names = [f'g{k}' for k in range(rng.randint(2, 10))]
            rng.shuffle(names)
            pairs = [(names[k], names[k + 1]) for k in range(0, len(names) - 1, 2) if rng.random() < 0.6]
            complex_ = ChainComplex.from_sets(names, {x: [y] for x, y in pairs}, name=f'random{i}')
            sparse = complex_homology(complex_, oracle=False)
            self.assertFalse(sparse.oracle_checked)
            self.assertEqual(sparse.dimensions, homology_dimensions(complex_))
            self.assertEqual(sparse.total, len(names) - 2 * len(pairs))
