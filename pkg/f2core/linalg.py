"""
Sparse GF(2) elimination

Matrices are stored column-wise with only nonzero entries kept. Elimination
packs each column (or each equation row) into a Python int and reduces on
the lowest set bit, keeping a pivot table and the column combinations that
produced each reduced vector.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .exceptions import StructuralIntegrityError
from .polynomials import ONE, Coefficient

logger = logging.getLogger(__name__)

Label = Hashable


def iter_bits(bits: int) -> Iterator[int]:
    """Indices of the set bits, lowest first"""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def parity(bits: int) -> int:
    return bits.bit_count() & 1


class SparseMatrix:
    """
    Column-indexed sparse matrix with Coefficient entries.

    Entries may be given either as {col: {row: Coefficient}} or, for F2
    matrices, as {col: iterable of rows}. Zero entries are never stored.
    """

    def __init__(self, rows: Sequence[Label], cols: Sequence[Label],
                 entries: Optional[Mapping[Label, Union[Mapping[Label, Coefficient], Iterable[Label]]]] = None):
        self.rows: Tuple[Label, ...] = tuple(rows)
        self.cols: Tuple[Label, ...] = tuple(cols)
        self.row_index: Dict[Label, int] = {r: i for i, r in enumerate(self.rows)}
        self.col_index: Dict[Label, int] = {c: i for i, c in enumerate(self.cols)}
        if len(self.row_index) != len(self.rows) or len(self.col_index) != len(self.cols):
            raise ValueError('Duplicate row or column label')

        self._columns: Dict[Label, Dict[Label, Coefficient]] = {}
        for col, column in (entries or {}).items():
            if col not in self.col_index:
                raise KeyError(f'Unknown column {col!r}')
            if isinstance(column, Mapping):
                stored = {r: c for r, c in column.items() if c}
            else:
                stored = {}
                for r in column:
                    if r in stored:
                        del stored[r]
                    else:
                        stored[r] = ONE
            for r in stored:
                if r not in self.row_index:
                    raise KeyError(f'Unknown row {r!r}')
            if stored:
                self._columns[col] = stored

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._columns.values())

    @property
    def is_f2(self) -> bool:
        return all(c.is_constant for column in self._columns.values() for c in column.values())

    def __getitem__(self, key: Tuple[Label, Label]) -> Coefficient:
        row, col = key
        return self._columns.get(col, {}).get(row, Coefficient())

    def column(self, col: Label) -> Dict[Label, Coefficient]:
        return dict(self._columns.get(col, {}))

    def items(self) -> Iterator[Tuple[Label, Label, Coefficient]]:
        for col, column in self._columns.items():
            for row, value in column.items():
                yield row, col, value

    def column_bits(self, col: Label) -> int:
        bits = 0
        for row, value in self._columns.get(col, {}).items():
            if value.evaluate_at_one():
                bits |= 1 << self.row_index[row]
        return bits

    def map_entries(self, transform) -> 'SparseMatrix':
        """New matrix with transform applied to every entry (e.g. hat, U = 1)"""
        entries = {}
        for col, column in self._columns.items():
            entries[col] = {r: transform(c) for r, c in column.items()}
        return SparseMatrix(self.rows, self.cols, entries)

    def specialize(self) -> 'SparseMatrix':
        """F2 matrix obtained by setting every variable to 1"""
        return self.map_entries(lambda c: ONE if c.evaluate_at_one() else Coefficient())

    def transpose(self) -> 'SparseMatrix':
        entries: Dict[Label, Dict[Label, Coefficient]] = {}
        for row, col, value in self.items():
            entries.setdefault(row, {})[col] = value
        return SparseMatrix(self.cols, self.rows, entries)

    def submatrix(self, rows: Sequence[Label], cols: Sequence[Label]) -> 'SparseMatrix':
        keep_rows = set(rows)
        entries = {
            col: {r: v for r, v in self._columns.get(col, {}).items() if r in keep_rows}
            for col in cols
        }
        return SparseMatrix(rows, cols, entries)

    def __repr__(self) -> str:
        return f'SparseMatrix({len(self.rows)}x{len(self.cols)}, nnz={self.nnz})'


def _require_f2(matrix: SparseMatrix) -> None:
    if not matrix.is_f2:
        raise ValueError('Matrix has non-constant polynomial entries; specialize it first')


def _labels(bits: int, labels: Sequence[Label]) -> FrozenSet[Label]:
    return frozenset(labels[i] for i in iter_bits(bits))


@dataclass(frozen=True)
class RankResult:
    rank: int
    kernel: List[FrozenSet[Label]]
    image: List[FrozenSet[Label]]


def eliminate_columns(columns: Sequence[int]) -> Tuple[Dict[int, Tuple[int, int]], List[int]]:
    """
    Reduce integer-packed columns in order.

    Returns the pivot table {lowest bit: (reduced column, combination)} and the
    combinations that reduced to zero. Combination bit i stands for column i.
    """
    pivots: Dict[int, Tuple[int, int]] = {}
    kernel: List[int] = []
    for i, vector in enumerate(columns):
        combination = 1 << i
        while vector:
            low = vector & -vector
            hit = pivots.get(low)
            if hit is None:
                pivots[low] = (vector, combination)
                break
            vector ^= hit[0]
            combination ^= hit[1]
        if not vector:
            kernel.append(combination)
    return pivots, kernel


def rank_of_vectors(vectors: Iterable[int]) -> int:
    pivots, _ = eliminate_columns(list(vectors))
    return len(pivots)


def rank_kernel_image(matrix: SparseMatrix) -> RankResult:
    """
    Rank, kernel basis (sets of column labels) and image basis (sets of row
    labels) of an F2 matrix. Both bases come out echelonized: image vectors
    have distinct lowest rows, kernel vectors distinct highest columns.
    """
    _require_f2(matrix)
    pivots, kernel = eliminate_columns([matrix.column_bits(c) for c in matrix.cols])
    image = [_labels(vector, matrix.rows) for _, (vector, _) in sorted(pivots.items())]
    kernel_sets = [_labels(combination, matrix.cols) for combination in kernel]

    rank = len(pivots)
    if rank + len(kernel_sets) != len(matrix.cols):
        raise StructuralIntegrityError('Rank-nullity violated in sparse elimination')
    logger.debug(f'rank_kernel_image {matrix!r}: rank={rank}, kernel={len(kernel_sets)}')
    return RankResult(rank=rank, kernel=kernel_sets, image=image)


@dataclass(frozen=True)
class AffineSolution:
    """Result of solve_affine; feasible is False for an inconsistent system"""

    feasible: bool
    solution: FrozenSet[Label] = frozenset()
    kernel: List[FrozenSet[Label]] = field(default_factory=list)
    rank: int = 0

    def __bool__(self) -> bool:
        return self.feasible


def solve_affine(matrix: SparseMatrix, rhs: Iterable[Label], with_kernel: bool = True) -> AffineSolution:
    """
    Solve A x = b over F2.

    Args:
        matrix: rows are equations, columns are unknowns
        rhs: labels of the equations whose right-hand side is 1
        with_kernel: also return a basis of the solution space of A x = 0

    Returns:
        AffineSolution with one particular solution (free unknowns set to 0)
    """
    _require_f2(matrix)
    rhs = list(rhs)
    n = len(matrix.cols)
    rhs_bit = 1 << n
    mask = rhs_bit - 1

    equations = [0] * len(matrix.rows)
    for row, col, value in matrix.items():
        if value.evaluate_at_one():
            equations[matrix.row_index[row]] ^= 1 << matrix.col_index[col]
    for row in rhs:
        if row not in matrix.row_index:
            raise KeyError(f'Unknown equation {row!r}')
        equations[matrix.row_index[row]] ^= rhs_bit

    pivots: Dict[int, int] = {}
    for equation in equations:
        while True:
            variables = equation & mask
            if not variables:
                if equation:
                    logger.debug(f'solve_affine: infeasible system {matrix!r}')
                    return AffineSolution(feasible=False, rank=len(pivots))
                break
            low = variables & -variables
            hit = pivots.get(low)
            if hit is None:
                pivots[low] = equation
                break
            equation ^= hit

    order = sorted(pivots, reverse=True)

    def back_substitute(assignment: int, use_rhs: bool) -> int:
        for low in order:
            equation = pivots[low]
            value = parity(equation & mask & ~low & assignment)
            if use_rhs:
                value ^= (equation >> n) & 1
            if value:
                assignment |= low
        return assignment

    particular = back_substitute(0, True)

    kernel: List[FrozenSet[Label]] = []
    if with_kernel:
        pivot_bits = 0
        for low in pivots:
            pivot_bits |= low
        free = mask & ~pivot_bits
        for index in iter_bits(free):
            kernel.append(_labels(back_substitute(1 << index, False), matrix.cols))

    result = AffineSolution(
        feasible=True,
        solution=_labels(particular, matrix.cols),
        kernel=kernel,
        rank=len(pivots),
    )
    _verify_solution(matrix, rhs, particular)
    return result


def _verify_solution(matrix: SparseMatrix, rhs: List[Label], solution: int) -> None:
    residual = [0] * len(matrix.rows)
    for row in rhs:
        residual[matrix.row_index[row]] ^= 1
    for row, col, value in matrix.items():
        if value.evaluate_at_one() and (solution >> matrix.col_index[col]) & 1:
            residual[matrix.row_index[row]] ^= 1
    if any(residual):
        raise StructuralIntegrityError('solve_affine produced a non-solution')


def solve_equations(equations: Mapping[Label, Iterable[Label]], unknowns: Sequence[Label],
                    rhs: Iterable[Label], with_kernel: bool = False) -> AffineSolution:
    """
    Convenience wrapper: equations given as {equation: unknowns occurring in it}.

    Equations that appear only in rhs are added as empty rows.
    """
    rhs = list(rhs)
    rows = list(equations)
    seen = set(rows)
    for row in rhs:
        if row not in seen:
            rows.append(row)
            seen.add(row)
    columns: Dict[Label, set] = {}
    for row, variables in equations.items():
        for variable in variables:
            column = columns.setdefault(variable, set())
            if row in column:
                column.remove(row)
            else:
                column.add(row)
    matrix = SparseMatrix(rows, unknowns, columns)
    return solve_affine(matrix, rhs, with_kernel=with_kernel)
