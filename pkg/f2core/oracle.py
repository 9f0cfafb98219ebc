"""
Dense GF(2) reference elimination

Independent of the sparse path in linalg: rows are bit-packed with numpy
(np.packbits) and reduced with vectorised XOR. Used only to re-verify ranks
and homology dimensions.
"""

import logging
from typing import Dict, Hashable, Optional

import numpy as np

from .linalg import SparseMatrix

logger = logging.getLogger(__name__)


def to_dense(matrix: SparseMatrix) -> np.ndarray:
    """0/1 uint8 array of shape (rows, cols); entries are evaluated at U = V = 1"""
    dense = np.zeros(matrix.shape, dtype=np.uint8)
    for row, col, value in matrix.items():
        dense[matrix.row_index[row], matrix.col_index[col]] = value.evaluate_at_one()
    return dense


def dense_rank(dense: np.ndarray) -> int:
    """Rank over GF(2) of a 0/1 array"""
    n_rows, n_cols = dense.shape
    if n_rows == 0 or n_cols == 0:
        return 0
    packed = np.packbits(dense.astype(np.uint8) & 1, axis=1)
    rank = 0
    for col in range(n_cols):
        byte, offset = divmod(col, 8)
        bit = np.uint8(0x80 >> offset)
        candidates = np.nonzero(packed[rank:, byte] & bit)[0]
        if candidates.size == 0:
            continue
        pivot = rank + int(candidates[0])
        if pivot != rank:
            packed[[rank, pivot]] = packed[[pivot, rank]]
        hits = np.nonzero(packed[:, byte] & bit)[0]
        hits = hits[hits != rank]
        if hits.size:
            packed[hits] ^= packed[rank]
        rank += 1
        if rank == n_rows:
            break
    return rank


def matrix_rank(matrix: SparseMatrix) -> int:
    return dense_rank(to_dense(matrix))


def homology_dimensions(complex_) -> Dict[Optional[Hashable], int]:
    """
    Per-bidegree homology dimensions of an F2 complex, by dense ranks of the
    boundary blocks: dim H_g = dim C_g - rank(d out of g) - rank(d into g).
    """
    boundary = to_dense(complex_.boundary_matrix())
    index = {g: i for i, g in enumerate(complex_.generators)}
    groups: Dict[Optional[Hashable], list] = {}
    for g in complex_.generators:
        groups.setdefault(complex_.degree(g), []).append(index[g])

    dimensions = {}
    for degree, members in groups.items():
        members = np.array(members, dtype=np.intp)
        outgoing = dense_rank(boundary[:, members])
        incoming = dense_rank(boundary[members, :])
        dimensions[degree] = len(members) - outgoing - incoming
    logger.debug(f'oracle homology of {complex_.name or "complex"}: {dimensions}')
    return dimensions
