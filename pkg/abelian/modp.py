"""
Prime-field elimination for complexes whose generators all have order p.

Such a complex is a complex of F_p vector spaces, so the integral homology
in that degree is (Z/p)^d with d read off F_p ranks.
"""
import logging
from functools import lru_cache

import galois
import numpy as np

from abelian.services import ChainComplex, IntegerMatrix

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def field(p: int):
    return galois.GF(p)


def to_field(matrix: IntegerMatrix, p: int) -> galois.FieldArray:
    return field(p)(np.mod(matrix.to_numpy(), p))


def rank(matrix: IntegerMatrix, p: int) -> int:
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    value = int(np.linalg.matrix_rank(to_field(matrix, p)))
    logger.debug("rank over F_%d of a %dx%d matrix: %d", p, matrix.rows, matrix.cols, value)
    return value


def null_space(matrix: IntegerMatrix, p: int) -> np.ndarray:
    """Basis of {x : M x = 0} over F_p, one basis vector per column."""
    if matrix.rows == 0:
        return np.eye(matrix.cols, dtype=np.int64)
    if matrix.cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    basis = np.asarray(to_field(matrix, p).null_space(), dtype=np.int64)
    if basis.size == 0:
        return np.zeros((matrix.cols, 0), dtype=np.int64)
    return basis.T


def homology_dimension(complex_: ChainComplex, i: int, p: int) -> int:
    outgoing = rank(complex_.boundary(i), p) if i > 0 else 0
    incoming = rank(complex_.boundary(i + 1), p)
    return complex_.rank(i) - outgoing - incoming


def induced_surjective(
    source: ChainComplex, target: ChainComplex, chain_map: IntegerMatrix, i: int, p: int
) -> bool:
    """
    Whether f(Z_i(source)) + B_i(target) = Z_i(target) over F_p.
    """
    cycles = null_space(source.boundary(i), p)
    images = np.mod(chain_map.to_numpy() @ cycles, p)
    boundaries = np.mod(target.boundary(i + 1).to_numpy(), p)
    combined = np.hstack([images, boundaries]).astype(np.int64)
    cycle_dimension = target.rank(i) - (rank(target.boundary(i), p) if i > 0 else 0)
    if combined.size == 0:
        return cycle_dimension == 0
    spanned = int(np.linalg.matrix_rank(field(p)(combined)))
    return spanned == cycle_dimension
