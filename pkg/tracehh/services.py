"""
The set-level multi-trace

A k-simplex of the matrix side is a tuple (A^0, ..., A^k) with A^i in
M_n(X_i). Its trace is the Barratt-Eccles class built from the index chains

    D = {(s_0, ..., s_k) : x^0_{s_k,s_0}, x^1_{s_0,s_1}, ..., x^k_{s_{k-1},s_k} all != *}.

Because every column of a matrix holds at most one entry, each chain is
determined by its last index, which is how :func:`compute_d` finds them.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Hashable, List, Optional, Sequence, Tuple

from basedsets.services import BASEPOINT, BasedMap, BasedMatrix, BasedSet, SmashTuple, block_sum, matrix_product
from cyclotrace.errors import ContractViolation
from injcat.services import Injection, factorize
from operad.services import (
    BarrattEcclesClass,
    BarrattEcclesSimplex,
    basepoint_class,
    canonicalize,
    pack,
    unpack,
)

logger = logging.getLogger(__name__)

Chain = Tuple[int, ...]


@dataclass(frozen=True)
class MatrixTuple:
    """(A^0, ..., A^k), all of one dimension; A^i may have its own entry set."""

    matrices: Tuple[BasedMatrix, ...]

    def __post_init__(self) -> None:
        matrices = tuple(self.matrices)
        object.__setattr__(self, "matrices", matrices)
        if not matrices:
            raise ContractViolation("a matrix tuple has at least one matrix")
        dims = {matrix.dim for matrix in matrices}
        if len(dims) != 1:
            raise ContractViolation(f"matrices of different dimensions {sorted(dims)}")

    @property
    def dim(self) -> int:
        return self.matrices[0].dim

    @property
    def degree(self) -> int:
        return len(self.matrices) - 1

    @property
    def entry_sets(self) -> Tuple[BasedSet, ...]:
        return tuple(matrix.entry_set for matrix in self.matrices)

    def __str__(self) -> str:
        return "(" + ", ".join(str(matrix) for matrix in self.matrices) + ")"


def compute_d(t: MatrixTuple) -> List[Chain]:
    """The index chains of ``t`` in lexicographic order."""
    k = t.degree
    chains = []
    for last in range(1, t.dim + 1):
        chain = [0] * (k + 1)
        chain[k] = last
        for i in range(k, 0, -1):
            column = t.matrices[i].columns[chain[i] - 1]
            if column is BASEPOINT:
                break
            chain[i - 1] = column[0]
        else:
            column = t.matrices[0].columns[chain[0] - 1]
            if column is not BASEPOINT and column[0] == last:
                chains.append(tuple(chain))
    chains.sort()
    for i in range(k + 1):
        if len({chain[i] for chain in chains}) != len(chains):
            raise ContractViolation(f"projection p_{i} is not injective on D")
    return chains


def chain_entry(t: MatrixTuple, chain: Chain) -> Hashable:
    """(x^0_{s_k,s_0}, x^1_{s_0,s_1}, ..., x^k_{s_{k-1},s_k}) as one smash element."""
    k = t.degree
    parts = [t.matrices[0].entry(chain[k], chain[0])]
    parts.extend(t.matrices[i].entry(chain[i - 1], chain[i]) for i in range(1, k + 1))
    return pack(parts)


def multitrace(t: MatrixTuple, ordering: Optional[Sequence[Chain]] = None) -> BarrattEcclesClass:
    """
    tr(A^0, ..., A^k) = [(sigma_0, ..., sigma_k); x].

    ``ordering`` lists D in the order gamma; lexicographic when omitted. Each
    p_i gamma factors as alpha_i sigma_i and x(j) is the entry chain at gamma(j).
    The canonical class does not depend on the ordering.
    """
    chains = compute_d(t)
    if ordering is not None:
        ordering = [tuple(chain) for chain in ordering]
        if sorted(ordering) != chains:
            raise ContractViolation("ordering is not a permutation of D")
        chains = ordering
    if not chains:
        return basepoint_class(t.degree)
    perms = []
    for i in range(t.degree + 1):
        projection = Injection(t.dim, tuple(chain[i] for chain in chains))
        _, sigma = factorize(projection)
        perms.append(sigma)
    entries = tuple(chain_entry(t, chain) for chain in chains)
    return canonicalize(BarrattEcclesSimplex(tuple(perms)), entries)


def face(t: MatrixTuple, i: int) -> MatrixTuple:
    """d_i multiplies A^i A^{i+1}; d_k puts A^k A^0 in front."""
    k = t.degree
    if k == 0 or not 0 <= i <= k:
        raise ContractViolation(f"face d_{i} is not defined in degree {k}")
    A = t.matrices
    if i == k:
        return MatrixTuple((matrix_product(A[k], A[0]),) + A[1:k])
    return MatrixTuple(A[:i] + (matrix_product(A[i], A[i + 1]),) + A[i + 2:])


def degeneracy(t: MatrixTuple, i: int) -> MatrixTuple:
    """s_i inserts the identity matrix over S^0 after A^i."""
    if not 0 <= i <= t.degree:
        raise ContractViolation(f"degeneracy s_{i} is not defined in degree {t.degree}")
    A = t.matrices
    return MatrixTuple(A[:i + 1] + (BasedMatrix.identity(t.dim),) + A[i + 1:])


def cyclic(t: MatrixTuple) -> MatrixTuple:
    return MatrixTuple(t.matrices[-1:] + t.matrices[:-1])


def block_sum_tuple(first: MatrixTuple, second: MatrixTuple) -> MatrixTuple:
    if first.degree != second.degree:
        raise ContractViolation("block sum of matrix tuples of different degrees")
    return MatrixTuple(tuple(block_sum(a, b) for a, b in zip(first.matrices, second.matrices)))


def map_entries(t: MatrixTuple, maps: Sequence[BasedMap]) -> MatrixTuple:
    """Apply f_i: X_i -> Y_i to every entry of A^i."""
    if len(maps) != len(t.matrices):
        raise ContractViolation(f"{len(maps)} maps for {len(t.matrices)} matrices")
    return MatrixTuple(tuple(matrix.map_entries(f) for matrix, f in zip(t.matrices, maps)))


def smash_map(maps: Sequence[BasedMap]):
    """f_0 ^ ... ^ f_k on the entries of a trace class."""
    degree = len(maps) - 1

    def entry_map(entry):
        if entry is BASEPOINT:
            return BASEPOINT
        parts = unpack(entry, degree)
        return pack([f(part) for f, part in zip(maps, parts)])

    return entry_map


def anti_diagonal_example() -> Tuple[MatrixTuple, BarrattEcclesClass]:
    """
    Two anti-diagonal 2x2 matrices with distinct entries, and their trace
    [(1, tau); ((x0_21, x1_12), (x0_12, x1_21))].
    """
    X0 = BasedSet(("x0_12", "x0_21"))
    X1 = BasedSet(("x1_12", "x1_21"))
    t = MatrixTuple((
        BasedMatrix.from_entries(2, X0, {(1, 2): "x0_12", (2, 1): "x0_21"}),
        BasedMatrix.from_entries(2, X1, {(1, 2): "x1_12", (2, 1): "x1_21"}),
    ))
    expected = BarrattEcclesClass(
        (Injection(2, (1, 2)), Injection(2, (2, 1))),
        (SmashTuple(("x0_21", "x1_12")), SmashTuple(("x0_12", "x1_21"))),
    )
    return t, expected
