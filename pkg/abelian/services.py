"""
Exact integer linear algebra and finitely generated abelian groups

Matrices follow the column convention: the boundary d_k of a chain complex
is an n_{k-1} x n_k matrix and relations of a presentation are columns.
Nothing in this module uses floating point.
"""
from __future__ import annotations

import logging
import threading
from collections import defaultdict
from dataclasses import dataclass
from itertools import zip_longest
from math import gcd, prod
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint, isprime
from sympy.core.intfunc import igcdex

from cyclotrace.errors import ContractViolation, TruncationError

logger = logging.getLogger(__name__)

SparseColumn = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class IntegerMatrix:
    """
    An exact integer matrix stored as sparse columns.

    ``columns[j]`` lists the (row, value) pairs of column j with non-zero
    value, sorted by row.
    """

    rows: int
    cols: int
    columns: Tuple[SparseColumn, ...]

    def __post_init__(self) -> None:
        if len(self.columns) != self.cols:
            raise ContractViolation(f"{len(self.columns)} columns given for {self.cols}")

    @classmethod
    def from_sparse_columns(
        cls, rows: int, columns: Sequence[Mapping[int, int]]
    ) -> "IntegerMatrix":
        packed = []
        for column in columns:
            entries = tuple(sorted((int(r), int(v)) for r, v in column.items() if v))
            for r, _ in entries:
                if not 0 <= r < rows:
                    raise ContractViolation(f"row {r} outside 0..{rows - 1}")
            packed.append(entries)
        return cls(rows, len(packed), tuple(packed))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntegerMatrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else (cols or 0)
        columns: List[Dict[int, int]] = [{} for _ in range(n_cols)]
        for i, row in enumerate(rows):
            if len(row) != n_cols:
                raise ContractViolation("ragged matrix rows")
            for j, value in enumerate(row):
                if value:
                    columns[j][i] = value
        return cls.from_sparse_columns(n_rows, columns)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, ((),) * cols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(((j, 1),) for j in range(n)))

    @classmethod
    def diagonal(cls, rows: int, cols: int, values: Sequence[int]) -> "IntegerMatrix":
        columns: List[Dict[int, int]] = [{} for _ in range(cols)]
        for j, value in enumerate(values):
            columns[j][j] = value
        return cls.from_sparse_columns(rows, columns)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int) -> int:
        for row, value in self.columns[j]:
            if row == i:
                return value
        return 0

    def column(self, j: int) -> List[int]:
        dense = [0] * self.rows
        for row, value in self.columns[j]:
            dense[row] = value
        return dense

    def to_lists(self) -> List[List[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for j, column in enumerate(self.columns):
            for i, value in column:
                dense[i][j] = value
        return dense

    def to_numpy(self) -> np.ndarray:
        array = np.zeros((self.rows, self.cols), dtype=np.int64)
        for j, column in enumerate(self.columns):
            for i, value in column:
                array[i, j] = value
        return array

    def is_zero(self) -> bool:
        return all(not column for column in self.columns)

    def nonzero_count(self) -> int:
        return sum(len(column) for column in self.columns)

    def transpose(self) -> "IntegerMatrix":
        columns: List[Dict[int, int]] = [{} for _ in range(self.rows)]
        for j, column in enumerate(self.columns):
            for i, value in column:
                columns[i][j] = value
        return IntegerMatrix.from_sparse_columns(self.cols, columns)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ContractViolation(f"cannot multiply {self.shape} by {other.shape}")
        own = [dict(column) for column in self.columns]
        result = []
        for column in other.columns:
            accumulated: Dict[int, int] = defaultdict(int)
            for k, value in column:
                for i, entry in own[k].items():
                    accumulated[i] += entry * value
            result.append(accumulated)
        return IntegerMatrix.from_sparse_columns(self.rows, result)

    def apply(self, vector: Sequence[int]) -> List[int]:
        """Matrix times a dense column vector."""
        if len(vector) != self.cols:
            raise ContractViolation(f"vector of length {len(vector)} for {self.cols} columns")
        result = [0] * self.rows
        for j, column in enumerate(self.columns):
            coefficient = vector[j]
            if coefficient:
                for i, value in column:
                    result[i] += value * coefficient
        return result

    def hstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.rows != other.rows:
            raise ContractViolation(f"cannot stack {self.shape} beside {other.shape}")
        return IntegerMatrix(self.rows, self.cols + other.cols, self.columns + other.columns)

    def select_rows(self, count: int) -> "IntegerMatrix":
        """The first ``count`` rows."""
        return IntegerMatrix(
            count,
            self.cols,
            tuple(tuple((i, v) for i, v in column if i < count) for column in self.columns),
        )

    def select_columns(self, indices: Iterable[int]) -> "IntegerMatrix":
        picked = tuple(self.columns[j] for j in indices)
        return IntegerMatrix(self.rows, len(picked), picked)


@dataclass(frozen=True)
class SmithForm:
    """
    U * M * V = S with S diagonal; ``U_inverse`` is tracked alongside U.
    """

    diagonal: Tuple[int, ...]
    S: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix
    U_inverse: IntegerMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _eye(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _gcd_step(a: int, b: int) -> Tuple[int, int, int]:
    x, y, g = (int(value) for value in igcdex(a, b))
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


class _SmithState:
    """Dense working copy of a matrix with its row and column transforms."""

    def __init__(self, matrix: IntegerMatrix) -> None:
        self.m, self.n = matrix.rows, matrix.cols
        self.A = matrix.to_lists()
        self.U = _eye(self.m)
        self.U_inverse = _eye(self.m)
        self.V = _eye(self.n)

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        self.A[i], self.A[j] = self.A[j], self.A[i]
        self.U[i], self.U[j] = self.U[j], self.U[i]
        for row in self.U_inverse:
            row[i], row[j] = row[j], row[i]

    def swap_columns(self, i: int, j: int) -> None:
        if i == j:
            return
        for row in self.A:
            row[i], row[j] = row[j], row[i]
        for row in self.V:
            row[i], row[j] = row[j], row[i]

    def combine_rows(self, t: int, i: int) -> None:
        """Make A[i][t] zero using row t."""
        a, b = self.A[t][t], self.A[i][t]
        if b % a == 0:
            q = b // a
            for matrix in (self.A, self.U):
                row_t, row_i = matrix[t], matrix[i]
                for k, value in enumerate(row_t):
                    if value:
                        row_i[k] -= q * value
            for row in self.U_inverse:
                row[t] += q * row[i]
            return
        x, y, g = _gcd_step(a, b)
        p, q = -b // g, a // g
        for matrix in (self.A, self.U):
            row_t, row_i = matrix[t], matrix[i]
            for k in range(len(row_t)):
                u, v = row_t[k], row_i[k]
                row_t[k] = x * u + y * v
                row_i[k] = p * u + q * v
        for row in self.U_inverse:
            u, v = row[t], row[i]
            row[t] = (a // g) * u + (b // g) * v
            row[i] = -y * u + x * v

    def combine_columns(self, t: int, j: int) -> None:
        """Make A[t][j] zero using column t."""
        a, b = self.A[t][t], self.A[t][j]
        if b % a == 0:
            q = b // a
            for matrix in (self.A, self.V):
                for row in matrix:
                    if row[t]:
                        row[j] -= q * row[t]
            return
        x, y, g = _gcd_step(a, b)
        p, q = -b // g, a // g
        for matrix in (self.A, self.V):
            for row in matrix:
                u, v = row[t], row[j]
                row[t] = x * u + y * v
                row[j] = p * u + q * v

    def add_row(self, source: int, target: int) -> None:
        """row target += row source."""
        for matrix in (self.A, self.U):
            src, dst = matrix[source], matrix[target]
            for k, value in enumerate(src):
                if value:
                    dst[k] += value
        for row in self.U_inverse:
            row[source] -= row[target]

    def negate_row(self, t: int) -> None:
        for matrix in (self.A, self.U):
            matrix[t] = [-value for value in matrix[t]]
        for row in self.U_inverse:
            row[t] = -row[t]

    def pivot(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(t, self.m):
            row = self.A[i]
            for j in range(t, self.n):
                value = row[j]
                if value and (best is None or abs(value) < best[0]):
                    best = (abs(value), i, j)
                    if best[0] == 1:
                        return i, j
        return None if best is None else (best[1], best[2])


def snf(matrix: IntegerMatrix) -> SmithForm:
    """
    Smith normal form with unimodular transforms: U * M * V = S.

    Pivots on a minimal absolute value entry and clears with extended gcd
    steps; the diagonal is a divisibility chain of non-negative integers.
    """
    state = _SmithState(matrix)
    m, n = state.m, state.n
    A = state.A
    for t in range(min(m, n)):
        found = state.pivot(t)
        if found is None:
            break
        state.swap_rows(t, found[0])
        state.swap_columns(t, found[1])
        while True:
            for i in range(t + 1, m):
                if A[i][t]:
                    state.combine_rows(t, i)
            for j in range(t + 1, n):
                if A[t][j]:
                    state.combine_columns(t, j)
            if any(A[i][t] for i in range(t + 1, m)):
                continue
            d = A[t][t]
            offender = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % d),
                None,
            )
            if offender is None:
                break
            state.add_row(offender, t)
        if A[t][t] < 0:
            state.negate_row(t)
    diagonal = tuple(A[t][t] for t in range(min(m, n)))
    if m * n > 10000:
        logger.debug("snf of a %dx%d matrix, rank %d", m, n, sum(1 for d in diagonal if d))
    return SmithForm(
        diagonal=diagonal,
        S=IntegerMatrix.diagonal(m, n, diagonal),
        U=IntegerMatrix.from_rows(state.U, cols=m),
        V=IntegerMatrix.from_rows(state.V, cols=n),
        U_inverse=IntegerMatrix.from_rows(state.U_inverse, cols=m),
    )


def _eliminate_unit_pivots(matrix: IntegerMatrix) -> Tuple[int, Dict[int, Dict[int, int]]]:
    """
    Sparse elimination on +-1 pivots.

    Returns the number of unit pivots removed and the remaining rows; the
    remainder has the same non-unit invariant factors as the input.
    """
    rows: Dict[int, Dict[int, int]] = defaultdict(dict)
    for j, column in enumerate(matrix.columns):
        for i, value in column:
            rows[i][j] = value
    columns: Dict[int, set] = defaultdict(set)
    for i, row in rows.items():
        for j in row:
            columns[j].add(i)

    units = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(rows, key=lambda key: len(rows[key])):
            row = rows.get(r)
            if not row:
                rows.pop(r, None)
                continue
            candidates = [j for j, value in row.items() if value in (1, -1)]
            if not candidates:
                continue
            c = min(candidates, key=lambda j: len(columns[j]))
            pivot = row[c]
            for other in list(columns[c]):
                if other == r:
                    continue
                target = rows[other]
                factor = target[c] * pivot
                for j, value in row.items():
                    updated = target.get(j, 0) - factor * value
                    if updated:
                        if j not in target:
                            columns[j].add(other)
                        target[j] = updated
                    elif j in target:
                        del target[j]
                        columns[j].discard(other)
            for j in row:
                columns[j].discard(r)
            del rows[r]
            units += 1
            progress = True
    return units, {i: row for i, row in rows.items() if row}


def invariant_factors(matrix: IntegerMatrix) -> Tuple[int, ...]:
    """
    Non-zero diagonal entries of the Smith normal form, in divisibility order.
    """
    if matrix.rows == 0 or matrix.cols == 0:
        return ()
    units, remainder = _eliminate_unit_pivots(matrix)
    if not remainder:
        return (1,) * units
    row_ids = sorted(remainder)
    col_ids = sorted({j for row in remainder.values() for j in row})
    col_position = {j: position for position, j in enumerate(col_ids)}
    dense_columns: List[Dict[int, int]] = [{} for _ in col_ids]
    for position, i in enumerate(row_ids):
        for j, value in remainder[i].items():
            dense_columns[col_position[j]][position] = value
    logger.debug(
        "unit elimination removed %d pivots, dense remainder %dx%d",
        units, len(row_ids), len(col_ids),
    )
    rest = snf(IntegerMatrix.from_sparse_columns(len(row_ids), dense_columns)).diagonal
    return (1,) * units + tuple(d for d in rest if d)


@dataclass(frozen=True)
class AbGroup:
    """
    Z^rank + Z/d_1 + ... + Z/d_m with d_1 | d_2 | ... | d_m, each d_i >= 2.
    """

    rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        torsion = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", torsion)
        if self.rank < 0:
            raise ContractViolation(f"negative rank {self.rank}")
        for d in torsion:
            if d < 2:
                raise ContractViolation(f"torsion coefficient {d} is not at least 2")
        for smaller, larger in zip(torsion, torsion[1:]):
            if larger % smaller:
                raise ContractViolation(f"torsion {torsion} is not a divisibility chain")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "AbGroup":
        """
        The direct sum of cyclic groups Z/o (o = 0 meaning Z), in canonical form.
        """
        rank = 0
        prime_powers: Dict[int, List[int]] = defaultdict(list)
        for order in orders:
            order = abs(int(order))
            if order == 0:
                rank += 1
            elif order > 1:
                for p, e in factorint(order).items():
                    prime_powers[int(p)].append(int(p) ** int(e))
        columns = [sorted(powers, reverse=True) for _, powers in sorted(prime_powers.items())]
        torsion = sorted(prod(parts) for parts in zip_longest(*columns, fillvalue=1))
        return cls(rank, tuple(torsion))

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> Optional[int]:
        return prod(self.torsion) if self.is_finite else None

    def direct_sum(self, other: "AbGroup") -> "AbGroup":
        return AbGroup.from_orders((0,) * (self.rank + other.rank) + self.torsion + other.torsion)

    def as_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


Z = AbGroup(1)
TRIVIAL = AbGroup()


@dataclass(frozen=True)
class Presentation:
    """
    Z^generators modulo the span of sparse relation columns.
    """

    generators: int
    relations: Tuple[SparseColumn, ...] = ()

    @classmethod
    def free(cls, n: int) -> "Presentation":
        return cls(n)

    @classmethod
    def cyclic(cls, orders: Sequence[int]) -> "Presentation":
        """Monomial presentation: generator i has order ``orders[i]`` (0 = free)."""
        relations = tuple(((i, int(o)),) for i, o in enumerate(orders) if o)
        return cls(len(orders), relations)

    @property
    def is_free(self) -> bool:
        return not self.relations

    @property
    def is_monomial(self) -> bool:
        return all(len(relation) == 1 for relation in self.relations)

    @property
    def orders(self) -> Optional[Tuple[int, ...]]:
        """Per-generator orders for monomial presentations, None otherwise."""
        if not self.is_monomial:
            return None
        orders = [0] * self.generators
        for ((i, coefficient),) in self.relations:
            orders[i] = gcd(orders[i], abs(coefficient))
        return tuple(orders)

    def relation_matrix(self) -> IntegerMatrix:
        return IntegerMatrix(self.generators, len(self.relations), self.relations)

    def group(self) -> AbGroup:
        if self.is_monomial:
            return AbGroup.from_orders(self.orders)
        factors = invariant_factors(self.relation_matrix())
        return AbGroup(
            self.generators - len(factors), tuple(d for d in factors if d > 1)
        )

    def contains(self, vector: Sequence[int]) -> bool:
        """Whether ``vector`` lies in the relation lattice."""
        if self.is_monomial:
            orders = self.orders
            return all(
                (v == 0) if o == 0 else (v % o == 0) for v, o in zip(vector, orders)
            )
        return _in_column_span(self.relation_matrix(), vector)


def _in_column_span(matrix: IntegerMatrix, vector: Sequence[int]) -> bool:
    form = snf(matrix)
    image = form.U.apply(list(vector))
    for j, value in enumerate(image):
        d = form.diagonal[j] if j < len(form.diagonal) else 0
        if d == 0:
            if value:
                return False
        elif value % d:
            return False
    return True


def tensor_presentations(left: Presentation, right: Presentation) -> Presentation:
    """
    Presentation of A (x) B; generator (i, j) has index i * right.generators + j.
    """
    if left.is_monomial and right.is_monomial:
        return Presentation.cyclic(
            [gcd(a, b) for a in left.orders for b in right.orders]
        )
    width = right.generators
    relations = []
    for relation in left.relations:
        for j in range(right.generators):
            relations.append(tuple((i * width + j, c) for i, c in relation))
    for relation in right.relations:
        for i in range(left.generators):
            relations.append(tuple((i * width + j, c) for j, c in relation))
    return Presentation(left.generators * right.generators, tuple(relations))


@dataclass(frozen=True)
class LatticeHomology:
    """
    ker d_i / (im d_{i+1} + relations), with a basis of the cycle lattice.

    ``basis`` holds cycle vectors (length n_i); ``coordinates`` expresses a
    cycle in that basis. ``boundary_coordinates`` are the generators of the
    quotient's relations.
    """

    group: AbGroup
    basis: Tuple[Tuple[int, ...], ...]
    basis_form: SmithForm
    boundary_coordinates: IntegerMatrix

    def coordinates(self, cycle: Sequence[int]) -> List[int]:
        rank = len(self.basis)
        image = self.basis_form.U.apply(list(cycle))
        coordinates = []
        for j in range(rank):
            d = self.basis_form.diagonal[j]
            if image[j] % d:
                raise ContractViolation("vector is not a cycle")
            coordinates.append(image[j] // d)
        return coordinates


class ChainComplex:
    """
    A chain complex of presented abelian groups, materialised in degrees
    0..truncation+1 so that homology is exact through ``truncation``.
    """

    def __init__(
        self,
        groups: Sequence[Presentation],
        boundaries: Mapping[int, IntegerMatrix],
        truncation: int,
        name: str = "",
    ) -> None:
        self.groups = tuple(groups)
        self.boundaries = dict(boundaries)
        self.truncation = truncation
        self.name = name
        if len(self.groups) != truncation + 2:
            raise ContractViolation(
                f"{len(self.groups)} groups for truncation {truncation}"
            )
        for k, matrix in self.boundaries.items():
            expected = (self.groups[k - 1].generators, self.groups[k].generators)
            if matrix.shape != expected:
                raise ContractViolation(f"d_{k} has shape {matrix.shape}, expected {expected}")
        self._cache: Dict[Tuple[str, int], object] = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"<ChainComplex {self.name} N={self.truncation}>"

    def rank(self, k: int) -> int:
        return self.groups[k].generators

    def boundary(self, k: int) -> IntegerMatrix:
        """d_k : C_k -> C_{k-1}; d_0 is the zero map to the zero group."""
        if k == 0:
            return IntegerMatrix.zero(0, self.rank(0))
        if k > self.truncation + 1:
            raise TruncationError(k, self.truncation + 1)
        return self.boundaries[k]

    def _cached(self, key: Tuple[str, int], compute):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = compute()
        with self._lock:
            self._cache.setdefault(key, value)
        return value

    def invariant_factors(self, k: int) -> Tuple[int, ...]:
        return self._cached(("factors", k), lambda: invariant_factors(self.boundary(k)))

    def common_prime(self, degrees: Iterable[int]) -> Optional[int]:
        """The prime p when every generator in ``degrees`` has order p."""
        orders = set()
        for k in degrees:
            if k < 0:
                continue
            group_orders = self.groups[k].orders
            if group_orders is None:
                return None
            orders.update(group_orders)
            if len(orders) > 1:
                return None
        if len(orders) != 1:
            return None
        (order,) = orders
        return order if isprime(order) else None

    def lattice_homology(self, i: int) -> LatticeHomology:
        return self._cached(("lattice", i), lambda: _lattice_homology(self, i))


def _kernel_columns(matrix: IntegerMatrix, keep_rows: int) -> IntegerMatrix:
    """
    Spanning set of the lattice {z : matrix (z; w) = 0}, projected to z.
    """
    if matrix.rows == 0:
        return IntegerMatrix.identity(matrix.cols).select_rows(keep_rows)
    form = snf(matrix)
    kernel = form.V.select_columns(range(form.rank, matrix.cols))
    return kernel.select_rows(keep_rows)


def _lattice_homology(complex_: ChainComplex, i: int) -> LatticeHomology:
    n_i = complex_.rank(i)
    outgoing = complex_.boundary(i)
    if i > 0:
        outgoing = outgoing.hstack(complex_.groups[i - 1].relation_matrix())
    spanning = _kernel_columns(outgoing, n_i)
    basis_form = snf(spanning)
    rank = basis_form.rank
    cycles = spanning @ basis_form.V
    basis = tuple(tuple(cycles.column(j)) for j in range(rank))

    incoming = complex_.boundary(i + 1).hstack(complex_.groups[i].relation_matrix())
    coordinates: List[Dict[int, int]] = []
    result = LatticeHomology(AbGroup(), basis, basis_form, IntegerMatrix.zero(rank, 0))
    for j in range(incoming.cols):
        vector = result.coordinates(incoming.column(j))
        coordinates.append({row: value for row, value in enumerate(vector) if value})
    boundary_coordinates = IntegerMatrix.from_sparse_columns(rank, coordinates)
    factors = invariant_factors(boundary_coordinates)
    group = AbGroup(rank - len(factors), tuple(d for d in factors if d > 1))
    return LatticeHomology(group, basis, basis_form, boundary_coordinates)


def homology(complex_: ChainComplex, i: int) -> AbGroup:
    """
    H_i = ker d_i / im d_{i+1} in canonical form.
    """
    from abelian import modp

    if i < 0:
        raise ContractViolation(f"negative degree {i}")
    if i > complex_.truncation:
        raise TruncationError(i, complex_.truncation)
    degrees = [k for k in (i - 1, i, i + 1) if k >= 0]
    if all(complex_.groups[k].is_free for k in degrees):
        outgoing = complex_.invariant_factors(i) if i > 0 else ()
        incoming = complex_.invariant_factors(i + 1)
        rank = complex_.rank(i) - len(outgoing) - len(incoming)
        return AbGroup(rank, tuple(d for d in incoming if d > 1))
    p = complex_.common_prime(degrees)
    if p is not None:
        dimension = modp.homology_dimension(complex_, i, p)
        return AbGroup(0, (p,) * dimension)
    return complex_.lattice_homology(i).group


def homology_table(complex_: ChainComplex, top: Optional[int] = None) -> List[AbGroup]:
    top = complex_.truncation if top is None else top
    return [homology(complex_, i) for i in range(top + 1)]


def check_boundaries(complex_: ChainComplex) -> List[int]:
    """
    Degrees k for which d_{k-1} d_k fails to vanish modulo relations.
    """
    failing = []
    for k in range(2, complex_.truncation + 2):
        composite = complex_.boundary(k - 1) @ complex_.boundary(k)
        target = complex_.groups[k - 2]
        for j in range(composite.cols):
            if not target.contains(composite.column(j)):
                failing.append(k)
                break
    return failing


@dataclass(frozen=True)
class InducedMap:
    degree: int
    source: AbGroup
    target: AbGroup
    surjective: bool

    @property
    def is_isomorphism(self) -> bool:
        # finitely generated abelian groups are Hopfian
        return self.surjective and self.source == self.target

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "source": self.source.as_dict(),
            "target": self.target.as_dict(),
            "surjective": self.surjective,
            "isomorphism": self.is_isomorphism,
        }


def induced_map(
    source: ChainComplex, target: ChainComplex, chain_map: Mapping[int, IntegerMatrix], i: int
) -> InducedMap:
    """
    The map H_i(source) -> H_i(target) of a chain map given degreewise as
    integer matrices target_k x source_k.
    """
    from abelian import modp

    matrix = chain_map[i]
    if matrix.shape != (target.rank(i), source.rank(i)):
        raise ContractViolation(f"chain map in degree {i} has shape {matrix.shape}")
    source_group = homology(source, i)
    target_group = homology(target, i)
    degrees = [k for k in (i - 1, i, i + 1) if k >= 0]
    p = source.common_prime(degrees)
    if p is not None and target.common_prime(degrees) == p:
        surjective = modp.induced_surjective(source, target, matrix, i, p)
        return InducedMap(i, source_group, target_group, surjective)

    source_lattice = source.lattice_homology(i)
    target_lattice = target.lattice_homology(i)
    rank = len(target_lattice.basis)
    if rank == 0:
        return InducedMap(i, source_group, target_group, True)
    columns: List[Dict[int, int]] = []
    for cycle in source_lattice.basis:
        image = matrix.apply(list(cycle))
        vector = target_lattice.coordinates(image)
        columns.append({row: value for row, value in enumerate(vector) if value})
    images = IntegerMatrix.from_sparse_columns(rank, columns)
    combined = images.hstack(target_lattice.boundary_coordinates)
    factors = invariant_factors(combined)
    surjective = len(factors) == rank and all(d == 1 for d in factors)
    return InducedMap(i, source_group, target_group, surjective)
