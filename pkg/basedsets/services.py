"""
Based finite sets, based maps, smash products and the matrices M_n(X)

An element of M_n(X) is a based map n_+ -> n_+ ^ X. It is stored column by
column: column t is either the basepoint or a pair (row s, entry x), so a
matrix can never have two non-basepoint entries in one column.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Hashable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from cyclotrace.errors import ContractViolation


class _Basepoint:
    """The distinguished element *, shared by every based set."""

    _instance: Optional["_Basepoint"] = None

    def __new__(cls) -> "_Basepoint":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "*"

    def __reduce__(self):
        return (_Basepoint, ())


BASEPOINT = _Basepoint()


class SmashTuple(tuple):
    """
    A non-basepoint element of a smash product X_0 ^ ... ^ X_k.

    Kept distinct from plain tuples so that labels which happen to be tuples
    are never flattened by :func:`associate`.
    """

    def __repr__(self) -> str:
        return "(" + ", ".join(repr(part) for part in self) + ")"


def smash_element(*parts: Hashable) -> Union[SmashTuple, "_Basepoint"]:
    """Any tuple containing the basepoint collapses to the basepoint."""
    if any(part is BASEPOINT for part in parts):
        return BASEPOINT
    return SmashTuple(parts)


def associate(element: Hashable) -> Hashable:
    """
    Canonical associator: flatten nested smash tuples into one flat tuple.
    """
    if not isinstance(element, SmashTuple):
        return element
    flat = []
    for part in element:
        part = associate(part)
        if isinstance(part, SmashTuple):
            flat.extend(part)
        else:
            flat.append(part)
    return SmashTuple(flat)


@dataclass(frozen=True)
class BasedSet:
    """
    A finite set with a basepoint; ``elements`` lists the non-basepoint part.
    """

    elements: Tuple[Hashable, ...]

    def __post_init__(self) -> None:
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        if len(set(elements)) != len(elements):
            raise ContractViolation(f"based set has repeated elements {elements}")
        if BASEPOINT in elements:
            raise ContractViolation("the basepoint is implicit and cannot be listed")

    @classmethod
    def of_size(cls, size: int, labels: Optional[Sequence[Hashable]] = None) -> "BasedSet":
        if labels is None:
            return cls(tuple(range(1, size + 1)))
        if len(labels) != size:
            raise ContractViolation(f"{len(labels)} labels for a set of size {size}")
        return cls(tuple(labels))

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def basepoint(self) -> "_Basepoint":
        return BASEPOINT

    def with_basepoint(self) -> Tuple[Hashable, ...]:
        return (BASEPOINT,) + self.elements

    def __contains__(self, item: Hashable) -> bool:
        return item is BASEPOINT or item in self.elements

    def index(self, item: Hashable) -> int:
        return self.elements.index(item)


POINT = BasedSet(())
S0 = BasedSet(("1",))
UNIT = "1"


def smash(factors: Sequence[BasedSet]) -> BasedSet:
    """
    X_0 ^ ... ^ X_k with flat tuples as elements.
    """
    if not factors:
        raise ContractViolation("smash product of an empty list")
    if len(factors) == 1:
        return factors[0]
    elements = tuple(
        SmashTuple(parts) for parts in itertools.product(*(x.elements for x in factors))
    )
    return BasedSet(elements)


def wedge(left: BasedSet, right: BasedSet) -> Tuple[BasedSet, "BasedMap", "BasedMap"]:
    """
    S v T with elements tagged ('L', s) and ('R', t), and the two collapse maps.
    """
    total = BasedSet(
        tuple(("L", s) for s in left.elements) + tuple(("R", t) for t in right.elements)
    )
    to_left = BasedMap(
        total, left, {("L", s): s for s in left.elements}
    )
    to_right = BasedMap(
        total, right, {("R", t): t for t in right.elements}
    )
    return total, to_left, to_right


class BasedMap:
    """
    A based map S -> T. Elements missing from ``mapping`` go to the basepoint.
    """

    def __init__(self, source: BasedSet, target: BasedSet, mapping: Mapping[Hashable, Hashable]) -> None:
        values = {}
        for element in source.elements:
            value = mapping.get(element, BASEPOINT)
            if value not in target:
                raise ContractViolation(f"{value!r} is not an element of the target")
            values[element] = value
        for element in mapping:
            if element not in source.elements:
                raise ContractViolation(f"{element!r} is not an element of the source")
        self.source = source
        self.target = target
        self._values: Dict[Hashable, Hashable] = values

    def __call__(self, element: Hashable) -> Hashable:
        if element is BASEPOINT:
            return BASEPOINT
        return self._values[element]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BasedMap):
            return NotImplemented
        return (self.source, self.target, self._values) == (other.source, other.target, other._values)

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(self._values.items())))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{k!r}->{v!r}" for k, v in self._values.items())
        return f"BasedMap({pairs})"

    def fiber(self, target_element: Hashable) -> Tuple[Hashable, ...]:
        """Non-basepoint elements of the source mapping to ``target_element``."""
        return tuple(s for s in self.source.elements if self._values[s] == target_element)

    def compose(self, first: "BasedMap") -> "BasedMap":
        """self o first."""
        if first.target != self.source:
            raise ContractViolation("based maps are not composable")
        return BasedMap(
            first.source, self.target, {s: self(first(s)) for s in first.source.elements}
        )

    @classmethod
    def identity(cls, based_set: BasedSet) -> "BasedMap":
        return cls(based_set, based_set, {s: s for s in based_set.elements})


def all_based_maps(source: BasedSet, target: BasedSet) -> Iterator[BasedMap]:
    for values in itertools.product(target.with_basepoint(), repeat=source.size):
        yield BasedMap(source, target, dict(zip(source.elements, values)))


Column = Union["_Basepoint", Tuple[int, Hashable]]


@dataclass(frozen=True)
class BasedMatrix:
    """
    An element of M_n(X): ``columns[t - 1]`` is the basepoint or (s, x).
    """

    dim: int
    entry_set: BasedSet
    columns: Tuple[Column, ...]

    def __post_init__(self) -> None:
        columns = tuple(self.columns)
        object.__setattr__(self, "columns", columns)
        if len(columns) != self.dim:
            raise ContractViolation(f"{len(columns)} columns for dimension {self.dim}")
        for column in columns:
            if column is BASEPOINT:
                continue
            row, entry = column
            if not 1 <= row <= self.dim:
                raise ContractViolation(f"row {row} outside 1..{self.dim}")
            if entry is BASEPOINT or entry not in self.entry_set:
                raise ContractViolation(f"{entry!r} is not a non-basepoint entry")

    @classmethod
    def from_entries(
        cls, dim: int, entry_set: BasedSet, entries: Mapping[Tuple[int, int], Hashable]
    ) -> "BasedMatrix":
        """
        Build from {(row, column): entry}; two entries in a column are refused.
        """
        columns: list = [BASEPOINT] * dim
        for (row, col), entry in entries.items():
            if entry is BASEPOINT:
                continue
            if not 1 <= col <= dim:
                raise ContractViolation(f"column {col} outside 1..{dim}")
            if columns[col - 1] is not BASEPOINT:
                raise ContractViolation(f"column {col} has two non-basepoint entries")
            columns[col - 1] = (row, entry)
        return cls(dim, entry_set, tuple(columns))

    @classmethod
    def zero(cls, dim: int, entry_set: BasedSet) -> "BasedMatrix":
        return cls(dim, entry_set, (BASEPOINT,) * dim)

    @classmethod
    def identity(cls, dim: int) -> "BasedMatrix":
        return cls(dim, S0, tuple((t, UNIT) for t in range(1, dim + 1)))

    @classmethod
    def permutation(cls, perm, entry_set: BasedSet, token: Hashable) -> "BasedMatrix":
        """Matrix of a permutation: column t holds (perm(t), token)."""
        return cls(perm.target, entry_set, tuple((perm(t), token) for t in range(1, perm.target + 1)))

    def entry(self, row: int, col: int) -> Hashable:
        column = self.columns[col - 1]
        if column is BASEPOINT or column[0] != row:
            return BASEPOINT
        return column[1]

    def nonbase_entries(self) -> Dict[Tuple[int, int], Hashable]:
        return {
            (column[0], t): column[1]
            for t, column in enumerate(self.columns, start=1)
            if column is not BASEPOINT
        }

    def map_entries(self, based_map: BasedMap) -> "BasedMatrix":
        """Apply a based map X -> Y to every entry."""
        if based_map.source != self.entry_set:
            raise ContractViolation("based map does not start at the entry set")
        columns = []
        for column in self.columns:
            if column is BASEPOINT:
                columns.append(BASEPOINT)
                continue
            image = based_map(column[1])
            columns.append(BASEPOINT if image is BASEPOINT else (column[0], image))
        return BasedMatrix(self.dim, based_map.target, tuple(columns))

    def __str__(self) -> str:
        rows = []
        for s in range(1, self.dim + 1):
            rows.append(" ".join(repr(self.entry(s, t)) for t in range(1, self.dim + 1)))
        return "[" + "; ".join(rows) + "]"


def matrix_product(a: BasedMatrix, b: BasedMatrix) -> BasedMatrix:
    """
    (AB)_{s,t} = (A_{s,u}, B_{u,t}) where u is the row of column t of B.
    """
    if a.dim != b.dim:
        raise ContractViolation(f"dimension mismatch {a.dim} vs {b.dim}")
    columns = []
    for column in b.columns:
        if column is BASEPOINT:
            columns.append(BASEPOINT)
            continue
        middle, y = column
        left = a.columns[middle - 1]
        if left is BASEPOINT:
            columns.append(BASEPOINT)
        else:
            row, x = left
            columns.append((row, SmashTuple((x, y))))
    return BasedMatrix(a.dim, smash([a.entry_set, b.entry_set]), tuple(columns))


def block_sum(a: BasedMatrix, b: BasedMatrix) -> BasedMatrix:
    if a.entry_set != b.entry_set:
        raise ContractViolation("block sum needs a common entry set")
    shifted = tuple(
        BASEPOINT if column is BASEPOINT else (column[0] + a.dim, column[1])
        for column in b.columns
    )
    return BasedMatrix(a.dim + b.dim, a.entry_set, a.columns + shifted)


def all_matrices(dim: int, entry_set: BasedSet) -> Iterator[BasedMatrix]:
    """Every element of M_n(X), column by column."""
    options = [BASEPOINT] + [
        (row, x) for row in range(1, dim + 1) for x in entry_set.elements
    ]
    for columns in itertools.product(options, repeat=dim):
        yield BasedMatrix(dim, entry_set, columns)


def reassociate_matrix(matrix: BasedMatrix, entry_set: BasedSet) -> BasedMatrix:
    """Apply :func:`associate` to every entry, landing in ``entry_set``."""
    columns = tuple(
        BASEPOINT if column is BASEPOINT else (column[0], associate(column[1]))
        for column in matrix.columns
    )
    return BasedMatrix(matrix.dim, entry_set, columns)
