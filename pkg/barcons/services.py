"""
Finite monoids and rings, their bar and cyclic bar constructions, unit
groups and matrix rings.

Elements are referred to by their index in ``elements``; tables are full
square tables of indices.
"""
from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from django.conf import settings

from abelian.services import IntegerMatrix, Presentation, snf
from cyclotrace.errors import AxiomViolation, CapacityError, ContractViolation
from simplicial.services import CyclicSet, IdentityFailure, SimplicialSet, product

logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]


def _check_table(table: Sequence[Sequence[int]], size: int, axiom: str) -> Table:
    if len(table) != size:
        raise AxiomViolation(axiom, (len(table),), f"table has {len(table)} rows, expected {size}")
    rows = []
    for a, row in enumerate(table):
        if len(row) != size:
            raise AxiomViolation(axiom, (a,), f"row has {len(row)} entries, expected {size}")
        for b, value in enumerate(row):
            if not 0 <= value < size:
                raise AxiomViolation("closure", (a, b), f"entry {value} is not an element index")
        rows.append(tuple(int(value) for value in row))
    return tuple(rows)


def _check_associative(table: Table, axiom: str = "associativity") -> None:
    size = len(table)
    for a in range(size):
        row_a = table[a]
        for b in range(size):
            ab = row_a[b]
            row_b = table[b]
            for c in range(size):
                if table[ab][c] != row_a[row_b[c]]:
                    raise AxiomViolation(axiom, (a, b, c))


def _find_unit(table: Table) -> Optional[int]:
    size = len(table)
    for e in range(size):
        if all(table[e][x] == x and table[x][e] == x for x in range(size)):
            return e
    return None


class FiniteMonoid:
    """
    A finite monoid given by its multiplication table.

    ``carrier`` optionally records where each element lives in a larger
    structure (the ring index of a unit, for example).
    """

    def __init__(
        self,
        elements: Sequence[str],
        mul: Sequence[Sequence[int]],
        unit: Optional[int] = None,
        name: str = "",
        verify: bool = True,
        carrier: Optional[Sequence[int]] = None,
    ) -> None:
        self.elements = tuple(str(element) for element in elements)
        if len(set(self.elements)) != len(self.elements):
            raise ContractViolation("element names must be distinct")
        if not self.elements:
            raise ContractViolation("a monoid has at least one element")
        self.mul = _check_table(mul, len(self.elements), "mul")
        if verify:
            _check_associative(self.mul)
        found = _find_unit(self.mul)
        if unit is None:
            if found is None:
                raise AxiomViolation("unit", (), "no two-sided unit in the table")
            unit = found
        elif verify and found != unit:
            raise AxiomViolation("unit", (unit,), "declared unit is not a two-sided unit")
        self.unit = unit
        self.name = name or f"monoid{len(self.elements)}"
        self.carrier = tuple(carrier) if carrier is not None else None

    def __repr__(self) -> str:
        return f"<FiniteMonoid {self.name} |{self.size}|>"

    @property
    def size(self) -> int:
        return len(self.elements)

    def multiply(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def product(self, items: Sequence[int]) -> int:
        result = self.unit
        for item in items:
            result = self.mul[result][item]
        return result

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise ContractViolation(f"{name!r} is not an element of {self.name}") from None

    @cached_property
    def is_commutative(self) -> bool:
        return self.commutativity_violation() is None

    def commutativity_violation(self) -> Optional[Tuple[int, int]]:
        for a in range(self.size):
            for b in range(a + 1, self.size):
                if self.mul[a][b] != self.mul[b][a]:
                    return (a, b)
        return None

    @cached_property
    def inverses(self) -> Tuple[Optional[int], ...]:
        result = []
        for a in range(self.size):
            result.append(
                next(
                    (b for b in range(self.size)
                     if self.mul[a][b] == self.unit and self.mul[b][a] == self.unit),
                    None,
                )
            )
        return tuple(result)

    def inverse(self, a: int) -> Optional[int]:
        return self.inverses[a]

    @property
    def is_group(self) -> bool:
        return all(inverse is not None for inverse in self.inverses)

    def require_commutative(self, operation: str) -> None:
        if not self.is_commutative:
            a, b = self.commutativity_violation()
            raise ContractViolation(
                f"{operation} needs a commutative monoid; "
                f"{self.elements[a]}*{self.elements[b]} != {self.elements[b]}*{self.elements[a]}"
            )


@dataclass(frozen=True)
class AdditiveBasis:
    """
    (R, +) as a direct sum of cyclic groups Z/orders[j] generated by
    ``elements[j]``; ``coordinates[x]`` are the coordinates of element x.
    """

    elements: Tuple[int, ...]
    orders: Tuple[int, ...]
    coordinates: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    def presentation(self) -> Presentation:
        return Presentation.cyclic(self.orders)


class FiniteRing:
    """
    A finite ring with tabulated addition and multiplication.
    """

    def __init__(
        self,
        elements: Sequence[str],
        add: Sequence[Sequence[int]],
        mul: Sequence[Sequence[int]],
        zero: Optional[int] = None,
        one: Optional[int] = None,
        name: str = "",
        verify: bool = True,
    ) -> None:
        self.name = name or f"ring{len(elements)}"
        self.additive = FiniteMonoid(elements, add, zero, name=f"({self.name},+)", verify=verify)
        self.multiplicative = FiniteMonoid(elements, mul, one, name=f"({self.name},*)", verify=verify)
        self.elements = self.additive.elements
        self.add = self.additive.mul
        self.mul = self.multiplicative.mul
        self.zero = self.additive.unit
        self.one = self.multiplicative.unit
        if verify:
            self._verify()

    def __repr__(self) -> str:
        return f"<FiniteRing {self.name} |{self.size}|>"

    def _verify(self) -> None:
        violation = self.additive.commutativity_violation()
        if violation is not None:
            raise AxiomViolation("additive commutativity", violation)
        for a in range(self.size):
            if self.additive.inverse(a) is None:
                raise AxiomViolation("additive inverse", (a,))
        add, mul = self.add, self.mul
        for a in range(self.size):
            for b in range(self.size):
                for c in range(self.size):
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                        raise AxiomViolation("left distributivity", (a, b, c))
                    if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
                        raise AxiomViolation("right distributivity", (a, b, c))

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def is_commutative(self) -> bool:
        return self.multiplicative.is_commutative

    def negate(self, a: int) -> int:
        return self.additive.inverse(a)

    def sum(self, items: Sequence[int]) -> int:
        return self.additive.product(items)

    def multiple(self, count: int, a: int) -> int:
        if count < 0:
            count, a = -count, self.negate(a)
        result = self.zero
        for _ in range(count):
            result = self.add[result][a]
        return result

    def multiplicative_monoid(self) -> FiniteMonoid:
        return self.multiplicative

    @cached_property
    def additive_basis(self) -> AdditiveBasis:
        return _additive_basis(self)


def _additive_basis(ring: FiniteRing) -> AdditiveBasis:
    """
    Decompose (R, +) into cyclic summands.

    Generators are picked greedily, the Cayley graph is walked breadth
    first recording a coefficient vector per element and a relation per
    non-tree edge, and the Smith normal form of the relations changes basis.
    """
    add, zero = ring.add, ring.zero

    def span(generators: List[int]) -> Dict[int, Tuple[int, ...]]:
        vectors = {zero: (0,) * len(generators)}
        queue = deque([zero])
        relations.clear()
        while queue:
            x = queue.popleft()
            for g, generator in enumerate(generators):
                y = add[x][generator]
                vector = list(vectors[x])
                vector[g] += 1
                if y not in vectors:
                    vectors[y] = tuple(vector)
                    queue.append(y)
                else:
                    difference = [u - v for u, v in zip(vector, vectors[y])]
                    if any(difference):
                        relations.append(difference)
        return vectors

    relations: List[List[int]] = []
    generators: List[int] = []
    vectors = span(generators)
    for candidate in range(ring.size):
        if candidate not in vectors:
            generators.append(candidate)
            vectors = span(generators)

    r = len(generators)
    if r == 0:
        return AdditiveBasis((), (), ((),) * ring.size)
    relation_matrix = IntegerMatrix.from_sparse_columns(
        r, [{g: c for g, c in enumerate(relation) if c} for relation in relations]
    )
    form = snf(relation_matrix)
    kept = [j for j in range(r) if form.diagonal[j] != 1]
    change = form.U_inverse.to_lists()

    basis_elements = []
    for j in kept:
        element = zero
        for g in range(r):
            element = add[element][ring.multiple(change[g][j], generators[g])]
        basis_elements.append(element)
    U = form.U
    coordinates = []
    for x in range(ring.size):
        image = U.apply(list(vectors[x]))
        coordinates.append(tuple(image[j] % form.diagonal[j] for j in kept))
    return AdditiveBasis(
        tuple(basis_elements), tuple(form.diagonal[j] for j in kept), tuple(coordinates)
    )


class MatrixRing(FiniteRing):
    """
    M_n(R) tabulated in full. Element i corresponds to the row-major entry
    tuple ``entries[i]``.
    """

    def __init__(self, base: FiniteRing, n: int, limit: Optional[int] = None) -> None:
        if n < 1:
            raise ContractViolation(f"matrix size {n} must be positive")
        limit = settings.CYCLOTRACE_MATRIX_TABLE_LIMIT if limit is None else limit
        size = base.size ** (n * n)
        # both operation tables are tabulated in full
        if size * size > limit:
            raise CapacityError("matrix_table", size * size, limit)
        self.base = base
        self.n = n
        self.entries: Tuple[Tuple[int, ...], ...] = tuple(
            itertools.product(range(base.size), repeat=n * n)
        )
        self._position = {entries: index for index, entries in enumerate(self.entries)}
        add = [[0] * size for _ in range(size)]
        mul = [[0] * size for _ in range(size)]
        for a, left in enumerate(self.entries):
            for b, right in enumerate(self.entries):
                add[a][b] = self._position[
                    tuple(base.add[x][y] for x, y in zip(left, right))
                ]
                mul[a][b] = self._position[self._multiply_entries(left, right)]
        names = [self._name(entries) for entries in self.entries]
        logger.debug("tabulated M_%d(%s): %d elements", n, base.name, size)
        super().__init__(
            names, add, mul,
            zero=self._position[(base.zero,) * (n * n)],
            one=self.identity_index,
            name=f"M{n}({base.name})",
            verify=False,
        )

    def _name(self, entries: Tuple[int, ...]) -> str:
        rows = [
            ",".join(self.base.elements[x] for x in entries[s * self.n:(s + 1) * self.n])
            for s in range(self.n)
        ]
        return "[" + ";".join(rows) + "]"

    def _multiply_entries(self, left: Tuple[int, ...], right: Tuple[int, ...]) -> Tuple[int, ...]:
        n, base = self.n, self.base
        result = []
        for s in range(n):
            for t in range(n):
                result.append(
                    base.sum([base.mul[left[s * n + u]][right[u * n + t]] for u in range(n)])
                )
        return tuple(result)

    @property
    def identity_index(self) -> int:
        base = self.base
        return self._position[
            tuple(base.one if s == t else base.zero for s in range(self.n) for t in range(self.n))
        ]

    def entry(self, a: int, s: int, t: int) -> int:
        """Entry (s, t) of element a, 0-based."""
        return self.entries[a][s * self.n + t]

    def from_entries(self, entries: Sequence[int]) -> int:
        return self._position[tuple(entries)]

    def elementary(self, s: int, t: int, value: int) -> int:
        entries = [self.base.zero] * (self.n * self.n)
        entries[s * self.n + t] = value
        return self._position[tuple(entries)]

    @cached_property
    def additive_basis(self) -> AdditiveBasis:
        """The basis b * E_st ordered by (s, t, b)."""
        base_basis = self.base.additive_basis
        elements, orders = [], []
        for s in range(self.n):
            for t in range(self.n):
                for j, b in enumerate(base_basis.elements):
                    elements.append(self.elementary(s, t, b))
                    orders.append(base_basis.orders[j])
        coordinates = tuple(
            tuple(c for x in entries for c in base_basis.coordinates[x])
            for entries in self.entries
        )
        return AdditiveBasis(tuple(elements), tuple(orders), coordinates)


def matrix_ring(ring: FiniteRing, n: int, limit: Optional[int] = None) -> MatrixRing:
    return MatrixRing(ring, n, limit)


def units(ring: FiniteRing, limit: Optional[int] = None) -> FiniteMonoid:
    """
    The group of two-sided multiplicative units, found by brute force.
    """
    limit = settings.CYCLOTRACE_UNIT_SEARCH_LIMIT if limit is None else limit
    if ring.size * ring.size > limit:
        raise CapacityError("unit_search", ring.size * ring.size, limit)
    inverses = ring.multiplicative.inverses
    carrier = [a for a in range(ring.size) if inverses[a] is not None]
    position = {a: i for i, a in enumerate(carrier)}
    mul = [[position[ring.mul[a][b]] for b in carrier] for a in carrier]
    if isinstance(ring, MatrixRing):
        name = f"GL{ring.n}({ring.base.name})"
    else:
        name = f"GL1({ring.name})"
    logger.debug("%s has %d units", ring.name, len(carrier))
    return FiniteMonoid(
        [ring.elements[a] for a in carrier], mul,
        unit=position[ring.one], name=name, verify=False, carrier=carrier,
    )


def general_linear(ring: FiniteRing, n: int) -> Tuple[FiniteMonoid, MatrixRing]:
    matrices = MatrixRing(ring, n)
    return units(matrices), matrices


def block_sum_element(left: MatrixRing, right: MatrixRing, target: MatrixRing, a: int, b: int) -> int:
    """diag(a, b) in M_{m+n}(R)."""
    if not (left.base is right.base is target.base) or target.n != left.n + right.n:
        raise ContractViolation("block sum needs matrix rings over one base ring with sizes adding up")
    zero = left.base.zero
    entries = []
    for s in range(target.n):
        for t in range(target.n):
            if s < left.n and t < left.n:
                entries.append(left.entry(a, s, t))
            elif s >= left.n and t >= left.n:
                entries.append(right.entry(b, s - left.n, t - left.n))
            else:
                entries.append(zero)
    return target.from_entries(entries)


def block_sum_units(
    left: FiniteMonoid, right: FiniteMonoid, target: FiniteMonoid,
    left_ring: MatrixRing, right_ring: MatrixRing, target_ring: MatrixRing,
    g: int, h: int,
) -> int:
    """The homomorphism GL_m(R) x GL_n(R) -> GL_{m+n}(R) on unit indices."""
    element = block_sum_element(
        left_ring, right_ring, target_ring, left.carrier[g], right.carrier[h]
    )
    return target.carrier.index(element)


def bar(G: FiniteMonoid) -> SimplicialSet:
    """
    B_k G = G^k; d_0 and d_k drop an end, inner faces multiply neighbours,
    s_i inserts the unit at position i.
    """
    mul, unit = G.mul, G.unit

    def face(k, i, x):
        if i == 0:
            return x[1:]
        if i == k:
            return x[:-1]
        return x[:i - 1] + (mul[x[i - 1]][x[i]],) + x[i + 1:]

    return SimplicialSet(
        f"B({G.name})",
        lambda k: tuple(itertools.product(range(G.size), repeat=k)),
        face,
        lambda k, i, x: x[:i] + (unit,) + x[i:],
        basepoint=lambda k: (unit,) * k,
    )


def cyclic_bar(G: FiniteMonoid) -> CyclicSet:
    """
    B^cy_k G = G^(k+1) with d_i merging g_i g_{i+1}, d_k giving
    (g_k g_0, g_1, ..., g_{k-1}), s_i inserting the unit after g_i and t_k
    rotating to the right.
    """
    mul, unit = G.mul, G.unit

    def face(k, i, x):
        if i == k:
            return (mul[x[k]][x[0]],) + x[1:k]
        return x[:i] + (mul[x[i]][x[i + 1]],) + x[i + 2:]

    return CyclicSet(
        f"Bcy({G.name})",
        lambda k: tuple(itertools.product(range(G.size), repeat=k + 1)),
        face,
        lambda k, i, x: x[:i + 1] + (unit,) + x[i + 1:],
        lambda k, x: x[-1:] + x[:-1],
        basepoint=lambda k: (unit,) * (k + 1),
    )


def split_r(G: FiniteMonoid, simplex: Sequence[int]) -> int:
    """Degreewise multiplication B^cy G -> G."""
    G.require_commutative("splitR")
    return G.product(simplex)


def inclusion(G: FiniteMonoid, k: int, g: int) -> Tuple[int, ...]:
    """G -> B^cy_k G, g -> (g, 1, ..., 1)."""
    return (g,) + (G.unit,) * k


def projection(simplex: Sequence[int]) -> Tuple[int, ...]:
    """B^cy_k G -> B_k G, dropping g_0."""
    return tuple(simplex[1:])


def discrete(G: FiniteMonoid) -> SimplicialSet:
    """The constant simplicial set on the elements of G."""
    return SimplicialSet(
        G.name,
        lambda k: tuple(range(G.size)),
        lambda k, i, x: x,
        lambda k, i, x: x,
    )


class SplitIsomorphism:
    """
    B^cy_k G -> G x B_k G, (g_0, ..., g_k) -> (g_0 ... g_k, (g_1, ..., g_k)),
    for a commutative group G.
    """

    def __init__(self, G: FiniteMonoid) -> None:
        G.require_commutative("cyclicBarSplitIso")
        if not G.is_group:
            first, second, image = self._collision(G)
            raise ContractViolation(
                f"cyclicBarSplitIso needs inverses: in {G.name}, ({first}) and ({second}) "
                f"both map to {image}"
            )
        self.G = G
        self.source = cyclic_bar(G)
        self.target = product(discrete(G), bar(G))

    @staticmethod
    def _collision(G: FiniteMonoid) -> Tuple[str, str, str]:
        """Two 1-simplices with the same image; g_1 runs over the non-units."""
        names = G.elements
        for g1 in range(G.size):
            seen: Dict[int, int] = {}
            for g0 in range(G.size):
                product_ = G.multiply(g0, g1)
                if product_ in seen:
                    image = f"({names[product_]},({names[g1]}))"
                    return (
                        f"{names[seen[product_]]},{names[g1]}", f"{names[g0]},{names[g1]}", image
                    )
                seen[product_] = g0
        raise ContractViolation(f"no two 1-simplices of {G.name} share an image")

    def forward(self, k: int, simplex: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
        return (self.G.product(simplex), tuple(simplex[1:]))

    def inverse(self, k: int, pair: Tuple[int, Tuple[int, ...]]) -> Tuple[int, ...]:
        g, rest = pair
        g0 = self.G.multiply(g, self.G.inverse(self.G.product(rest)))
        return (g0,) + tuple(rest)

    def check(self, max_degree: int) -> List[IdentityFailure]:
        """Bijectivity and naturality for faces and degeneracies."""
        failures: List[IdentityFailure] = []
        for k in range(max_degree + 1):
            images = set()
            for x in self.source.simplices(k):
                image = self.forward(k, x)
                images.add(image)
                if self.inverse(k, image) != x:
                    failures.append(IdentityFailure("inverse", k, x, self.inverse(k, image), x))
                for i in range(k + 1):
                    if k >= 1:
                        left = self.forward(k - 1, self.source.face(k, i, x))
                        right = self.target.face(k, i, image)
                        if left != right:
                            failures.append(IdentityFailure(f"d{i}", k, x, left, right))
                    left = self.forward(k + 1, self.source.degeneracy(k, i, x))
                    right = self.target.degeneracy(k, i, image)
                    if left != right:
                        failures.append(IdentityFailure(f"s{i}", k, x, left, right))
            if len(images) != len(self.target.simplices(k)):
                failures.append(
                    IdentityFailure("bijection", k, None, len(images), len(self.target.simplices(k)))
                )
        return failures


def cyclic_bar_split_iso(G: FiniteMonoid) -> SplitIsomorphism:
    return SplitIsomorphism(G)
