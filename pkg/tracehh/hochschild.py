"""
Hochschild complexes of finite rings and the linear trace

Degree k of HH(R) is R^(x)(k+1), tensor over Z. With (R, +) split as a sum
of cyclic groups Z/d_j generated by b_j, the group R^(x)(k+1) is generated
by the tensors b_{j_0} (x) ... (x) b_{j_k} of order gcd(d_{j_0}, ..., d_{j_k}).
A generator is addressed by its multi-index (j_0, ..., j_k), numbered in
base r with j_0 most significant.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from django.conf import settings

from abelian.services import ChainComplex, InducedMap, IntegerMatrix, Presentation, induced_map
from barcons.services import FiniteMonoid, FiniteRing, MatrixRing, matrix_ring
from cyclotrace.errors import CapacityError, ContractViolation

logger = logging.getLogger(__name__)

MultiIndex = Tuple[int, ...]
Terms = Dict[int, int]


def _accumulate(terms: Terms, index: int, coefficient: int) -> None:
    value = terms.get(index, 0) + coefficient
    if value:
        terms[index] = value
    else:
        terms.pop(index, None)


@dataclass(frozen=True)
class HHChain:
    """
    A chain of degree ``degree``: a sparse combination of tensor generators,
    coefficients reduced modulo the generator orders.
    """

    parent: "HochschildComplex"
    degree: int
    terms: Tuple[Tuple[int, int], ...]

    def __add__(self, other: "HHChain") -> "HHChain":
        self._check_compatible(other)
        terms = dict(self.terms)
        for index, coefficient in other.terms:
            _accumulate(terms, index, coefficient)
        return self.parent.chain(self.degree, terms)

    def __neg__(self) -> "HHChain":
        return self.parent.chain(self.degree, {index: -c for index, c in self.terms})

    def __sub__(self, other: "HHChain") -> "HHChain":
        return self + (-other)

    def _check_compatible(self, other: "HHChain") -> None:
        if self.parent is not other.parent or self.degree != other.degree:
            raise ContractViolation("chains live in different groups")

    def is_zero(self) -> bool:
        return not self.terms

    def as_tensors(self) -> List[Tuple[int, Tuple[str, ...]]]:
        """(coefficient, basis element names) per term."""
        names = self.parent.basis_names
        return [
            (c, tuple(names[j] for j in self.parent.multi_index(self.degree, index)))
            for index, c in self.terms
        ]


class HochschildComplex:
    """The cyclic abelian group [k] -> R^(x)(k+1) of a finite ring."""

    def __init__(self, ring: FiniteRing, limit: Optional[int] = None) -> None:
        self.ring = ring
        self.limit = settings.CYCLOTRACE_HOCHSCHILD_LIMIT if limit is None else limit
        basis = ring.additive_basis
        self.basis = basis
        self.r = basis.size
        self.basis_names = tuple(ring.elements[b] for b in basis.elements)
        self._sparse = [
            tuple((j, c) for j, c in enumerate(coordinates) if c)
            for coordinates in basis.coordinates
        ]
        self._products = [
            [self._sparse[ring.mul[a][b]] for b in basis.elements] for a in basis.elements
        ]
        self._one = self._sparse[ring.one]
        self._chain_complexes: Dict[int, ChainComplex] = {}

    def __repr__(self) -> str:
        return f"<HochschildComplex {self.ring.name}>"

    def generator_count(self, k: int) -> int:
        count = self.r ** (k + 1)
        if count > self.limit:
            raise CapacityError("hochschild_degree", count, self.limit)
        return count

    def multi_index(self, k: int, index: int) -> MultiIndex:
        digits = []
        for _ in range(k + 1):
            index, digit = divmod(index, self.r)
            digits.append(digit)
        return tuple(reversed(digits))

    def index(self, multi: Sequence[int]) -> int:
        value = 0
        for digit in multi:
            value = value * self.r + digit
        return value

    def multi_indices(self, k: int) -> Iterator[MultiIndex]:
        self.generator_count(k)
        return itertools.product(range(self.r), repeat=k + 1)

    def order(self, multi: Sequence[int]) -> int:
        value = 0
        for j in multi:
            value = gcd(value, self.basis.orders[j])
        return value

    def presentation(self, k: int) -> Presentation:
        return Presentation.cyclic([self.order(multi) for multi in self.multi_indices(k)])

    def chain(self, k: int, terms: Mapping[int, int]) -> HHChain:
        reduced = []
        for index in sorted(terms):
            coefficient = terms[index]
            order = self.order(self.multi_index(k, index))
            if order:
                coefficient %= order
            if coefficient:
                reduced.append((index, coefficient))
        return HHChain(self, k, tuple(reduced))

    def zero(self, k: int) -> HHChain:
        return HHChain(self, k, ())

    def _expand(self, factors: Sequence[Sequence[Tuple[int, int]]]) -> Terms:
        """Multilinear expansion of a tensor of coordinate lists."""
        terms: Terms = {}
        for choice in itertools.product(*factors):
            value = 1
            multi = []
            for j, c in choice:
                value *= c
                multi.append(j)
            _accumulate(terms, self.index(multi), value)
        return terms

    def tensor(self, elements: Sequence[int]) -> HHChain:
        """The chain a_0 (x) ... (x) a_k for ring element indices a_i."""
        k = len(elements) - 1
        if k < 0:
            raise ContractViolation("a tensor has at least one factor")
        return self.chain(k, self._expand([self._sparse[a] for a in elements]))

    def face_terms(self, k: int, i: int, multi: MultiIndex) -> Terms:
        if k == 0 or not 0 <= i <= k:
            raise ContractViolation(f"face d_{i} is not defined in degree {k}")
        singles = [((j, 1),) for j in multi]
        if i == k:
            factors = [self._products[multi[k]][multi[0]]] + singles[1:k]
        else:
            factors = singles[:i] + [self._products[multi[i]][multi[i + 1]]] + singles[i + 2:]
        return self._expand(factors)

    def degeneracy_terms(self, k: int, i: int, multi: MultiIndex) -> Terms:
        if not 0 <= i <= k:
            raise ContractViolation(f"degeneracy s_{i} is not defined in degree {k}")
        singles = [((j, 1),) for j in multi]
        return self._expand(singles[:i + 1] + [self._one] + singles[i + 1:])

    def cyclic_index(self, k: int, multi: MultiIndex) -> int:
        return self.index(multi[-1:] + multi[:-1])

    def _linear(self, chain: HHChain, degree: int, image) -> HHChain:
        if chain.parent is not self:
            raise ContractViolation("chain belongs to another complex")
        terms: Terms = {}
        for index, coefficient in chain.terms:
            for target, c in image(self.multi_index(chain.degree, index)).items():
                _accumulate(terms, target, coefficient * c)
        return self.chain(degree, terms)

    def face(self, chain: HHChain, i: int) -> HHChain:
        k = chain.degree
        return self._linear(chain, k - 1, lambda multi: self.face_terms(k, i, multi))

    def degeneracy(self, chain: HHChain, i: int) -> HHChain:
        k = chain.degree
        return self._linear(chain, k + 1, lambda multi: self.degeneracy_terms(k, i, multi))

    def cyclic(self, chain: HHChain) -> HHChain:
        k = chain.degree
        return self._linear(chain, k, lambda multi: {self.cyclic_index(k, multi): 1})

    def boundary_terms(self, k: int, multi: MultiIndex) -> Terms:
        terms: Terms = {}
        for i in range(k + 1):
            sign = -1 if i % 2 else 1
            for index, c in self.face_terms(k, i, multi).items():
                _accumulate(terms, index, sign * c)
        return terms

    def boundary(self, chain: HHChain) -> HHChain:
        k = chain.degree
        return self._linear(chain, k - 1, lambda multi: self.boundary_terms(k, multi))

    def boundary_matrix(self, k: int) -> IntegerMatrix:
        rows = self.generator_count(k - 1)
        columns = []
        for multi in self.multi_indices(k):
            chain = self.chain(k - 1, self.boundary_terms(k, multi))
            columns.append(dict(chain.terms))
        logger.debug("%s: d_%d is %dx%d", self.ring.name, k, rows, len(columns))
        return IntegerMatrix.from_sparse_columns(rows, columns)

    def chain_complex(self, truncation: Optional[int] = None) -> ChainComplex:
        N = settings.CYCLOTRACE_DEFAULT_TRUNCATION if truncation is None else truncation
        if N < 0:
            raise ContractViolation(f"negative truncation {N}")
        if N not in self._chain_complexes:
            groups = [self.presentation(k) for k in range(N + 2)]
            boundaries = {k: self.boundary_matrix(k) for k in range(1, N + 2)}
            self._chain_complexes[N] = ChainComplex(groups, boundaries, N, f"HH({self.ring.name})")
        return self._chain_complexes[N]


@lru_cache(maxsize=16)
def hochschild(ring: FiniteRing) -> HochschildComplex:
    return HochschildComplex(ring)


def hh_complex(ring: FiniteRing, truncation: Optional[int] = None) -> ChainComplex:
    return hochschild(ring).chain_complex(truncation)


def _check_trace_pair(source: HochschildComplex, target: HochschildComplex) -> MatrixRing:
    matrices = source.ring
    if not isinstance(matrices, MatrixRing) or matrices.base is not target.ring:
        raise ContractViolation(
            f"trace goes from HH(M_n({target.ring.name})), not from HH({matrices.name})"
        )
    return matrices


def trace_generator(source: HochschildComplex, target: HochschildComplex, k: int, index: int) -> Optional[int]:
    """
    Trace of the generator (b_0 E_{u_0 v_0}) (x) ... (x) (b_k E_{u_k v_k}):
    the tensor b_0 (x) ... (x) b_k when v_0 = u_1, ..., v_{k-1} = u_k and
    v_k = u_0, otherwise zero.
    """
    n, r = _check_trace_pair(source, target).n, target.r
    rows, cols, betas = [], [], []
    for j in source.multi_index(k, index):
        position, beta = divmod(j, r)
        u, v = divmod(position, n)
        rows.append(u)
        cols.append(v)
        betas.append(beta)
    if any(cols[i - 1] != rows[i] for i in range(1, k + 1)) or cols[k] != rows[0]:
        return None
    return target.index(betas)


def linear_trace(chain: HHChain, target: HochschildComplex) -> HHChain:
    """tr(A^0 (x) ... (x) A^k) = sum over s of a^0_{s_k,s_0} (x) ... (x) a^k_{s_{k-1},s_k}."""
    terms: Terms = {}
    for index, coefficient in chain.terms:
        image = trace_generator(chain.parent, target, chain.degree, index)
        if image is not None:
            _accumulate(terms, image, coefficient)
    return target.chain(chain.degree, terms)


def trace_matrix(source: HochschildComplex, target: HochschildComplex, k: int) -> IntegerMatrix:
    columns = []
    for index in range(source.generator_count(k)):
        image = trace_generator(source, target, k, index)
        columns.append({} if image is None else {image: 1})
    return IntegerMatrix.from_sparse_columns(target.generator_count(k), columns)


def trace_chain_map(source: HochschildComplex, target: HochschildComplex, truncation: int) -> Dict[int, IntegerMatrix]:
    return {k: trace_matrix(source, target, k) for k in range(truncation + 2)}


def chain_map_failures(
    source: ChainComplex, target: ChainComplex, chain_map: Mapping[int, IntegerMatrix]
) -> List[int]:
    """Degrees k where f_{k-1} d_k and d_k f_k differ modulo the target relations."""
    failing = []
    for k in range(1, source.truncation + 2):
        left = chain_map[k - 1] @ source.boundary(k)
        right = target.boundary(k) @ chain_map[k]
        relations = target.groups[k - 1]
        for j in range(left.cols):
            difference = [a - b for a, b in zip(left.column(j), right.column(j))]
            if not relations.contains(difference):
                failing.append(k)
                break
    return failing


def bcy_to_hh(complex_: HochschildComplex, units: FiniteMonoid, simplex: Sequence[int]) -> HHChain:
    """B^cy_k GL_n(R) -> HH_k(M_n(R)), (g_0, ..., g_k) -> g_0 (x) ... (x) g_k."""
    if units.carrier is None:
        raise ContractViolation(f"{units.name} does not record its ring elements")
    return complex_.tensor([units.carrier[g] for g in simplex])


def bcy_trace(
    source: HochschildComplex, target: HochschildComplex, units: FiniteMonoid, simplex: Sequence[int]
) -> HHChain:
    """B^cy_k GL_n(R) -> HH_k(M_n(R)) -> HH_k(R)."""
    return linear_trace(bcy_to_hh(source, units, simplex), target)


@dataclass(frozen=True)
class MoritaReport:
    ring: str
    n: int
    truncation: int
    maps: Tuple[InducedMap, ...]
    chain_map_failures: Tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.chain_map_failures and all(m.is_isomorphism for m in self.maps)

    def as_dict(self) -> dict:
        return {
            "ring": self.ring,
            "n": self.n,
            "truncation": self.truncation,
            "chain_map_failures": list(self.chain_map_failures),
            "maps": [m.as_dict() for m in self.maps],
            "passed": self.passed,
        }


def morita_check(ring: FiniteRing, n: int, truncation: int) -> MoritaReport:
    """
    The maps HH_i(M_n(R)) -> HH_i(R) induced by the trace, i <= truncation.
    """
    target = hochschild(ring)
    source = HochschildComplex(matrix_ring(ring, n))
    source_complex = source.chain_complex(truncation)
    target_complex = target.chain_complex(truncation)
    chain_map = trace_chain_map(source, target, truncation)
    failures = chain_map_failures(source_complex, target_complex, chain_map)
    maps = tuple(
        induced_map(source_complex, target_complex, chain_map, i) for i in range(truncation + 1)
    )
    for induced in maps:
        level = logging.INFO if induced.is_isomorphism else logging.WARNING
        logger.log(
            level, "HH_%d(M_%d(%s)) -> HH_%d(%s): %s -> %s, isomorphism=%s",
            induced.degree, n, ring.name, induced.degree, ring.name,
            induced.source, induced.target, induced.is_isomorphism,
        )
    return MoritaReport(ring.name, n, truncation, maps, tuple(failures))
