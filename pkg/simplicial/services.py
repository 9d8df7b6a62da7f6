"""
Degreewise-finite simplicial and cyclic sets

Degrees are generated lazily from callables and memoised once per degree.
Operators take the degree of the input simplex first: ``face(k, i, x)``
sends a k-simplex to a (k-1)-simplex.
"""
from __future__ import annotations

import itertools
import logging
import threading
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from django.conf import settings

from abelian.services import ChainComplex, IntegerMatrix, Presentation
from basedsets.services import BASEPOINT, BasedSet
from cyclotrace.errors import ContractViolation

logger = logging.getLogger(__name__)

Simplex = Hashable
Operator = Callable[[int, int, Simplex], Simplex]


class SimplicialSet:
    """
    A simplicial set given by generator functions.

    ``basepoint`` is optional; when given it returns the basepoint simplex of
    each degree and the set is a based simplicial set.
    """

    def __init__(
        self,
        name: str,
        simplices: Callable[[int], Sequence[Simplex]],
        face: Operator,
        degeneracy: Operator,
        basepoint: Optional[Callable[[int], Simplex]] = None,
    ) -> None:
        self.name = name
        self._generate = simplices
        self._face = face
        self._degeneracy = degeneracy
        self._basepoint = basepoint
        self._degrees: Dict[int, Tuple[Simplex, ...]] = {}
        self._indices: Dict[int, Dict[Simplex, int]] = {}
        self._nondegenerate: Dict[int, Tuple[Simplex, ...]] = {}
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"

    @property
    def is_based(self) -> bool:
        return self._basepoint is not None

    def simplices(self, k: int) -> Tuple[Simplex, ...]:
        if k < 0:
            raise ContractViolation(f"negative degree {k}")
        with self._lock:
            if k not in self._degrees:
                degree = tuple(self._generate(k))
                self._degrees[k] = degree
                self._indices[k] = {x: position for position, x in enumerate(degree)}
                logger.debug("%s: materialised degree %d (%d simplices)", self.name, k, len(degree))
            return self._degrees[k]

    def index(self, k: int, x: Simplex) -> int:
        self.simplices(k)
        try:
            return self._indices[k][x]
        except KeyError:
            raise ContractViolation(f"{x!r} is not a {k}-simplex of {self.name}") from None

    def basepoint(self, k: int) -> Simplex:
        if self._basepoint is None:
            raise ContractViolation(f"{self.name} has no basepoint")
        return self._basepoint(k)

    def face(self, k: int, i: int, x: Simplex) -> Simplex:
        if k < 1 or not 0 <= i <= k:
            raise ContractViolation(f"face d_{i} is not defined in degree {k}")
        return self._face(k, i, x)

    def degeneracy(self, k: int, i: int, x: Simplex) -> Simplex:
        if k < 0 or not 0 <= i <= k:
            raise ContractViolation(f"degeneracy s_{i} is not defined in degree {k}")
        return self._degeneracy(k, i, x)

    def is_degenerate(self, k: int, x: Simplex) -> bool:
        # x is degenerate iff x = s_i d_i x for some i.
        return any(
            self.degeneracy(k - 1, i, self.face(k, i, x)) == x for i in range(k)
        )

    def nondegenerate(self, k: int) -> Tuple[Simplex, ...]:
        with self._lock:
            if k not in self._nondegenerate:
                self._nondegenerate[k] = tuple(
                    x for x in self.simplices(k) if not self.is_degenerate(k, x)
                )
            return self._nondegenerate[k]

    def based_set(self, k: int) -> BasedSet:
        """Degree k as a based set (non-basepoint simplices)."""
        base = self.basepoint(k)
        return BasedSet(tuple(x for x in self.simplices(k) if x != base))


class CyclicSet(SimplicialSet):
    """A simplicial set with the cyclic operators t_k."""

    def __init__(
        self,
        name: str,
        simplices: Callable[[int], Sequence[Simplex]],
        face: Operator,
        degeneracy: Operator,
        cyclic: Callable[[int, Simplex], Simplex],
        basepoint: Optional[Callable[[int], Simplex]] = None,
    ) -> None:
        super().__init__(name, simplices, face, degeneracy, basepoint)
        self._cyclic = cyclic

    def cyclic(self, k: int, x: Simplex) -> Simplex:
        if k < 0:
            raise ContractViolation(f"cyclic operator is not defined in degree {k}")
        return self._cyclic(k, x)


@dataclass(frozen=True)
class IdentityFailure:
    identity: str
    degree: int
    simplex: Simplex
    left: Simplex
    right: Simplex

    def as_dict(self) -> dict:
        return {
            "identity": self.identity,
            "degree": self.degree,
            "simplex": repr(self.simplex),
            "left": repr(self.left),
            "right": repr(self.right),
        }


def check_simplicial_identities(X: SimplicialSet, max_degree: int) -> List[IdentityFailure]:
    """
    Check every simplicial identity on every simplex of degree <= max_degree.

    Returns the failures found (empty when all identities hold).
    """
    failures: List[IdentityFailure] = []

    def expect(name: str, k: int, x: Simplex, left: Simplex, right: Simplex) -> None:
        if left != right:
            failures.append(IdentityFailure(name, k, x, left, right))

    for k in range(max_degree + 1):
        for x in X.simplices(k):
            if k >= 2:
                for j in range(k + 1):
                    for i in range(j):
                        expect(
                            f"d{i} d{j} = d{j - 1} d{i}", k, x,
                            X.face(k - 1, i, X.face(k, j, x)),
                            X.face(k - 1, j - 1, X.face(k, i, x)),
                        )
            if k + 1 <= max_degree:
                for j in range(k + 1):
                    for i in range(j + 1):
                        expect(
                            f"s{i} s{j} = s{j + 1} s{i}", k, x,
                            X.degeneracy(k + 1, i, X.degeneracy(k, j, x)),
                            X.degeneracy(k + 1, j + 1, X.degeneracy(k, i, x)),
                        )
            for j in range(k + 1):
                y = X.degeneracy(k, j, x)
                for i in range(k + 2):
                    left = X.face(k + 1, i, y)
                    if i in (j, j + 1):
                        right = x
                    elif k == 0:
                        continue
                    elif i < j:
                        right = X.degeneracy(k - 1, j - 1, X.face(k, i, x))
                    else:
                        right = X.degeneracy(k - 1, j, X.face(k, i - 1, x))
                    expect(f"d{i} s{j}", k, x, left, right)
    return failures


def check_cyclic_identities(X: CyclicSet, max_degree: int) -> List[IdentityFailure]:
    """
    Check the simplicial identities and the cyclic ones involving t_k.
    """
    failures = check_simplicial_identities(X, max_degree)

    def expect(name: str, k: int, x: Simplex, left: Simplex, right: Simplex) -> None:
        if left != right:
            failures.append(IdentityFailure(name, k, x, left, right))

    for k in range(max_degree + 1):
        for x in X.simplices(k):
            power = x
            for _ in range(k + 1):
                power = X.cyclic(k, power)
            expect(f"t{k}^{k + 1} = id", k, x, power, x)
            tx = X.cyclic(k, x)
            if k >= 1:
                expect("d0 t = d_k", k, x, X.face(k, 0, tx), X.face(k, k, x))
                for i in range(1, k + 1):
                    expect(
                        f"d{i} t = t d{i - 1}", k, x,
                        X.face(k, i, tx), X.cyclic(k - 1, X.face(k, i - 1, x)),
                    )
            if k + 1 <= max_degree:
                expect(
                    "s0 t = t^2 s_k", k, x,
                    X.degeneracy(k, 0, tx),
                    X.cyclic(k + 1, X.cyclic(k + 1, X.degeneracy(k, k, x))),
                )
                for i in range(1, k + 1):
                    expect(
                        f"s{i} t = t s{i - 1}", k, x,
                        X.degeneracy(k, i, tx), X.cyclic(k + 1, X.degeneracy(k, i - 1, x)),
                    )
    return failures


# The simplicial circle Delta[1]/boundary. A k-simplex u_j is the bit string
# with j zeros followed by k + 1 - j ones; u_0 (all ones) is the basepoint.

def circle_simplex(k: int) -> Tuple[Tuple[int, ...], ...]:
    """u_0, ..., u_k in degree k."""
    if k < 0:
        raise ContractViolation(f"negative degree {k}")
    return tuple(tuple([0] * j + [1] * (k + 1 - j)) for j in range(k + 1))


def _circle_normalise(bits: Tuple[int, ...]) -> Tuple[int, ...]:
    if all(bit == 0 for bit in bits):
        return tuple([1] * len(bits))
    return bits


def _circle_face(k: int, i: int, x: Tuple[int, ...]) -> Tuple[int, ...]:
    return _circle_normalise(x[:i] + x[i + 1:])


def _circle_degeneracy(k: int, i: int, x: Tuple[int, ...]) -> Tuple[int, ...]:
    return x[:i + 1] + x[i:]


def _circle_cyclic(k: int, x: Tuple[int, ...]) -> Tuple[int, ...]:
    j = x.count(0)
    return circle_simplex(k)[(j + 1) % (k + 1)]


def circle() -> CyclicSet:
    """The based circle S^1, basepoint u_0."""
    return CyclicSet(
        "S1",
        circle_simplex,
        _circle_face,
        _circle_degeneracy,
        _circle_cyclic,
        basepoint=lambda k: circle_simplex(k)[0],
    )


DISJOINT_BASEPOINT = "+"


def _plus(operator):
    def wrapped(k, i, x):
        return x if x == DISJOINT_BASEPOINT else operator(k, i, x)
    return wrapped


def circle_plus() -> CyclicSet:
    """S^1 with a disjoint basepoint '+'; u_0 is an ordinary simplex here."""
    return CyclicSet(
        "S1+",
        lambda k: circle_simplex(k) + (DISJOINT_BASEPOINT,),
        _plus(_circle_face),
        _plus(_circle_degeneracy),
        lambda k, x: x if x == DISJOINT_BASEPOINT else _circle_cyclic(k, x),
        basepoint=lambda k: DISJOINT_BASEPOINT,
    )


def constant(based_set: BasedSet, name: Optional[str] = None) -> CyclicSet:
    """The constant cyclic set on a based set; every operator is the identity."""
    return CyclicSet(
        name or f"const{based_set.size}",
        lambda k: based_set.with_basepoint(),
        lambda k, i, x: x,
        lambda k, i, x: x,
        lambda k, x: x,
        basepoint=lambda k: BASEPOINT,
    )


def point() -> CyclicSet:
    return constant(BasedSet(()), name="point")


def product(X: SimplicialSet, Y: SimplicialSet) -> SimplicialSet:
    """Degreewise product; cyclic when both factors are."""
    simplices = lambda k: tuple(itertools.product(X.simplices(k), Y.simplices(k)))
    face = lambda k, i, xy: (X.face(k, i, xy[0]), Y.face(k, i, xy[1]))
    degeneracy = lambda k, i, xy: (X.degeneracy(k, i, xy[0]), Y.degeneracy(k, i, xy[1]))
    basepoint = None
    if X.is_based and Y.is_based:
        basepoint = lambda k: (X.basepoint(k), Y.basepoint(k))
    name = f"{X.name} x {Y.name}"
    if isinstance(X, CyclicSet) and isinstance(Y, CyclicSet):
        return CyclicSet(
            name, simplices, face, degeneracy,
            lambda k, xy: (X.cyclic(k, xy[0]), Y.cyclic(k, xy[1])),
            basepoint=basepoint,
        )
    return SimplicialSet(name, simplices, face, degeneracy, basepoint=basepoint)


def chain_complex(
    X: SimplicialSet, truncation: Optional[int] = None, normalized: bool = True
) -> ChainComplex:
    """
    Integer chains of X up to the truncation degree N.

    Degrees 0..N+1 are materialised so that homology is exact through N.
    The normalised complex drops degenerate simplices; ``normalized=False``
    gives the full Moore complex.
    """
    N = settings.CYCLOTRACE_DEFAULT_TRUNCATION if truncation is None else truncation
    if N < 0:
        raise ContractViolation(f"negative truncation {N}")
    bases = []
    for k in range(N + 2):
        bases.append(X.nondegenerate(k) if normalized else X.simplices(k))
    positions = [{x: position for position, x in enumerate(basis)} for basis in bases]

    boundaries: Dict[int, IntegerMatrix] = {}
    for k in range(1, N + 2):
        columns = []
        for x in bases[k]:
            column: Dict[int, int] = {}
            for i in range(k + 1):
                y = X.face(k, i, x)
                row = positions[k - 1].get(y)
                if row is None:
                    # only degenerate faces are missing from the normalised basis
                    continue
                column[row] = column.get(row, 0) + (-1) ** i
            columns.append(column)
        boundaries[k] = IntegerMatrix.from_sparse_columns(len(bases[k - 1]), columns)
        logger.debug("%s: boundary d_%d is %dx%d", X.name, k, len(bases[k - 1]), len(bases[k]))

    groups = tuple(Presentation.free(len(basis)) for basis in bases)
    return ChainComplex(groups=groups, boundaries=boundaries, truncation=N, name=X.name)
