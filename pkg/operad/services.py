"""
The cyclic Barratt-Eccles construction

E_k Sigma_n is the set of (k+1)-tuples of permutations of n. Faces delete a
permutation, degeneracies repeat one and the cyclic operator rotates the
tuple to the right. An injection alpha: m -> n acts contravariantly by
pulling every permutation back along alpha.

E_k(X) is the coend of E_k Sigma_n against X^n under

    (e, alpha_*(x)) ~ (alpha^*(e), x).

A class is stored in canonical form: entries are all non-basepoint and the
first permutation is the identity. Restricting to the support leaves only
bijections pi to identify along, and pi acts freely on the first
permutation by sigma_0 -> sigma_0 pi, so fixing sigma_0 = id picks exactly
one representative per class.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Hashable, Optional, Sequence, Tuple

from basedsets.services import BASEPOINT, UNIT, SmashTuple
from cyclotrace.errors import ContractViolation
from injcat.services import (
    Injection,
    Permutation,
    all_permutations,
    block_sum,
    compose,
    identity,
    pullback,
)
from simplicial.services import CyclicSet

logger = logging.getLogger(__name__)

EntryMap = Callable[[Hashable], Hashable]


@dataclass(frozen=True)
class BarrattEcclesSimplex:
    """A k-simplex (sigma_0, ..., sigma_k) of E Sigma_n."""

    perms: Tuple[Permutation, ...]

    def __post_init__(self) -> None:
        perms = tuple(self.perms)
        object.__setattr__(self, "perms", perms)
        if not perms:
            raise ContractViolation("a simplex has at least one permutation")
        arity = perms[0].target
        for perm in perms:
            if not perm.is_permutation or perm.target != arity:
                raise ContractViolation(f"{perm} is not a permutation of {arity}")

    @property
    def arity(self) -> int:
        return self.perms[0].target

    @property
    def degree(self) -> int:
        return len(self.perms) - 1

    def __str__(self) -> str:
        return "(" + ", ".join(str(perm) for perm in self.perms) + ")"


def _check_index(i: int, top: int, what: str) -> None:
    if not 0 <= i <= top:
        raise ContractViolation(f"{what} index {i} outside 0..{top}")


def be_face(i: int, s: BarrattEcclesSimplex) -> BarrattEcclesSimplex:
    if s.degree == 0:
        raise ContractViolation("no faces below degree 0")
    _check_index(i, s.degree, "face")
    return BarrattEcclesSimplex(s.perms[:i] + s.perms[i + 1:])


def be_degeneracy(i: int, s: BarrattEcclesSimplex) -> BarrattEcclesSimplex:
    _check_index(i, s.degree, "degeneracy")
    return BarrattEcclesSimplex(s.perms[:i + 1] + s.perms[i:])


def be_cyclic(s: BarrattEcclesSimplex) -> BarrattEcclesSimplex:
    return BarrattEcclesSimplex(s.perms[-1:] + s.perms[:-1])


def alpha_star_be(alpha: Injection, s: BarrattEcclesSimplex) -> BarrattEcclesSimplex:
    """Pull every permutation of s back along alpha: m -> n."""
    if alpha.target != s.arity:
        raise ContractViolation(
            f"injection into {alpha.target} cannot act on arity {s.arity}"
        )
    if alpha.source == 0:
        return BarrattEcclesSimplex((identity(0),) * len(s.perms))
    return BarrattEcclesSimplex(tuple(pullback(alpha, sigma) for sigma in s.perms))


def alpha_push(alpha: Injection, x: Sequence[Hashable]) -> Tuple[Hashable, ...]:
    """Route entries along alpha; positions outside its image get the basepoint."""
    if len(x) != alpha.source:
        raise ContractViolation(f"{len(x)} entries for an injection from {alpha.source}")
    y = [BASEPOINT] * alpha.target
    for i, value in enumerate(x, start=1):
        y[alpha(i) - 1] = value
    return tuple(y)


def e_sigma(n: int) -> CyclicSet:
    """E Sigma_n as a cyclic set."""
    perms = tuple(all_permutations(n))

    def simplices(k):
        return tuple(BarrattEcclesSimplex(tup) for tup in itertools.product(perms, repeat=k + 1))

    return CyclicSet(
        f"ESigma{n}",
        simplices,
        lambda k, i, s: be_face(i, s),
        lambda k, i, s: be_degeneracy(i, s),
        lambda k, s: be_cyclic(s),
    )


@dataclass(frozen=True)
class BarrattEcclesClass:
    """
    A class [sigma_0, ..., sigma_k; x_1, ..., x_m] in canonical form.

    Build classes with :func:`canonicalize`; two classes are equal exactly
    when they are equal as dataclasses.
    """

    perms: Tuple[Permutation, ...]
    entries: Tuple[Hashable, ...]

    def __post_init__(self) -> None:
        m = len(self.entries)
        if any(entry is BASEPOINT for entry in self.entries):
            raise ContractViolation("canonical classes carry no basepoint entries")
        if not self.perms:
            raise ContractViolation("a class has at least one permutation")
        for perm in self.perms:
            if not perm.is_permutation or perm.target != m:
                raise ContractViolation(f"{perm} is not a permutation of {m}")
        if self.perms[0] != identity(m):
            raise ContractViolation("the first permutation of a canonical class is the identity")

    @property
    def degree(self) -> int:
        return len(self.perms) - 1

    @property
    def support(self) -> int:
        return len(self.entries)

    @property
    def is_basepoint(self) -> bool:
        return not self.entries

    def __str__(self) -> str:
        perms = ", ".join(str(perm) for perm in self.perms)
        entries = ", ".join(repr(entry) for entry in self.entries)
        return f"[{perms}; {entries}]"


def basepoint_class(degree: int = 0) -> BarrattEcclesClass:
    """The class with empty support; the unit of the block-sum product."""
    return BarrattEcclesClass((identity(0),) * (degree + 1), ())


def canonicalize(raw: BarrattEcclesSimplex, x: Sequence[Hashable]) -> BarrattEcclesClass:
    """
    Canonical representative of [raw; x].

    First pull back along the order-preserving inclusion of the support
    {i : x_i != *}; then act by pi = sigma_0^-1, which sends sigma_i to
    sigma_i pi and reindexes the entries as y_i = x_{pi(i)}.
    """
    if len(x) != raw.arity:
        raise ContractViolation(f"{len(x)} entries for arity {raw.arity}")
    support = tuple(i for i, value in enumerate(x, start=1) if value is not BASEPOINT)
    if len(support) < raw.arity:
        alpha = Injection(raw.arity, support)
        raw = alpha_star_be(alpha, raw)
        x = tuple(x[i - 1] for i in support)
    if not x:
        return basepoint_class(raw.degree)
    pi = raw.perms[0].inverse()
    perms = tuple(compose(sigma, pi) for sigma in raw.perms)
    entries = tuple(x[pi(i) - 1] for i in range(1, len(x) + 1))
    return BarrattEcclesClass(perms, entries)


def as_raw(c: BarrattEcclesClass) -> Tuple[BarrattEcclesSimplex, Tuple[Hashable, ...]]:
    return BarrattEcclesSimplex(c.perms), c.entries


def include(x: Hashable, degree: int = 0) -> BarrattEcclesClass:
    """X -> E_k(X), x -> [1, ..., 1; x]; the basepoint goes to the basepoint class."""
    if x is BASEPOINT:
        return basepoint_class(degree)
    return BarrattEcclesClass((identity(1),) * (degree + 1), (x,))


def multiply_be(first: BarrattEcclesClass, second: BarrattEcclesClass) -> BarrattEcclesClass:
    """[sigma; x] . [sigma'; x'] = [sigma + sigma'; (x, x')]."""
    if first.degree != second.degree:
        raise ContractViolation(
            f"cannot multiply classes of degrees {first.degree} and {second.degree}"
        )
    perms = tuple(block_sum(a, b) for a, b in zip(first.perms, second.perms))
    return canonicalize(BarrattEcclesSimplex(perms), first.entries + second.entries)


def _mapped(c: BarrattEcclesClass, entry_map: Optional[EntryMap]) -> Tuple[Hashable, ...]:
    if entry_map is None:
        return c.entries
    return tuple(entry_map(entry) for entry in c.entries)


def face_class(c: BarrattEcclesClass, i: int, entry_map: Optional[EntryMap] = None) -> BarrattEcclesClass:
    """
    d_i on E_k(X_0 ^ ... ^ X_k): delete sigma_i and send every entry
    through ``entry_map`` (the face of the smash coordinates).
    """
    if c.degree == 0:
        raise ContractViolation("no faces below degree 0")
    _check_index(i, c.degree, "face")
    if c.is_basepoint:
        return basepoint_class(c.degree - 1)
    return canonicalize(be_face(i, BarrattEcclesSimplex(c.perms)), _mapped(c, entry_map))


def degeneracy_class(c: BarrattEcclesClass, i: int, entry_map: Optional[EntryMap] = None) -> BarrattEcclesClass:
    _check_index(i, c.degree, "degeneracy")
    if c.is_basepoint:
        return basepoint_class(c.degree + 1)
    return canonicalize(be_degeneracy(i, BarrattEcclesSimplex(c.perms)), _mapped(c, entry_map))


def cyclic_class(c: BarrattEcclesClass, entry_map: Optional[EntryMap] = None) -> BarrattEcclesClass:
    if c.is_basepoint:
        return c
    return canonicalize(be_cyclic(BarrattEcclesSimplex(c.perms)), _mapped(c, entry_map))


def map_class(c: BarrattEcclesClass, entry_map: EntryMap) -> BarrattEcclesClass:
    """E_k(f) for a based map f of entry sets."""
    if c.is_basepoint:
        return c
    return canonicalize(BarrattEcclesSimplex(c.perms), _mapped(c, entry_map))


# Entry maps for classes over X_0 ^ ... ^ X_k. A degree 0 entry is a plain
# element; in higher degrees it is a smash tuple with one coordinate per factor.

def unpack(entry: Hashable, degree: int) -> Tuple[Hashable, ...]:
    return (entry,) if degree == 0 else tuple(entry)


def pack(parts: Sequence[Hashable]) -> Hashable:
    parts = tuple(parts)
    if any(part is BASEPOINT for part in parts):
        return BASEPOINT
    return parts[0] if len(parts) == 1 else SmashTuple(parts)


def _coordinatewise(degree: int, rearrange: Callable[[Tuple[Hashable, ...]], Tuple[Hashable, ...]]) -> EntryMap:
    def entry_map(entry):
        if entry is BASEPOINT:
            return BASEPOINT
        return pack(rearrange(unpack(entry, degree)))

    return entry_map


def smash_face(degree: int, i: int) -> EntryMap:
    """Merge coordinates i, i+1 into a pair; for i = degree the pair is (x_k, x_0) in front."""
    if i == degree:
        return _coordinatewise(
            degree, lambda x: (SmashTuple((x[degree], x[0])),) + x[1:degree]
        )
    return _coordinatewise(
        degree, lambda x: x[:i] + (SmashTuple((x[i], x[i + 1])),) + x[i + 2:]
    )


def smash_degeneracy(degree: int, i: int) -> EntryMap:
    """Insert the unit of S^0 as coordinate i + 1."""
    return _coordinatewise(degree, lambda x: x[:i + 1] + (UNIT,) + x[i + 1:])


def smash_cyclic(degree: int) -> EntryMap:
    return _coordinatewise(degree, lambda x: x[-1:] + x[:-1])
