"""
Gamma-spaces of finite commutative monoids and the sum-diagram categories D(S)

The discrete Gamma-space of a commutative monoid M sends a based set S to
M^{S-bar} and a based map alpha: S -> T to the map multiplying, for every
t in T-bar, the coordinates indexed by alpha^{-1}(t). Coordinates sent to
the basepoint are discarded and an empty fiber gives the unit.

A sum diagram on S is a functor theta from subsets of S-bar to I sending
disjoint unions to coproducts. It is stored by its leaf sizes and, for every
subset U with at least two elements, the leaf injections theta_s -> theta_U,
which must jointly form a bijection onto theta_U.
"""
from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Hashable, Iterator, List, Optional, Sequence, Tuple

from django.conf import settings

from abelian.services import AbGroup, Presentation
from barcons.services import FiniteMonoid
from basedsets.services import BASEPOINT, S0, BasedMap, BasedSet, wedge
from cyclotrace.errors import CapacityError, ContractViolation, TruncationError
from injcat.services import Injection, all_injections, compose, empty, identity
from simplicial.services import (
    DISJOINT_BASEPOINT,
    CyclicSet,
    IdentityFailure,
    Simplex,
    SimplicialSet,
    circle,
    circle_plus,
    circle_simplex,
    constant,
)

logger = logging.getLogger(__name__)

Value = Tuple[int, ...]
SimplicialMap = Callable[[int, Simplex], Simplex]


class DiscreteGammaSpace:
    """S -> M^{S-bar} for a commutative finite monoid M."""

    def __init__(self, monoid: FiniteMonoid, limit: Optional[int] = None) -> None:
        monoid.require_commutative("gammaEval")
        self.monoid = monoid
        self.limit = settings.CYCLOTRACE_GAMMA_LIMIT if limit is None else limit

    def __repr__(self) -> str:
        return f"<DiscreteGammaSpace {self.monoid.name}>"

    def _guard(self, based_set: BasedSet) -> None:
        requested = self.monoid.size ** based_set.size
        if requested > self.limit:
            raise CapacityError("gamma_eval", requested, self.limit)

    def evaluate(self, based_set: BasedSet) -> Tuple[Value, ...]:
        """Elements of M^{S-bar}, coordinates in the order of ``based_set.elements``."""
        self._guard(based_set)
        return tuple(itertools.product(range(self.monoid.size), repeat=based_set.size))

    def basepoint(self, based_set: BasedSet) -> Value:
        return (self.monoid.unit,) * based_set.size

    def induced(self, alpha: BasedMap) -> Callable[[Value], Value]:
        positions = {s: i for i, s in enumerate(alpha.source.elements)}
        fibers = [
            tuple(positions[s] for s in alpha.fiber(t)) for t in alpha.target.elements
        ]
        product = self.monoid.product
        size = alpha.source.size

        def apply(value: Value) -> Value:
            if len(value) != size:
                raise ContractViolation(f"expected {size} coordinates, got {len(value)}")
            return tuple(product([value[i] for i in fiber]) for fiber in fibers)

        return apply

    def on_simplicial(self, X: SimplicialSet, truncation: Optional[int] = None) -> SimplicialSet:
        """
        Apply the Gamma-space degreewise to a based simplicial set.

        The operators are the induced maps of the operators of ``X``; the
        result is cyclic whenever ``X`` is.
        """
        if not X.is_based:
            raise ContractViolation(f"{X.name} has no basepoint")
        operators: Dict[Tuple[str, int, int], Callable[[Value], Value]] = {}

        def operator(kind: str, k: int, i: int) -> Callable[[Value], Value]:
            key = (kind, k, i)
            if key not in operators:
                if kind == "d":
                    alpha = degreewise_map(X, X, k, k - 1, lambda x: X.face(k, i, x))
                elif kind == "s":
                    alpha = degreewise_map(X, X, k, k + 1, lambda x: X.degeneracy(k, i, x))
                else:
                    alpha = degreewise_map(X, X, k, k, lambda x: X.cyclic(k, x))
                operators[key] = self.induced(alpha)
            return operators[key]

        def simplices(k: int) -> Tuple[Value, ...]:
            if truncation is not None and k > truncation:
                raise TruncationError(k, truncation)
            return self.evaluate(X.based_set(k))

        name = f"{self.monoid.name}({X.name})"
        face = lambda k, i, x: operator("d", k, i)(x)
        degeneracy = lambda k, i, x: operator("s", k, i)(x)
        basepoint = lambda k: self.basepoint(X.based_set(k))
        if isinstance(X, CyclicSet):
            return CyclicSet(
                name, simplices, face, degeneracy,
                lambda k, x: operator("t", k, 0)(x),
                basepoint=basepoint,
            )
        return SimplicialSet(name, simplices, face, degeneracy, basepoint=basepoint)

    def on_simplicial_map(
        self, X: SimplicialSet, Y: SimplicialSet, f: SimplicialMap
    ) -> Callable[[int, Value], Value]:
        """The degreewise induced map of a based simplicial map f: X -> Y."""
        cache: Dict[int, Callable[[Value], Value]] = {}

        def apply(k: int, value: Value) -> Value:
            if k not in cache:
                cache[k] = self.induced(degreewise_map(X, Y, k, k, lambda x: f(k, x)))
            return cache[k](value)

        return apply

    @property
    def very_special(self) -> bool:
        return self.monoid.is_group


def degreewise_map(
    X: SimplicialSet, Y: SimplicialSet, k: int, target_degree: int,
    function: Callable[[Simplex], Simplex],
) -> BasedMap:
    """A simplex map X_k -> Y_j as a based map; the basepoint of Y_j becomes *."""
    source = X.based_set(k)
    target = Y.based_set(target_degree)
    base = Y.basepoint(target_degree)
    mapping = {}
    for x in source.elements:
        y = function(x)
        mapping[x] = BASEPOINT if y == base else y
    return BasedMap(source, target, mapping)


def gamma_eval(monoid: FiniteMonoid, based_set: BasedSet) -> Tuple[Value, ...]:
    return DiscreteGammaSpace(monoid).evaluate(based_set)


def induced(monoid: FiniteMonoid, alpha: BasedMap) -> Callable[[Value], Value]:
    return DiscreteGammaSpace(monoid).induced(alpha)


def gamma_on_simplicial(
    monoid: FiniteMonoid, X: SimplicialSet, truncation: Optional[int] = None
) -> SimplicialSet:
    return DiscreteGammaSpace(monoid).on_simplicial(X, truncation)


# The cofibration S^0 -> S^1_+ -> S^1 and the collapse S^1_+ -> S^0.

def sphere_zero() -> CyclicSet:
    return constant(S0, name="S0")


def s0_to_circle_plus(k: int, x: Simplex) -> Simplex:
    return DISJOINT_BASEPOINT if x is BASEPOINT else circle_simplex(k)[0]


def circle_plus_to_circle(k: int, x: Simplex) -> Simplex:
    return circle_simplex(k)[0] if x == DISJOINT_BASEPOINT else x


def circle_plus_to_s0(k: int, x: Simplex) -> Simplex:
    return BASEPOINT if x == DISJOINT_BASEPOINT else S0.elements[0]


def cofibration_maps(monoid: FiniteMonoid) -> Dict[str, Callable[[int, Value], Value]]:
    """The three maps induced on M(S^0), M(S^1_+) and M(S^1)."""
    gamma = DiscreteGammaSpace(monoid)
    s0, plus, s1 = sphere_zero(), circle_plus(), circle()
    return {
        "include": gamma.on_simplicial_map(s0, plus, s0_to_circle_plus),
        "collapse": gamma.on_simplicial_map(plus, s1, circle_plus_to_circle),
        "split": gamma.on_simplicial_map(plus, s0, circle_plus_to_s0),
    }


def compare_simplicial(
    left: SimplicialSet, right: SimplicialSet, max_degree: int
) -> List[IdentityFailure]:
    """
    Compare two simplicial sets operator for operator in degrees <= max_degree.

    Simplices must agree as tuples, and the cyclic operators are compared too
    when both sides are cyclic.
    """
    failures: List[IdentityFailure] = []
    both_cyclic = isinstance(left, CyclicSet) and isinstance(right, CyclicSet)
    for k in range(max_degree + 1):
        if set(left.simplices(k)) != set(right.simplices(k)):
            failures.append(
                IdentityFailure("simplices", k, None, len(left.simplices(k)), len(right.simplices(k)))
            )
            continue
        for x in left.simplices(k):
            for i in range(k + 1):
                if k:
                    a, b = left.face(k, i, x), right.face(k, i, x)
                    if a != b:
                        failures.append(IdentityFailure(f"d{i}", k, x, a, b))
                a, b = left.degeneracy(k, i, x), right.degeneracy(k, i, x)
                if a != b:
                    failures.append(IdentityFailure(f"s{i}", k, x, a, b))
            if both_cyclic:
                a, b = left.cyclic(k, x), right.cyclic(k, x)
                if a != b:
                    failures.append(IdentityFailure(f"t{k}", k, x, a, b))
    return failures


@dataclass(frozen=True)
class SpecialWitness:
    """The map M(S v T) -> M(S) x M(T) and whether it is a bijection."""

    bijective: bool
    very_special: bool
    domain_size: int
    codomain_size: int
    collision: Optional[Tuple[Value, Value]] = None

    def as_dict(self) -> dict:
        return {
            "bijective": self.bijective,
            "very_special": self.very_special,
            "domain_size": self.domain_size,
            "codomain_size": self.codomain_size,
            "collision": None if self.collision is None else [list(v) for v in self.collision],
        }


def check_special(monoid: FiniteMonoid, S: BasedSet, T: BasedSet) -> SpecialWitness:
    gamma = DiscreteGammaSpace(monoid)
    total, to_left, to_right = wedge(S, T)
    left, right = gamma.induced(to_left), gamma.induced(to_right)
    seen: Dict[Tuple[Value, Value], Value] = {}
    collision = None
    for value in gamma.evaluate(total):
        image = (left(value), right(value))
        if image in seen and collision is None:
            collision = (seen[image], value)
        seen.setdefault(image, value)
    codomain = monoid.size ** (S.size + T.size)
    return SpecialWitness(
        bijective=collision is None and len(seen) == codomain,
        very_special=gamma.very_special,
        domain_size=monoid.size ** total.size,
        codomain_size=codomain,
        collision=collision,
    )


def group_completion(monoid: FiniteMonoid) -> AbGroup:
    """
    The Grothendieck group: generators e_m, relations e_a + e_b - e_{ab}.
    """
    monoid.require_commutative("groupCompletion")
    relations = set()
    for a in range(monoid.size):
        for b in range(a, monoid.size):
            column: Dict[int, int] = {}
            for row, value in ((a, 1), (b, 1), (monoid.multiply(a, b), -1)):
                column[row] = column.get(row, 0) + value
            packed = tuple(sorted((row, value) for row, value in column.items() if value))
            if packed:
                relations.add(packed)
    presentation = Presentation(monoid.size, tuple(sorted(relations)))
    return presentation.group()


# Sum diagrams

Subset = FrozenSet[Hashable]


def multi_subsets(base: BasedSet) -> Tuple[Subset, ...]:
    """Subsets of S-bar with at least two elements, smallest first."""
    return tuple(
        frozenset(combination)
        for r in range(2, base.size + 1)
        for combination in itertools.combinations(base.elements, r)
    )


def _in_order(base: BasedSet, subset: Subset) -> Tuple[Hashable, ...]:
    return tuple(s for s in base.elements if s in subset)


@dataclass(frozen=True)
class SumDiagram:
    """
    ``sizes`` follows ``base.elements``; ``structure[j]`` holds the leaf
    injections into theta_U for U = multi_subsets(base)[j], in element order.
    """

    base: BasedSet
    sizes: Tuple[int, ...]
    structure: Tuple[Tuple[Injection, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))
        object.__setattr__(self, "structure", tuple(tuple(leg) for leg in self.structure))
        if len(self.sizes) != self.base.size:
            raise ContractViolation(f"{len(self.sizes)} sizes for {self.base.size} leaves")
        if any(n < 0 for n in self.sizes):
            raise ContractViolation(f"negative leaf size in {self.sizes}")
        subsets = multi_subsets(self.base)
        if len(self.structure) != len(subsets):
            raise ContractViolation(
                f"{len(self.structure)} structure entries for {len(subsets)} subsets"
            )
        for subset, legs in zip(subsets, self.structure):
            members = _in_order(self.base, subset)
            total = self.size_of(subset)
            if len(legs) != len(members):
                raise ContractViolation(f"{len(legs)} leaf maps for {len(members)} leaves")
            images = []
            for s, leg in zip(members, legs):
                if leg.source != self.size(s) or leg.target != total:
                    raise ContractViolation(
                        f"leaf map for {s!r} into {sorted(map(str, members))} is "
                        f"{leg.source}->{leg.target}, expected {self.size(s)}->{total}"
                    )
                images.extend(leg.image)
            if sorted(images) != list(range(1, total + 1)):
                raise ContractViolation(
                    f"leaf maps into {sorted(map(str, members))} are not a bijection"
                )

    def size(self, s: Hashable) -> int:
        return self.sizes[self.base.index(s)]

    def size_of(self, subset: Subset) -> int:
        return sum(self.size(s) for s in subset)

    def leaf(self, s: Hashable, subset: Subset) -> Injection:
        """The structure injection theta_s -> theta_U."""
        subset = frozenset(subset)
        if s not in subset:
            raise ContractViolation(f"{s!r} is not in the subset")
        if len(subset) == 1:
            return identity(self.size(s))
        legs = self.structure[multi_subsets(self.base).index(subset)]
        return legs[_in_order(self.base, subset).index(s)]

    def structure_map(self, smaller: Subset, larger: Subset) -> Injection:
        """theta(U <= V), assembled leaf by leaf."""
        smaller, larger = frozenset(smaller), frozenset(larger)
        if not smaller <= larger:
            raise ContractViolation("structure maps exist only for inclusions")
        total = self.size_of(smaller)
        if not smaller:
            return empty(self.size_of(larger))
        image = [0] * total
        for s in smaller:
            inner, outer = self.leaf(s, smaller), self.leaf(s, larger)
            for y in range(1, self.size(s) + 1):
                image[inner(y) - 1] = outer(y)
        return Injection(self.size_of(larger), tuple(image))

    def __str__(self) -> str:
        return "theta(" + ", ".join(f"{s}:{n}" for s, n in zip(self.base.elements, self.sizes)) + ")"


def _arrangements(sizes: Sequence[int]) -> Iterator[Tuple[Injection, ...]]:
    """Every bijection from a disjoint union of blocks onto 1..sum(sizes)."""
    total = sum(sizes)
    for perm in itertools.permutations(range(1, total + 1)):
        legs, start = [], 0
        for n in sizes:
            legs.append(Injection(total, perm[start:start + n]))
            start += n
        yield tuple(legs)


def diagram_count(base: BasedSet, bound: int) -> int:
    subsets = multi_subsets(base)
    count = 0
    for sizes in itertools.product(range(bound + 1), repeat=base.size):
        lookup = dict(zip(base.elements, sizes))
        count += math.prod(math.factorial(sum(lookup[s] for s in U)) for U in subsets)
    return count


def enumerate_sum_diagrams(
    base: BasedSet, bound: int, limit: Optional[int] = None
) -> List[SumDiagram]:
    """All sum diagrams on ``base`` with every leaf size at most ``bound``."""
    if bound < 0:
        raise ContractViolation(f"negative bound {bound}")
    limit = settings.CYCLOTRACE_SUM_DIAGRAM_LIMIT if limit is None else limit
    count = diagram_count(base, bound)
    if count > limit:
        raise CapacityError("sum_diagrams", count, limit)
    subsets = multi_subsets(base)
    diagrams = []
    for sizes in itertools.product(range(bound + 1), repeat=base.size):
        lookup = dict(zip(base.elements, sizes))
        choices = [
            list(_arrangements([lookup[s] for s in _in_order(base, U)])) for U in subsets
        ]
        for structure in itertools.product(*choices):
            diagrams.append(SumDiagram(base, sizes, structure))
    logger.debug("enumerated %d sum diagrams on %d leaves", len(diagrams), base.size)
    return diagrams


def sample_sum_diagram(base: BasedSet, bound: int, rng: random.Random) -> SumDiagram:
    sizes = tuple(rng.randint(0, bound) for _ in base.elements)
    lookup = dict(zip(base.elements, sizes))
    structure = []
    for U in multi_subsets(base):
        blocks = [lookup[s] for s in _in_order(base, U)]
        perm = list(range(1, sum(blocks) + 1))
        rng.shuffle(perm)
        legs, start = [], 0
        for n in blocks:
            legs.append(Injection(len(perm), tuple(perm[start:start + n])))
            start += n
        structure.append(tuple(legs))
    return SumDiagram(base, sizes, tuple(structure))


def alpha_lower(alpha: BasedMap, theta: SumDiagram) -> SumDiagram:
    """(alpha_* theta)_U = theta_{alpha^{-1}(U)}."""
    if alpha.source != theta.base:
        raise ContractViolation("the based map does not start at the diagram's base")
    target = alpha.target
    preimage = {t: frozenset(alpha.fiber(t)) for t in target.elements}
    sizes = tuple(theta.size_of(preimage[t]) for t in target.elements)
    structure = []
    for U in multi_subsets(target):
        whole = frozenset().union(*(preimage[t] for t in U))
        structure.append(
            tuple(theta.structure_map(preimage[t], whole) for t in _in_order(target, U))
        )
    return SumDiagram(target, sizes, tuple(structure))


def pi_s(theta: SumDiagram) -> Tuple[int, ...]:
    """Restriction to one-point subsets."""
    return theta.sizes


def section_from_ordering(
    base: BasedSet, ordering: Sequence[Hashable], sizes: Sequence[int]
) -> SumDiagram:
    """Leaves of every theta_U placed as consecutive blocks in ``ordering`` order."""
    if sorted(map(base.index, ordering)) != list(range(base.size)):
        raise ContractViolation("ordering is not a permutation of the non-basepoint elements")
    lookup = dict(zip(base.elements, sizes))
    structure = []
    for U in multi_subsets(base):
        total = sum(lookup[s] for s in U)
        start, blocks = 0, {}
        for s in ordering:
            if s in U:
                blocks[s] = Injection(total, tuple(range(start + 1, start + lookup[s] + 1)))
                start += lookup[s]
        structure.append(tuple(blocks[s] for s in _in_order(base, U)))
    return SumDiagram(base, tuple(sizes), tuple(structure))


def _nonempty_subsets(base: BasedSet) -> Tuple[Subset, ...]:
    return tuple(frozenset([s]) for s in base.elements) + multi_subsets(base)


def natural_transformations(
    source: SumDiagram, target: SumDiagram
) -> Iterator[Dict[Subset, Injection]]:
    """
    Morphisms source -> target in D(S), found by testing naturality of every
    family of injections indexed by the non-empty subsets.
    """
    if source.base != target.base:
        raise ContractViolation("diagrams on different based sets")
    subsets = _nonempty_subsets(source.base)
    inclusions = [(U, V) for U in subsets for V in subsets if U < V]
    candidates = [
        list(all_injections(source.size_of(U), target.size_of(U))) for U in subsets
    ]
    for family in itertools.product(*candidates):
        components = dict(zip(subsets, family))
        if all(
            compose(components[V], source.structure_map(U, V))
            == compose(target.structure_map(U, V), components[U])
            for U, V in inclusions
        ):
            yield components


def leafwise_morphism_count(source: SumDiagram, target: SumDiagram) -> int:
    """Morphisms pi_S(source) -> pi_S(target) in I^{S-bar}."""
    return math.prod(math.perm(m, n) for n, m in zip(source.sizes, target.sizes))
