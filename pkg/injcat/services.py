"""
The category I of finite sets and injections

Objects are the sets n = {1, ..., n} (n = 0 is the empty set), morphisms are
injective maps. This module provides composition, the monoidal structure
(concatenation), the shuffle symmetry and the unique factorization of an
injection as an order-preserving injection following a permutation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Tuple

from cyclotrace.errors import ContractViolation


@dataclass(frozen=True)
class Injection:
    """
    An injective map m -> n stored as its dense image sequence.

    Elements are 1-based: ``image[i - 1]`` is the value at ``i``. An
    injection with ``source == target`` is a permutation and caches its
    inverse image.
    """

    target: int
    image: Tuple[int, ...]
    _inverse: Tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        image = tuple(int(value) for value in self.image)
        object.__setattr__(self, "image", image)
        if self.target < 0:
            raise ContractViolation(f"negative target {self.target}")
        if len(image) > self.target:
            raise ContractViolation(
                f"source {len(image)} is larger than target {self.target}"
            )
        if len(set(image)) != len(image):
            raise ContractViolation(f"image {image} has repeated entries")
        for value in image:
            if not 1 <= value <= self.target:
                raise ContractViolation(
                    f"image entry {value} outside 1..{self.target}"
                )
        if len(image) == self.target:
            inverse = [0] * self.target
            for position, value in enumerate(image, start=1):
                inverse[value - 1] = position
            object.__setattr__(self, "_inverse", tuple(inverse))

    @property
    def source(self) -> int:
        return len(self.image)

    @property
    def is_permutation(self) -> bool:
        return self.source == self.target

    @property
    def is_order_preserving(self) -> bool:
        return all(a < b for a, b in zip(self.image, self.image[1:]))

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.source:
            raise ContractViolation(f"{i} is not in 1..{self.source}")
        return self.image[i - 1]

    def __matmul__(self, other: "Injection") -> "Injection":
        return compose(self, other)

    def inverse(self) -> "Injection":
        if not self.is_permutation:
            raise ContractViolation("only permutations can be inverted")
        return Injection(self.target, self._inverse)

    def __str__(self) -> str:
        return "[" + " ".join(str(value) for value in self.image) + f"]->{self.target}"


# Permutations are injections n -> n; the alias documents intent in signatures.
Permutation = Injection


def identity(n: int) -> Injection:
    return Injection(n, tuple(range(1, n + 1)))


def empty(n: int = 0) -> Injection:
    """The unique injection 0 -> n."""
    return Injection(n, ())


def compose(f: Injection, g: Injection) -> Injection:
    """
    Return f o g, i.e. first g then f.
    """
    if g.target != f.source:
        raise ContractViolation(
            f"cannot compose {f.source}->{f.target} after {g.source}->{g.target}"
        )
    return Injection(f.target, tuple(f.image[value - 1] for value in g.image))


def factorize(f: Injection) -> Tuple[Injection, Injection]:
    """
    Split f as ``ord o perm`` with ord order-preserving and perm a permutation.

    The factorization is read off a stable sort of the image: ``ord`` lists
    the image in increasing order and ``perm(i)`` is the rank of ``f(i)``.
    """
    ordered = sorted(f.image)
    rank = {value: position for position, value in enumerate(ordered, start=1)}
    ordered_part = Injection(f.target, tuple(ordered))
    permutation = Injection(f.source, tuple(rank[value] for value in f.image))
    return ordered_part, permutation


def star_action(alpha: Injection, sigma: Permutation) -> Tuple[Injection, Permutation]:
    """
    Factor ``sigma o alpha`` as ``pushed o pulled``.

    ``pushed`` is sigma_*(alpha), an order-preserving injection, and
    ``pulled`` is alpha^*(sigma), a permutation of the source of alpha.
    """
    if not sigma.is_permutation:
        raise ContractViolation("star_action expects a permutation")
    if sigma.source != alpha.target:
        raise ContractViolation(
            f"permutation of {sigma.source} does not act on target {alpha.target}"
        )
    return factorize(compose(sigma, alpha))


def pullback(alpha: Injection, sigma: Permutation) -> Permutation:
    """alpha^*(sigma)."""
    return star_action(alpha, sigma)[1]


def concat(f: Injection, g: Injection) -> Injection:
    """
    The monoidal product: f on the first block, g shifted on the second.
    """
    shifted = tuple(value + f.target for value in g.image)
    return Injection(f.target + g.target, f.image + shifted)


def block_sum(*perms: Permutation) -> Permutation:
    result = empty()
    for perm in perms:
        result = concat(result, perm)
    return result


def shuffle(n: int, m: int) -> Permutation:
    """
    The (n, m)-shuffle: i -> i + m for i <= n and i -> i - n for i > n.
    """
    if n < 0 or m < 0:
        raise ContractViolation(f"shuffle sizes must be non-negative, got {n}, {m}")
    image = [i + m for i in range(1, n + 1)] + [i - n for i in range(n + 1, n + m + 1)]
    return Injection(n + m, tuple(image))


def all_injections(m: int, n: int) -> Iterator[Injection]:
    for image in itertools.permutations(range(1, n + 1), m):
        yield Injection(n, image)


def order_preserving_injections(m: int, n: int) -> Iterator[Injection]:
    for image in itertools.combinations(range(1, n + 1), m):
        yield Injection(n, image)


def all_permutations(n: int) -> Iterator[Permutation]:
    return all_injections(n, n)


def from_images(target: int, image: Sequence[int]) -> Injection:
    return Injection(target, tuple(image))
