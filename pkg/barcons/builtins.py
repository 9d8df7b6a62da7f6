"""
Named monoids and rings available without an input file.
"""
from functools import lru_cache
from typing import Callable, Dict

from barcons.services import FiniteMonoid, FiniteRing, units, matrix_ring
from cyclotrace.errors import ContractViolation


def cyclic_group(n: int) -> FiniteMonoid:
    """Z/n written with elements 0..n-1 under addition."""
    return FiniteMonoid(
        [str(a) for a in range(n)],
        [[(a + b) % n for b in range(n)] for a in range(n)],
        unit=0,
        name=f"z{n}",
    )


def integers_mod(n: int) -> FiniteRing:
    return FiniteRing(
        [str(a) for a in range(n)],
        [[(a + b) % n for b in range(n)] for a in range(n)],
        [[(a * b) % n for b in range(n)] for a in range(n)],
        zero=0,
        one=1 % n,
        name=f"z{n}",
    )


def dual_numbers_f2() -> FiniteRing:
    """F_2[x]/(x^2); element a + b x has index a + 2 b."""
    names = ["0", "1", "x", "1+x"]

    def split(index):
        return index & 1, index >> 1

    def multiply(u, v):
        a, b = split(u)
        c, d = split(v)
        return (a * c) % 2 + 2 * ((a * d + b * c) % 2)

    return FiniteRing(
        names,
        [[u ^ v for v in range(4)] for u in range(4)],
        [[multiply(u, v) for v in range(4)] for u in range(4)],
        zero=0,
        one=1,
        name="f2x",
    )


def idempotent_monoid() -> FiniteMonoid:
    """{1, a} with a * a = a."""
    return FiniteMonoid(["1", "a"], [[0, 1], [1, 1]], unit=0, name="idem")


def f2x_monoid() -> FiniteMonoid:
    ring = dual_numbers_f2()
    return FiniteMonoid(ring.elements, ring.mul, unit=ring.one, name="f2x")


def gl2z2() -> FiniteMonoid:
    return units(matrix_ring(integers_mod(2), 2))


MONOIDS: Dict[str, Callable[[], FiniteMonoid]] = {
    "z2": lambda: cyclic_group(2),
    "z3": lambda: cyclic_group(3),
    "z4": lambda: cyclic_group(4),
    "idem": idempotent_monoid,
    "f2x": f2x_monoid,
    "gl2z2": gl2z2,
}

RINGS: Dict[str, Callable[[], FiniteRing]] = {
    "z2": lambda: integers_mod(2),
    "z3": lambda: integers_mod(3),
    "z4": lambda: integers_mod(4),
    "f2x": dual_numbers_f2,
}


@lru_cache(maxsize=None)
def monoid(name: str) -> FiniteMonoid:
    try:
        return MONOIDS[name]()
    except KeyError:
        raise ContractViolation(f"unknown monoid {name!r}; builtins are {sorted(MONOIDS)}") from None


@lru_cache(maxsize=None)
def ring(name: str) -> FiniteRing:
    try:
        return RINGS[name]()
    except KeyError:
        raise ContractViolation(f"unknown ring {name!r}; builtins are {sorted(RINGS)}") from None
