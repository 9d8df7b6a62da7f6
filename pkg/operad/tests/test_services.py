import itertools
from math import factorial

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from abelian.services import AbGroup, homology_table
from basedsets.services import BASEPOINT, SmashTuple
from cyclotrace.errors import ContractViolation
from injcat.services import Injection, all_permutations, compose, identity
from operad.services import (
    BarrattEcclesClass,
    BarrattEcclesSimplex,
    alpha_push,
    alpha_star_be,
    basepoint_class,
    be_cyclic,
    be_degeneracy,
    be_face,
    canonicalize,
    cyclic_class,
    degeneracy_class,
    e_sigma,
    face_class,
    include,
    multiply_be,
    pack,
    smash_cyclic,
    smash_degeneracy,
    smash_face,
)
from simplicial.services import chain_complex, check_cyclic_identities

TAU = Injection(2, (2, 1))
ID2 = identity(2)


def permutation_of(n: int):
    return st.permutations(range(1, n + 1)).map(lambda image: Injection(n, tuple(image)))


@st.composite
def simplices(draw, arity: int, degree: int):
    perms = draw(st.lists(permutation_of(arity), min_size=degree + 1, max_size=degree + 1))
    return BarrattEcclesSimplex(tuple(perms))


@st.composite
def injections_into(draw, n: int):
    m = draw(st.integers(min_value=0, max_value=n))
    return Injection(n, tuple(draw(st.permutations(range(1, n + 1)))[:m]))


@st.composite
def smash_entries(draw, degree: int, labels=("a", "b")):
    """An element of a (degree+1)-fold smash, the basepoint included."""
    parts = draw(
        st.lists(st.sampled_from((BASEPOINT,) + labels), min_size=degree + 1, max_size=degree + 1)
    )
    return pack(parts)


@st.composite
def raw_pairs(draw, max_arity: int = 4, degree=None):
    n = draw(st.integers(min_value=0, max_value=max_arity))
    k = draw(st.integers(min_value=0, max_value=2)) if degree is None else degree
    e = draw(simplices(n, k))
    x = tuple(draw(st.lists(smash_entries(k), min_size=n, max_size=n)))
    return e, x


@st.composite
def classes(draw, degree: int, max_support: int = 3):
    e, x = draw(raw_pairs(max_arity=max_support, degree=degree))
    return canonicalize(e, x)


class SimplexTests(SimpleTestCase):

    def test_operators(self) -> None:
        a, b, c = identity(2), TAU, identity(2)
        s = BarrattEcclesSimplex((a, b, c))
        self.assertEqual(be_face(1, s).perms, (a, c))
        self.assertEqual(be_degeneracy(1, s).perms, (a, b, b, c))
        self.assertEqual(be_cyclic(BarrattEcclesSimplex((a, b))).perms, (b, a))

    def test_guards(self) -> None:
        with self.assertRaises(ContractViolation):
            be_face(0, BarrattEcclesSimplex((ID2,)))
        with self.assertRaises(ContractViolation):
            be_degeneracy(2, BarrattEcclesSimplex((ID2, TAU)))
        with self.assertRaises(ContractViolation):
            BarrattEcclesSimplex((ID2, identity(3)))

    def test_cyclic_identities(self) -> None:
        for n in range(4):
            self.assertEqual(check_cyclic_identities(e_sigma(n), 3), [], n)

    def test_contractible(self) -> None:
        for n in (2, 3):
            table = homology_table(chain_complex(e_sigma(n), 3))
            self.assertEqual(table, [AbGroup(1), AbGroup(), AbGroup(), AbGroup()], n)


class ActionTests(SimpleTestCase):

    def test_pullback_examples(self) -> None:
        s = BarrattEcclesSimplex((TAU, ID2))
        self.assertEqual(alpha_star_be(ID2, s), s)
        alpha = Injection(2, (1,))
        self.assertEqual(alpha_star_be(alpha, BarrattEcclesSimplex((TAU,))).perms, (identity(1),))
        with self.assertRaises(ContractViolation):
            alpha_star_be(Injection(3, (1,)), s)

    def test_push_examples(self) -> None:
        self.assertEqual(alpha_push(ID2, ("a", "b")), ("a", "b"))
        self.assertEqual(alpha_push(Injection(2, (2,)), ("a",)), (BASEPOINT, "a"))
        self.assertEqual(alpha_push(TAU, ("a", "b")), ("b", "a"))

    @settings(max_examples=80, deadline=None)
    @given(st.data())
    def test_functor_laws(self, data) -> None:
        n = data.draw(st.integers(min_value=0, max_value=4))
        alpha = data.draw(injections_into(n))
        beta = data.draw(injections_into(alpha.source))
        s = data.draw(simplices(n, data.draw(st.integers(min_value=0, max_value=2))))
        self.assertEqual(
            alpha_star_be(compose(alpha, beta), s), alpha_star_be(beta, alpha_star_be(alpha, s))
        )
        x = tuple(f"x{i}" for i in range(beta.source))
        self.assertEqual(
            alpha_push(compose(alpha, beta), x), alpha_push(alpha, alpha_push(beta, x))
        )

    @settings(max_examples=80, deadline=None)
    @given(st.data())
    def test_pullback_commutes_with_operators(self, data) -> None:
        n = data.draw(st.integers(min_value=1, max_value=4))
        alpha = data.draw(injections_into(n))
        s = data.draw(simplices(n, 2))
        pulled = alpha_star_be(alpha, s)
        for i in range(3):
            self.assertEqual(alpha_star_be(alpha, be_face(i, s)), be_face(i, pulled))
            self.assertEqual(alpha_star_be(alpha, be_degeneracy(i, s)), be_degeneracy(i, pulled))
        self.assertEqual(alpha_star_be(alpha, be_cyclic(s)), be_cyclic(pulled))


class CanonicalFormTests(SimpleTestCase):

    def test_examples(self) -> None:
        self.assertEqual(
            canonicalize(BarrattEcclesSimplex((TAU,)), (BASEPOINT, BASEPOINT)), basepoint_class()
        )
        already = canonicalize(BarrattEcclesSimplex((ID2, TAU)), ("a", "b"))
        self.assertEqual(already, BarrattEcclesClass((ID2, TAU), ("a", "b")))
        moved = canonicalize(BarrattEcclesSimplex((TAU, ID2)), ("a", "b"))
        self.assertEqual(moved, BarrattEcclesClass((ID2, TAU), ("b", "a")))

    def test_support_restriction(self) -> None:
        c = canonicalize(BarrattEcclesSimplex((Injection(3, (3, 1, 2)),)), ("a", BASEPOINT, "c"))
        self.assertEqual(c.support, 2)
        self.assertEqual(c.perms, (identity(2),))
        self.assertEqual(c.entries, ("c", "a"))

    def test_rejects_noncanonical(self) -> None:
        with self.assertRaises(ContractViolation):
            BarrattEcclesClass((TAU,), ("a", "b"))
        with self.assertRaises(ContractViolation):
            BarrattEcclesClass((ID2,), ("a", BASEPOINT))

    @settings(max_examples=150, deadline=None)
    @given(st.data())
    def test_constant_on_generating_relation(self, data) -> None:
        e, x = data.draw(raw_pairs())
        n = data.draw(st.integers(min_value=len(x), max_value=len(x) + 2))
        alpha = Injection(n, tuple(data.draw(st.permutations(range(1, n + 1)))[:len(x)]))
        bigger = data.draw(simplices(n, e.degree))
        self.assertEqual(
            canonicalize(bigger, alpha_push(alpha, x)),
            canonicalize(alpha_star_be(alpha, bigger), x),
        )
        c = canonicalize(e, x)
        self.assertEqual(canonicalize(BarrattEcclesSimplex(c.perms), c.entries), c)

    def test_exhaustive_orbits(self) -> None:
        for m in range(5):
            for k in range(3):
                perms = tuple(all_permutations(m))
                x = tuple(f"x{i}" for i in range(m))
                forms = set()
                for tup in itertools.product(perms, repeat=k + 1):
                    e = BarrattEcclesSimplex(tup)
                    c = canonicalize(e, x)
                    forms.add(c)
                    if m <= 3:
                        for pi in perms:
                            self.assertEqual(
                                canonicalize(e, alpha_push(pi, x)),
                                canonicalize(alpha_star_be(pi, e), x),
                            )
                self.assertEqual(len(forms), factorial(m) ** (k + 1), (m, k))


class ProductTests(SimpleTestCase):

    def test_unit_and_singletons(self) -> None:
        a, b = include("a"), include("b")
        self.assertEqual(multiply_be(a, basepoint_class()), a)
        self.assertEqual(multiply_be(basepoint_class(), a), a)
        self.assertEqual(multiply_be(a, b), BarrattEcclesClass((ID2,), ("a", "b")))
        self.assertEqual(include(BASEPOINT, 2), basepoint_class(2))

    def test_degree_mismatch(self) -> None:
        with self.assertRaises(ContractViolation):
            multiply_be(include("a", 1), include("b", 0))

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_associative(self, data) -> None:
        k = data.draw(st.integers(min_value=0, max_value=2))
        a, b, c = (data.draw(classes(k)) for _ in range(3))
        self.assertEqual(multiply_be(multiply_be(a, b), c), multiply_be(a, multiply_be(b, c)))

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_faces_are_homomorphisms(self, data) -> None:
        k = data.draw(st.integers(min_value=1, max_value=2))
        a, b = data.draw(classes(k)), data.draw(classes(k))
        for i in range(k + 1):
            entry_map = smash_face(k, i)
            self.assertEqual(
                face_class(multiply_be(a, b), i, entry_map),
                multiply_be(face_class(a, i, entry_map), face_class(b, i, entry_map)),
            )


class ClassOperatorTests(SimpleTestCase):

    def test_smash_entry_maps(self) -> None:
        x = SmashTuple(("a", "b", "c"))
        self.assertEqual(smash_face(2, 0)(x), SmashTuple((SmashTuple(("a", "b")), "c")))
        self.assertEqual(smash_face(2, 2)(x), SmashTuple((SmashTuple(("c", "a")), "b")))
        self.assertEqual(smash_face(1, 0)(SmashTuple(("a", "b"))), SmashTuple(("a", "b")))
        self.assertEqual(smash_degeneracy(0, 0)("a"), SmashTuple(("a", "1")))
        self.assertEqual(smash_cyclic(2)(x), SmashTuple(("c", "a", "b")))

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_operators_descend_to_classes(self, data) -> None:
        k = data.draw(st.integers(min_value=0, max_value=2))
        e, x = data.draw(raw_pairs(max_arity=3, degree=k))
        c = canonicalize(e, x)
        for i in range(k + 1):
            entry_map = smash_degeneracy(k, i)
            self.assertEqual(
                degeneracy_class(c, i, entry_map),
                canonicalize(be_degeneracy(i, e), tuple(entry_map(v) for v in x)),
            )
            if k:
                entry_map = smash_face(k, i)
                self.assertEqual(
                    face_class(c, i, entry_map),
                    canonicalize(be_face(i, e), tuple(entry_map(v) for v in x)),
                )
        entry_map = smash_cyclic(k)
        self.assertEqual(
            cyclic_class(c, entry_map), canonicalize(be_cyclic(e), tuple(entry_map(v) for v in x))
        )
