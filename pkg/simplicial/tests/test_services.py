from django.test import SimpleTestCase

from abelian.services import AbGroup, IntegerMatrix, check_boundaries, homology, homology_table
from barcons import builtins
from barcons.services import bar
from basedsets.services import BasedSet
from cyclotrace.errors import ContractViolation, TruncationError
from simplicial.services import (
    DISJOINT_BASEPOINT,
    chain_complex,
    check_cyclic_identities,
    check_simplicial_identities,
    circle,
    circle_plus,
    circle_simplex,
    constant,
    point,
    product,
)


class CircleTests(SimpleTestCase):

    def test_circle_simplex_ordering(self) -> None:
        self.assertEqual(circle_simplex(0), ((1,),))
        self.assertEqual(circle_simplex(1), ((1, 1), (0, 1)))
        self.assertEqual(circle_simplex(3)[2], (0, 0, 1, 1))

    def test_last_face_of_top_simplex_is_basepoint(self) -> None:
        S1 = circle()
        u1 = circle_simplex(1)[1]
        self.assertEqual(S1.face(1, 1, u1), circle_simplex(0)[0])
        self.assertEqual(S1.face(1, 0, u1), circle_simplex(0)[0])

    def test_explicit_operator_formulas(self) -> None:
        S1 = circle()
        for k in range(1, 5):
            u = circle_simplex(k)
            lower = circle_simplex(k - 1)
            higher = circle_simplex(k + 1)
            for j in range(k + 1):
                for i in range(k):
                    expected = lower[j] if j <= i else lower[j - 1]
                    self.assertEqual(S1.face(k, i, u[j]), expected)
                self.assertEqual(S1.face(k, k, u[j]), lower[j] if j < k else lower[0])
                for i in range(k + 1):
                    self.assertEqual(
                        S1.degeneracy(k, i, u[j]), higher[j] if j <= i else higher[j + 1]
                    )
                self.assertEqual(S1.cyclic(k, u[j]), u[(j + 1) % (k + 1)])

    def test_nondegenerate_simplices(self) -> None:
        S1 = circle()
        self.assertEqual(len(S1.nondegenerate(0)), 1)
        self.assertEqual(S1.nondegenerate(1), (circle_simplex(1)[1],))
        self.assertEqual(S1.nondegenerate(2), ())

    def test_cyclic_identities(self) -> None:
        for X in (circle(), circle_plus(), point(), constant(BasedSet(("a", "b")))):
            self.assertEqual(check_cyclic_identities(X, 5), [], X.name)

    def test_circle_plus_basepoint_is_fixed(self) -> None:
        X = circle_plus()
        self.assertEqual(X.face(3, 1, DISJOINT_BASEPOINT), DISJOINT_BASEPOINT)
        self.assertEqual(X.based_set(2).size, 3)

    def test_operator_range_checked(self) -> None:
        with self.assertRaises(ContractViolation):
            circle().face(0, 0, (1,))
        with self.assertRaises(ContractViolation):
            circle().degeneracy(1, 2, (0, 1))


class ChainComplexTests(SimpleTestCase):

    def test_point(self) -> None:
        complex_ = chain_complex(point(), 3)
        self.assertEqual(homology_table(complex_), [AbGroup(1), AbGroup(), AbGroup(), AbGroup()])

    def test_circle(self) -> None:
        complex_ = chain_complex(circle(), 3)
        self.assertEqual([complex_.rank(k) for k in range(4)], [1, 1, 0, 0])
        self.assertTrue(complex_.boundary(1).is_zero())
        self.assertEqual(homology_table(complex_), [AbGroup(1), AbGroup(1), AbGroup(), AbGroup()])

    def test_bar_of_z2_boundaries(self) -> None:
        complex_ = chain_complex(bar(builtins.monoid("z2")), 3)
        self.assertEqual([complex_.rank(k) for k in range(5)], [1, 1, 1, 1, 1])
        self.assertEqual(
            [complex_.boundary(k) for k in range(1, 5)],
            [IntegerMatrix.from_rows([[d]]) for d in (0, 2, 0, 2)],
        )

    def test_moore_complex_agrees(self) -> None:
        for X in (circle(), circle_plus()):
            normalized = chain_complex(X, 3)
            moore = chain_complex(X, 3, normalized=False)
            self.assertEqual(homology_table(normalized), homology_table(moore))
            for k in range(1, 5):
                for column in moore.boundary(k).columns:
                    self.assertTrue(all(value in (-1, 1) for _, value in column))

    def test_torus(self) -> None:
        torus = product(circle(), circle())
        self.assertEqual(check_cyclic_identities(torus, 3), [])
        complex_ = chain_complex(torus, 3)
        self.assertEqual(check_boundaries(complex_), [])
        self.assertEqual(
            homology_table(complex_), [AbGroup(1), AbGroup(2), AbGroup(1), AbGroup()]
        )

    def test_truncation_error(self) -> None:
        with self.assertRaises(TruncationError):
            homology(chain_complex(circle(), 2), 3)

    def test_simplicial_checker_reports_failures(self) -> None:
        from simplicial.services import SimplicialSet

        broken = SimplicialSet(
            "broken",
            lambda k: (0, 1),
            lambda k, i, x: 1 - x if i == 0 else x,
            lambda k, i, x: x,
        )
        failures = check_simplicial_identities(broken, 2)
        self.assertTrue(failures)
        self.assertTrue(failures[0].as_dict()["identity"])
