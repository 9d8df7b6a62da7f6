import itertools

from django.test import SimpleTestCase, override_settings

from abelian.services import AbGroup, homology_table
from barcons import builtins
from barcons.services import (
    FiniteMonoid,
    MatrixRing,
    bar,
    block_sum_units,
    cyclic_bar,
    cyclic_bar_split_iso,
    general_linear,
    inclusion,
    matrix_ring,
    projection,
    split_r,
    units,
)
from cyclotrace.errors import AxiomViolation, CapacityError, ContractViolation
from simplicial.services import chain_complex, check_cyclic_identities, check_simplicial_identities

Z2 = AbGroup(0, (2,))


class MonoidTests(SimpleTestCase):

    def test_axioms_checked_at_construction(self) -> None:
        table = [[0, 1, 2], [1, 2, 1], [2, 2, 2]]
        with self.assertRaises(AxiomViolation) as caught:
            FiniteMonoid(["e", "a", "b"], table)
        self.assertEqual(caught.exception.axiom, "associativity")
        with self.assertRaises(AxiomViolation) as caught:
            FiniteMonoid(["a", "b"], [[0, 0], [1, 1]])
        self.assertEqual(caught.exception.axiom, "unit")

    def test_flags(self) -> None:
        self.assertTrue(builtins.monoid("z3").is_group)
        self.assertTrue(builtins.monoid("z3").is_commutative)
        self.assertFalse(builtins.monoid("idem").is_group)
        self.assertFalse(builtins.monoid("gl2z2").is_commutative)
        self.assertEqual(builtins.monoid("gl2z2").size, 6)


class BarTests(SimpleTestCase):

    def test_trivial_monoid(self) -> None:
        trivial = FiniteMonoid(["1"], [[0]])
        B, Bcy = bar(trivial), cyclic_bar(trivial)
        for k in range(4):
            self.assertEqual(len(B.simplices(k)), 1)
            self.assertEqual(len(Bcy.simplices(k)), 1)

    def test_bar_degree_two(self) -> None:
        B = bar(builtins.monoid("z2"))
        self.assertEqual(len(B.simplices(2)), 4)
        self.assertEqual(B.nondegenerate(2), ((1, 1),))
        self.assertEqual(B.face(2, 1, (1, 1)), (0,))
        self.assertEqual(B.face(2, 0, (1, 0)), (0,))
        self.assertEqual(B.face(2, 2, (1, 0)), (1,))

    def test_cyclic_bar_operators(self) -> None:
        G = builtins.monoid("z3")
        Bcy = cyclic_bar(G)
        self.assertEqual(Bcy.face(2, 2, (1, 2, 2)), (0, 2))
        self.assertEqual(Bcy.face(2, 0, (1, 2, 2)), (0, 2))
        self.assertEqual(Bcy.cyclic(2, (0, 1, 2)), (2, 0, 1))
        self.assertEqual(Bcy.degeneracy(1, 0, (1, 2)), (1, 0, 2))

    def test_identities_exhaustive(self) -> None:
        for name in ("z2", "z3", "z4", "idem", "f2x"):
            G = builtins.monoid(name)
            self.assertEqual(check_cyclic_identities(cyclic_bar(G), 4), [], name)
            self.assertEqual(check_simplicial_identities(bar(G), 4), [], name)
        self.assertEqual(check_cyclic_identities(cyclic_bar(builtins.monoid("gl2z2")), 3), [])

    def test_homology_of_bar_z2(self) -> None:
        table = homology_table(chain_complex(bar(builtins.monoid("z2")), 5))
        self.assertEqual(table, [AbGroup(1), Z2, AbGroup(), Z2, AbGroup(), Z2])

    def test_homology_of_bar_z3(self) -> None:
        table = homology_table(chain_complex(bar(builtins.monoid("z3")), 3))
        self.assertEqual(table, [AbGroup(1), AbGroup(0, (3,)), AbGroup(), AbGroup(0, (3,))])

    def test_cyclic_bar_homology_matches_product(self) -> None:
        expected = {
            "z2": [AbGroup(2), AbGroup(0, (2, 2)), AbGroup(), AbGroup(0, (2, 2))],
            "z3": [AbGroup(3), AbGroup(0, (3, 3, 3)), AbGroup(), AbGroup(0, (3, 3, 3))],
        }
        for name, groups in expected.items():
            with self.subTest(monoid=name):
                iso = cyclic_bar_split_iso(builtins.monoid(name))
                direct = homology_table(chain_complex(iso.source, 3))
                split = homology_table(chain_complex(iso.target, 3))
                self.assertEqual(direct, split)
                self.assertEqual(direct, groups)


class SplittingTests(SimpleTestCase):

    def test_split_r_examples(self) -> None:
        G = builtins.monoid("z2")
        self.assertEqual(split_r(G, (1,)), 1)
        self.assertEqual(split_r(G, (1, 1, 0)), 0)

    def test_split_r_is_cyclic_map_to_constant(self) -> None:
        G = builtins.monoid("f2x")
        Bcy = cyclic_bar(G)
        for k in range(4):
            for x in Bcy.simplices(k):
                value = split_r(G, x)
                self.assertEqual(split_r(G, Bcy.cyclic(k, x)), value)
                for i in range(k + 1):
                    self.assertEqual(split_r(G, Bcy.degeneracy(k, i, x)), value)
                    if k:
                        self.assertEqual(split_r(G, Bcy.face(k, i, x)), value)
        for g in range(G.size):
            self.assertEqual(split_r(G, inclusion(G, 0, g)), g)
            self.assertEqual(split_r(G, inclusion(G, 3, g)), g)

    def test_split_r_refuses_noncommutative(self) -> None:
        with self.assertRaises(ContractViolation):
            split_r(builtins.monoid("gl2z2"), (0, 1))

    def test_split_isomorphism(self) -> None:
        for name in ("z2", "z3"):
            self.assertEqual(cyclic_bar_split_iso(builtins.monoid(name)).check(4), [], name)
        iso = cyclic_bar_split_iso(builtins.monoid("z2"))
        self.assertEqual(
            sorted(iso.forward(1, x) for x in iso.source.simplices(1)),
            [(0, (0,)), (0, (1,)), (1, (0,)), (1, (1,))],
        )

    def test_split_isomorphism_needs_group(self) -> None:
        with self.assertRaises(ContractViolation) as caught:
            cyclic_bar_split_iso(builtins.monoid("idem"))
        self.assertIn("(1,a) and (a,a) both map to (a,(a))", str(caught.exception))
        with self.assertRaises(ContractViolation) as caught:
            cyclic_bar_split_iso(builtins.monoid("f2x"))
        self.assertIn("needs inverses", str(caught.exception))
        with self.assertRaises(ContractViolation):
            cyclic_bar_split_iso(builtins.monoid("gl2z2"))

    def test_inclusion_and_projection_are_simplicial(self) -> None:
        G = builtins.monoid("z3")
        B, Bcy = bar(G), cyclic_bar(G)
        for k in range(1, 4):
            for g in range(G.size):
                for i in range(k + 1):
                    self.assertEqual(Bcy.face(k, i, inclusion(G, k, g)), inclusion(G, k - 1, g))
            for x in Bcy.simplices(k):
                for i in range(k + 1):
                    self.assertEqual(projection(Bcy.face(k, i, x)), B.face(k, i, projection(x)))
                    self.assertEqual(
                        projection(Bcy.degeneracy(k, i, x)), B.degeneracy(k, i, projection(x))
                    )


class RingTests(SimpleTestCase):

    def test_units(self) -> None:
        self.assertEqual(units(builtins.ring("z2")).elements, ("1",))
        z4_units = units(builtins.ring("z4"))
        self.assertEqual(z4_units.elements, ("1", "3"))
        self.assertTrue(z4_units.is_group)
        self.assertEqual(units(builtins.ring("f2x")).elements, ("1", "1+x"))

    def test_matrix_ring_of_size_one(self) -> None:
        R = builtins.ring("z3")
        M1 = matrix_ring(R, 1)
        self.assertEqual(M1.size, R.size)
        for a, b in itertools.product(range(R.size), repeat=2):
            self.assertEqual(M1.entries[M1.mul[a][b]], (R.mul[M1.entries[a][0]][M1.entries[b][0]],))

    def test_gl2_z2(self) -> None:
        group, matrices = general_linear(builtins.ring("z2"), 2)
        self.assertEqual(group.size, 6)
        self.assertTrue(group.is_group)
        self.assertEqual(matrices.elements[matrices.zero], "[0,0;0,0]")
        self.assertEqual(matrices.elements[matrices.one], "[1,0;0,1]")

    @override_settings(CYCLOTRACE_MATRIX_TABLE_LIMIT=2 ** 20)
    def test_capacity_guard(self) -> None:
        with self.assertRaises(CapacityError) as caught:
            MatrixRing(builtins.ring("z4"), 3)
        self.assertEqual(caught.exception.guard, "matrix_table")

    def test_capacity_guard_counts_table_entries(self) -> None:
        self.assertEqual(MatrixRing(builtins.ring("z2"), 2, limit=16 * 16).size, 16)
        with self.assertRaises(CapacityError) as caught:
            MatrixRing(builtins.ring("z2"), 2, limit=16 * 16 - 1)
        self.assertEqual(caught.exception.requested, 16 * 16)

    def test_additive_basis(self) -> None:
        expected = {"z2": (2,), "z3": (3,), "z4": (4,), "f2x": (2, 2)}
        for name, orders in expected.items():
            R = builtins.ring(name)
            basis = R.additive_basis
            self.assertEqual(tuple(sorted(basis.orders)), orders, name)
            for x in range(R.size):
                rebuilt = R.sum(
                    [R.multiple(c, b) for c, b in zip(basis.coordinates[x], basis.elements)]
                )
                self.assertEqual(rebuilt, x, name)

    def test_matrix_ring_basis(self) -> None:
        M = matrix_ring(builtins.ring("f2x"), 2)
        basis = M.additive_basis
        self.assertEqual(basis.orders, (2,) * 8)
        for x in range(M.size):
            rebuilt = M.sum(
                [M.multiple(c, b) for c, b in zip(basis.coordinates[x], basis.elements)]
            )
            self.assertEqual(rebuilt, x)

    def test_block_sum_is_homomorphism(self) -> None:
        R = builtins.ring("z3")
        left, left_ring = general_linear(R, 1)
        target, target_ring = general_linear(R, 2)
        pairs = list(itertools.product(range(left.size), repeat=2))
        for (g1, h1), (g2, h2) in itertools.product(pairs, repeat=2):
            product_first = block_sum_units(
                left, left, target, left_ring, left_ring, target_ring,
                left.multiply(g1, g2), left.multiply(h1, h2),
            )
            product_after = target.multiply(
                block_sum_units(left, left, target, left_ring, left_ring, target_ring, g1, h1),
                block_sum_units(left, left, target, left_ring, left_ring, target_ring, g2, h2),
            )
            self.assertEqual(product_first, product_after)
