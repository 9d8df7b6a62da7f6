import itertools
import random

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from abelian.services import AbGroup
from barcons import builtins
from barcons.services import FiniteMonoid, bar, cyclic_bar, inclusion, projection, split_r
from basedsets.services import POINT, S0, BasedMap, BasedSet, all_based_maps
from cyclotrace.errors import CapacityError, ContractViolation, TruncationError
from gammaspace.services import (
    DiscreteGammaSpace,
    SumDiagram,
    alpha_lower,
    check_special,
    cofibration_maps,
    compare_simplicial,
    diagram_count,
    enumerate_sum_diagrams,
    gamma_eval,
    gamma_on_simplicial,
    group_completion,
    induced,
    leafwise_morphism_count,
    natural_transformations,
    pi_s,
    sample_sum_diagram,
    section_from_ordering,
    sphere_zero,
)
from injcat.services import Injection
from simplicial.services import SimplicialSet, check_cyclic_identities, circle, circle_plus

IDEMPOTENT = builtins.monoid("idem")

TWO = BasedSet.of_size(2)
THREE = BasedSet.of_size(3)


def small_based_sets():
    return [BasedSet.of_size(n) for n in range(4)]


def group_completion_of(name: str) -> AbGroup:
    return group_completion(builtins.monoid(name))


class GammaEvalTests(SimpleTestCase):

    def test_sphere_zero_is_the_monoid(self) -> None:
        M = builtins.monoid("z3")
        self.assertEqual(gamma_eval(M, S0), ((0,), (1,), (2,)))
        self.assertEqual(gamma_eval(M, POINT), ((),))

    def test_fold_multiplies(self) -> None:
        M = builtins.monoid("z3")
        fold = BasedMap(TWO, BasedSet.of_size(1), {1: 1, 2: 1})
        f = induced(M, fold)
        for a, b in itertools.product(range(3), repeat=2):
            self.assertEqual(f((a, b)), (M.multiply(a, b),))

    def test_basepoint_coordinates_are_discarded(self) -> None:
        M = builtins.monoid("z3")
        alpha = BasedMap(TWO, BasedSet.of_size(2), {1: 2})
        self.assertEqual(induced(M, alpha)((1, 2)), (M.unit, 1))

    def test_non_commutative_refused(self) -> None:
        M = builtins.monoid("gl2z2")
        with self.assertRaises(ContractViolation):
            DiscreteGammaSpace(M)

    def test_capacity_guard(self) -> None:
        gamma = DiscreteGammaSpace(builtins.monoid("z3"), limit=26)
        self.assertEqual(len(gamma.evaluate(TWO)), 9)
        with self.assertRaises(CapacityError):
            gamma.evaluate(THREE)

    def test_functor_laws_exhaustively(self) -> None:
        for M in (builtins.monoid("z2"), builtins.monoid("z3"), IDEMPOTENT):
            gamma = DiscreteGammaSpace(M)
            sets = small_based_sets()
            for S in sets:
                unit = gamma.induced(BasedMap.identity(S))
                for value in gamma.evaluate(S):
                    self.assertEqual(unit(value), value)
            for S, T, U in itertools.product(sets, repeat=3):
                if S.size * T.size * U.size > 12:
                    continue
                for alpha in all_based_maps(S, T):
                    first = gamma.induced(alpha)
                    for beta in all_based_maps(T, U):
                        both = gamma.induced(beta.compose(alpha))
                        second = gamma.induced(beta)
                        for value in gamma.evaluate(S):
                            self.assertEqual(both(value), second(first(value)))


class SimplicialEvaluationTests(SimpleTestCase):

    def test_sphere_zero_is_constant(self) -> None:
        X = gamma_on_simplicial(builtins.monoid("z2"), sphere_zero())
        for k in range(3):
            self.assertEqual(X.simplices(k), ((0,), (1,)))
            self.assertEqual(X.degeneracy(k, 0, (1,)), (1,))

    def test_circle_is_the_bar_construction(self) -> None:
        for name in ("z2", "z3"):
            M = builtins.monoid(name)
            self.assertEqual(compare_simplicial(gamma_on_simplicial(M, circle()), bar(M), 4), [], name)

    def test_circle_plus_is_the_cyclic_bar_construction(self) -> None:
        for name in ("z2", "z3", "idem"):
            M = builtins.monoid(name)
            X = gamma_on_simplicial(M, circle_plus())
            self.assertEqual(compare_simplicial(X, cyclic_bar(M), 4), [], name)
            self.assertEqual(check_cyclic_identities(X, 3), [], name)

    def test_truncation(self) -> None:
        X = gamma_on_simplicial(builtins.monoid("z2"), circle(), truncation=2)
        self.assertEqual(len(X.simplices(2)), 4)
        with self.assertRaises(TruncationError):
            X.simplices(3)

    def test_unbased_input_refused(self) -> None:
        with self.assertRaises(ContractViolation):
            unbased = SimplicialSet("free", lambda k: (0,), lambda k, i, x: x, lambda k, i, x: x)
            gamma_on_simplicial(builtins.monoid("z2"), unbased)

    def test_cofibration_is_the_product_decomposition(self) -> None:
        for name in ("z2", "z3", "idem"):
            M = builtins.monoid(name)
            maps = cofibration_maps(M)
            for k in range(4):
                for g in range(M.size):
                    self.assertEqual(maps["include"](k, (g,)), inclusion(M, k, g))
                for x in cyclic_bar(M).simplices(k):
                    self.assertEqual(maps["collapse"](k, x), projection(x))
                    self.assertEqual(maps["split"](k, x), (split_r(M, x),))


class SpecialTests(SimpleTestCase):

    def test_point(self) -> None:
        witness = check_special(builtins.monoid("z3"), POINT, S0)
        self.assertTrue(witness.bijective)

    def test_two_spheres(self) -> None:
        witness = check_special(builtins.monoid("z2"), S0, S0)
        self.assertTrue(witness.bijective)
        self.assertEqual((witness.domain_size, witness.codomain_size), (4, 4))
        self.assertTrue(witness.very_special)

    def test_very_special_is_group_like(self) -> None:
        self.assertFalse(check_special(IDEMPOTENT, TWO, S0).very_special)
        self.assertTrue(check_special(IDEMPOTENT, TWO, S0).bijective)

    def test_all_small_wedges(self) -> None:
        M = builtins.monoid("z2")
        for S, T in itertools.product(small_based_sets(), repeat=2):
            self.assertTrue(check_special(M, S, T).bijective, (S, T))

    def test_report_shape(self) -> None:
        payload = check_special(builtins.monoid("z2"), S0, S0).as_dict()
        self.assertIsNone(payload["collision"])


class GroupCompletionTests(SimpleTestCase):

    def test_groups(self) -> None:
        self.assertEqual(group_completion_of("z2"), AbGroup(0, (2,)))
        self.assertEqual(group_completion_of("z3"), AbGroup(0, (3,)))
        self.assertEqual(group_completion_of("z4"), AbGroup(0, (4,)))

    def test_idempotent_collapses(self) -> None:
        self.assertEqual(group_completion(IDEMPOTENT), AbGroup())

    def test_truncated_naturals(self) -> None:
        # {0, 1, 2} under addition capped at 2
        capped = FiniteMonoid(
            ("0", "1", "2"), ((0, 1, 2), (1, 2, 2), (2, 2, 2)), name="capped"
        )
        self.assertEqual(group_completion(capped), AbGroup())


class SumDiagramTests(SimpleTestCase):

    def test_single_leaf(self) -> None:
        diagrams = enumerate_sum_diagrams(S0, 2)
        self.assertEqual([pi_s(theta) for theta in diagrams], [(0,), (1,), (2,)])
        self.assertTrue(all(theta.structure == () for theta in diagrams))

    def test_two_unit_leaves(self) -> None:
        diagrams = [theta for theta in enumerate_sum_diagrams(TWO, 1) if pi_s(theta) == (1, 1)]
        self.assertEqual(len(diagrams), 2)
        self.assertEqual(
            {theta.structure for theta in diagrams},
            {((Injection(2, (1,)), Injection(2, (2,))),), ((Injection(2, (2,)), Injection(2, (1,))),)},
        )

    def test_empty_diagram_is_unique(self) -> None:
        empty = [theta for theta in enumerate_sum_diagrams(THREE, 1) if pi_s(theta) == (0, 0, 0)]
        self.assertEqual(len(empty), 1)

    def test_count(self) -> None:
        self.assertEqual(diagram_count(TWO, 2), 45)
        self.assertEqual(len(enumerate_sum_diagrams(TWO, 2)), 45)

    def test_capacity_guard(self) -> None:
        with self.assertRaises(CapacityError):
            enumerate_sum_diagrams(THREE, 2)

    def test_bijection_condition(self) -> None:
        with self.assertRaises(ContractViolation):
            SumDiagram(TWO, (1, 1), ((Injection(2, (1,)), Injection(2, (1,))),))
        with self.assertRaises(ContractViolation):
            SumDiagram(TWO, (1, 1), ((Injection(3, (1,)), Injection(3, (2,))),))

    def test_structure_maps_compose(self) -> None:
        rng = random.Random(7)
        for _ in range(20):
            theta = sample_sum_diagram(THREE, 2, rng)
            for U in map(frozenset, itertools.chain.from_iterable(
                itertools.combinations(THREE.elements, r) for r in range(4)
            )):
                for V in (U | {1}, U | {1, 2}):
                    W = frozenset(THREE.elements)
                    self.assertEqual(
                        theta.structure_map(U, W),
                        theta.structure_map(V, W) @ theta.structure_map(U, V),
                    )


class AlphaLowerTests(SimpleTestCase):

    def test_identity(self) -> None:
        for theta in enumerate_sum_diagrams(TWO, 2):
            self.assertEqual(alpha_lower(BasedMap.identity(TWO), theta), theta)

    def test_collapse_to_a_point(self) -> None:
        collapse = BasedMap(THREE, BasedSet.of_size(1), {1: 1, 2: 1, 3: 1})
        for theta in enumerate_sum_diagrams(THREE, 1):
            self.assertEqual(pi_s(alpha_lower(collapse, theta)), (sum(theta.sizes),))

    def test_functor_law_on_enumerated_diagrams(self) -> None:
        sources = [BasedSet.of_size(n) for n in range(1, 4)]
        targets = [BasedSet.of_size(n) for n in range(3)]
        for S in sources:
            diagrams = enumerate_sum_diagrams(S, 2 if S.size < 3 else 1)
            for T, U in itertools.product(targets, repeat=2):
                for alpha in all_based_maps(S, T):
                    for beta in all_based_maps(T, U):
                        composite = beta.compose(alpha)
                        for theta in diagrams[::7]:
                            self.assertEqual(
                                alpha_lower(composite, theta),
                                alpha_lower(beta, alpha_lower(alpha, theta)),
                            )

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_functor_law_on_sampled_diagrams(self, data) -> None:
        rng = random.Random(data.draw(st.integers(min_value=0, max_value=10 ** 6)))
        theta = sample_sum_diagram(THREE, 2, rng)
        targets = [BasedSet.of_size(n) for n in range(4)]
        T, U = data.draw(st.sampled_from(targets)), data.draw(st.sampled_from(targets))
        alpha = BasedMap(THREE, T, {
            s: data.draw(st.sampled_from(T.with_basepoint())) for s in THREE.elements
        })
        beta = BasedMap(T, U, {t: data.draw(st.sampled_from(U.with_basepoint())) for t in T.elements})
        self.assertEqual(
            alpha_lower(beta.compose(alpha), theta), alpha_lower(beta, alpha_lower(alpha, theta))
        )

    def test_wrong_base_refused(self) -> None:
        theta = enumerate_sum_diagrams(TWO, 1)[0]
        with self.assertRaises(ContractViolation):
            alpha_lower(BasedMap.identity(THREE), theta)


class SectionTests(SimpleTestCase):

    def test_single_leaf(self) -> None:
        theta = section_from_ordering(S0, ("1",), (3,))
        self.assertEqual(pi_s(theta), (3,))

    def test_two_leaves_in_order(self) -> None:
        theta = section_from_ordering(TWO, (1, 2), (1, 1))
        self.assertEqual(theta.structure, ((Injection(2, (1,)), Injection(2, (2,))),))
        swapped = section_from_ordering(TWO, (2, 1), (1, 1))
        self.assertEqual(swapped.structure, ((Injection(2, (2,)), Injection(2, (1,))),))

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_round_trip(self, data) -> None:
        n = data.draw(st.integers(min_value=1, max_value=3))
        base = BasedSet.of_size(n)
        sizes = tuple(data.draw(st.lists(st.integers(min_value=0, max_value=3), min_size=n, max_size=n)))
        ordering = data.draw(st.permutations(base.elements))
        self.assertEqual(pi_s(section_from_ordering(base, ordering, sizes)), sizes)

    def test_bad_ordering(self) -> None:
        with self.assertRaises(ContractViolation):
            section_from_ordering(TWO, (1, 1), (1, 1))


class FullyFaithfulTests(SimpleTestCase):
    """Morphisms in D(S) agree with morphisms of the leaf sizes."""

    def test_exhaustive_small(self) -> None:
        for base in (S0, TWO):
            diagrams = enumerate_sum_diagrams(base, 1)
            for source, target in itertools.product(diagrams, repeat=2):
                count = sum(1 for _ in natural_transformations(source, target))
                self.assertEqual(count, leafwise_morphism_count(source, target), (source, target))

    def test_sampled(self) -> None:
        rng = random.Random(3)
        for _ in range(15):
            source, target = sample_sum_diagram(TWO, 2, rng), sample_sum_diagram(TWO, 2, rng)
            count = sum(1 for _ in natural_transformations(source, target))
            self.assertEqual(count, leafwise_morphism_count(source, target))

    def test_isomorphic_to_the_section(self) -> None:
        theta = enumerate_sum_diagrams(TWO, 1)[-1]
        section = section_from_ordering(TWO, (1, 2), pi_s(theta))
        self.assertEqual(sum(1 for _ in natural_transformations(theta, section)), 1)
