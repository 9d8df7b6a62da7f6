"""
Verification suites run by the ``verify`` command

Each suite returns a list of verdicts. A sweep stops at its first failure
and records that instance as the counterexample, with both evaluation
paths. Random instances come from one ``random.Random`` seeded by the
caller, so a suite is deterministic for a fixed seed.
"""
import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional

from abelian.services import TRIVIAL, Z, check_boundaries, homology_table
from barcons import builtins
from barcons.services import (
    FiniteMonoid,
    FiniteRing,
    bar,
    cyclic_bar,
    cyclic_bar_split_iso,
    inclusion,
    projection,
    split_r,
)
from basedsets.services import BASEPOINT, BasedMap, BasedMatrix, BasedSet, all_matrices
from gammaspace.services import (
    DiscreteGammaSpace,
    alpha_lower,
    check_special,
    cofibration_maps,
    compare_simplicial,
    enumerate_sum_diagrams,
    leafwise_morphism_count,
    natural_transformations,
    sample_sum_diagram,
)
from injcat.services import Injection
from operad.services import (
    BarrattEcclesSimplex,
    alpha_push,
    alpha_star_be,
    canonicalize,
    cyclic_class,
    degeneracy_class,
    e_sigma,
    face_class,
    map_class,
    multiply_be,
    pack,
    smash_cyclic,
    smash_degeneracy,
    smash_face,
)
from simplicial.services import (
    IdentityFailure,
    chain_complex,
    check_cyclic_identities,
    check_simplicial_identities,
    circle,
    circle_plus,
)
from tracehh.hochschild import hh_complex, morita_check
from tracehh.services import (
    MatrixTuple,
    anti_diagonal_example,
    block_sum_tuple,
    compute_d,
    cyclic,
    degeneracy,
    face,
    map_entries,
    multitrace,
    smash_map,
)

logger = logging.getLogger(__name__)

Counterexample = Dict[str, str]
FailureFinder = Callable[[Any], Optional[Counterexample]]


@dataclass
class SuiteOptions:
    monoid: Optional[FiniteMonoid] = None
    ring: Optional[FiniteRing] = None
    n: int = 2
    degree: Optional[int] = None

    def degree_or(self, default: int) -> int:
        return default if self.degree is None else self.degree


@dataclass
class Verdict:
    check: str
    passed: bool
    instances: int
    counterexample: Optional[Counterexample] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "passed": self.passed,
            "instances": self.instances,
            "counterexample": self.counterexample,
            "details": self.details,
        }


def mismatch(case: Any, left: Any, right: Any) -> Counterexample:
    return {"input": str(case), "left": repr(left), "right": repr(right)}


def sweep(check: str, cases: Iterable[Any], find_failure: FailureFinder) -> Verdict:
    count = 0
    for case in cases:
        count += 1
        failure = find_failure(case)
        if failure is not None:
            logger.warning("%s failed on instance %d: %s", check, count, failure)
            return Verdict(check, False, count, failure)
    logger.info("%s: %d instances passed", check, count)
    return Verdict(check, True, count)


def identity_verdict(check: str, failures: List[IdentityFailure], instances: int) -> Verdict:
    if failures:
        logger.warning("%s: %d identity failures", check, len(failures))
        first = failures[0]
        return Verdict(
            check, False, instances,
            {
                "input": f"{first.identity} in degree {first.degree} at {first.simplex!r}",
                "left": repr(first.left),
                "right": repr(first.right),
            },
            {"failures": len(failures)},
        )
    logger.info("%s: passed", check)
    return Verdict(check, True, instances)


def draws(rng: random.Random, instances: int, draw: Callable[[random.Random], Any]) -> Iterable[Any]:
    for _ in range(instances):
        yield draw(rng)


# Random instances

def entry_set(i: int, size: int = 2) -> BasedSet:
    return BasedSet(tuple(f"{label}{i}" for label in "abc"[:size]))


def random_matrix(rng: random.Random, dim: int, entries: BasedSet) -> BasedMatrix:
    options = [BASEPOINT] + [(row, x) for row in range(1, dim + 1) for x in entries.elements]
    return BasedMatrix(dim, entries, tuple(rng.choice(options) for _ in range(dim)))


def random_tuple(
    rng: random.Random, dim: Optional[int] = None, degree: Optional[int] = None, max_dim: int = 3
) -> MatrixTuple:
    n = rng.randint(1, max_dim) if dim is None else dim
    k = rng.randint(0, 2) if degree is None else degree
    return MatrixTuple(tuple(
        random_matrix(rng, n, entry_set(i, rng.randint(1, 3))) for i in range(k + 1)
    ))


def random_permutation(rng: random.Random, n: int) -> Injection:
    return Injection(n, tuple(rng.sample(range(1, n + 1), n)))


def random_based_map(rng: random.Random, source: BasedSet, target: BasedSet) -> BasedMap:
    values = target.with_basepoint()
    return BasedMap(source, target, {s: rng.choice(values) for s in source.elements})


def random_raw_pair(rng: random.Random, max_arity: int = 3, degree: Optional[int] = None):
    n = rng.randint(0, max_arity)
    k = rng.randint(0, 2) if degree is None else degree
    e = BarrattEcclesSimplex(tuple(random_permutation(rng, n) for _ in range(k + 1)))
    x = tuple(pack([rng.choice((BASEPOINT, "a", "b")) for _ in range(k + 1)]) for _ in range(n))
    return e, x


# trace

def _cyclic_map_failure(t: MatrixTuple) -> Optional[Counterexample]:
    k = t.degree
    c = multitrace(t)
    left, right = multitrace(cyclic(t)), cyclic_class(c, smash_cyclic(k))
    if left != right:
        return mismatch(f"t{k} {t}", left, right)
    for i in range(k + 1):
        left, right = multitrace(degeneracy(t, i)), degeneracy_class(c, i, smash_degeneracy(k, i))
        if left != right:
            return mismatch(f"s{i} {t}", left, right)
        if k:
            left, right = multitrace(face(t, i)), face_class(c, i, smash_face(k, i))
            if left != right:
                return mismatch(f"d{i} {t}", left, right)
    return None


def _ordering_failure(t: MatrixTuple) -> Optional[Counterexample]:
    expected = multitrace(t)
    for ordering in itertools.permutations(compute_d(t)):
        got = multitrace(t, ordering)
        if got != expected:
            return mismatch(f"{t} ordered {list(ordering)}", got, expected)
    return None


def _block_sum_failure(pair) -> Optional[Counterexample]:
    first, second = pair
    left = multitrace(block_sum_tuple(first, second))
    right = multiply_be(multitrace(first), multitrace(second))
    return None if left == right else mismatch(f"{first} + {second}", left, right)


def _naturality_failure(case) -> Optional[Counterexample]:
    t, maps = case
    left = multitrace(map_entries(t, maps))
    right = map_class(multitrace(t), smash_map(maps))
    return None if left == right else mismatch(f"{t} along {maps}", left, right)


def _exhaustive_tuples() -> Iterable[MatrixTuple]:
    for k in range(3):
        sets = [entry_set(i) for i in range(k + 1)]
        for matrices in itertools.product(*(list(all_matrices(2, X)) for X in sets)):
            yield MatrixTuple(matrices)


def trace_suite(rng: random.Random, instances: int, options: SuiteOptions) -> List[Verdict]:
    t, expected = anti_diagonal_example()
    got = multitrace(t)
    verdicts = [
        Verdict(
            "anti_diagonal_example", got == expected, 1,
            None if got == expected else mismatch(t, got, expected),
            {"class": str(got)},
        )
    ]

    def block_pair(rng: random.Random):
        first = random_tuple(rng, max_dim=2)
        dim = rng.randint(1, 2)
        second = MatrixTuple(tuple(random_matrix(rng, dim, X) for X in first.entry_sets))
        return first, second

    def natural_case(rng: random.Random):
        t = random_tuple(rng)
        maps = [
            random_based_map(rng, X, entry_set(i + 10, rng.randint(1, 2)))
            for i, X in enumerate(t.entry_sets)
        ]
        return t, maps

    verdicts.append(sweep("ordering_independence", draws(rng, instances, random_tuple), _ordering_failure))
    verdicts.append(sweep("cyclic_map_exhaustive", _exhaustive_tuples(), _cyclic_map_failure))
    verdicts.append(sweep("cyclic_map_random", draws(rng, instances, random_tuple), _cyclic_map_failure))
    verdicts.append(sweep("block_sum", draws(rng, instances, block_pair), _block_sum_failure))
    verdicts.append(sweep("naturality", draws(rng, instances, natural_case), _naturality_failure))
    return verdicts


# operad

def _relation_failure(case) -> Optional[Counterexample]:
    e, x, alpha, bigger = case
    left = canonicalize(bigger, alpha_push(alpha, x))
    right = canonicalize(alpha_star_be(alpha, bigger), x)
    return None if left == right else mismatch(f"{alpha} on {e} {x}", left, right)


def _homomorphism_failure(case) -> Optional[Counterexample]:
    k, a, b = case
    for i in range(k + 1):
        entry_map = smash_face(k, i)
        left = face_class(multiply_be(a, b), i, entry_map)
        right = multiply_be(face_class(a, i, entry_map), face_class(b, i, entry_map))
        if left != right:
            return mismatch(f"d{i} of {a} * {b}", left, right)
    return None


def operad_suite(rng: random.Random, instances: int, options: SuiteOptions) -> List[Verdict]:
    degree = options.degree_or(3)
    verdicts = []
    for n in (2, 3):
        X = e_sigma(n)
        table = homology_table(chain_complex(X, degree))
        expected = [Z] + [TRIVIAL] * degree
        verdicts.append(Verdict(
            f"contractible_arity_{n}", table == expected, 1,
            None if table == expected else mismatch(X.name, [str(g) for g in table], [str(g) for g in expected]),
            {"homology": [g.as_dict() for g in table]},
        ))
        verdicts.append(identity_verdict(
            f"cyclic_identities_arity_{n}", check_cyclic_identities(X, min(degree, 2)), 1
        ))

    def relation_case(rng: random.Random):
        e, x = random_raw_pair(rng)
        n = rng.randint(len(x), len(x) + 2)
        alpha = Injection(n, tuple(rng.sample(range(1, n + 1), n)[:len(x)]))
        bigger = BarrattEcclesSimplex(tuple(random_permutation(rng, n) for _ in range(e.degree + 1)))
        return e, x, alpha, bigger

    def product_case(rng: random.Random):
        k = rng.randint(1, 2)
        return (k,) + tuple(canonicalize(*random_raw_pair(rng, degree=k)) for _ in range(2))

    verdicts.append(sweep("generating_relation", draws(rng, instances, relation_case), _relation_failure))
    verdicts.append(sweep("faces_are_homomorphisms", draws(rng, instances, product_case), _homomorphism_failure))
    return verdicts


# gamma

def gamma_suite(rng: random.Random, instances: int, options: SuiteOptions) -> List[Verdict]:
    degree = options.degree_or(4)
    monoids = [options.monoid] if options.monoid else [builtins.monoid("z2"), builtins.monoid("z3")]
    verdicts = []
    for M in monoids:
        gamma = DiscreteGammaSpace(M)
        verdicts.append(identity_verdict(
            f"{M.name}_circle_is_bar",
            compare_simplicial(gamma.on_simplicial(circle()), bar(M), degree), degree + 1,
        ))
        verdicts.append(identity_verdict(
            f"{M.name}_circle_plus_is_cyclic_bar",
            compare_simplicial(gamma.on_simplicial(circle_plus()), cyclic_bar(M), degree), degree + 1,
        ))
        verdicts.append(_cofibration_verdict(M, degree))
        verdicts.append(_special_verdict(M))

        def functor_case(rng: random.Random):
            S, T, U = (BasedSet.of_size(rng.randint(0, 3)) for _ in range(3))
            return random_based_map(rng, S, T), random_based_map(rng, T, U)

        def functor_failure(case) -> Optional[Counterexample]:
            alpha, beta = case
            both, first, second = gamma.induced(beta.compose(alpha)), gamma.induced(alpha), gamma.induced(beta)
            for value in gamma.evaluate(alpha.source):
                if both(value) != second(first(value)):
                    return mismatch(f"{beta} o {alpha} at {value}", both(value), second(first(value)))
            return None

        verdicts.append(sweep(f"{M.name}_functoriality", draws(rng, instances, functor_case), functor_failure))
    verdicts.extend(_sum_diagram_verdicts(rng, instances))
    return verdicts


def _cofibration_verdict(M, degree: int) -> Verdict:
    maps = cofibration_maps(M)
    Bcy = cyclic_bar(M)

    def cases():
        for k in range(degree + 1):
            for x in Bcy.simplices(k):
                yield k, x

    def failure(case) -> Optional[Counterexample]:
        k, x = case
        checks = [
            ("include", maps["include"](k, (x[0],)), inclusion(M, k, x[0])),
            ("collapse", maps["collapse"](k, x), projection(x)),
            ("split", maps["split"](k, x), (split_r(M, x),)),
        ]
        for name, left, right in checks:
            if left != right:
                return mismatch(f"{name} in degree {k} at {x}", left, right)
        return None

    return sweep(f"{M.name}_cofibration", cases(), failure)


def _special_verdict(M) -> Verdict:
    sets = [BasedSet.of_size(n) for n in range(4)]

    def failure(pair) -> Optional[Counterexample]:
        witness = check_special(M, *pair)
        if witness.bijective:
            return None
        return mismatch(f"{pair[0]} v {pair[1]}", witness.collision, "bijection")

    verdict = sweep(f"{M.name}_special", itertools.product(sets, repeat=2), failure)
    verdict.details["very_special"] = M.is_group
    return verdict


def _sum_diagram_verdicts(rng: random.Random, instances: int) -> List[Verdict]:
    three = BasedSet.of_size(3)
    targets = [BasedSet.of_size(n) for n in range(4)]

    def lower_case(rng: random.Random):
        theta = sample_sum_diagram(three, 2, rng)
        T, U = rng.choice(targets), rng.choice(targets)
        return theta, random_based_map(rng, three, T), random_based_map(rng, T, U)

    def lower_failure(case) -> Optional[Counterexample]:
        theta, alpha, beta = case
        left = alpha_lower(beta.compose(alpha), theta)
        right = alpha_lower(beta, alpha_lower(alpha, theta))
        return None if left == right else mismatch(f"{theta} along {alpha}, {beta}", left, right)

    def identity_failure(theta) -> Optional[Counterexample]:
        image = alpha_lower(BasedMap.identity(theta.base), theta)
        return None if image == theta else mismatch(theta, image, theta)

    def skeleton_pairs() -> Iterable[Any]:
        for size in range(3):
            diagrams = enumerate_sum_diagrams(BasedSet.of_size(size), 1)
            yield from itertools.product(diagrams, repeat=2)

    def faithful_failure(pair) -> Optional[Counterexample]:
        count = sum(1 for _ in natural_transformations(*pair))
        expected = leafwise_morphism_count(*pair)
        return None if count == expected else mismatch(f"{pair[0]} -> {pair[1]}", count, expected)

    enumerated = itertools.chain.from_iterable(
        enumerate_sum_diagrams(BasedSet.of_size(size), 2 if size < 3 else 1) for size in range(4)
    )
    return [
        sweep("sum_diagram_identity", enumerated, identity_failure),
        sweep("sum_diagram_composition", draws(rng, instances, lower_case), lower_failure),
        sweep("projection_fully_faithful", skeleton_pairs(), faithful_failure),
    ]


# cyclic-identities

def cyclic_identities_suite(rng: random.Random, instances: int, options: SuiteOptions) -> List[Verdict]:
    degree = options.degree_or(4)
    M = options.monoid or builtins.monoid("z3")
    Bcy = cyclic_bar(M)
    verdicts = [
        identity_verdict(f"{M.name}_bar", check_simplicial_identities(bar(M), degree), degree + 1),
        identity_verdict(f"{M.name}_cyclic_bar", check_cyclic_identities(Bcy, degree), degree + 1),
    ]
    boundaries = check_boundaries(chain_complex(Bcy, degree))
    verdicts.append(Verdict(
        f"{M.name}_boundaries_square_to_zero", not boundaries, degree + 1,
        None if not boundaries else mismatch(f"d d in degree {boundaries[0]}", "nonzero", "zero"),
    ))
    if M.is_commutative and M.is_group:
        verdicts.append(identity_verdict(
            f"{M.name}_split_isomorphism", cyclic_bar_split_iso(M).check(degree), degree + 1
        ))
    return verdicts


# morita

def morita_suite(rng: random.Random, instances: int, options: SuiteOptions) -> List[Verdict]:
    degree = options.degree_or(2)
    R = options.ring or builtins.ring("z2")
    report = morita_check(R, options.n, degree)
    verdicts = [
        Verdict(
            "trace_chain_map", not report.chain_map_failures, degree + 1,
            None if not report.chain_map_failures else mismatch(
                f"degree {report.chain_map_failures[0]}", "d tr", "tr d"
            ),
        )
    ]
    boundaries = check_boundaries(hh_complex(R, degree))
    verdicts.append(Verdict("hochschild_boundaries", not boundaries, degree + 1))
    for induced in report.maps:
        verdicts.append(Verdict(
            f"HH_{induced.degree}_isomorphism", induced.is_isomorphism, 1,
            None if induced.is_isomorphism else mismatch(
                f"HH_{induced.degree}(M_{options.n}({R.name})) -> HH_{induced.degree}({R.name})",
                str(induced.source), str(induced.target),
            ),
            induced.as_dict(),
        ))
    return verdicts


SUITES: Dict[str, Callable[[random.Random, int, SuiteOptions], List[Verdict]]] = {
    "trace": trace_suite,
    "operad": operad_suite,
    "gamma": gamma_suite,
    "cyclic-identities": cyclic_identities_suite,
    "morita": morita_suite,
}


def run_suite(name: str, seed: int, instances: int, options: SuiteOptions) -> List[Verdict]:
    rng = random.Random(seed)
    logger.info("running suite %s (seed %d, %d instances)", name, seed, instances)
    return SUITES[name](rng, instances, options)
