"""Randomised and corpus-wide property checks.

Samples come from a seeded numpy generator so failures reproduce.
"""

import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from heightcert.canonical import canonical_height, height_comparison_bound
from heightcert.certifier import ad_congruence_check
from heightcert.corpus import CURVES, corpus_points, twist_corpus
from heightcert.ellcurve import (
    count_points,
    frobenius_poly,
    reduce_point,
    resultant_with_cyclotomic,
)
from heightcert.heights import (
    ProjPoint,
    check_local_global,
    delta_v,
    finite_delta,
    weil_height,
)
from heightcert.numfield import (
    RATIONALS,
    GaloisElement,
    frobenius_element,
    galois_apply,
    galois_group,
    is_ramified,
    make_field,
)
from heightcert.places import (
    abs_value,
    archimedean_places,
    finite_abs_exponent,
    places,
    primes_above,
    product_formula_residual,
    reduce_element,
)

FIELDS = [
    ("rationals", 1),
    ("quadratic", -1),
    ("quadratic", 5),
    ("cyclotomic", 5),
    ("cyclotomic", 9),
]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_element(rng, field, size=20):
    return field.element([int(c) for c in rng.integers(-size, size + 1,
                                                       field.degree)])


@pytest.mark.parametrize("kind, parameter", FIELDS)
def test_product_formula(rng, kind, parameter):
    field = make_field(kind, parameter)
    for _ in range(40):
        alpha = random_element(rng, field)
        if alpha.is_zero():
            continue
        residual = product_formula_residual(alpha)
        assert residual.a <= 1e-9 and residual.b >= -1e-9


def assert_local_global(rng, field, count):
    chosen = places(field, [2, 3, 5])
    checked = 0
    while checked < count:
        x = [random_element(rng, field, 9) for _ in range(2)]
        y = [random_element(rng, field, 9) for _ in range(2)]
        if all(c.is_zero() for c in x) or all(c.is_zero() for c in y):
            continue
        x, y = ProjPoint(x), ProjPoint(y)
        if x == y:
            continue
        subset = [v for v in chosen if rng.random() < 0.7]
        _, _, holds = check_local_global(x, y, subset)
        assert holds
        checked += 1


@pytest.mark.parametrize("kind, parameter", FIELDS[:3])
def test_local_global_inequality(rng, kind, parameter):
    assert_local_global(rng, make_field(kind, parameter), 25)


@pytest.mark.slow
@pytest.mark.parametrize("kind, parameter", FIELDS)
def test_local_global_inequality_sweep(rng, kind, parameter):
    assert_local_global(rng, make_field(kind, parameter), 1000)


@pytest.mark.parametrize(
    "kind, parameter, p",
    [("quadratic", 5, 5), ("cyclotomic", 3, 3), ("cyclotomic", 9, 3)],
)
def test_inertia_congruence(rng, kind, parameter, p):
    field = make_field(kind, parameter)
    for _ in range(30):
        _, holds = ad_congruence_check(random_element(rng, field), p)
        assert holds


def test_resultants_never_vanish():
    for curve in CURVES.values():
        for p in (5, 7, 13):
            if not curve.is_good(p):
                continue
            data = frobenius_poly(curve, p)
            for m in range(1, 61):
                assert resultant_with_cyclotomic(data, m) != 0


def test_canonical_height_is_even():
    for point, _ in corpus_points("37a"):
        first = canonical_height(point, check_torsion=False).value
        second = canonical_height(-point, check_torsion=False).value
        assert abs(float(first.mid) - float(second.mid)) < 1e-7


@pytest.mark.slow
def test_twist_points_are_close_at_the_ramified_prime():
    pairs = twist_corpus()
    assert len(pairs) >= 25
    for _, point in pairs:
        field = point.field
        p = field.parameter
        tau = GaloisElement(field, -1)
        first = (point.conjugate(tau) * p).psi()
        second = (point * p).psi()
        for prime in primes_above(field, p):
            assert finite_delta(first, second, prime) >= 1


@pytest.mark.parametrize("kind, parameter", FIELDS)
def test_galois_permutes_archimedean_values(rng, kind, parameter):
    field = make_field(kind, parameter)
    infinite = archimedean_places(field)
    for _ in range(10):
        alpha = random_element(rng, field)

        def values(element):
            return sorted(
                float(abs_value(element, v).mid) for v in infinite
            )

        expected = values(alpha)
        for sigma in galois_group(field):
            moved = values(galois_apply(sigma, alpha))
            for a, b in zip(moved, expected):
                assert abs(a - b) <= 1e-9 * max(1.0, b)


@pytest.mark.parametrize("kind, parameter", FIELDS)
def test_frobenius_is_the_power_map_on_residues(rng, kind, parameter):
    field = make_field(kind, parameter)
    for p in (2, 3, 7, 11, 13):
        if is_ramified(field, p):
            continue
        sigma = frobenius_element(field, p)
        for prime in primes_above(field, p):
            for _ in range(5):
                alpha = random_element(rng, field)
                image = reduce_element(galois_apply(sigma, alpha), prime)
                assert image == reduce_element(alpha, prime) ** p


def test_generators_reach_the_largest_value_below_one():
    # max(|p|_P, |G|_P) = q^(-1/(ef)) = p^(-1/e) for P = (p, G)
    count = 0
    for kind, parameter in FIELDS:
        field = make_field(kind, parameter)
        for p in (2, 3, 5, 7, 11):
            for prime in primes_above(field, p):
                largest = max(
                    finite_abs_exponent(field.element(p), prime),
                    finite_abs_exponent(prime.generator, prime),
                )
                assert largest == Fraction(-1, prime.e)
                count += 1
    assert count >= 20


@pytest.mark.parametrize("kind, parameter", FIELDS[:4])
def test_delta_is_symmetric(rng, kind, parameter):
    field = make_field(kind, parameter)
    chosen = places(field, [2, 3, 5])
    for _ in range(10):
        x = [random_element(rng, field, 9) for _ in range(2)]
        y = [random_element(rng, field, 9) for _ in range(2)]
        if all(c.is_zero() for c in x) or all(c.is_zero() for c in y):
            continue
        x, y = ProjPoint(x), ProjPoint(y)
        if x == y:
            continue
        for place in chosen:
            forward = float(delta_v(x, y, place).mid)
            backward = float(delta_v(y, x, place).mid)
            assert abs(forward - backward) < 1e-12


# Points of infinite order or torsion, one generator per curve
GENERATORS = {
    "37a": (0, 0),
    "x3-2": (3, 5),
    "x3+x+1": (0, 1),
    "11a3": (0, 0),
    "27a": (0, 0),
}


def random_multiple(rng, label, bound=6):
    curve = CURVES[label]
    k = int(rng.integers(-bound, bound + 1))
    return curve.point(*GENERATORS[label]) * k


def test_group_law_is_associative(rng):
    labels = sorted(GENERATORS)
    for _ in range(100):
        label = labels[int(rng.integers(len(labels)))]
        a, b, c = (random_multiple(rng, label) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + (-a) == CURVES[label].zero()


def test_reduction_is_a_homomorphism(rng):
    labels = sorted(GENERATORS)
    checked = 0
    while checked < 100:
        label = labels[int(rng.integers(len(labels)))]
        curve = CURVES[label]
        p = int((5, 7, 13, 17)[int(rng.integers(4))])
        if not curve.is_good(p):
            continue
        (prime,) = primes_above(RATIONALS, p)
        a, b = random_multiple(rng, label), random_multiple(rng, label)
        assert reduce_point(a + b, prime) == (
            reduce_point(a, prime) + reduce_point(b, prime)
        )
        checked += 1


@pytest.mark.parametrize("label", sorted(CURVES))
def test_point_counts_kill_reductions(label):
    curve = CURVES[label]
    for p in sympy.primerange(2, 101):
        if not curve.is_good(p):
            continue
        (prime,) = primes_above(RATIONALS, p)
        order, _ = count_points(curve, p)
        for point, _ in corpus_points(label):
            assert (reduce_point(point, prime) * order).is_zero()


@pytest.mark.parametrize("label", ["37a", "x3-2"])
@pytest.mark.parametrize("m", [3, 5])
def test_canonical_height_is_quadratic(label, m):
    point = CURVES[label].point(*GENERATORS[label])
    single = canonical_height(point, tolerance=1e-10).value
    multiple = canonical_height(point * m, tolerance=1e-10).value
    gap = float(multiple.mid) - m * m * float(single.mid)
    assert abs(gap) < 1e-6


@pytest.mark.slow
@pytest.mark.parametrize("label", ["37a", "x3-2", "x3+x+1"])
def test_weil_height_stays_within_the_comparison_constant(rng, label):
    curve = CURVES[label]
    point = curve.point(*GENERATORS[label])
    bound = height_comparison_bound(curve)
    canonical = float(
        canonical_height(point, "psi", tolerance=1e-10).value.mid
    )
    slack = float(bound.c_psi.b) + 1e-4
    cache = {}
    for _ in range(500):
        k = int(rng.integers(1, 61)) * (1 if rng.random() < 0.5 else -1)
        if k not in cache:
            cache[k] = float(weil_height((point * k).psi()).mid)
        assert abs(cache[k] - k * k * canonical) <= slack


@pytest.mark.slow
@pytest.mark.parametrize("label", ["37a", "x3-2"])
def test_canonical_heights_bound_the_local_distances(rng, label):
    curve = CURVES[label]
    bound = height_comparison_bound(curve)
    chosen = places(RATIONALS, [2, 3, 5, 7])
    checked = 0
    while checked < 20:
        a, b = random_multiple(rng, label), random_multiple(rng, label)
        if a == b or a.is_zero() or b.is_zero():
            continue
        subset = [v for v in chosen if rng.random() < 0.7]
        _, rhs, _ = check_local_global(a.psi(), b.psi(), subset)
        heights = sum(
            float(canonical_height(q, "psi", tolerance=1e-9).value.mid)
            for q in (a, b)
        )
        total = float(rhs.b) + math.log(2)
        assert heights + float(bound.B.b) >= total - 1e-6
        checked += 1
