"""Tests for Weil heights, v-adic distances and the local-global bound."""

import math
from fractions import Fraction

import pytest

from heightcert.errors import CongruenceError, HypothesisError
from heightcert.heights import (
    ProjPoint,
    check_local_global,
    congruence_height_bound,
    delta_v,
    finite_delta,
    weil_height,
)
from heightcert.numfield import RATIONALS
from heightcert.places import archimedean_places, finite_places, primes_above


def encloses(interval, value, slack=1e-12):
    return interval.a <= value + slack and interval.b >= value - slack


class TestProjPoint:
    def test_equality_is_projective(self):
        assert ProjPoint.of(RATIONALS, [1, 2]) == ProjPoint.of(
            RATIONALS, [3, 6]
        )
        assert hash(ProjPoint.of(RATIONALS, [1, 2])) == hash(
            ProjPoint.of(RATIONALS, [Fraction(1, 2), 1])
        )

    def test_integral_coordinates(self):
        point = ProjPoint.of(RATIONALS, [Fraction(1, 2), Fraction(3, 4), 6])
        assert point.integral() == [2, 3, 24]

    def test_rejects_the_zero_vector(self):
        with pytest.raises(HypothesisError):
            ProjPoint.of(RATIONALS, [0, 0])


class TestWeilHeight:
    @pytest.mark.parametrize(
        "coords, expected",
        [
            ([1, 0], 0.0),
            ([2, 3], math.log(3)),
            ([1, Fraction(1, 2)], math.log(2)),
            ([4, 6, 10], math.log(5)),
        ],
    )
    def test_rational_points(self, coords, expected):
        value = weil_height(ProjPoint.of(RATIONALS, coords))
        assert encloses(value, expected)

    def test_gaussian_point(self, gaussian):
        point = ProjPoint.of(gaussian, [1, 1 + gaussian.gen])
        assert encloses(weil_height(point), math.log(2) / 2)

    def test_invariant_under_scaling(self, golden):
        point = ProjPoint.of(golden, [golden.gen, 3])
        scaled = point.scale(2 * golden.gen - 1)
        first, second = weil_height(point), weil_height(scaled)
        assert abs(float(first.mid) - float(second.mid)) < 1e-15


class TestDistances:
    def test_finite_delta(self):
        (prime,) = primes_above(RATIONALS, 5)
        x = ProjPoint.of(RATIONALS, [1, 0])
        y = ProjPoint.of(RATIONALS, [1, 5])
        assert finite_delta(x, y, prime) == 1
        assert finite_delta(x, x, prime) == math.inf

    def test_ramified_delta_is_fractional(self, golden):
        (prime,) = primes_above(golden, 5)
        x = ProjPoint.of(golden, [1, 0])
        y = ProjPoint.of(golden, [1, 2 * golden.gen - 1])
        assert finite_delta(x, y, prime) == Fraction(1, 2)

    def test_delta_v_archimedean(self):
        (place,) = archimedean_places(RATIONALS)
        x = ProjPoint.of(RATIONALS, [1, 0])
        y = ProjPoint.of(RATIONALS, [1, 1])
        # |minor| = 1, max|x| = max|y| = 1
        assert encloses(delta_v(x, y, place), 0.0)
        assert delta_v(x, x, place) == math.inf

    def test_delta_v_finite(self):
        (place,) = finite_places(RATIONALS, 3)
        x = ProjPoint.of(RATIONALS, [1, 0])
        y = ProjPoint.of(RATIONALS, [1, 9])
        assert encloses(delta_v(x, y, place), 2 * math.log(3))


class TestLocalGlobal:
    def test_holds_for_close_points(self):
        x = ProjPoint.of(RATIONALS, [1, 2])
        y = ProjPoint.of(RATIONALS, [1, 2 + 7**3])
        places = list(finite_places(RATIONALS, 7))
        lhs, rhs, holds = check_local_global(x, y, places)
        assert holds
        assert encloses(rhs, 3 * math.log(7) - math.log(2))

    def test_includes_archimedean_places(self, gaussian):
        i = gaussian.gen
        x = ProjPoint.of(gaussian, [1, i])
        y = ProjPoint.of(gaussian, [1, i + 5])
        places = list(archimedean_places(gaussian))
        places += finite_places(gaussian, 5)
        _, _, holds = check_local_global(x, y, places)
        assert holds

    def test_needs_distinct_points(self):
        x = ProjPoint.of(RATIONALS, [1, 2])
        with pytest.raises(HypothesisError):
            check_local_global(x, x, [])

    def test_congruence_bound(self, gaussian):
        x = ProjPoint.of(gaussian, [1, 0])
        y = ProjPoint.of(gaussian, [1, 15])
        primes = list(primes_above(gaussian, 3)) + list(
            primes_above(gaussian, 5)
        )
        _, rhs, holds = congruence_height_bound(x, y, primes)
        assert holds
        assert encloses(rhs, math.log(15) - math.log(2))

    def test_congruence_bound_needs_congruent_points(self):
        x = ProjPoint.of(RATIONALS, [1, 0])
        y = ProjPoint.of(RATIONALS, [1, 2])
        with pytest.raises(CongruenceError):
            congruence_height_bound(x, y, list(primes_above(RATIONALS, 3)))
