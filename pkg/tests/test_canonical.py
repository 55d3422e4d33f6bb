"""Tests for canonical heights, pairings and the comparison constants."""

import math

import pytest

from heightcert.canonical import (
    canonical_height,
    combination_height,
    doublings_needed,
    galois_invariance_check,
    height_comparison_bound,
    height_pairing,
    parallelogram_check,
)
from heightcert.corpus import CURVES, twist_curve
from heightcert.errors import HypothesisError, ToleranceUnreachableError
from heightcert.heights import weil_height

# h^ of (0, 0) on 37a for the x-map and for psi = [1 : x : y]
H_X_37A = 0.0511114082
H_PSI_37A = 0.0766671123


def midpoint(value):
    return float(value.mid)


def doubling_iterate(point, n):
    """Return h(x(2^n P))/4^n computed in exact arithmetic."""
    for _ in range(n):
        point = point + point
    x = point.x.rational()
    return math.log(max(abs(x.numerator), x.denominator)) / 4**n


class TestCanonicalHeight:
    def test_generator_of_37a(self, point_37a):
        result = canonical_height(point_37a, tolerance=1e-10)
        assert not result.torsion
        assert abs(midpoint(result.value) - H_X_37A) < 1e-8
        assert result.error < 2e-10
        assert result.lower <= result.upper

    def test_psi_normalization(self, point_37a):
        result = canonical_height(point_37a, normalization="psi")
        assert result.normalization == "psi"
        assert abs(midpoint(result.value) - H_PSI_37A) < 1e-7

    def test_quadratic_in_the_point(self, point_37a):
        single = canonical_height(point_37a, tolerance=1e-9)
        double = canonical_height(point_37a * 2, tolerance=1e-9)
        gap = midpoint(double.value) - 4 * midpoint(single.value)
        assert abs(gap) < 1e-7

    def test_torsion_point_is_zero(self):
        result = canonical_height(CURVES["11a3"].point(0, 0))
        assert result.torsion
        assert str(result) == "0"
        assert result.witness == {"p": 3, "r": 5}

    def test_identity(self, curve_37a):
        assert canonical_height(curve_37a.zero()).torsion

    def test_unknown_normalization(self, point_37a):
        with pytest.raises(HypothesisError):
            canonical_height(point_37a, normalization="y")

    def test_json(self, point_37a):
        data = canonical_height(point_37a).to_json()
        assert data["normalization"] == "x"
        assert data["value"].startswith("[0.05111")


class TestDoublings:
    def test_loose_tolerance_needs_none(self, curve_37a):
        steps, c_dup = doublings_needed(curve_37a, 1e6, 60)
        assert steps == 0
        assert c_dup.a > 0

    def test_steps_grow_with_precision(self, curve_37a):
        coarse, _ = doublings_needed(curve_37a, 1e-4, 60)
        fine, _ = doublings_needed(curve_37a, 1e-8, 60)
        assert fine > coarse

    def test_unreachable_tolerance(self, curve_37a):
        with pytest.raises(ToleranceUnreachableError):
            doublings_needed(curve_37a, 1e-300, 5)


class TestPairing:
    def test_pairing_with_itself(self, point_37a):
        value = height_pairing(point_37a, point_37a, tolerance=1e-9)
        assert abs(midpoint(value) - H_X_37A) < 1e-7

    def test_combination(self, point_37a):
        value = combination_height([point_37a], [2], tolerance=1e-9)
        assert abs(midpoint(value) - 4 * H_X_37A) < 1e-7
        assert combination_height([point_37a], [0]) == 0

    def test_parallelogram(self, point_37a):
        assert parallelogram_check([point_37a, point_37a * 2],
                                   tolerance=1e-6)

    def test_parallelogram_needs_points(self):
        with pytest.raises(HypothesisError):
            parallelogram_check([])

    def test_galois_invariance(self, golden):
        curve = twist_curve(1, 5)
        point = curve.point(golden.zero, 2 * golden.gen - 1, golden)
        assert galois_invariance_check(point, tolerance=1e-6)


class TestComparison:
    def test_constants(self, curve_37a):
        bound = height_comparison_bound(curve_37a)
        assert bound.c_psi.a > 0
        assert bound.B.a > bound.c_psi.b
        assert set(bound.to_json()) == {
            "embedding", "C_dup_x", "c_xy", "C_dup_psi", "C_psi", "B",
        }

    def test_weil_and_canonical_heights_are_close(self, point_37a):
        bound = height_comparison_bound(point_37a.curve)
        for k in range(1, 6):
            weil = midpoint(weil_height((point_37a * k).psi()))
            canonical = H_PSI_37A * k * k
            assert abs(weil - canonical) <= float(bound.c_psi.b)


class TestAgainstDoubling:
    def test_x_height_of_37a(self, point_37a):
        # x(2^n P) grows like exp(4^n h^), so the iterate is within C/4^n
        iterate = doubling_iterate(point_37a, 6)
        result = canonical_height(point_37a, tolerance=1e-9)
        assert abs(midpoint(result.value) - iterate) < 2e-3
        assert abs(iterate - H_X_37A) < 2e-3

    def test_psi_is_three_halves_of_x(self, point_37a):
        x_value = canonical_height(point_37a, tolerance=1e-9)
        psi_value = canonical_height(
            point_37a, normalization="psi", tolerance=1e-9
        )
        ratio = midpoint(psi_value.value) / midpoint(x_value.value)
        assert abs(ratio - 1.5) < 1e-6

    def test_x3_minus_2(self, cm_point):
        iterate = doubling_iterate(cm_point, 5)
        result = canonical_height(cm_point, tolerance=1e-9)
        assert abs(midpoint(result.value) - iterate) < 1e-2
