"""Tests for number field arithmetic, Galois actions and ramification."""

from fractions import Fraction

import pytest

from heightcert.errors import HypothesisError, UnsupportedFieldError
from heightcert.numfield import (
    RATIONALS,
    GaloisElement,
    extension_info,
    factor_mod_p,
    fixed_field,
    frobenius_element,
    galois_group,
    inertia_tau,
    is_ramified,
    make_field,
)


class TestMakeField:
    def test_fields_are_cached(self):
        assert make_field("quadratic", 5) is make_field("quadratic", 5)

    def test_cyclotomic_normalisation(self):
        assert make_field("cyclotomic", 6) is make_field("cyclotomic", 3)
        assert make_field("cyclotomic", 2) is RATIONALS
        assert make_field("cyclotomic", 1) is RATIONALS

    @pytest.mark.parametrize("d", [0, 1, 4, 12])
    def test_rejects_non_squarefree_or_trivial(self, d):
        with pytest.raises(UnsupportedFieldError):
            make_field("quadratic", d)

    def test_rejects_unknown_kind(self):
        with pytest.raises(UnsupportedFieldError):
            make_field("cubic", 2)

    def test_discriminants(self, gaussian, golden, zeta5):
        assert gaussian.discriminant == -4
        assert golden.discriminant == 5
        assert zeta5.discriminant == 125
        assert make_field("quadratic", 3).discriminant == 12

    def test_names(self, gaussian, zeta9):
        assert str(RATIONALS) == "Q"
        assert str(gaussian) == "Q(sqrt -1)"
        assert str(zeta9) == "Q(zeta 9)"
        assert zeta9.degree == 6


class TestElements:
    def test_golden_ratio_relation(self, golden):
        w = golden.gen
        assert w * w == w + 1
        assert w.norm() == -1
        assert w.trace() == 1

    def test_gaussian_inverse(self, gaussian):
        alpha = 1 + gaussian.gen
        assert alpha.norm() == 2
        inverse = alpha.inverse()
        assert inverse.coeffs == (Fraction(1, 2), Fraction(-1, 2))
        assert alpha * inverse == 1

    def test_cyclotomic_unit_relations(self, zeta5):
        zeta = zeta5.gen
        assert zeta**5 == 1
        assert zeta.trace() == -1
        assert (1 - zeta).norm() == 5
        assert zeta ** -1 == zeta**4

    def test_division_and_rationals(self, golden):
        alpha = golden.element([3, -2])
        assert (alpha / alpha) == 1
        assert golden.element(Fraction(3, 4)).rational() == Fraction(3, 4)
        assert not alpha.is_rational()
        with pytest.raises(ZeroDivisionError):
            alpha / golden.zero

    def test_str(self, zeta5):
        alpha = zeta5.element([1, -1, Fraction(3, 2), 0])
        assert str(alpha) == "1 - w + 3/2*w^2"
        assert str(zeta5.zero) == "0"

    def test_rational_elements_compare_across_fields(self, golden):
        assert golden.element(2) == 2
        assert hash(golden.element(2)) == hash(RATIONALS.element(2))


class TestGalois:
    def test_group_sizes(self, golden, zeta9):
        assert len(galois_group(golden)) == 2
        group = galois_group(zeta9)
        assert len(group) == 6
        assert group[0].is_identity()

    def test_quadratic_conjugation(self, golden):
        sigma = GaloisElement(golden, -1)
        w = golden.gen
        assert sigma(w) == 1 - w
        assert sigma(sigma(w)) == w

    def test_cyclotomic_action(self, zeta5):
        sigma = GaloisElement(zeta5, 2)
        assert sigma(zeta5.gen) == zeta5.gen**2
        assert sigma.order() == 4

    def test_frobenius(self, gaussian, zeta5):
        assert frobenius_element(gaussian, 5).is_identity()
        assert frobenius_element(gaussian, 3) == GaloisElement(gaussian, -1)
        assert frobenius_element(zeta5, 11).is_identity()
        assert frobenius_element(zeta5, 2).c == 2

    def test_frobenius_needs_unramified_prime(self, gaussian):
        with pytest.raises(HypothesisError):
            frobenius_element(gaussian, 2)

    def test_inertia_and_fixed_field(self, golden, zeta9):
        tau = inertia_tau(zeta9, 3)
        assert tau.c == 4
        assert tau.order() == 3
        assert fixed_field(zeta9, tau) is make_field("cyclotomic", 3)
        conjugation = inertia_tau(golden, 5)
        assert conjugation.c == -1
        assert fixed_field(golden, conjugation) is RATIONALS

    def test_inertia_needs_ramified_prime(self, golden):
        with pytest.raises(HypothesisError):
            inertia_tau(golden, 3)


class TestRamification:
    @pytest.mark.parametrize(
        "kind, parameter, p, e, k",
        [
            ("cyclotomic", 9, 3, 6, 2),
            ("quadratic", 5, 5, 2, 1),
            ("quadratic", -1, 2, 2, 2),
            ("cyclotomic", 5, 11, 1, 0),
        ],
    )
    def test_extension_info(self, kind, parameter, p, e, k):
        info = extension_info(make_field(kind, parameter), p)
        assert (info.e, info.k) == (e, k)

    def test_is_ramified(self, golden):
        assert is_ramified(golden, 5)
        assert not is_ramified(golden, 11)

    def test_factor_mod_p(self):
        assert factor_mod_p((1, 0, 1), 2) == [([1, 1], 2)]
        assert len(factor_mod_p((1, 0, 1), 5)) == 2
        assert factor_mod_p((1, 0, 1), 3) == [([1, 0, 1], 1)]
