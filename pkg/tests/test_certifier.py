"""Tests for the certificate routes, their preconditions and verification."""

import json
import math

import pytest

from heightcert.canonical import height_comparison_bound
from heightcert.certifier import (
    BoundCertificate,
    ad_congruence_check,
    certify,
    certify_ramified_noncm,
    certify_torsion,
    certify_unramified,
    cm_ramified_step,
    descent_torsion,
    residue_frobenius,
    verify_certificate,
)
from heightcert.config import RunConfig
from heightcert.corpus import CURVES, twist_curve
from heightcert.ellcurve import EllipticCurve, torsion_points
from heightcert.errors import (
    BadPrimeError,
    BudgetExceededError,
    HypothesisError,
)
from heightcert.numfield import (
    RATIONALS,
    GaloisElement,
    inertia_tau,
    make_field,
)
from heightcert.parsing import format_point
from heightcert.polyfield import embed_field


def over(point, field):
    return point.base_change(embed_field(RATIONALS, field))


def all_checks_hold(cert):
    return all(check.holds for check in cert.checks)


class TestResidueFrobenius:
    def test_unramified_is_the_frobenius(self, gaussian):
        assert residue_frobenius(gaussian, 5).is_identity()
        assert residue_frobenius(gaussian, 3) == GaloisElement(gaussian, -1)

    def test_ramified_cyclotomic(self):
        field = make_field("cyclotomic", 15)
        # c = 5 mod 3 and c = 1 mod 5
        assert residue_frobenius(field, 5).c == 11

    def test_ramified_quadratic(self, golden):
        assert residue_frobenius(golden, 5).is_identity()


class TestCongruenceCheck:
    def test_square_root_of_five(self, golden):
        assert ad_congruence_check(2 * golden.gen - 1, 5) == (5, True)

    def test_one_plus_square_root_of_five(self, golden):
        # (1 - s)^5 - (1 + s)^5 = -160 s with s = sqrt 5
        assert ad_congruence_check(2 * golden.gen, 5) == (3, True)

    def test_fixed_difference(self, zeta9):
        observed, holds = ad_congruence_check(zeta9.gen, 3)
        assert observed == math.inf
        assert holds

    def test_rejects_non_integral_elements(self, golden):
        with pytest.raises(HypothesisError):
            ad_congruence_check(golden.gen / 5, 5)


class TestUnramified:
    def test_cm_curve_over_q(self, cm_point):
        cert = certify(cm_point, p=5)
        assert cert.branch == "unramified"
        assert cert.verdict == "certified"
        assert cert.constants["a_p"] == 0
        # #E(F_5) = 6, so Phi_5(1)P = 6P
        assert cert.derived["Q"] == format_point(cm_point * 6)
        assert all_checks_hold(cert)
        assert cert.theorem_bound is None

    def test_bad_prime(self, point_37a):
        with pytest.raises(BadPrimeError):
            certify_unramified(point_37a, 37)

    def test_ramified_prime_needs_weighting(self, point_37a, golden):
        with pytest.raises(HypothesisError):
            certify_unramified(over(point_37a, golden), 5)

    def test_theorem_mode_rejects_small_primes(self, point_37a):
        with pytest.raises(HypothesisError):
            certify_unramified(point_37a, 5, RunConfig(mode="theorem"))


class TestRamified:
    def test_rational_point_descends(self, point_37a, golden):
        cert = certify(over(point_37a, golden), p=5)
        assert cert.branch == "ramified-descent"
        assert cert.verdict == "certified"
        (child,) = cert.descent
        assert child.branch == "unramified"
        assert child.field is RATIONALS
        assert cert.lower_bound == child.lower_bound
        assert cert.checks[-1].detail == {
            "field": "Q", "before": 2, "after": 1,
        }

    def test_twist_point(self, golden):
        curve = twist_curve(1, 5)
        point = curve.point(golden.zero, 2 * golden.gen - 1, golden)
        cert = certify(point, p=5)
        assert cert.branch == "ramified-noncm"
        assert cert.verdict == "certified"
        assert cert.constants["p_torsion"]["trivial"]
        assert "Q1" in cert.derived and "Q2" in cert.derived
        assert all_checks_hold(cert)

    def test_noncm_route_rejects_cm_curves(self, cm_point, golden):
        with pytest.raises(HypothesisError):
            certify_ramified_noncm(over(cm_point, golden), 5)

    def test_cm_descent(self, cm_point):
        field = make_field("quadratic", 13)
        cert = certify(over(cm_point, field), p=13)
        assert cert.branch == "ramified-descent"
        assert cert.constants["k"] == 1
        assert cert.derived["T"] == "O"
        assert cert.checks[-1].detail["after"] == 0
        (child,) = cert.descent
        assert child.branch == "unramified"
        assert cert.verdict == "certified"

    def test_cm_step_needs_ordinary_reduction(self, cm_point, golden):
        # a_5 = 0 on y^2 = x^3 - 2
        with pytest.raises(HypothesisError):
            cm_ramified_step(over(cm_point, golden), 5)

    def test_cm_step_needs_cm(self, point_37a, golden):
        with pytest.raises(HypothesisError):
            cm_ramified_step(over(point_37a, golden), 5)


    @pytest.mark.slow
    def test_descent_torsion_finds_a_moved_point(self, zeta5):
        # E[5] of 11a1 is Z/5 + mu_5, all defined over Q(zeta 5)
        curve = EllipticCurve(0, -1, 1, -10, -20, label="11a1")
        tau = inertia_tau(zeta5, 5)
        points = torsion_points(curve, zeta5, 5)
        assert len(points) == 25
        moved = [t for t in points if t.conjugate(tau) != t]
        assert len(moved) == 20
        target = moved[0].conjugate(tau) - moved[0]
        found = descent_torsion(curve, zeta5, tau, target, 5, 1, 240)
        assert found is not None
        assert found.conjugate(tau) - found == target

    def test_descent_torsion_respects_the_budget(self, zeta5):
        curve = EllipticCurve(0, -1, 1, -10, -20)
        tau = inertia_tau(zeta5, 5)
        with pytest.raises(BudgetExceededError):
            descent_torsion(curve, zeta5, tau, curve.zero(zeta5), 5, 1, 40)

class TestTorsion:
    def test_three_torsion_point(self):
        point = CURVES["27a"].point(0, 0)
        cert = certify(point)
        assert cert.verdict == "torsion"
        assert cert.branch == "torsion"
        assert cert.p == 5
        assert cert.constants["requested_p"] == 2

    def test_identity(self, curve_37a):
        assert certify_torsion(curve_37a.zero()).verdict == "torsion"

    def test_non_torsion_point(self, point_37a):
        assert certify_torsion(point_37a) is None


class TestSerialisation:
    def test_json_round_trip(self, cm_point):
        cert = certify(cm_point, p=5)
        text = cert.to_json()
        restored = BoundCertificate.from_json(text)
        assert restored.point == cm_point
        assert restored.to_json() == text

    def test_verify(self, cm_point):
        cert = certify(cm_point, p=5)
        result = verify_certificate(cert.to_json())
        assert result.ok
        assert result.certificate.verdict == "certified"

    def test_verify_torsion(self):
        cert = certify(CURVES["27a"].point(0, 0))
        assert verify_certificate(cert.to_dict()).ok

    def test_tampered_certificate(self, cm_point):
        data = certify(cm_point, p=5).to_dict()
        data["verdict"] = "refuted-step"
        data["checks"][0]["holds"] = False
        result = verify_certificate(json.dumps(data))
        assert not result.ok
        assert len(result.failures) >= 2


@pytest.mark.slow
def test_theorem_mode_bound(point_37a):
    cert = certify(point_37a, RunConfig(mode="theorem"))
    p = cert.p
    # the first admissible p above exp(B + 1)
    bound = height_comparison_bound(point_37a.curve)
    assert p > math.exp(float(bound.B.a) + 1)
    assert cert.constants["prime_selection"]["condition"] == "E(L)[p] = 0"
    assert cert.theorem_bound == f"1/{(12 * p) ** 2}"
    assert cert.verdict == "certified"
