"""Tests for the built-in corpus."""

import pytest

from heightcert.corpus import (
    CURVES,
    FIELDS,
    POINTS,
    TWIST_PRIMES,
    corpus_points,
    resolve_curve,
    twist_corpus,
    twist_curve,
)
from heightcert.numfield import make_field
from heightcert.parsing import parse_field


@pytest.mark.parametrize("label", sorted(CURVES))
def test_points_lie_on_their_curves(label):
    points = corpus_points(label)
    assert len(points) == len(POINTS[label])
    for point, _ in points:
        assert point.curve is CURVES[label]
        assert point.curve.residual(point.x, point.y) == 0


def test_base_change(zeta9):
    for point, _ in corpus_points("37a", zeta9):
        assert point.field is zeta9


def test_torsion_flags_match_the_group_law():
    for label in ("27a", "11a3"):
        for point, torsion in corpus_points(label):
            assert torsion
            assert (point * 15).is_zero()


def test_twist_curve():
    curve = twist_curve(-1, 13)
    assert curve.a_invariants == (0, 0, 0, -1, 13)
    assert curve.label == "x3-1x+13"
    assert curve.is_good(13)


def test_twist_corpus():
    pairs = twist_corpus()
    assert len(pairs) >= 27
    fields = {make_field("quadratic", p) for p in TWIST_PRIMES}
    for curve, point in pairs:
        assert point.curve is curve
        assert point.field in fields


def test_resolve_curve():
    assert resolve_curve(" 37a ") is CURVES["37a"]
    assert resolve_curve("99z") is None


def test_corpus_fields_parse():
    degrees = [parse_field(text).degree for text in FIELDS]
    assert degrees == [1, 2, 2, 2, 4, 6]
