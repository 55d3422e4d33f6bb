"""Tests for the interval helpers and exact logarithm sums."""

import math
from fractions import Fraction

import pytest

from heightcert.errors import PrecisionCapError
from heightcert.intervals import (
    LogSum,
    decide,
    format_interval,
    interval_context,
    iv_max,
    iv_max_all,
    refine,
    to_interval,
    width,
)


def test_contexts_are_cached():
    assert interval_context(80) is interval_context(80)
    assert interval_context(160).prec == 160


def test_to_interval_encloses_fractions():
    ctx = interval_context(80)
    third = to_interval(ctx, Fraction(1, 3))
    tripled = third * 3
    assert tripled.a <= 1 <= tripled.b
    assert width(third) < 1e-20


def test_iv_max():
    ctx = interval_context(53)
    result = iv_max(ctx, ctx.mpf((1, 2)), ctx.mpf((0, 3)))
    assert (result.a, result.b) == (1, 3)
    values = [ctx.mpf(k) for k in (4, -1, 7, 2)]
    assert iv_max_all(ctx, values).a == 7


def test_decide_at_starting_precision():
    third = to_interval(interval_context(80), Fraction(1, 3))
    holds, prec = decide(lambda ctx: ctx.ln(2) > third, 80, 4096)
    assert holds
    assert prec == 80


def test_decide_gives_up_at_the_cap():
    with pytest.raises(PrecisionCapError):
        decide(lambda ctx: None, 80, 320)


def test_refine_doubles_until_narrow():
    value, prec = refine(lambda ctx: ctx.pi, 80, 4096, 1e-30)
    assert prec == 160
    # a float pi lies outside an enclosure this narrow
    assert abs(float(value.mid) - math.pi) < 1e-15
    assert float(value.delta) < 1e-30


def test_refine_respects_the_cap():
    with pytest.raises(PrecisionCapError):
        refine(lambda ctx: ctx.mpf((0, 1)), 80, 160, 1e-3)


def test_format_interval():
    ctx = interval_context(80)
    text = format_interval(ctx.mpf(2), 5)
    assert text.startswith("[2")


class TestLogSum:
    def test_factors_composite_bases(self):
        assert LogSum({12: 1}).terms == {2: 2, 3: 1}

    def test_log_of_fraction(self):
        assert LogSum.log_of(Fraction(9, 4)) == LogSum({3: 2, 2: -2})
        assert LogSum.log_of(-1).is_zero()
        with pytest.raises(ValueError):
            LogSum.log_of(0)

    def test_arithmetic_is_exact(self):
        five = LogSum({5: Fraction(3, 2)})
        assert (five - five).is_zero()
        assert five.scale(2) == LogSum({5: 3})
        assert (five + LogSum({2: 1})).terms == {5: Fraction(3, 2), 2: 1}

    def test_enclose(self):
        ctx = interval_context(80)
        value = LogSum.log_of(8).enclose(ctx)
        assert value.a <= 3 * math.log(2) + 1e-12
        assert value.b >= 3 * math.log(2) - 1e-12

    def test_json(self):
        original = LogSum({2: Fraction(-1, 3), 7: 2})
        assert original.to_json() == {"2": "-1/3", "7": "2"}
        assert LogSum.from_json(original.to_json()) == original
