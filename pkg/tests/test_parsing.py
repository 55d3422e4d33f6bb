"""Tests for the literal and stanza parsers."""

import math
from fractions import Fraction

import pytest

from heightcert.corpus import CURVES
from heightcert.errors import ParseError, PointNotOnCurveError
from heightcert.numfield import RATIONALS, make_field
from heightcert.parsing import (
    format_curve,
    format_point,
    fraction_text,
    parse_curve,
    parse_element,
    parse_field,
    parse_inputs,
    parse_point,
    parse_projective,
    parse_text,
)

STANZAS = """\
# the twist point (0, sqrt 5)
field Q(sqrt 5)
curve a1=0 a2=0 a3=0 a4=1 a6=5
point x=0 y=2w - 1
point O
"""


class TestFields:
    @pytest.mark.parametrize(
        "text, kind, parameter",
        [
            ("Q(sqrt 5)", "quadratic", 5),
            ("Q(sqrt(-1))", "quadratic", -1),
            ("Q(i)", "quadratic", -1),
            ("Q(zeta 9)", "cyclotomic", 9),
            ("Q(zeta 10)", "cyclotomic", 5),
        ],
    )
    def test_literals(self, text, kind, parameter):
        assert parse_field(text) is make_field(kind, parameter)

    def test_rationals(self):
        assert parse_field(" Q ") is RATIONALS

    @pytest.mark.parametrize("text", ["R", "Q(sqrt 4)", "Q(zeta)", ""])
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_field(text)


class TestElements:
    def test_polynomial_in_w(self, zeta5):
        alpha = parse_element("3/2*w^2 - w + 1", zeta5)
        assert alpha == zeta5.element([1, -1, Fraction(3, 2), 0])

    def test_implicit_products_and_parentheses(self, golden):
        assert parse_element("2w", golden) == 2 * golden.gen
        assert parse_element("(1 + 2w)/3", golden) == golden.element(
            [Fraction(1, 3), Fraction(2, 3)]
        )

    def test_negative_exponents(self, golden):
        # w^2 = w + 1, so 1/w = w - 1
        assert parse_element("w^-1", golden) == golden.element([-1, 1])

    def test_unary_minus(self):
        assert parse_element("-3") == -3
        assert parse_element("--2 + 1") == 3

    def test_w_over_the_rationals(self):
        with pytest.raises(ParseError) as info:
            parse_element("1 + w")
        assert info.value.column == 5

    def test_error_column(self):
        with pytest.raises(ParseError) as info:
            parse_element("1 + $")
        assert info.value.column == 5

    def test_error_line_and_offset(self):
        with pytest.raises(ParseError) as info:
            parse_element("1 + $", line=3, offset=10)
        assert str(info.value).startswith("line 3, column 15: ")

    @pytest.mark.parametrize("text", ["1/0", "(1 + 2", "", "2^w", "3 +"])
    def test_malformed(self, golden, text):
        with pytest.raises(ParseError):
            parse_element(text, golden)


class TestCurvesAndPoints:
    def test_curve(self):
        assert parse_curve("a3=1 a4=-1") == CURVES["37a"]

    def test_curve_round_trip(self):
        curve = CURVES["x3-2"]
        body = format_curve(curve)
        assert body == "a1=0 a2=0 a3=0 a4=0 a6=-2 cm_discriminant=-3"
        assert parse_curve(body).cm_discriminant == -3

    @pytest.mark.parametrize(
        "text", ["a4=1/2", "a6=0", "a5=1", "a4=1 a4=2", "nonsense"]
    )
    def test_curve_errors(self, text):
        with pytest.raises(ParseError):
            parse_curve(text)

    def test_point(self, curve_37a):
        point = parse_point("x=2 y=2", curve_37a)
        assert (point.x, point.y) == (2, 2)
        assert parse_point(" O ", curve_37a).is_zero()
        assert format_point(point) == "x=2 y=2"

    def test_point_off_the_curve(self, curve_37a):
        with pytest.raises(PointNotOnCurveError):
            parse_point("x=1 y=1", curve_37a)

    def test_projective(self, golden):
        point = parse_projective("[1; 2w; 3]", golden)
        assert point.dimension == 2
        assert point.coords[1] == 2 * golden.gen
        with pytest.raises(ParseError):
            parse_projective("[0; 0]")
        with pytest.raises(ParseError):
            parse_projective("1; 2")


class TestStanzas:
    def test_parse_text(self, golden):
        inputs = parse_text(STANZAS)
        assert inputs.fields == [golden]
        assert len(inputs.curves) == 1
        first, second = inputs.points
        assert first.field is golden
        assert first.y == 2 * golden.gen - 1
        assert second.is_zero()

    def test_errors_carry_the_line(self):
        text = "curve a3=1 a4=-1\n\npoint x=1 y=1\n"
        with pytest.raises(PointNotOnCurveError) as info:
            parse_text(text)
        assert info.value.line == 3

    def test_point_before_curve(self):
        with pytest.raises(ParseError) as info:
            parse_text("point x=0 y=0\n")
        assert info.value.line == 1

    def test_unknown_stanza(self):
        with pytest.raises(ParseError) as info:
            parse_text("field Q\n  pointz O\n")
        assert (info.value.line, info.value.column) == (2, 3)

    def test_parse_inputs(self, tmp_path):
        first = tmp_path / "curves.txt"
        first.write_text(STANZAS, encoding="utf-8")
        second = tmp_path / "more.txt"
        second.write_text("curve a3=1 a4=-1\npoint x=0 y=0\n",
                          encoding="utf-8")
        inputs = parse_inputs([first, second])
        assert len(inputs.curves) == 2
        assert len(inputs.points) == 3
        assert inputs.points[-1].field is RATIONALS


def test_fraction_text():
    assert fraction_text(math.inf) == "inf"
    assert fraction_text(Fraction(3, 2)) == "3/2"
    assert fraction_text(4) == "4"
