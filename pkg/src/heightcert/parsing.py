"""Parsers for field, element, point and curve literals and stanza files.

Elements are written in the generator w of their field (w = sqrt d for
d = 2, 3 mod 4, w = (1 + sqrt d)/2 for d = 1 mod 4, w = zeta m for
cyclotomic fields) with integers, +, -, *, /, ^ and parentheses, for
example "3/2*w^2 - w + 1" or "(1 + 2w)/3". Implicit products such as "2w"
are accepted.

A stanza file is a sequence of lines:

    # comment
    field Q(sqrt 5)
    curve a1=0 a2=0 a3=0 a4=0 a6=-2 cm_discriminant = -3
    point x=3 y=5
    point O

Points belong to the most recent curve and field (Q until a field line is
seen). Every error carries the line and column it was found at.

Example usage:
    field = parse_field("Q(zeta 5)")
    alpha = parse_element("1 + w^2", field)
    inputs = parse_inputs(["corpus.txt"])
"""

import logging
import re
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from heightcert.ellcurve import EllipticCurve
from heightcert.errors import (
    HeightCertError,
    ParseError,
    PointNotOnCurveError,
)
from heightcert.heights import ProjPoint
from heightcert.numfield import RATIONALS, make_field

logger = logging.getLogger(__name__)

_FIELD_RE = re.compile(
    r"^Q(?:\(\s*(?:(sqrt)\s*\(?\s*(-?\d+)\s*\)?|(zeta)\s*(\d+)|(i))\s*\))?$"
)
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(w)|([-+*/^()]))")
_PAIR_RE = re.compile(r"(\w+)\s*=\s*")


def parse_field(text, line=None):
    """
    Parse a field literal.

    Accepted forms are "Q", "Q(sqrt D)", "Q(sqrt(D))", "Q(zeta M)" and
    "Q(i)".

    Args:
        text (str):
            The literal.
        line (int, optional):
            The line number for error reports.

    Returns:
        NumberField:
            The field.

    Raises:
        ParseError:
            If the literal is malformed or names an unsupported field.
    """
    match = _FIELD_RE.match(text.strip())
    if match is None:
        raise ParseError(f"malformed field literal {text.strip()!r}", line, 1)
    try:
        if match.group(1):
            return make_field("quadratic", int(match.group(2)))
        if match.group(3):
            return make_field("cyclotomic", int(match.group(4)))
        if match.group(5):
            return make_field("quadratic", -1)
        return RATIONALS
    except HeightCertError as e:
        raise ParseError(str(e), line, 1) from e


class _ElementParser:
    """A recursive descent parser over the element grammar."""

    def __init__(self, text, field, line, offset):
        self.text = text
        self.field = field
        self.line = line
        self.offset = offset
        self.tokens = []
        position = 0
        while position < len(text):
            if text[position:].strip() == "":
                break
            match = _TOKEN_RE.match(text, position)
            if match is None or match.end() == position:
                column = len(text) - len(text[position:].lstrip()) + 1
                raise self.error(
                    f"unexpected character {text[column - 1]!r}", column
                )
            group = match.lastindex
            kind = ("int", "w", "op")[group - 1]
            self.tokens.append(
                (kind, match.group(group), match.start(group) + 1)
            )
            position = match.end()
        self.index = 0

    def error(self, message, column=None):
        if column is None:
            column = (
                self.tokens[self.index][2]
                if self.index < len(self.tokens)
                else len(self.text) + 1
            )
        return ParseError(message, self.line, column + self.offset)

    def peek(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return (None, None, None)

    def take(self):
        token = self.peek()
        self.index += 1
        return token

    def parse(self):
        if not self.tokens:
            raise self.error("empty element", 1)
        value = self.expression()
        if self.index != len(self.tokens):
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return value

    def expression(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            _, op, _ = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            kind, op, _ = self.peek()
            if op in ("*", "/"):
                self.take()
                rhs = self.unary()
                if op == "/":
                    if rhs.is_zero():
                        raise self.error("division by zero")
                    value = value / rhs
                else:
                    value = value * rhs
            elif kind in ("int", "w") or op == "(":
                # Implicit product, as in 2w
                value = value * self.unary()
            else:
                return value

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, value, column = self.take()
            negative = False
            if value == "-":
                negative = True
                kind, value, column = self.take()
            if kind != "int":
                raise self.error("exponents must be integers", column)
            exponent = int(value)
            if negative:
                if base.is_zero():
                    raise self.error("zero to a negative power", column)
                return base.inverse() ** exponent
            return base**exponent
        return base

    def atom(self):
        kind, value, column = self.take()
        if kind == "int":
            return self.field.element(int(value))
        if kind == "w":
            if self.field.degree == 1:
                raise self.error("w is not defined over Q", column)
            return self.field.gen
        if value == "(":
            inner = self.expression()
            if self.take()[1] != ")":
                raise self.error("missing ')'", column)
            return inner
        if kind is None:
            raise self.error("unexpected end of element")
        raise self.error(f"unexpected {value!r}", column)


def parse_element(text, field=RATIONALS, line=None, offset=0):
    """
    Parse an element literal of a field.

    Args:
        text (str):
            The literal, in the generator w.
        field (NumberField):
            The field.
        line (int, optional):
            The line number for error reports.
        offset (int):
            Added to reported columns (the literal's position on its line).

    Returns:
        FieldElement:
            The element.

    Raises:
        ParseError:
            If the literal is malformed.
    """
    return _ElementParser(text, field, line, offset).parse()


def parse_rational(text, line=None, offset=0):
    """Parse a literal that must be rational, returning a Fraction."""
    return parse_element(text, RATIONALS, line, offset).rational()


def parse_projective(text, field=RATIONALS, line=None):
    """
    Parse a projective point literal "[a; b; ...]".

    Raises:
        ParseError:
            If the brackets are missing or every coordinate is zero.
    """
    stripped = text.strip()
    if not (stripped.startswith("[") and stripped.endswith("]")):
        raise ParseError(f"projective points are written [a; b; ...], "
                         f"got {stripped!r}", line, 1)
    body = stripped[1:-1]
    coords = []
    offset = text.index("[") + 1
    for part in body.split(";"):
        coords.append(parse_element(part, field, line, offset))
        offset += len(part) + 1
    if len(coords) < 2:
        raise ParseError("a projective point needs two coordinates", line, 1)
    if all(c.is_zero() for c in coords):
        raise ParseError("[0; ...; 0] is not a projective point", line, 1)
    return ProjPoint(coords)


def _split_pairs(text, line, offset):
    """Split "k1=v1 k2 = v2" into {key: (value, column)}."""
    matches = list(_PAIR_RE.finditer(text))
    if not matches or text[: matches[0].start()].strip():
        raise ParseError(f"expected key=value pairs in {text.strip()!r}",
                         line, offset + 1)
    pairs = {}
    for i, match in enumerate(matches):
        end = matches[i + 1].start() if i + 1 < len(matches) else len(text)
        key = match.group(1)
        if key in pairs:
            raise ParseError(f"duplicate key {key!r}", line,
                             offset + match.start() + 1)
        pairs[key] = (text[match.end():end], offset + match.end())
    return pairs


def parse_curve(text, line=None, offset=0):
    """
    Parse the body of a curve stanza "a1=.. a2=.. a3=.. a4=.. a6=..".

    Missing coefficients default to 0; cm_discriminant and label are
    optional.

    Raises:
        ParseError:
            For unknown keys, non-integral coefficients or a singular
            model.
    """
    pairs = _split_pairs(text, line, offset)
    known = {"a1", "a2", "a3", "a4", "a6", "cm_discriminant", "label"}
    for key, (_, column) in pairs.items():
        if key not in known:
            raise ParseError(f"unknown curve key {key!r}", line, column)
    coeffs = []
    for name in ("a1", "a2", "a3", "a4", "a6"):
        if name not in pairs:
            coeffs.append(0)
            continue
        value, column = pairs[name]
        number = parse_rational(value, line, column)
        if number.denominator != 1:
            raise ParseError(f"{name} = {number} is not an integer", line,
                             column + 1)
        coeffs.append(int(number))
    cm = None
    if "cm_discriminant" in pairs:
        value, column = pairs["cm_discriminant"]
        cm = int(parse_rational(value, line, column))
    label = pairs["label"][0].strip() if "label" in pairs else None
    try:
        return EllipticCurve(*coeffs, cm_discriminant=cm, label=label)
    except HeightCertError as e:
        raise ParseError(str(e), line, offset + 1) from e


def parse_point(text, curve, field=RATIONALS, line=None, offset=0):
    """
    Parse the body of a point stanza, "x=.. y=.." or "O".

    Raises:
        ParseError:
            If the body is malformed.
        PointNotOnCurveError:
            If (x, y) does not satisfy the curve equation.
    """
    if text.strip() == "O":
        return curve.zero(field)
    pairs = _split_pairs(text, line, offset)
    if set(pairs) != {"x", "y"}:
        raise ParseError("a point needs exactly x=.. and y=..", line,
                         offset + 1)
    x = parse_element(pairs["x"][0], field, line, pairs["x"][1])
    y = parse_element(pairs["y"][0], field, line, pairs["y"][1])
    try:
        return curve.point(x, y, field)
    except PointNotOnCurveError as e:
        raise PointNotOnCurveError(e.residual, line, offset + 1) from e


@dataclass
class ParsedInputs:
    """
    Everything read from a set of stanza files.

    Attributes:
        fields (list):
            The fields declared, in order.
        curves (list):
            The curves declared, in order.
        points (list):
            The points declared, in order.
    """

    fields: list = dataclass_field(default_factory=list)
    curves: list = dataclass_field(default_factory=list)
    points: list = dataclass_field(default_factory=list)


def parse_text(text, inputs=None):
    """
    Parse stanza text into (possibly existing) ParsedInputs.

    Raises:
        ParseError:
            With the line and column of the first problem.
    """
    inputs = inputs if inputs is not None else ParsedInputs()
    field = RATIONALS
    curve = None
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        if not content.strip():
            continue
        keyword = content.split()[0]
        offset = content.index(keyword) + len(keyword)
        body = content[offset:]
        if keyword == "field":
            field = parse_field(body, number)
            inputs.fields.append(field)
        elif keyword == "curve":
            curve = parse_curve(body, number, offset)
            inputs.curves.append(curve)
        elif keyword == "point":
            if curve is None:
                raise ParseError("point before any curve", number, 1)
            inputs.points.append(
                parse_point(body, curve, field, number, offset)
            )
        else:
            raise ParseError(f"unknown stanza {keyword!r}", number,
                             content.index(keyword) + 1)
    return inputs


def parse_inputs(files):
    """
    Parse stanza files.

    Args:
        files (list):
            Paths of the files, read in order.

    Returns:
        ParsedInputs:
            The fields, curves and points declared.
    """
    inputs = ParsedInputs()
    for path in files:
        logger.debug("parsing %s", path)
        with open(path, encoding="utf-8") as handle:
            parse_text(handle.read(), inputs)
    return inputs


def format_curve(curve):
    """Render a curve as the body of a curve stanza."""
    body = " ".join(
        f"{name}={value}"
        for name, value in zip(("a1", "a2", "a3", "a4", "a6"),
                               curve.a_invariants)
    )
    if curve.cm_discriminant is not None:
        body += f" cm_discriminant={curve.cm_discriminant}"
    return body


def format_point(point):
    """Render a point as the body of a point stanza."""
    if point.is_zero():
        return "O"
    return f"x={point.x} y={point.y}"


def fraction_text(value):
    """Render a Fraction (or math.inf) for a report."""
    if value == float("inf"):
        return "inf"
    return str(Fraction(value))
