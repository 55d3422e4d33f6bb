"""Shared fixtures for the heightcert test suite."""

import pytest
from click.testing import CliRunner

from heightcert.config import RunConfig
from heightcert.corpus import CURVES
from heightcert.numfield import RATIONALS, make_field


@pytest.fixture
def gaussian():
    return make_field("quadratic", -1)


@pytest.fixture
def golden():
    """Q(sqrt 5), with w = (1 + sqrt 5)/2."""
    return make_field("quadratic", 5)


@pytest.fixture
def zeta5():
    return make_field("cyclotomic", 5)


@pytest.fixture
def zeta9():
    return make_field("cyclotomic", 9)


@pytest.fixture
def curve_37a():
    return CURVES["37a"]


@pytest.fixture
def point_37a(curve_37a):
    """The generator (0, 0) of E(Q) for y^2 + y = x^3 - x."""
    return curve_37a.point(0, 0, RATIONALS)


@pytest.fixture
def cm_point():
    """(3, 5) on y^2 = x^3 - 2, which has CM by Z[zeta 3]."""
    return CURVES["x3-2"].point(3, 5, RATIONALS)


@pytest.fixture
def config():
    return RunConfig()


@pytest.fixture
def runner():
    return CliRunner()
