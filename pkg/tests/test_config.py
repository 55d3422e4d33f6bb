"""Tests for the run configuration."""

import pytest

from heightcert.config import RunConfig


def test_defaults():
    config = RunConfig()
    assert config.precision == 80
    assert config.tolerance == 1e-8
    assert config.mode == "diagnostic"
    assert config.weighting == "plain"
    assert config.descent_bound == 16


def test_from_options_ignores_unknown_and_none():
    config = RunConfig.from_options(
        command="certify", precision=None, tolerance=1e-6, point="x=0 y=0",
        inputs=["a.txt"],
    )
    assert config.command == "certify"
    assert config.precision == 80
    assert config.tolerance == 1e-6
    assert config.inputs == ("a.txt",)


def test_replace_returns_a_copy():
    config = RunConfig()
    changed = config.replace(precision=160)
    assert changed.precision == 160
    assert config.precision == 80


@pytest.mark.parametrize(
    "changes",
    [
        {"mode": "proof"},
        {"weighting": "heavy"},
        {"precision": 8},
        {"precision": 200, "precision_cap": 100},
        {"tolerance": 0},
    ],
)
def test_validation(changes):
    with pytest.raises(ValueError):
        RunConfig(**changes)


def test_height_options():
    options = RunConfig(counting_budget=500).height_options()
    assert options["budget"] == 500
    assert set(options) == {
        "tolerance", "precision", "precision_cap", "max_doublings", "budget",
    }
