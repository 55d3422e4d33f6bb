"""Tests for the corpus property sweeps."""

from heightcert.corpus import CURVES
from heightcert.sweeps import annihilation_sweep, hasse_sweep


def test_hasse_sweep():
    result = hasse_sweep(CURVES.values(), bound=50)
    assert result.ok
    # 15 primes up to 50, less the bad primes of each curve
    assert result.checked == 68
    assert result.to_json()["sweep"] == "hasse"


def test_annihilation_sweep():
    result = annihilation_sweep(["37a"], ["Q", "Q(i)"], bound=13)
    assert result.ok
    # Three points at 2, 3, 5, 7, 11, 13 over Q and at the seven primes of
    # Q(i) above 3, 5, 7, 11, 13
    assert result.checked == 39


def test_annihilation_through_residue_fields():
    exact = annihilation_sweep(["x3-2"], ["Q(sqrt 5)"], bound=30)
    residue = annihilation_sweep(["x3-2"], ["Q(sqrt 5)"], bound=30,
                                 exact_limit=2)
    assert exact.ok and residue.ok
    assert exact.checked == residue.checked


def test_violation_records():
    result = hasse_sweep([CURVES["37a"]], bound=3)
    assert result.to_json() == {"sweep": "hasse", "checked": 2,
                                "violations": []}
