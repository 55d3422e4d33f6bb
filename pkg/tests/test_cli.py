"""Tests for the command line front end."""

import json

import pytest

from heightcert.cli import main


def run(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


class TestCurveCommands:
    def test_frobpoly(self, runner, tmp_path):
        out = tmp_path / "frob.json"
        result = run(runner, "frobpoly", "--curve", "x3+x+1", "--p", "5",
                     "--out", str(out))
        assert result.exit_code == 0
        assert "X^2 + 3X + 5" in result.output
        report = json.loads(out.read_text())
        assert (report["count"], report["a_p"]) == (9, -3)
        assert report["ordinary"]

    def test_inline_curve(self, runner):
        result = run(runner, "frobpoly", "--curve", "a4=0 a6=-2", "--p", "5")
        assert "X^2 + 5" in result.output
        assert "supersingular" in result.output

    def test_bad_prime_exits_with_three(self, runner):
        result = run(runner, "frobpoly", "--curve", "37a", "--p", "37")
        assert result.exit_code == 3

    def test_torsion(self, runner):
        result = run(runner, "torsion", "--curve", "11a3", "--point",
                     "x=0 y=0", "--p", "3")
        assert result.exit_code == 0
        assert "r = 5" in result.output

    def test_series(self, runner):
        result = run(runner, "series", "--curve", "37a", "--p", "5")
        assert result.exit_code == 0
        assert "1 (ordinary)" in result.output


class TestFieldCommands:
    def test_places(self, runner, tmp_path):
        out = tmp_path / "places.json"
        result = run(runner, "places", "--field", "Q(sqrt 5)", "--p", "5",
                     "--out", str(out))
        assert result.exit_code == 0
        report = json.loads(out.read_text())
        assert report["ramification"] == {"5": {"e": 2, "k": 1}}
        # two real places and the prime above 5
        assert len(report["places"]) == 3

    def test_adcheck(self, runner, tmp_path):
        out = tmp_path / "ad.json"
        result = run(runner, "adcheck", "--field", "Q(sqrt 5)", "--alpha",
                     "2w - 1", "--p", "5", "--out", str(out))
        assert result.exit_code == 0
        assert "holds" in result.output
        report = json.loads(out.read_text())
        assert report["valuation"] == "5"
        assert report["e"] == 2

    def test_adcheck_unramified(self, runner):
        result = run(runner, "adcheck", "--field", "Q(i)", "--alpha", "w",
                     "--p", "5")
        assert result.exit_code == 3


class TestHeightCommands:
    def test_weil(self, runner):
        result = run(runner, "weil", "--x", "[2; 3]")
        assert result.exit_code == 0
        assert "1.0986" in result.output

    def test_delta(self, runner):
        result = run(runner, "delta", "--x", "[1; 2]", "--y", "[1; 345]",
                     "--p", "7")
        assert result.exit_code == 0
        assert "holds" in result.output

    def test_canonical(self, runner):
        result = run(runner, "canonical", "--curve", "37a", "--point",
                     "x=0 y=0")
        assert result.exit_code == 0
        assert "0.05111" in result.output

    def test_parse_error_exits_with_two(self, runner):
        result = run(runner, "weil", "--field", "Q(sqrt 4)", "--x", "[1; 2]")
        assert result.exit_code == 2

    def test_point_off_the_curve(self, runner):
        result = run(runner, "canonical", "--curve", "37a", "--point",
                     "x=1 y=1")
        assert result.exit_code == 2


class TestCertifyCommands:
    def test_good_prime(self, runner, tmp_path):
        out = tmp_path / "prime.json"
        result = run(runner, "good-prime", "--curve", "x3-2", "--start", "6",
                     "--out", str(out))
        assert result.exit_code == 0
        report = json.loads(out.read_text())
        assert report["p"] == 7
        assert report["condition"] == "ordinary CM"

    def test_certify_and_verify(self, runner, tmp_path):
        out = tmp_path / "cert.json"
        result = run(runner, "certify", "--curve", "x3-2", "--point",
                     "x=3 y=5", "--p", "5", "--out", str(out))
        assert result.exit_code == 0
        assert "certified" in result.output
        result = run(runner, "verify", str(out))
        assert result.exit_code == 0
        assert "verified" in result.output

    def test_verify_rejects_tampering(self, runner, tmp_path):
        out = tmp_path / "cert.json"
        run(runner, "certify", "--curve", "x3-2", "--point", "x=3 y=5",
            "--p", "5", "--out", str(out))
        data = json.loads(out.read_text())
        data["verdict"] = "refuted-step"
        out.write_text(json.dumps(data))
        result = run(runner, "verify", str(out))
        assert result.exit_code == 5

    def test_verify_needs_json(self, runner, tmp_path):
        out = tmp_path / "cert.json"
        out.write_text("not json")
        result = run(runner, "verify", str(out))
        assert result.exit_code == 2

    def test_certify_from_stanza_file(self, runner, tmp_path):
        stanza = tmp_path / "point.txt"
        stanza.write_text(
            "field Q(sqrt 5)\ncurve a3=1 a4=-1\npoint x=0 y=0\n"
        )
        result = run(runner, "certify", "--curve", "37a", "--point",
                     str(stanza), "--p", "5")
        assert result.exit_code == 0
        assert "ramified-descent" in result.output


class TestSweepCommand:
    def test_hasse(self, runner):
        result = run(runner, "sweep", "hasse", "--bound", "30")
        assert result.exit_code == 0
        assert "violations" in result.output

    @pytest.mark.slow
    def test_annihilation(self, runner):
        result = run(runner, "sweep", "annihilation", "--curve", "37a",
                     "--bound", "20")
        assert result.exit_code == 0
