import json
import subprocess
import sys

import pytest

from gf2inv import __version__
from gf2inv.cli import EXIT_ENV, EXIT_MISMATCH, EXIT_OK, main
from gf2inv.fixtures import format_fixture

# the one printed value that disagrees with the row-vector convention
KNOWN_MISMATCH = {"1.perm_B"}


def _flipped(mats):
    bad = dict(mats)
    rows = mats["DW_A"].to_rows()
    rows[0][1] ^= 1
    bad["DW_A"] = type(mats["DW_A"]).from_rows(rows)
    return bad


@pytest.fixture(scope="module")
def runs(tmp_path_factory, mats):
    """Launch the expensive command lines concurrently and collect their results."""
    tmp = tmp_path_factory.mktemp("cli")
    flipped = tmp / "flipped.txt"
    flipped.write_text(format_fixture(_flipped(mats)))
    corrupt = tmp / "corrupt.txt"
    corrupt.write_text("MATRIX A3 3x3\n1 0 1\n0 1\n")
    out = tmp / "report.json"
    commands = {
        "verify1": ["verify-paper", "--json"],
        "verify2": ["verify-paper", "--json"],
        "reproduce": ["reproduce", "--json", "--out", str(out)],
        "flipped": ["verify-paper", "--json", "--fixture", str(flipped)],
        "corrupt": ["reproduce", "--fixture", str(corrupt)],
    }
    procs = {
        k: subprocess.Popen([sys.executable, "-m", "gf2inv", *args], stdout=subprocess.PIPE,
                            stderr=subprocess.PIPE, text=True)
        for k, args in commands.items()
    }
    results = {}
    for k, p in procs.items():
        stdout, stderr = p.communicate(timeout=900)
        results[k] = (p.returncode, stdout, stderr)
    results["out_file"] = out.read_text()
    return results


def _failing(doc):
    return {c["id"] for c in doc["checks"] if c["status"] == "fail"}


def test_verify_paper_fails_only_on_known_mismatch(runs):
    code, stdout, _ = runs["verify1"]
    doc = json.loads(stdout)
    assert _failing(doc) == KNOWN_MISMATCH
    assert code == EXIT_MISMATCH


def test_report_schema(runs):
    doc = json.loads(runs["verify1"][1])
    assert list(doc) == ["version", "fixture_sha256", "checks", "summary"]
    assert doc["version"] == __version__
    assert len(doc["fixture_sha256"]) == 64
    for c in doc["checks"]:
        assert list(c) == ["id", "description", "status", "expected", "actual", "ms"]
        assert c["status"] in ("pass", "fail", "skipped")
        assert (c["status"] == "pass") == (c["expected"] == c["actual"])
        assert c["ms"] is None
    s = doc["summary"]
    assert s["pass"] + s["fail"] + s["skipped"] == len(doc["checks"])


def test_json_is_byte_identical_across_runs(runs):
    assert runs["verify1"][1] == runs["verify2"][1]


def test_reproduce_report(runs):
    code, stdout, _ = runs["reproduce"]
    assert code == EXIT_MISMATCH
    assert stdout == runs["out_file"]
    doc = json.loads(stdout)
    assert _failing(doc) == KNOWN_MISMATCH
    art = doc["artifacts"]
    assert len(art["secondaries"]) == 18
    assert art["primary_degrees"] == [2, 3, 3, 4, 6, 7]
    assert len(art["presentation"]["relations"]) == 6


def test_flipped_bit_is_a_mismatch(runs):
    code, stdout, _ = runs["flipped"]
    assert code == EXIT_MISMATCH
    assert "1.perm_A" in _failing(json.loads(stdout))


def test_corrupt_fixture_is_an_environment_error(runs):
    code, _, stderr = runs["corrupt"]
    assert code == EXIT_ENV
    assert "fixture error" in stderr


def test_missing_fixture(tmp_path, capsys):
    assert main(["verify-paper", "--fixture", str(tmp_path / "none.txt")]) == EXIT_ENV
    assert "cannot read" in capsys.readouterr().err


# -- hilbert ---------------------------------------------------------------------


def test_hilbert_g(capsys):
    assert main(["hilbert", "--group", "G", "--module", "Wprime"]) == EXIT_OK
    out = capsys.readouterr().out
    assert ("= (1 + t^4 + 2*t^5 + t^6 + t^7 + t^8 + 2*t^9 + 2*t^10 + t^11 + t^12 + t^13 + 2*t^14 + t^15 + t^19)"
            "/((1-t^2)*(1-t^3)*(1-t^3)*(1-t^4)*(1-t^6)*(1-t^7))") in out
    assert "coefficients: 1, 0, 1, 2, 3, 4, 8, 10," in out
    assert len(out.splitlines()[-1].split(":")[1].split(",")) == 20


def test_hilbert_d(capsys):
    assert main(["hilbert", "--group", "D"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "= (1 + 2*t^3 + t^6)/((1-t)*(1-t)*(1-t^2)*(1-t^2)*(1-t^2)*(1-t^4))" in out


def test_hilbert_trivial(capsys):
    assert main(["hilbert", "--group", "trivial", "--module", "W", "--terms", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "H(t) = (1)/((1-t)*(1-t)*(1-t)*(1-t)*(1-t)*(1-t)*(1-t))" in out
    assert "coefficients: 1, 7, 28" in out


def test_hilbert_json(tmp_path, capsys):
    out = tmp_path / "h.json"
    assert main(["hilbert", "--group", "D", "--json", "--degree-bound", "6", "--out", str(out)]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc == json.loads(out.read_text())
    assert doc["hsop_form"] == "(1 + 2*t^3 + t^6)/((1-t)*(1-t)*(1-t^2)*(1-t^2)*(1-t^2)*(1-t^4))"
    assert doc["coefficients"] == [1, 2, 6, 12, 25, 44, 77]


@pytest.mark.parametrize("args", [["--group", "S4"], ["--module", "V"]])
def test_hilbert_unknown_choice(args, capsys):
    assert main(["hilbert", *args]) == EXIT_ENV
    assert "unknown" in capsys.readouterr().err


def test_timings_flag_records_milliseconds(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["verify-paper", "--timings", "--out", str(out)])
    doc = json.loads(out.read_text())
    assert all(isinstance(c["ms"], int) for c in doc["checks"])
    assert code == EXIT_MISMATCH
    assert "1.perm_B" in capsys.readouterr().out
