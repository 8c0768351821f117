"""Command-line interface: exit codes, output formats, error paths."""

import csv
import io
import json
import shutil
import subprocess

import pytest

from homgenus.cli import main
import homgenus.verification


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_no_arguments_is_usage_error(capsys):
    code, _, err = run(capsys)
    assert code == 1
    assert err


def test_space_list_json(capsys):
    code, out, _ = run(capsys, "space", "list", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "homgenus/1"
    assert doc["command"] == "space list"
    assert "timing_ms" in doc
    assert doc["threads"] == 1
    names = [row["name"] for row in doc["result"]["spaces"]]
    assert "S6" in names and "CP3" in names


def test_space_list_csv_parses(capsys):
    code, out, _ = run(capsys, "space", "list", "--csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][0] == "name"
    assert len(rows) > 10


def test_space_info_plain(capsys):
    code, out, _ = run(capsys, "space", "info", "--space", "S6", "--plain")
    assert code == 0
    assert "S6" in out


def test_space_info_unknown_name(capsys):
    code, _, err = run(capsys, "space", "info", "--space", "Mars")
    assert code == 1
    assert "unknown space" in err
    # the message should tell the user what IS available
    assert "S6" in err


def test_genus_class_json(capsys):
    code, out, _ = run(capsys, "genus", "class", "--space", "S6", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["class"] == "2*a1^3 - 6*a1*a2 + 6*a3"
    assert doc["result"]["lower_terms_vanish"] is True


def test_genus_class_stable_preset(capsys):
    code, out, _ = run(
        capsys, "genus", "class", "--space", "CP3", "--structure", "cp3-null", "--json"
    )
    assert code == 0
    assert json.loads(out)["result"]["class"] == "0"


def test_genus_s_number(capsys):
    code, out, _ = run(
        capsys,
        "genus", "s", "--space", "U4-flag", "--omega", "1,0,0,0,1,0", "--json",
    )
    assert code == 0
    assert json.loads(out)["result"]["value"] == 80


def test_genus_s_requires_omega(capsys):
    code, _, err = run(capsys, "genus", "s", "--space", "CP1")
    assert code == 1
    assert "--omega" in err


def test_genus_chi_y_plain(capsys):
    code, out, _ = run(
        capsys, "genus", "chi-y", "--space", "CP3", "--structure", "cp3-e11-minus"
    )
    assert code == 0
    assert "y^2 - y" in out


def test_genus_signature(capsys):
    code, out, _ = run(capsys, "genus", "signature", "--space", "G42", "--json")
    assert code == 0
    assert json.loads(out)["result"]["value"] == 2


def test_nongeneric_ordering_is_a_math_error(capsys):
    code, _, err = run(
        capsys, "genus", "chi-y", "--space", "U3-flag", "--ordering", "1,1,1"
    )
    assert code == 2
    assert "not generic" in err


def test_ordering_length_checked(capsys):
    code, _, err = run(
        capsys, "genus", "chi-y", "--space", "U3-flag", "--ordering", "1,2"
    )
    assert code == 1


def test_rigidity_eval(capsys):
    code, out, _ = run(
        capsys,
        "rigidity", "eval", "--space", "G42",
        "--series", "u/(1+u^2)", "--at", "3,2,1,0", "--json",
    )
    assert code == 0
    assert json.loads(out)["result"]["value"] == 80


def test_rigidity_eval_pole_is_math_error(capsys):
    code, _, err = run(
        capsys,
        "rigidity", "eval", "--space", "CP1", "--series", "u/(1+u^2)", "--at", "1,1",
    )
    assert code == 2
    assert "pairs to zero" in err


def test_rigidity_bad_series_is_usage_error(capsys):
    code, _, err = run(
        capsys,
        "rigidity", "eval", "--space", "CP1", "--series", "0.5*u", "--at", "2,1",
    )
    assert code == 1


def test_rigidity_independence(capsys):
    code, out, _ = run(
        capsys,
        "rigidity", "independence", "--space", "CP3",
        "--series", "u/(1+u^2)", "--samples", "3", "--json",
    )
    assert code == 0
    assert json.loads(out)["result"]["independent"] is True


def test_rigidity_certify(capsys):
    code, out, _ = run(
        capsys, "rigidity", "certify", "--space", "U3-flag", "--series", "u/(1+u^2)", "--json"
    )
    assert code == 0
    assert json.loads(out)["result"]["verdict"] == "certified zero"


def test_su_find(capsys):
    code, out, _ = run(capsys, "su", "find", "--space", "U3-flag", "--json")
    assert code == 0
    found = json.loads(out)["result"]["su_structures"]
    assert sorted(found) == ["+-+", "-+-"]


def test_fibration_check(capsys):
    code, out, _ = run(
        capsys, "fibration", "check", "--space", "CP2", "--cutoff", "3", "--json"
    )
    assert code == 0
    assert json.loads(out)["result"]["match"] is True


def test_hp_obstruction(capsys):
    code, out, _ = run(capsys, "hp", "obstruction", "--json")
    assert code == 0
    assert json.loads(out)["result"]["verdict"] == "no valid assignment"


def test_hp_restricted(capsys):
    code, out, _ = run(capsys, "hp", "restricted", "--which", "cp-odd", "--json")
    assert code == 0
    assert json.loads(out)["result"]["coefficients"]["1"] == "16*a3"


def test_space_as_json_literal(capsys):
    doc = json.dumps(
        {
            "group": "U(2)",
            "subgroup_roots": [],
            "label": "riemann-sphere",
        }
    )
    code, out, _ = run(capsys, "genus", "class", "--space", doc, "--json")
    assert code == 0
    assert json.loads(out)["result"]["class"] == "2*a1"


def test_reproduce_single_check(capsys):
    code, out, _ = run(capsys, "reproduce", "--id", "1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["all_passed"] is True
    assert [r["id"] for r in doc["result"]["rows"]] == [1]


def test_reproduce_failing_check_exits_3(capsys, monkeypatch):
    monkeypatch.setattr(
        homgenus.verification,
        "CHECKS",
        [{"id": 99, "group": 9, "name": "always sad", "fn": lambda: (1, 0, False)}],
    )
    code, out, _ = run(capsys, "reproduce", "--id", "99", "--json")
    assert code == 3
    assert json.loads(out)["result"]["all_passed"] is False


def test_reproduce_crashing_check_is_a_failure_not_a_crash(capsys, monkeypatch):
    def boom():
        raise RuntimeError("kaput")

    monkeypatch.setattr(
        homgenus.verification,
        "CHECKS",
        [{"id": 99, "group": 9, "name": "boom", "fn": boom}],
    )
    code, out, _ = run(capsys, "reproduce", "--id", "99", "--json")
    assert code == 3
    row = json.loads(out)["result"]["rows"][0]
    assert not row["passed"]
    assert "kaput" in row["computed"]


def test_threads_env_validated(capsys, monkeypatch):
    monkeypatch.setenv("HOMGENUS_THREADS", "zero")
    code, _, err = run(capsys, "space", "list")
    assert code == 1
    assert "HOMGENUS_THREADS" in err
    monkeypatch.setenv("HOMGENUS_THREADS", "0")
    code, _, err = run(capsys, "space", "list")
    assert code == 1


def test_console_script_installed():
    exe = shutil.which("homgenus")
    assert exe, "console script should be on PATH after pip install"
    proc = subprocess.run(
        [exe, "genus", "todd", "--space", "CP2", "--json"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["value"] == 1
