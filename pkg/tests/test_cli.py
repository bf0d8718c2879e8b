"""End-to-end CLI behavior: output shape, determinism, exit codes."""

import json

import pytest

from cuspdual.cli import (
    EXIT_FAIL,
    EXIT_OK,
    EXIT_PRECISION,
    EXIT_USAGE,
    main,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_expand_eta_table(capsys):
    code, out, err = run_cli(
        capsys, "expand", "--eta", "eta(1)^24", "--prec", "8")
    assert code == EXIT_OK
    assert "q - 24*q^2 + 252*q^3 - 1472*q^4" in out
    assert "O(q^8)" in out


def test_expand_form_json_schema(capsys):
    code, out, _ = run_cli(
        capsys, "expand", "--space", "2,32", "--form", "g",
        "--prec", "12", "--format", "json",
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["space"] == [2, 32]
    assert doc["series"]["precision"] == 12
    coeffs = dict((e, c) for e, c in doc["series"]["coeffs"])
    assert coeffs[1] == "1"
    assert all(isinstance(c, str) for c in coeffs.values())


def test_expand_family_members(capsys):
    code, out, _ = run_cli(
        capsys, "expand", "--space", "2,27", "--form", "phi:4",
        "--prec", "6", "--format", "json",
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    coeffs = dict((e, c) for e, c in doc["series"]["coeffs"])
    assert coeffs[-4] == "1"
    code, out, _ = run_cli(
        capsys, "expand", "--space", "4,9", "--form", "F:0",
        "--prec", "6", "--format", "json",
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    coeffs = dict((e, c) for e, c in doc["series"]["coeffs"])
    assert coeffs[0] == "-1"


def test_expand_output_is_deterministic(capsys):
    args = ("expand", "--space", "2,49", "--form", "phi3", "--prec", "9",
            "--format", "json")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_expand_usage_errors(capsys):
    code, _, err = run_cli(capsys, "expand", "--space", "2,27")
    assert code == EXIT_USAGE
    assert "error:" in err
    code, _, err = run_cli(
        capsys, "expand", "--eta", "eta(3)", "--form", "g")
    assert code == EXIT_USAGE
    code, _, err = run_cli(
        capsys, "expand", "--space", "2,11", "--form", "g")
    assert code == EXIT_USAGE
    code, _, err = run_cli(
        capsys, "expand", "--space", "2,27", "--form", "phi:x")
    assert code == EXIT_USAGE
    code, _, err = run_cli(capsys, "expand", "--eta", "eta(3)^^2")
    assert code == EXIT_USAGE


def test_expand_fractional_eta_order_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "expand", "--eta", "eta(1)^2")
    assert code == EXIT_USAGE
    assert "error:" in err


def test_duality_table_and_exit(capsys):
    code, out, _ = run_cli(
        capsys, "duality", "--space", "2,36", "--max-n", "8", "--max-m", "6")
    assert code == EXIT_OK
    assert "verified" in out
    assert "0 mismatches" in out
    assert "\n  mismatch" not in out  # no per-pair mismatch lines


def test_duality_json(capsys):
    code, out, _ = run_cli(
        capsys, "duality", "--space", "4,9", "--max-n", "6", "--max-m", "5",
        "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["report"]["status"] == "verified"
    assert doc["report"]["claim"] == "duality"


def test_scan_table_contains_five_spaces(capsys):
    code, out, _ = run_cli(capsys, "scan", "--nmax", "50", "--kmax", "10")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].split() == ["N", "k", "dim", "cm"]
    rows = {tuple(line.split()[:2]) for line in lines[1:]}
    assert ("27", "2") in rows
    assert ("9", "4") in rows
    assert ("11", "2") in rows


def test_scan_json_marks_cm(capsys):
    code, out, _ = run_cli(
        capsys, "scan", "--nmax", "40", "--kmax", "6", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    by_pair = {(r["k"], r["N"]): r for r in doc["rows"]}
    assert by_pair[(2, 27)]["cm"] is True
    assert by_pair[(2, 11)]["cm"] is None
    assert all(r["dim"] == 1 for r in doc["rows"])


def test_verify_command_verified(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "thm1a", "--space", "2,32", "--p", "3", "--m", "1")
    assert code == EXIT_OK
    assert "thm1a 2,32: verified" in out


def test_verify_command_json(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "cong2", "--space", "2,27", "--pmax", "40",
        "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["report"]["status"] == "verified"
    json.dumps(doc)


def test_verify_missing_parameter_is_usage(capsys):
    code, _, err = run_cli(capsys, "verify", "thm1a", "--space", "2,32")
    assert code == EXIT_USAGE
    assert "--p" in err


def test_verify_invalid_prime_is_usage(capsys):
    code, _, err = run_cli(
        capsys, "verify", "thm1a", "--space", "2,32", "--p", "5", "--m", "0")
    assert code == EXIT_USAGE
    assert "inert" in err


def test_verify_insufficient_precision_exit_code(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "thm1b", "--space", "2,27", "--p", "5", "--m", "1",
        "--max-precision", "100")
    assert code == EXIT_PRECISION
    assert "insufficient_precision" in out


def test_verify_constant_term_samples(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "constant_term", "--space", "2,49",
        "--samples", "1,2;2,3;3,4")
    assert code == EXIT_OK
    code, _, err = run_cli(
        capsys, "verify", "constant_term", "--space", "2,49")
    assert code == EXIT_USAGE


def test_selftest_single_criterion(capsys):
    code, out, err = run_cli(capsys, "selftest", "--only", "1")
    assert code == EXIT_OK
    lines = [l for l in out.splitlines() if l.strip()]
    assert len(lines) == 1
    assert lines[0].startswith("PASS  1 ")
    assert "[" in err  # timing goes to stderr only


def test_selftest_timing_never_on_stdout(capsys):
    _, out, _ = run_cli(capsys, "selftest", "--only", "1")
    assert "s]" not in out
