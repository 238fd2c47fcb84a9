from __future__ import annotations

import json

import pytest
from openpyxl import load_workbook

from app.algebra.errors import InputError
from app.commands import COMMANDS
from app.main import main, parse_input
from app.models.job import JobSpec
from app.utils import runs

SMALL = ["--bound", "4"]


def run_cli(capsys, *argv: str) -> tuple[int, dict | None, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return code, report, captured.err


# ── parsing ──────────────────────────────────────────────────────────────


def test_parse_input_keeps_only_given_params():
    job = parse_input("galois --sigma 2,1 --bound 5")
    assert job.command == "galois"
    assert job.params == {"sigma": "2,1"}
    assert job.bound == 5


def test_parse_input_splits_like_a_shell():
    job = parse_input("galois --roots 't; -t' --field t^2+1")
    assert job.params["roots"] == "t; -t"


def test_job_spec_rejects_unknown_catalog_names():
    with pytest.raises(InputError, match="unknown algebra"):
        JobSpec(command="present", params={"A": "octonions"})


def test_abbreviated_flags_are_refused():
    with pytest.raises(InputError):
        parse_input("present --bou 4")


# ── exit codes ───────────────────────────────────────────────────────────


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_every_command_runs_with_defaults(capsys, name):
    code, report, _ = run_cli(capsys, name, *SMALL)
    assert code == 0, report
    assert report["command"] == name
    assert report["status"] in ("ok", "warn")


def test_present_reports_rules_and_sequence(capsys):
    code, report, err = run_cli(capsys, "present", "--A", "quotient_poly(x^2+1)", *SMALL)
    assert code == 0
    assert report["artifacts"]["dimension_sequence"] == [1, 2, 2, 2, 2]
    assert "present" in err


def test_non_galois_root_function_exits_one(capsys):
    code, report, _ = run_cli(
        capsys, "galois", "--p", "x^2-2", "--field", "t^2-2", "--roots", "t; -t", "--sigma", "1,1", *SMALL
    )
    assert code == 1
    assert report["status"] == "violations"


@pytest.mark.parametrize("argv,needle", [
    (["present", "--A", "octonions"], "unknown algebra"),
    (["present", "--A", "quotient_poly(x^2+y)"], "unknown variable"),
    (["present", "--bogus"], "unrecognized"),
    ([], "no command"),
])
def test_malformed_input_exits_two(capsys, argv, needle):
    code, report, err = run_cli(capsys, *argv)
    assert code == 2
    assert report is None
    assert needle in err


def test_caret_points_at_the_bad_character(capsys):
    code, _, err = run_cli(capsys, "present", "--A", "quotient_poly(x^2+y)")
    assert code == 2
    lines = err.splitlines()
    caret = next(i for i, line in enumerate(lines) if line.strip() == "^")
    assert lines[caret].index("^") == lines[caret - 1].index("y")


def test_invalid_bound_is_a_validation_error(capsys):
    code, _, err = run_cli(capsys, "present", "--bound", "0")
    assert code == 2
    assert "bound" in err


def test_engine_failure_becomes_a_violation(capsys):
    code, report, _ = run_cli(capsys, "present", "--bound", "4", "--rule-cap", "1")
    assert code == 1
    checks = [f["check"] for f in report["findings"]]
    assert "CompletionError" in checks


# ── outputs ──────────────────────────────────────────────────────────────


def test_output_file_and_workbook(capsys, tmp_path):
    out = tmp_path / "report.json"
    code = main(["hilbert", "--output", str(out), "--xlsx", *SMALL])
    assert code == 0
    assert capsys.readouterr().out == ""
    report = json.loads(out.read_text())
    assert report["command"] == "hilbert"
    wb = load_workbook(out.with_suffix(".xlsx"))
    assert wb.sheetnames[0] == "Summary"


def test_save_creates_a_run_folder(capsys, runs_dir):
    code = main(["counit", "--save", *SMALL])
    capsys.readouterr()
    assert code == 0
    saved = runs.list_runs(runs_dir)
    assert len(saved) == 1
    assert runs.load_run(saved[0])["command"] == "counit"
    assert (saved[0] / "outputs" / "report.json").exists()
    assert list((saved[0] / "logs").glob("*_run.log"))


# ── presentations through the command line ───────────────────────────────


def test_present_dual_numbers_warns_with_printed_labels(capsys):
    code, report, _ = run_cli(capsys, "present", "--A", "dual_numbers", *SMALL)
    assert code == 0
    assert report["status"] == "warn"
    assert report["artifacts"]["presentation"]["generators"] == ["f0", "f1"]
    warning = next(f for f in report["findings"] if f["check"] == "quoted dual-number relations")
    assert "f0f1 = f1f0 = 0 = f0^2" in warning["detail"]
    assert "g0" not in warning["detail"]


def test_present_conjugation_algebra_checks_its_identities(capsys):
    code, report, _ = run_cli(capsys, "present", "--A", "conjugation_algebra", "--bound", "5")
    assert code == 0
    found = {f["check"]: f["status"] for f in report["findings"]}
    assert found["conjugation identities"] == "ok"


def test_comul_with_a_second_algebra(capsys):
    code, report, _ = run_cli(capsys, "comul", "--second", "dual_numbers", "--A", "dual_numbers", *SMALL)
    assert code == 0, report
    assert report["status"] in ("ok", "warn")


def test_reports_are_byte_identical_across_runs(capsys):
    argv = ["present", "--A", "dual_numbers", *SMALL]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first.encode() == second.encode()
