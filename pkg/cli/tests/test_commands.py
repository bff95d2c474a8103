import json
import re

import pytest
from click.testing import CliRunner

from cli import suites
from cli.main import cli
from cli.serializers.scan import CSV_COLUMNS
from common.choices import VerifySuite
from common.exceptions import JetDomainError
from crtool import settings
from scanner import services


@pytest.fixture
def runner():
    return CliRunner()


def test_help_lists_commands(runner):
    result = runner.invoke(cli, ["--help"])
    assert result.exit_code == 0
    for command in ("check", "scan", "verify", "find-umbilics", "scaling"):
        assert command in result.output


def test_check_flat_tube_at_zero_i(runner):
    result = runner.invoke(cli, ["check", "--family", "flat-tube", "--eps", "1", "--point", "0,0,0,1"])
    assert result.exit_code == 0, result.output
    assert "flag: nonumbilic" in result.stdout
    assert "det_b:" in result.stdout
    assert "rho: 1\n" in result.stdout


def test_check_sphere_is_candidate(runner):
    result = runner.invoke(cli, ["check", "--family", "sphere", "--r", "1", "--point", "0,0,1,0"])
    assert result.exit_code == 0, result.output
    assert "flag: candidate" in result.stdout
    assert "det_b" not in result.stdout


@pytest.mark.parametrize("point", ["0,0,1", "a,b,c,d", "0,,0,1", ""])
def test_check_malformed_point(runner, point):
    result = runner.invoke(cli, ["check", "--family", "flat-tube", "--eps", "1", "--point", point])
    assert result.exit_code == 2


def test_check_domain_error(runner):
    result = runner.invoke(cli, ["check", "--family", "log-tube", "--eps", "1", "--point", "0,0,1,0"])
    assert result.exit_code == 2
    assert "log-tube" in result.output


def test_check_missing_family_values(runner):
    result = runner.invoke(cli, ["check", "--family", "ellipsoid", "--point", "1,0,0,0"])
    assert result.exit_code == 2
    result = runner.invoke(cli, ["check", "--family", "flat-tube", "--eps", "-1", "--point", "0,0,0,1"])
    assert result.exit_code == 2


def test_cartan_mu_is_opt_in(runner, monkeypatch):
    args = ["check", "--family", "cartan-mu", "--alpha", "2", "--point", "0.5,0,0,0"]
    monkeypatch.setattr(settings, "ENABLE_CARTAN_MU", False)
    result = runner.invoke(cli, args)
    assert result.exit_code == 2
    assert "disabled" in result.output
    monkeypatch.setattr(settings, "ENABLE_CARTAN_MU", True)
    assert runner.invoke(cli, args).exit_code == 0


def test_verify_cartan_mu_suite(runner, monkeypatch):
    monkeypatch.setattr(settings, "ENABLE_CARTAN_MU", False)
    assert runner.invoke(cli, ["verify", "--suite", "cartan-mu"]).exit_code == 2
    monkeypatch.setattr(settings, "ENABLE_CARTAN_MU", True)
    result = runner.invoke(cli, ["verify", "--suite", "cartan-mu", "--threads", "1"])
    assert result.exit_code == 0, result.output
    assert "2/2 claims passed" in result.stdout


def scan_args(out, *extra):
    return [
        "scan",
        "--family",
        "log-tube",
        "--eps",
        "0.5",
        "--count",
        "30",
        "--seed",
        "7",
        "--threads",
        "1",
        "--out",
        str(out),
        *extra,
    ]


def test_scan_writes_csv(runner, tmp_path):
    out = tmp_path / "scan.csv"
    result = runner.invoke(cli, scan_args(out))
    assert result.exit_code == 0, result.output
    lines = out.read_bytes().split(b"\n")
    assert lines[0].decode() == ",".join(CSV_COLUMNS)
    assert lines[-1] == b""
    rows = [line.decode().split(",") for line in lines[1:-1]]
    assert len(rows) == 30
    assert all(row[0] == "log-tube" and row[-1] == "nonumbilic" for row in rows)
    assert all(row[3] == "" and row[4] == "" for row in rows)
    assert b"\r" not in out.read_bytes()


def test_scan_is_byte_identical(runner, tmp_path):
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    assert runner.invoke(cli, scan_args(first)).exit_code == 0
    assert runner.invoke(cli, scan_args(second)).exit_code == 0
    assert first.read_bytes() == second.read_bytes()


def test_scan_output_is_independent_of_threads(runner, tmp_path):
    serial, parallel = tmp_path / "serial.csv", tmp_path / "parallel.csv"
    assert runner.invoke(cli, scan_args(serial)).exit_code == 0
    assert runner.invoke(cli, scan_args(parallel, "--threads", "2")).exit_code == 0
    assert serial.read_bytes() == parallel.read_bytes()


def test_scan_json_to_stdout(runner):
    result = runner.invoke(
        cli, ["scan", "--family", "sphere", "--count", "5", "--threads", "1", "--format", "json"]
    )
    assert result.exit_code == 0, result.output
    rows = json.loads(result.stdout)
    assert len(rows) == 5
    assert all(tuple(row) == CSV_COLUMNS for row in rows)
    assert all(row["flag"] == "candidate" and row["eps"] is None for row in rows)


def test_scan_threads_from_environment(runner, tmp_path):
    out = tmp_path / "scan.csv"
    args = [arg for arg in scan_args(out) if arg not in ("--threads", "1")]
    result = runner.invoke(cli, args, env={"CRTOOL_THREADS": "2"})
    assert result.exit_code == 0, result.output
    assert len(out.read_text().splitlines()) == 31


def test_scan_rejects_bad_count(runner):
    result = runner.invoke(cli, ["scan", "--family", "sphere", "--count", "0"])
    assert result.exit_code == 2


def test_verify_unknown_suite(runner):
    assert runner.invoke(cli, ["verify", "--suite", "everything"]).exit_code == 2


def test_verify_sphere_suite(runner):
    result = runner.invoke(cli, ["verify", "--suite", "sphere", "--threads", "1"])
    assert result.exit_code == 0, result.output
    assert "PASS sphere" in result.stdout
    assert "FAIL" not in result.stdout


def test_verify_reduction_suite(runner):
    result = runner.invoke(cli, ["verify", "--suite", "reduction"])
    assert result.exit_code == 0, result.output
    assert "2/2 claims passed" in result.stdout


def test_verify_scaling_suite_prints_slope(runner):
    result = runner.invoke(cli, ["verify", "--suite", "scaling", "--tol", "1e-6", "--threads", "1"])
    assert result.exit_code == 0, result.output
    slope = float(re.search(r"slope (\d+\.\d+)", result.stdout).group(1))
    assert slope == pytest.approx(14, abs=1e-6)


@pytest.mark.slow
def test_verify_all(runner):
    result = runner.invoke(cli, ["verify", "--suite", "all"])
    assert result.exit_code == 0, result.output


def test_find_umbilics_on_flat_tube_is_empty(runner):
    result = runner.invoke(
        cli, ["find-umbilics", "--family", "flat-tube", "--eps", "1", "--starts", "2", "--threads", "1"]
    )
    assert result.exit_code == 0, result.output
    assert result.stdout == "family,re_z,im_z,re_w,im_w,norm_resid,start\n"


@pytest.mark.slow
def test_find_umbilics_on_ellipsoid(runner):
    result = runner.invoke(
        cli,
        ["find-umbilics", "--family", "ellipsoid", "--params", "1,2,1,3", "--starts", "200", "--seed", "42"],
    )
    assert result.exit_code == 0, result.output
    assert len(result.stdout.splitlines()) >= 2


def test_scaling_command(runner):
    result = runner.invoke(
        cli, ["scaling", "--family", "flat-tube", "--eps-list", "0.25,0.5,1,2,4", "--count", "5", "--threads", "1"]
    )
    assert result.exit_code == 0, result.output
    slope = float(next(line for line in result.stdout.splitlines() if line.startswith("slope:")).split()[1])
    assert slope == pytest.approx(14, abs=1e-6)
    assert "valid: true" in result.stdout


@pytest.mark.parametrize("eps_list", ["", "1,1,2", "1,2", "1,x,2"])
def test_scaling_rejects_bad_eps_lists(runner, eps_list):
    result = runner.invoke(cli, ["scaling", "--eps-list", eps_list, "--threads", "1"])
    assert result.exit_code == 2


def test_verify_exits_1_on_a_failed_claim(runner, monkeypatch):
    monkeypatch.setattr(suites, "SPREAD_TOLERANCE", -1.0)
    result = runner.invoke(cli, ["verify", "--suite", "scaling", "--threads", "1"])
    assert result.exit_code == 1
    assert "FAIL scaling: per-eps spread" in result.stdout
    assert "1/2 claims passed" in result.stdout


def test_scan_exits_1_on_poisoned_records(runner, monkeypatch):
    def failing(family, point, degree=None):
        raise JetDomainError("reciprocal needs a non-zero constant term")

    monkeypatch.setattr(services, "a3_matrix", failing)
    result = runner.invoke(cli, ["scan", "--family", "sphere", "--count", "3", "--threads", "1"])
    assert result.exit_code == 1
    rows = result.stdout.splitlines()[1:]
    assert len(rows) == 3
    assert all(row.endswith(",poisoned") for row in rows)


def test_scan_exits_1_when_projection_fails(runner, monkeypatch):
    monkeypatch.setattr(settings, "SAMPLE_RESIDUAL_TOLERANCE", -1.0)
    monkeypatch.setattr(settings, "PROJECTION_TOLERANCE", -1.0)
    result = runner.invoke(cli, ["scan", "--family", "sphere", "--count", "3", "--threads", "1"])
    assert result.exit_code == 1
    assert "did not converge" in result.stderr
    assert result.stdout == ""


def test_scaling_exits_1_on_an_invalid_fit(runner, monkeypatch):
    monkeypatch.setattr(settings, "SCALING_SPREAD_TOLERANCE", -1.0)
    result = runner.invoke(
        cli, ["scaling", "--eps-list", "0.5,1,2", "--count", "3", "--threads", "1"]
    )
    assert result.exit_code == 1
    assert "valid: false" in result.stdout


def test_all_skips_cartan_mu_unless_enabled(monkeypatch):
    monkeypatch.setattr(settings, "ENABLE_CARTAN_MU", False)
    assert VerifySuite.CARTAN_MU not in suites.selected_suites("all")
    monkeypatch.setattr(settings, "ENABLE_CARTAN_MU", True)
    assert suites.selected_suites("all")[-1] == VerifySuite.CARTAN_MU
