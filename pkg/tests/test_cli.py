"""
Tests for the artinlab command-line interface.
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner

from artinlab.cli import cli

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def runner(clean_env):
    return CliRunner()


def _run_csv(runner, tmp_path, *args):
    out = tmp_path / "result.csv"
    result = runner.invoke(cli, ["--format", "csv", "--output", str(out), *args])
    assert result.exit_code == 0, result.output
    return out.read_text()


def _run_json(runner, tmp_path, *args):
    out = tmp_path / "result.json"
    result = runner.invoke(cli, ["--output", str(out), *args])
    assert result.exit_code == 0, result.output
    return json.loads(out.read_text())


def test_constant_artin(runner, tmp_path):
    payload = _run_json(runner, tmp_path, "constant", "--g", "2")
    assert payload["command"] == "constant"
    row = payload["results"][0]
    assert row["approx"] == pytest.approx(0.37396, abs=1e-5)
    assert 0 < row["error_bound"] < 1e-5
    assert row["exact_num"] is None
    assert payload["metadata"]["prime_table_limit"] == 10**6
    assert payload["metadata"]["elapsed_ms"] >= 0


def test_constant_exact_values(runner, tmp_path):
    row = _run_json(runner, tmp_path, "constant", "--which", "A1", "--g", "5")["results"][0]
    assert (row["exact_num"], row["exact_den"]) == ("20", "19")
    row = _run_json(runner, tmp_path, "constant", "--which", "tilde-A1", "--g", "-15", "--x", "1e6")["results"][0]
    assert (row["exact_num"], row["exact_den"]) == ("2", "3")


def test_constant_errors_exit_2(runner):
    assert runner.invoke(cli, ["constant", "--g", "4"]).exit_code == 2
    assert runner.invoke(cli, ["constant", "--which", "sigma"]).exit_code == 2
    assert runner.invoke(cli, ["constant", "--which", "zeta"]).exit_code == 2


def test_unknown_subcommand_and_flag(runner):
    result = runner.invoke(cli, ["frobnicate"])
    assert result.exit_code == 2
    assert "Usage" in result.output
    assert runner.invoke(cli, ["pg", "--g", "2", "--bogus"]).exit_code == 2


def test_pg_proven_infinite(runner, tmp_path):
    row = _run_json(runner, tmp_path, "pg", "--g", "4")["results"][0]
    assert row == {"g": 4, "kind": "proven-infinite", "p": None, "search_bound": 10**6}


def test_pg_almost(runner, tmp_path):
    row = _run_json(runner, tmp_path, "pg", "--g", "4", "--almost")["results"][0]
    assert (row["kind"], row["p"]) == ("found", 3)
    assert runner.invoke(cli, ["pg", "--g", "0", "--almost"]).exit_code == 2


def test_delta_csv(runner):
    result = runner.invoke(cli, ["delta", "--max-prime", "5", "--format", "csv"])
    assert result.exit_code == 0
    assert result.stdout == (
        "p,delta_p_num,delta_p_den,partial_sum_num,partial_sum_den,p_delta_p_float\n"
        "2,1,2,1,2,1.0\n"
        "3,1,6,2,3,0.5\n"
        "5,2,15,4,5,0.6666666666666666\n"
    )


def test_csv_and_json_carry_identical_content(runner, tmp_path):
    csv_out = _run_csv(runner, tmp_path, "delta", "--max-prime", "50")
    header, *lines = csv_out.strip().split("\n")
    columns = header.split(",")
    results = _run_json(runner, tmp_path, "delta", "--max-prime", "50")["results"]
    assert len(results) == len(lines) == 15
    for line, row in zip(lines, results):
        assert line.split(",") == [str(row[c]) if not isinstance(row[c], float) else repr(row[c]) for c in columns]


def test_pg_range_csv_and_threads(runner, tmp_path):
    args = ["pg-range", "--g-min", "-20", "--g-max", "20", "--search-bound", "100"]
    single = _run_csv(runner, tmp_path, *args)
    threaded = _run_csv(runner, tmp_path, "--threads", "2", *args)
    assert single == threaded
    lines = single.strip().split("\n")
    assert lines[0] == "g,kind,p,search_bound"
    assert "0,proven-infinite,,100" in lines
    assert "2,found,3,100" in lines


def test_strict_exhaustion_exit_3(runner, tmp_path):
    args = ["pg", "--g", "10", "--search-bound", "5"]
    assert runner.invoke(cli, ["--strict-exhaustion", *args]).exit_code == 3
    payload = _run_json(runner, tmp_path, *args)
    assert payload["results"][0]["kind"] == "bound-exhausted"
    assert any("exhausted" in w for w in payload["metadata"]["warnings"])


def test_strict_exhaustion_from_env(runner, clean_env):
    clean_env.setenv("ARTINLAB_STRICT_EXHAUSTION", "true")
    result = runner.invoke(cli, ["pg-range", "--g-min", "8", "--g-max", "12", "--search-bound", "5"])
    assert result.exit_code == 3


def test_almost_range_through_zero_passes_strict_mode(runner, tmp_path):
    args = ["pg-range", "--g-min", "-5", "--g-max", "5", "--almost", "--search-bound", "100"]
    payload = _run_json(runner, tmp_path, "--strict-exhaustion", *args)
    rows = {row["g"]: row for row in payload["results"]}
    assert (rows[0]["kind"], rows[0]["p"]) == ("undefined", None)
    assert all(row["kind"] == "found" for g, row in rows.items() if g)
    assert payload["metadata"]["warnings"] == []


def test_count_pi(runner, tmp_path):
    assert _run_json(runner, tmp_path, "count-pi", "--x", "100", "--g", "2")["results"][0]["count"] == 12
    row = _run_json(runner, tmp_path, "count-pi", "--x", "50", "--g", "4", "--variant", "nd", "--d", "2")["results"][0]
    assert row["count"] == 14
    assert runner.invoke(cli, ["count-pi", "--x", "50", "--g", "4", "--variant", "nd"]).exit_code == 2


def test_gp(runner, tmp_path):
    assert _run_json(runner, tmp_path, "gp", "--p", "41")["results"][0] == {"p": 41, "g_p": 6}
    assert runner.invoke(cli, ["gp", "--p", "42"]).exit_code == 2


def test_mean_predicted(runner, tmp_path):
    row = _run_json(runner, tmp_path, "mean-predicted", "--max-prime", "1000")["results"][0]
    assert row["heuristic"] is True
    assert row["exact_num"] is None
    assert 4 < row["approx"] < 6


def test_sieve_bounds(runner, tmp_path):
    row = _run_json(runner, tmp_path, "sieve-bound", "large", "--x", "1000")["results"][0]
    assert row["N"] == 2001
    assert row["bound"] > 0
    row = _run_json(runner, tmp_path, "sieve-bound", "larger", "--x", "1000", "--theta", "0.5")["results"][0]
    assert row["N"] == 2001
    assert row["available"] == (row["bound"] is not None)


def test_count_s(runner, tmp_path):
    row = _run_json(runner, tmp_path, "count-s", "--x", "1000", "--g", "3")["results"][0]
    assert (row["tilde_A0_num"], row["tilde_A0_den"]) == ("3", "8")
    assert row["count"] > 0


def test_exp_dist_csv(runner, tmp_path):
    lines = _run_csv(runner, tmp_path, "exp", "dist", "--x", "1000", "--max-p", "7").strip().split("\n")
    assert lines[0] == "p,count,empirical,delta_p,abs_error"
    assert lines[1] == "2,1000,0.5,0.5,0.0"
    assert len(lines) == 5


def test_exp_sweep_csv(runner, tmp_path):
    args = ["exp", "sweep", "--g", "2", "--g", "5", "--x", "10000", "--prime-limit", "100000"]
    lines = _run_csv(runner, tmp_path, *args).strip().split("\n")
    assert lines[0] == "g,x,pi_xg,A_g,pi_x,ratio,error_scale"
    assert lines[1].startswith("2,10000,")
    assert len(lines) == 3


def test_exp_mean_and_vaughan(runner, tmp_path):
    payload = _run_json(
        runner, tmp_path, "--seed", "5", "exp", "mean", "--x", "300", "--search-bound", "10000",
        "--max-prime", "1000", "--spot-check", "0.1",
    )
    row = payload["results"][0]
    assert row["experiment_id"] == "mean-pg"
    assert row["spot_mismatches"] == []
    assert "empirical_num" in row
    rows = _run_json(runner, tmp_path, "exp", "vaughan", "--k", "1", "--k", "3", "--prime-limit", "10000")["results"]
    assert [r["r_k"] for r in rows] == [2, 5]


def test_exp_tamed_almost(runner, tmp_path):
    payload = _run_json(
        runner, tmp_path, "exp", "tamed", "--x", "300", "--almost", "--epsilon", "0.5", "--max-prime", "1000"
    )
    assert payload["params"]["almost"] is True
    assert payload["params"]["epsilon"] == 0.5
    row = payload["results"][0]
    assert row["experiment_id"] == "tamed-mean-star"
    assert row["cap"] == pytest.approx(300**0.5)
    assert runner.invoke(cli, ["exp", "tamed", "--x", "300", "--almost", "--epsilon", "1.5"]).exit_code == 2


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "artinlab" in result.output


def test_module_help_smoke():
    result = subprocess.run(
        [sys.executable, "-m", "artinlab", "--help"], capture_output=True, text=True, cwd=REPO_ROOT
    )
    assert result.returncode == 0, result.stderr
    assert "pg-range" in result.stdout
    assert "sieve-bound" in result.stdout


def test_output_flags_before_or_after_subcommand(runner, tmp_path):
    before = tmp_path / "before.csv"
    after = tmp_path / "after.csv"
    assert runner.invoke(cli, ["--format", "csv", "-o", str(before), "gp", "--p", "7"]).exit_code == 0
    assert runner.invoke(cli, ["gp", "--p", "7", "--format", "csv", "--output", str(after)]).exit_code == 0
    assert before.read_text() == after.read_text() == "p,g_p\n7,3\n"
