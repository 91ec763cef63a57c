import subprocess
import sys

import pytest

from randenum import (
    CheckpointSchedule,
    UniformSampler,
    enumerate_improved,
    expected_draws,
    failure_probability,
    tail_probability,
)


def run_cli(*args, stdin: bytes = b"", cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "randenum", *args],
        input=stdin, capture_output=True, cwd=cwd,
    )


def test_bound_examples():
    r = run_cli("bound", "--m", "2", "--epsilon", "0.01", "--M", "10")
    assert r.returncode == 0
    assert r.stdout == b"16\n"
    r = run_cli("bound", "--m", "2", "--epsilon", "0.01")
    assert r.stdout == b"11\n"


def test_probability_outputs_match_library():
    r = run_cli("tail", "--m", "1", "--tau", "1", "--n", "5")
    assert r.returncode == 0 and r.stdout == b"0\n"

    r = run_cli("tail", "--m", "7", "--tau", "30", "--n", "20")
    assert r.stdout.decode().strip() == f"{tail_probability(7, 30, 20):.12g}"

    r = run_cli("expect", "--m", "2", "--n", "2")
    assert r.stdout == b"3\n"
    r = run_cli("expect", "--m", "33", "--n", "50")
    assert r.stdout.decode().strip() == f"{expected_draws(33, 50):.12g}"

    r = run_cli("failure", "--n", "1", "--checkpoints", "1,2", "--epsilon", "0.01")
    assert r.stdout == b"0\n"
    r = run_cli("failure", "--n", "50", "--checkpoints",
                "2,4,8,16,32,64,128,256,512,1024", "--epsilon", "0.01")
    schedule = CheckpointSchedule(tuple(2 ** k for k in range(1, 11)), 0.01)
    assert r.stdout.decode().strip() == f"{failure_probability(50, schedule):.12g}"


def test_enumerate_simulated_run():
    r = run_cli("enumerate", "--n", "50", "--seed", "7")
    assert r.returncode == 0
    out = enumerate_improved(UniformSampler(50, 7),
                             CheckpointSchedule(tuple(2 ** k for k in range(1, 11)), 0.01))
    expected = (f"collected={len(out.collected)} total_samples={out.total_samples} "
                f"stop_checkpoint={out.stop_label()}\n")
    assert r.stdout.decode() == expected
    assert b"seed=7" in r.stderr  # resolved configuration is echoed


def test_enumerate_repeat_is_byte_identical():
    first = run_cli("enumerate", "--n", "80", "--seed", "123")
    second = run_cli("enumerate", "--n", "80", "--seed", "123")
    assert first.stdout == second.stdout
    assert first.stderr == second.stderr

    base1 = run_cli("enumerate", "--n", "30", "--seed", "5", "--baseline")
    base2 = run_cli("enumerate", "--n", "30", "--seed", "5", "--baseline")
    assert base1.stdout == base2.stdout


def test_enumerate_stdin_stream():
    tokens = b"".join([b"a\n", b"b\n"] * 20)
    r = run_cli("enumerate", "--stdin", "--checkpoints", "2,4", "--epsilon", "0.01",
                stdin=tokens)
    assert r.returncode == 0
    assert r.stdout == b"collected=2 total_samples=27 stop_checkpoint=2\n"


def test_enumerate_stdin_exhaustion_is_runtime_error():
    r = run_cli("enumerate", "--stdin", "--checkpoints", "2,4", "--epsilon", "0.01",
                stdin=b"a\nb\na\n")
    assert r.returncode == 2
    assert r.stdout == b"collected=2 total_samples=3 stop_checkpoint=stream-exhausted\n"


def test_enumerate_stdin_malformed_token():
    r = run_cli("enumerate", "--stdin", "--checkpoints", "2,4", "--epsilon", "0.01",
                stdin=b"a\n\nb\n")
    assert r.returncode == 2
    assert b"token 2" in r.stderr


def test_usage_errors_exit_one():
    r = run_cli("enumerate", "--stdin", "--baseline", stdin=b"a\n")
    assert r.returncode == 1
    r = run_cli("enumerate", "--seed", "3")
    assert r.returncode == 1 and b"--n" in r.stderr
    r = run_cli("bound", "--m", "2", "--epsilon", "0.5")
    assert r.returncode == 1 and b"epsilon" in r.stderr
    r = run_cli("bound", "--m", "2")
    assert r.returncode == 1
    r = run_cli("tail", "--m", "3", "--tau", "5", "--n", "2")
    assert r.returncode == 1 and b"m" in r.stderr
    r = run_cli("frobnicate")
    assert r.returncode == 1
    r = run_cli("bound", "--m", "2", "--epsilon", "0.01", "--frobnicate")
    assert r.returncode == 1


def test_help_exits_zero():
    r = run_cli("--help")
    assert r.returncode == 0
    assert b"enumerate" in r.stdout


def test_fig2_csv_endpoint(tmp_path):
    out = tmp_path / "fig2.csv"
    r = run_cli("fig2", "--out", str(out))
    assert r.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "m,n,tau,log10_rho"
    last = lines[-1].split(",")
    assert last[0] == "100" and last[3] == "0.0"


def test_experiment_csvs_are_deterministic(tmp_path):
    args = ("fig1", "--runs", "50", "--seed", "42", "--sizes", "20,50",
            "--out", str(tmp_path / "a.csv"))
    first = run_cli(*args)
    first_bytes = (tmp_path / "a.csv").read_bytes()
    second = run_cli(*args)
    second_bytes = (tmp_path / "a.csv").read_bytes()
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout and first.stderr == second.stderr
    assert first_bytes == second_bytes
    header = first_bytes.decode().splitlines()[0]
    assert header == ("n,k,theoretical_samples,mean_samples_success,std_samples_success,"
                      "failure_rate,failure_stderr,exact_failure,runs,seed")


def test_compare_csv(tmp_path):
    out = tmp_path / "compare.csv"
    r = run_cli("compare", "--runs", "40", "--seed", "9", "--sizes", "1,20",
                "--out", str(out))
    assert r.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,mean_diff,diff_stderr,predicted_diff,runs,seed"
    first_case = lines[1].split(",")
    assert first_case[0] == "1" and first_case[1] == "0.0" and first_case[3] == "0.0"


def test_unwritable_output_is_runtime_error(tmp_path):
    r = run_cli("fig2", "--out", str(tmp_path / "missing" / "fig2.csv"))
    assert r.returncode == 2
