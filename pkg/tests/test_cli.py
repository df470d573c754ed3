"""Front-end behavior: records, formats, exit codes, scan and script modes."""

import csv
import json
import subprocess
import sys

import pytest

from ffb.cli import run


def run_lines(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    lines = [ln for ln in out.out.splitlines() if ln]
    return code, lines, out.err


def run_json(capsys, argv):
    code, lines, err = run_lines(capsys, argv)
    return code, [json.loads(ln) for ln in lines], err


COUNT_ARGS = ["count", "--p", "5", "--a", "interval:1..4", "--b", "interval:1..4",
              "--c", "interval:1..4", "--d", "interval:1..4", "--lambda", "1"]


def test_count_example(capsys):
    code, recs, _ = run_json(capsys, COUNT_ARGS)
    assert code == 0
    (rec,) = recs
    assert rec["n"] == 48
    assert rec["n_charform"] == 48
    assert rec["field"] == {"p": 5, "k": 1, "q": 5, "modulus": [0, 1]}
    assert rec["sets"]["a"] == "interval:1..4"
    assert rec["lambda"] == 1
    assert "elapsed_us" in rec


def test_no_timing_strips_the_clock(capsys):
    code, recs, _ = run_json(capsys, COUNT_ARGS + ["--no-timing"])
    assert code == 0
    assert "elapsed_us" not in recs[0]


def test_output_is_deterministic(capsys):
    _, first, _ = run_lines(capsys, COUNT_ARGS + ["--no-timing"])
    _, second, _ = run_lines(capsys, COUNT_ARGS + ["--no-timing"])
    assert first == second


def test_lambda_sweeps(capsys):
    base = COUNT_ARGS[:-2] + ["--no-timing"]
    code, recs, _ = run_json(capsys, base + ["--lambda", "all"])
    assert code == 0
    assert [r["lambda"] for r in recs] == [1, 2, 3, 4]
    code, recs, _ = run_json(capsys, base + ["--lambda", "all0"])
    assert [r["lambda"] for r in recs] == [0, 1, 2, 3, 4]
    assert recs[0]["n"] == 64


def test_bounds_subcommand(capsys):
    code, recs, _ = run_json(capsys, [
        "bounds", "--p", "7", "--a", "random:3", "--b", "random:3",
        "--lambda", "2", "--seed", "1"])
    assert code == 0
    (rec,) = recs
    assert rec["vinogradov_w"]["holds"] is True
    assert rec["vinogradov_v"]["holds"] is True
    assert 0 <= rec["w"] <= rec["vinogradov_w"]["bound"]
    assert len(rec["karatsuba"]) == 8
    assert "cauchy" not in rec  # no --c/--d given


def test_bounds_with_error_term(capsys):
    code, recs, _ = run_json(capsys, [
        "bounds", "--p", "7", "--a", "random:3", "--b", "random:3",
        "--c", "random:4", "--d", "random:2", "--lambda", "2", "--seed", "3"])
    assert code == 0
    assert recs[0]["cauchy"]["holds"] is True


def test_count_additive_subcommand(capsys):
    code, recs, _ = run_json(capsys, [
        "countT", "--p", "5", "--a", "interval:0..4", "--b", "interval:0..4",
        "--c", "interval:0..4", "--d", "interval:0..4"])
    assert code == 0
    (rec,) = recs
    assert rec["t"] == 125
    assert rec["t_charform"] == 125
    assert "lambda" not in rec


def test_countn_pairs(capsys):
    code, recs, _ = run_json(capsys, [
        "countn", "--p", "7", "--a", "explicit:2", "--b", "explicit:3",
        "--lambda", "6"])
    assert code == 0
    assert recs[0]["n"] == 1 and recs[0]["n_pairs"] == 1

    code, recs, _ = run_json(capsys, [
        "countn", "--p", "5", "--a", "interval:1..4", "--b", "interval:1..4",
        "--a", "interval:1..4", "--b", "interval:1..4", "--lambda", "1"])
    assert code == 0
    assert recs[0]["n"] == 48 and recs[0]["n_pairs"] == 2

    assert run(["countn", "--p", "5", "--a", "explicit:1",
                "--lambda", "1"]) == 2  # unpaired --a
    capsys.readouterr()


def test_det2_subcommand(capsys):
    code, recs, _ = run_json(capsys, [
        "det2", "--p", "5", "--a", "interval:0..4", "--b", "interval:0..4",
        "--c", "interval:0..4", "--d", "interval:0..4", "--lambda", "1"])
    assert code == 0
    assert recs[0]["n"] == 120


def test_exceptional_subcommand(capsys):
    code, recs, _ = run_json(capsys, [
        "exceptional", "--p", "5", "--f", "explicit:0", "--g", "explicit:0",
        "--h", "interval:0..4"])
    assert code == 0
    (rec,) = recs
    assert rec["e_size"] == 4
    assert rec["sarkozy_ok"] is True
    assert rec["ratio"] == pytest.approx(4 * 1 * 1 * 5 / 125)


def test_sumprod_subcommand(capsys):
    code, recs, _ = run_json(capsys, [
        "sumprod", "--p", "5", "--x", "explicit:1,2", "--y", "explicit:1"])
    assert code == 0
    (rec,) = recs
    assert rec["count"] == 5 and rec["lower"] == 4 and rec["ok"] is True
    assert rec["u_size"] == 2 and rec["v_size"] == 2
    assert rec["c0_ratio"] == pytest.approx(2 * 2 / min(5 * 2, (2 * 1) ** 2 / 5))

    code, recs, _ = run_json(capsys, [
        "sumprod", "--p", "3", "--k", "2", "--x", "random:3", "--y", "random:2"])
    assert code == 0
    assert recs[0]["c0_ratio"] is None  # stated for prime fields only


def test_solvability_subcommand(capsys):
    code, recs, _ = run_json(capsys, [
        "solvability", "--p", "7", "--a", "interval:1..6", "--b", "interval:1..6",
        "--c", "interval:1..6", "--d", "interval:1..6", "--lambda", "1"])
    assert code == 0
    (rec,) = recs
    assert rec["fires"] is True and rec["n"] > 0
    assert rec["empirical_delta"] is None  # infinite gap serialised as null


def test_csv_format(capsys):
    code, lines, _ = run_lines(capsys, COUNT_ARGS + ["--format", "csv", "--no-timing"])
    assert code == 0
    header, row = (next(csv.reader([ln])) for ln in lines)
    assert "field.p" in header and "n" in header and "sets.a" in header
    assert len(row) == len(header)
    record = dict(zip(header, row))
    assert record["n"] == "48"
    assert record["field.modulus"] == "[0, 1]"
    _, again, _ = run_lines(capsys, COUNT_ARGS + ["--format", "csv", "--no-timing"])
    assert lines == again


def test_usage_errors_exit_2(capsys):
    cases = [
        ["count", "--p", "4"] + COUNT_ARGS[3:],                 # composite p
        COUNT_ARGS[:-2] + ["--lambda", "maybe"],                # bad lambda
        COUNT_ARGS[:-2] + ["--lambda", "9"],                    # out of range
        ["count", "--p", "5", "--a", "bogus", "--b", "explicit:1",
         "--c", "explicit:1", "--d", "explicit:1", "--lambda", "1"],
        ["bounds", "--p", "7", "--a", "subgroup:5", "--b", "explicit:1",
         "--lambda", "1"],                                      # 5 does not divide 6
        ["bounds", "--p", "7", "--a", "explicit:1", "--b", "explicit:1",
         "--c", "explicit:1", "--lambda", "1"],                 # --c without --d
        [],                                                     # no subcommand
        ["count", "--sideways", "5"],                           # unknown flag
        ["solvability", "--p", "7", "--a", "explicit:1", "--b", "explicit:1",
         "--c", "explicit:1", "--d", "explicit:1", "--lambda", "0"],
    ]
    for argv in cases:
        assert run(argv) == 2, argv
        capsys.readouterr()


def test_not_prime_reported_on_stderr(capsys):
    code = run(["count", "--p", "4"] + COUNT_ARGS[3:])
    assert code == 2
    assert "NotPrime" in capsys.readouterr().err


def test_scan_orders_by_index(capsys):
    code, recs, _ = run_json(capsys, [
        "scan", "--p", "5", "--op", "count", "--a", "random:3", "--b", "random:3",
        "--c", "random:3", "--d", "random:3", "--lambda", "all", "--seeds", "3",
        "--no-timing"])
    assert code == 0
    assert [r["index"] for r in recs] == list(range(12))
    assert [r["lambda"] for r in recs[:4]] == [1, 2, 3, 4]
    assert len({r["seed"] for r in recs}) == 3
    assert all(r["n"] == r["n_charform"] for r in recs)


def test_scan_rejects_bad_worker_counts(capsys):
    assert run(["scan", "--p", "5", "--op", "sumprod", "--x", "random:2",
                "--y", "random:2", "--seeds", "0"]) == 2
    capsys.readouterr()


def test_script_replay(tmp_path, capsys):
    script = tmp_path / "batch.txt"
    script.write_text(
        "# two instances and a blank line\n"
        "\n"
        "count --p 5 --a interval:1..4 --b interval:1..4 --c interval:1..4"
        " --d interval:1..4 --lambda 1 --no-timing\n"
        "sumprod --p 5 --x explicit:1,2 --y explicit:1 --no-timing\n"
    )
    code, recs, _ = run_json(capsys, ["--script", str(script)])
    assert code == 0
    assert recs[0]["n"] == 48
    assert recs[1]["count"] == 5

    bad = tmp_path / "bad.txt"
    bad.write_text("count --p 4 --a explicit:1 --b explicit:1 --c explicit:1"
                   " --d explicit:1 --lambda 1\n")
    assert run(["--script", str(bad)]) == 2
    capsys.readouterr()
    assert run(["--script", str(tmp_path / "missing.txt")]) == 2
    capsys.readouterr()


def test_selftest_small_grid(capsys):
    code, lines, _ = run_lines(capsys, ["selftest", "--q-max", "5", "--tuples", "2"])
    assert code == 0
    assert lines[-1] == "selftest: 8/8 criteria passed"
    assert all(ln.startswith("PASS ") for ln in lines[:-1])


def test_broken_pipe_exits_without_traceback():
    # ffb scan ... | head must not dump a stack trace when head closes the pipe
    proc = subprocess.Popen(
        [sys.executable, "-m", "ffb", "scan", "--p", "101", "--op", "count",
         "--a", "random:8", "--b", "random:8", "--c", "random:8",
         "--d", "random:8", "--lambda", "all", "--seeds", "20", "--no-timing"],
        stdout=subprocess.PIPE, stderr=subprocess.PIPE)
    first = proc.stdout.readline()
    proc.stdout.close()
    err = proc.stderr.read()
    code = proc.wait(timeout=120)
    assert first.startswith(b'{"op": "count"')
    assert code == 1
    assert b"Traceback" not in err
