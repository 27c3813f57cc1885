import csv
import io
import os
import subprocess
import sys

import pytest

from toader_bounds import cli, elliptic


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_usage(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(list(argv))
    out, err = capsys.readouterr()
    return exc.value.code, out, err


@pytest.mark.parametrize("argv,want", [
    (["--fn", "E", "--r", "0"], "1.570796326794897"),
    (["--fn", "T", "--a", "3", "--b", "3"], "3"),
    (["--fn", "C", "--a", "2", "--b", "1"], "1.666666666666667"),
    (["--fn", "A", "--a", "2", "--b", "1"], "1.5"),
    (["--fn", "K", "--r", "0"], "1.570796326794897"),
    (["--fn", "Mp", "--a", "4", "--b", "1", "--p", "0"], "2"),
    (["--fn", "J", "--a", "2", "--b", "1", "--x", "1"], "1.666666666666667"),
    (["--fn", "combination", "--a", "3", "--b", "1", "--alpha", "1"], "2"),
])
def test_eval_examples(capsys, argv, want):
    code, out, _ = run(capsys, "eval", *argv)
    assert code == 0 and out == want + "\n"


def test_eval_domain_error(capsys):
    code, out, err = run(capsys, "eval", "--fn", "K", "--r", "1")
    assert code == 1 and out == "" and "pole" in err


@pytest.mark.parametrize("argv", [["eval", "--fn", "K"], ["eval", "--fn", "Q", "--r", "0"],
                                  ["eval", "--fn", "Mp", "--a", "1", "--b", "2"],
                                  ["eval", "--fn", "E", "--r", "abc"], [], ["frobnicate"]])
def test_eval_usage_errors(capsys, argv):
    code, _, err = run_usage(capsys, *argv)
    assert code == 2 and "error" in err


def test_table_shape_and_values(capsys):
    code, out, _ = run(capsys, "table", "--envelopes", "corollary33",
                       "--r-min", "0.25", "--r-max", "0.75", "--steps", "3")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["r", "E", "corollary33_lo", "corollary33_hi"]
    assert len(rows) == 4 and all(len(row) == 4 for row in rows)
    for row in rows[1:]:
        lo, e, hi = float(row[2]), float(row[1]), float(row[3])
        assert lo < e < hi
    assert "\r" not in out


def test_table_e_column_matches_eval(capsys):
    _, out, _ = run(capsys, "table", "--envelopes", "chu34,guoqi35", "--r-min", "0.1",
                    "--r-max", "0.9", "--steps", "7")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["r", "E", "chu34_lo", "chu34_hi", "guoqi35_lo", "guoqi35_hi"]
    for row in rows[1:]:
        _, ev, _ = run(capsys, "eval", "--fn", "E", "--r", row[0])
        assert ev.strip() == row[1]


def test_table_is_deterministic(capsys):
    args = ("table", "--envelopes", "yinqi36", "--steps", "25")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_table_errors(capsys):
    assert run_usage(capsys, "table", "--envelopes", "")[0] == 2
    assert run_usage(capsys, "table", "--envelopes", "nope")[0] == 2
    assert run_usage(capsys, "table", "--steps", "0")[0] == 2
    assert run(capsys, "table", "--r-min", "0.5", "--r-max", "0.2")[0] == 1


@pytest.mark.parametrize("suite", ["theorem31", "dominance", "landen"])
def test_verify_examples(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--samples", "1000", "--seed", "7")
    assert code == 0
    assert f"PASS {suite}: " in out and " 0 failures" in out


def test_verify_reproducible(capsys):
    args = ("verify", "--suite", "meanorder", "--samples", "500", "--seed", "3")
    a = run(capsys, *args)[1].splitlines()[0]
    b = run(capsys, *args)[1].splitlines()[0]
    strip = lambda s: s.rsplit(",", 1)[0]  # drop elapsed time
    assert strip(a) == strip(b)


def test_verify_unknown_suite(capsys):
    assert run_usage(capsys, "verify", "--suite", "nope")[0] == 2


def test_verify_failure_exit_code(capsys, monkeypatch):
    from toader_bounds import verify
    bad = verify.VerificationReport("x", 1, 1, -1.0, (0.5,), 0.0)
    monkeypatch.setattr(verify, "run", lambda *a, **k: [bad])
    code, out, _ = run(capsys, "verify", "--suite", "landen")
    assert code == 1 and "FAIL x" in out


def test_sharpness_report(capsys):
    code, out, _ = run(capsys, "sharpness", "--alpha", "0.5", "--tol", "1e-6")
    assert code == 0
    devs = [float(line.rsplit("=", 1)[1]) for line in out.splitlines() if "|dev|" in line]
    assert len(devs) == 2 and max(devs) <= 1e-6


def test_sharpness_target_and_witnesses(capsys):
    code, out, _ = run(capsys, "sharpness", "--alpha", "0.75", "--perturb", "0.01")
    assert code == 0
    assert "target (1-alpha)/4        = 0.0625" in out
    assert out.count("witness") == 2 and "none" not in out


@pytest.mark.parametrize("alpha", ["0", "1", "1.5", "-0.2"])
def test_sharpness_alpha_usage_error(capsys, alpha):
    assert run_usage(capsys, "sharpness", "--alpha", alpha)[0] == 2


def test_threads_flag(capsys):
    assert run_usage(capsys, "--threads", "0", "verify")[0] == 2
    code, out, _ = run(capsys, "--threads", "3", "verify", "--suite", "landen")
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "toader_bounds", "eval", "--fn", "E", "--r", "0"],
                          capture_output=True, text=True, env={**os.environ, "LC_ALL": "de_DE.UTF-8"})
    assert proc.returncode == 0
    assert proc.stdout == "1.570796326794897\n"
