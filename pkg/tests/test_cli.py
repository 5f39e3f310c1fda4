import math
import subprocess
import sys

import pytest

from conftest import COUNTER
from ctclen.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_decode_nomerge_bucket2_longest(capsys):
    code, out, _ = run(capsys, "decode", COUNTER, "--mode", "length-control", "--variant", "nomerge",
                       "--bucket-size", "2", "--budget", "4", "--select", "longest")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "am I"
    assert lines[1] == "length: 4"
    assert math.exp(float(lines[2].split(": ")[1])) == pytest.approx(0.04)


def test_decode_nomerge_bucket2_best(capsys):
    code, out, _ = run(capsys, "decode", COUNTER, "--variant", "nomerge", "--bucket-size", "2", "--budget", "4")
    assert out.splitlines()[0] == "am"


def test_decode_budget_zero(capsys):
    code, out, _ = run(capsys, "decode", COUNTER, "--budget", "0")
    assert code == 0
    assert out.splitlines()[:2] == ["", "length: 0"]


def test_decode_greedy_and_exact(capsys):
    assert run(capsys, "decode", COUNTER, "--mode", "greedy")[1].splitlines()[0] == "am"
    assert run(capsys, "decode", COUNTER, "--mode", "exact", "--budget", "4")[1].splitlines()[0] == "I am"
    out = run(capsys, "decode", COUNTER, "--mode", "greedy-truncate", "--variant", "nomerge", "--budget", "3")[1]
    assert out.splitlines()[:2] == ["am", "length: 2"]
    out = run(capsys, "decode", COUNTER, "--mode", "greedy-truncate", "--variant", "nomerge", "--budget", "4",
              "--truncate", "char")[1]
    assert out.splitlines()[:2] == ["am a", "length: 4"]


def test_strict_budget_infeasible_warns(capsys):
    code, out, err = run(capsys, "decode", COUNTER, "--budget", "0", "--strict-budget")
    assert code == 0 and out.splitlines()[0] == ""
    assert "budget" in err


def test_usage_and_input_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["decode"])
    assert exc.value.code == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("nonsense\n")
    assert run(capsys, "decode", bad, "--budget", "3")[0] == 2
    assert run(capsys, "decode", tmp_path / "missing", "--budget", "3")[0] == 2


def test_gen_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "gen", "--slots", "2", "--vocab-size", "4", "--seed", "9", "-o", a)[0] == 0
    run(capsys, "gen", "--slots", "2", "--vocab-size", "4", "--seed", "9", "-o", b)
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run(capsys, "decode", a, "--budget", "20")
    assert code == 0


def test_bench_rows(tmp_path, capsys):
    argv = ["bench", "--alphas", "1", "--budgets", "30,50,75", "--instances", "2", "--slots", "12",
            "--vocab-size", "10", "--no-time"]
    code, out, err = run(capsys, *argv)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "alpha,budget,slots,vocab,top_k,mean_time_s,mean_score,mean_gap,gap_count"
    assert [l.split(",")[1] for l in lines[1:]] == ["30", "50", "75"]
    assert run(capsys, *argv)[1] == out


def test_bench_oracle_gaps_zero(capsys):
    code, out, _ = run(capsys, "bench", "--alphas", "1", "--budgets", "6", "--variant", "nomerge", "--instances", "5",
                       "--slots", "4", "--vocab-size", "5", "--top-k", "4", "--oracle-max-size", "1000", "--no-time",
                       "--repeats", "1")
    row = out.splitlines()[1].split(",")
    assert float(row[7]) == 0.0 and row[8] == "5"


def test_score(tmp_path, capsys):
    c, r = tmp_path / "c", tmp_path / "r"
    c.write_text("a b c\n\n")
    r.write_text("a b d\nx y\n")
    code, out, err = run(capsys, "score", c, r)
    assert code == 0
    assert out.splitlines()[1].startswith("1,0.666667,0.500000,0.666667")
    assert out.splitlines()[2] == "2,0.000000,0.000000,0.000000"
    assert "empty" in err
    r.write_text("a b c\n\n")
    assert run(capsys, "score", c, r, "--mode", "recall")[1].splitlines()[1] == "1,1.000000,1.000000,1.000000"
    r.write_text("only one\n")
    assert run(capsys, "score", c, r)[0] == 2


def test_ctc_score(tmp_path, capsys):
    f = tmp_path / "two.txt"
    f.write_text(
        "#ctclen-matrix v1 text\nblank <b>\nvocab 2\na\n<b>\nslots 2\n"
        f"{math.log(0.6)!r} {math.log(0.4)!r}\n{math.log(0.3)!r} {math.log(0.7)!r}\n"
    )
    code, out, _ = run(capsys, "ctc-score", f, "--target", "a")
    assert code == 0 and float(out) == pytest.approx(math.log(0.72))
    assert float(run(capsys, "ctc-score", f, "--target", "")[1]) == pytest.approx(math.log(0.4 * 0.7))
    assert run(capsys, "ctc-score", f, "--target", "a a a")[1].strip() == "-inf"
    code, _, err = run(capsys, "ctc-score", f, "--target", "zebra")
    assert code == 2 and "zebra" in err


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "ctclen.cli", "decode", str(COUNTER), "--mode", "greedy"],
                         capture_output=True, text=True, check=True).stdout
    assert out.splitlines()[0] == "am"
