import io
import json
import subprocess
import sys

import pytest

from qeulerian.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    return code, json.loads(text)


def test_poly_examples():
    assert run("poly", "maj-exc", "--n", "2") == (0, "1 + q*t\n")
    assert run("poly", "maj-exc", "--n", "0") == (0, "1\n")
    assert run("poly", "aid-des", "--n", "3")[1] == run("poly", "maj-exc", "--n", "3")[1]


def test_poly_csv():
    code, text = run("poly", "maj-exc", "--n", "2", "--csv")
    assert code == 0
    lines = text.strip().splitlines()
    assert len(lines) == 3
    assert lines[0].endswith("coefficient")


def test_poly_guard(capsys):
    code, text = run("poly", "maj-exc", "--n", "12")
    assert code == 2 and text == ""
    assert "--force" in capsys.readouterr().err


def test_verify_examples():
    assert run("verify", "thm1-1", "--N", "6")[0] == 0
    code, data = run_json("verify", "thm4-1", "--n", "5")
    assert code == 0 and data["pass"] is True
    assert [r["n_or_N"] for r in data["reports"]] == [1, 2, 3, 4, 5]


def test_verify_small_word_suites():
    for suite in ("thm2-2", "prop2-5", "cor2-4", "thm2-6", "rec9", "cor2-3", "thm2-1"):
        assert run("verify", suite, "--n", "3")[0] == 0, suite


def test_verify_homology_suites():
    assert run("verify", "thm3-3", "--n", "3")[0] == 0
    assert run("verify", "eq13-reversed", "--n", "3", "--q", "2")[0] == 0


def test_exit_code_follows_report():
    code, data = run_json("verify", "eq13", "--n", "2", "--q", "2")
    assert code == (0 if data["pass"] else 1)
    assert all(("first_mismatch" in r) != r["pass"] for r in data["reports"])


def test_unknown_suite_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "thm9-9"])
    assert exc.value.code == 2


def test_bad_q_is_usage_error():
    assert run("verify", "eq13", "--n", "2", "--q", "5")[0] == 2
    assert run("homology", "bnq", "--n", "2", "--j", "1")[0] == 2


def test_homology_examples():
    assert run("homology", "bn", "--n", "3", "--j", "2")[1].endswith("[0, 4]\n")
    code, text = run("homology", "bn", "--n", "1", "--j", "1")
    assert code == 0 and "-1..-1: [1]" in text
    code, data = run_json("homology", "bnq", "--n", "2", "--q", "3", "--j", "1")
    assert data["betti"] == {"-1": 0, "0": 3}


def test_homology_guard():
    assert run("homology", "bn", "--n", "6", "--j", "1")[0] == 2
    assert run("homology", "bn", "--n", "3", "--j", "4")[0] == 2


def test_stats():
    code, data = run_json("stats", "531462")
    assert code == 0
    assert data["Exd"] == [1, 4] and data["maj"] == 8 and data["exc"] == 3
    assert run("stats", "1123")[0] == 2


def _strip_time(text):
    data = json.loads(text)
    data.pop("wall_time")
    return data


def test_json_is_deterministic():
    argv = ["verify", "thm1-2", "--n", "5", "--json"]
    first = run(*argv)[1]
    second = run(*argv)[1]
    assert _strip_time(first) == _strip_time(second)
    a, b = json.loads(first), json.loads(second)
    a["wall_time"] = b["wall_time"] = 0
    assert json.dumps(a, indent=2, sort_keys=True) == json.dumps(b, indent=2, sort_keys=True)
    assert a["schema"] == 1


def test_threads_do_not_change_output():
    one = _strip_time(run("poly", "fix-refined", "--n", "7", "--json", "--threads", "1")[1])
    two = _strip_time(run("poly", "fix-refined", "--n", "7", "--json", "--threads", "2")[1])
    one["parameters"].pop("threads", None)
    two["parameters"].pop("threads", None)
    assert one == two


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qeulerian", "poly", "maj-exc", "--n", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "1 + 2*q*t + q^2*t + q^3*t + q^2*t^2\n"
