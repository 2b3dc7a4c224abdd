import csv
import io
import json
import subprocess
import sys

import pytest

from demflag import cli
from demflag.qpoly import USeries, ONE


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def error_of(err):
    obj = json.loads(err)
    assert obj["schema"] == "1"
    return obj["error"]


# -- successful runs ----------------------------------------------------------


def test_mult_level3_example(capsys):
    code, out, _ = run(capsys, "mult", "--partition", "1^8", "--level", "3", "--weight", "2")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "1"
    assert data["multiplicity"] == {str(d): 1 for d in range(8, 16)}
    assert data["text"] == " + ".join(f"q^{d}" for d in range(8, 16))


def test_mult_graph_route(capsys):
    code, out, _ = run(capsys, "mult", "-p", "1^8", "-l", "3", "-r", "2", "--route", "graph")
    data = json.loads(out)
    assert code == 0 and data["entry"] == [8, 0, 2] and data["target"] == [2, 0, 3]
    assert data["multiplicity"] == {str(d): 1 for d in range(8, 16)}


def test_mult_text_and_csv(capsys):
    _, out, _ = run(capsys, "mult", "-p", "1^8", "-l", "3", "-r", "2", "-f", "text")
    assert out.strip().endswith("q^8 + q^9 + q^10 + q^11 + q^12 + q^13 + q^14 + q^15")
    _, out, _ = run(capsys, "mult", "-p", "1^8", "-l", "3", "-r", "2", "-f", "csv", "--no-fast-path")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["r", "degree", "coefficient"]
    assert rows[1:] == [["2", str(d), "1"] for d in range(8, 16)]


def test_table(capsys):
    code, out, _ = run(capsys, "table", "-p", "1^6", "-l", "2")
    data = json.loads(out)
    assert code == 0 and data["level"] == 2 and data["dimension"] == 64
    assert list(data["entries"]) == ["6", "4", "2", "0"]
    _, text, _ = run(capsys, "table", "-p", "1,3", "--normalize", "-l", "3", "-f", "text")
    assert text.splitlines()[0] == "V(1*3) at level 3"


def test_graph_dot_and_json(capsys):
    code, dot, _ = run(capsys, "graph", "-p", "1^8", "-l", "3", "-f", "dot")
    assert code == 0 and dot.startswith('digraph "H_3(1^8)"')
    assert "color=red" in dot and "color=blue" in dot
    _, js, _ = run(capsys, "graph", "-p", "1^8", "-l", "3", "--reachable")
    data = json.loads(js)
    assert data["entry"] == [8, 0, 2]
    assert [8, 0, 2] in data["vertices"]


def test_char(capsys):
    code, out, _ = run(capsys, "char", "-p", "2,1,1")
    data = json.loads(out)
    assert code == 0 and data["dimension"] == 12
    assert list(data["weights"]) == ["4", "2", "0", "-2", "-4"]
    _, text, _ = run(capsys, "char", "-p", "2,1,1", "-f", "text")
    assert text.splitlines()[0] == "ch_gr V(1^2*2)"


def test_series_modes(capsys):
    code, out, _ = run(capsys, "series", "--table", "6")
    assert code == 0 and json.loads(out)["smax"] == 6
    _, out, _ = run(capsys, "series", "--genfn", "0", "--order", "4")
    data = json.loads(out)
    assert data["order"] == 4 and data["coefficients"] == {"0": {"0": 1}, "2": {"2": 1}, "4": {"8": 1}}
    _, out, _ = run(capsys, "series", "--q1", "6", "-f", "csv")
    assert out.splitlines()[0] == "s,r,multiplicity"
    code, out, _ = run(capsys, "series", "--theta-check", "-f", "text")
    assert code == 0 and out == "P0: PASS\nP1: PASS\nP2: PASS\n"
    _, out, _ = run(capsys, "series", "--genfn", "1", "--order", "3", "-f", "text")
    assert out.splitlines()[0] == "P_1(q, u) to order 3"


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--max-weight", "6", "--max-s", "10", "--order", "10")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    names = [s["name"] for s in data["suites"]]
    for needed in ("flags_vs_graph", "level2_closed_vs_recursion", "series_vs_graph",
                   "dimension_sums", "inversion_identity"):
        assert needed in names
    assert all(s["passed"] for s in data["suites"])


def test_verify_parallel_matches_serial(capsys):
    args = ["verify", "--max-weight", "5", "--max-s", "8", "--order", "8"]
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--jobs", "2")
    assert serial == parallel


def test_output_file(tmp_path, capsys):
    target = tmp_path / "m.json"
    code, out, _ = run(capsys, "mult", "-p", "1^8", "-l", "3", "-r", "2", "-o", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["weight"] == 2


# -- failures -------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv,code,kind",
    [
        (["mult", "-p", "1,3", "-l", "3", "-r", "2"], 3, "ParseError"),
        (["table", "-p", "1^x", "-l", "3"], 3, "ParseError"),
        (["char", "-p", "2,0"], 3, "ParseError"),
        (["table", "-p", "3,1", "-l", "2"], 4, "LevelTooSmall"),
        (["mult", "-p", "3,1", "-l", "2", "-r", "2"], 4, "LevelTooSmall"),
        (["mult", "-p", "1", "-l", "1", "-r", "1", "--route", "graph"], 4, "LevelTooSmall"),
        (["graph", "-p", "1^4", "-l", "1"], 4, "LevelTooSmall"),
        (["graph", "-p", "3,1", "-l", "2"], 5, "MaxPartExceedsLevel"),
        (["mult", "-p", "1^8", "-l", "3", "-r", "2", "-f", "dot"], 6, "ConfigError"),
        (["table", "-p", "1^8", "-l", "3", "-f", "dot"], 6, "ConfigError"),
        (["graph", "-p", "1^8", "-l", "3", "-f", "csv"], 6, "ConfigError"),
        (["char", "-p", "1", "-f", "csv"], 6, "ConfigError"),
        (["series", "--table", "-1"], 6, "ConfigError"),
        (["series", "--genfn", "2", "--order", "-1"], 6, "ConfigError"),
        (["verify", "--jobs", "0"], 6, "ConfigError"),
    ],
)
def test_error_paths(capsys, argv, code, kind):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out == ""
    e = error_of(err)
    assert e["type"] == kind and e["exit_code"] == code and e["message"]


def test_unwritable_output(tmp_path, capsys):
    got, _, err = run(capsys, "char", "-p", "1", "-o", str(tmp_path / "missing" / "x.json"))
    assert got == 7
    assert error_of(err)["type"] in ("FileNotFoundError", "OSError")


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["mult", "--level", "3"])
    assert exc.value.code == 2


def test_failed_verification_exits_one(monkeypatch, capsys):
    def broken(bounds):
        yield True, "fine"
        yield False, "deliberately wrong"

    monkeypatch.setitem(cli.SUITES, "broken", broken)
    got, out, _ = run(capsys, "verify", "--suite", "broken", "-f", "text")
    assert got == 1
    assert out == "FAIL broken (2 checks): deliberately wrong\n"


def test_failed_theta_check_exits_one(monkeypatch, capsys):
    wrong = {"P0": (USeries([ONE], 0), USeries([ONE + ONE], 0))}
    monkeypatch.setattr(cli, "theta_identities", lambda order: wrong)
    got, out, _ = run(capsys, "series", "--theta-check")
    assert got == 1 and json.loads(out)["identities"] == {"P0": False}


def test_run_config_validation():
    cfg = cli.RunConfig("graph", "1^8", 3, format="dot")
    status, text = cli.run(cfg)
    assert status == 0 and text.startswith("digraph")
    with pytest.raises(cli.ConfigError):
        cli.run(cli.RunConfig("nope"))
    with pytest.raises(cli.ConfigError):
        cli.run(cli.RunConfig("table", "1", 1, format="xml"))
    with pytest.raises(cli.ConfigError):
        cli.run(cli.RunConfig("mult", "1", 1))


# -- end to end ------------------------------------------------------------------


def _invoke(*argv):
    return subprocess.run([sys.executable, "-m", "demflag", *argv], capture_output=True)


@pytest.mark.parametrize(
    "argv",
    [
        ["mult", "-p", "1^8", "-l", "3", "-r", "2"],
        ["table", "-p", "3,2,1,1", "-l", "4", "-f", "csv"],
        ["graph", "-p", "1^8", "-l", "3", "-f", "dot"],
        ["char", "-p", "1^5", "-f", "text"],
        ["series", "--table", "10"],
        ["verify", "--max-weight", "4", "--max-s", "6", "--order", "6"],
    ],
)
def test_byte_identical_runs(argv):
    a, b = _invoke(*argv), _invoke(*argv)
    assert a.returncode == 0, a.stderr
    assert a.stdout == b.stdout and a.stdout


def test_error_goes_to_stderr_as_json():
    res = _invoke("table", "-p", "3,1", "-l", "2")
    assert res.returncode == 4 and res.stdout == b""
    assert json.loads(res.stderr)["error"]["code"] == "level_too_small"
