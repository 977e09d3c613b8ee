import json

import pytest

from modalbench.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, build_report, main
from modalbench.lattice import diamond_m3, powerset_lattice, to_edge_list


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_counts(capsys):
    code, out, _ = run(capsys, "enumerate", "--json", "--no-time")
    assert code == EXIT_OK
    report = json.loads(out)
    counts = [c["witness"] for c in report["checks"]]
    assert [c["NO"] for c in counts] == [1, 2, 16]
    assert [c["TNO"] for c in counts] == [1, 2, 16]
    assert [c["weaver"] for c in counts] == [1, 2, 16]
    assert report["summary"] == {"pass": 3, "fail": 0, "unknown": 0, "total": 3}
    assert report["time_ms"] is None


def test_report_shape(capsys):
    _, out, _ = run(capsys, "enumerate", "1", "--json")
    report = json.loads(out)
    assert set(report) == {"command", "checks", "summary", "time_ms"}
    assert set(report["checks"][0]) == {"name", "anchor", "inputs", "verdict", "witness"}
    assert isinstance(report["time_ms"], float)


def test_no_time_output_is_deterministic(capsys):
    first = run(capsys, "certify", "beta", "--json", "--no-time")[1]
    second = run(capsys, "certify", "beta", "--json", "--no-time")[1]
    assert first == second
    assert json.loads(first)["summary"]["fail"] == 0


def test_human_output(capsys):
    code, out, _ = run(capsys, "enumerate", "2")
    assert code == EXIT_OK
    assert out.startswith("PASS") and "1 passed, 0 failed" in out


@pytest.mark.parametrize("argv", [
    ["enumerate", "--max-m", "4"],
    ["enumerate", "3"],
    ["enumerate", "-1"],
    ["certify", "gamma"],
    ["bogus"],
    [],
    ["property-suite", "--truncation", "0"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_help_exits_ok(capsys):
    assert run(capsys, "--help")[0] == EXIT_OK


def test_zero_cases_is_vacuous(capsys):
    code, out, _ = run(capsys, "property-suite", "--cases", "0", "--json", "--no-time")
    assert code == EXIT_OK
    assert all(c["verdict"] == "pass" for c in json.loads(out)["checks"])


def test_analyze_boolean(tmp_path, capsys):
    f = tmp_path / "p.txt"
    f.write_text(to_edge_list(powerset_lattice(2)))
    code, out, _ = run(capsys, "analyze", str(f))
    assert code == EXIT_OK
    v = json.loads(out)
    assert v["boolean"] and v["distributive_lattice"] and v["size"] == 4


def test_analyze_m3(tmp_path, capsys):
    f = tmp_path / "m3.txt"
    f.write_text(to_edge_list(diamond_m3()))
    code, out, _ = run(capsys, "analyze", str(f))
    assert code == EXIT_OK
    v = json.loads(out)
    assert v["lattice"] and not v["distributive_lattice"]


def test_analyze_errors(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert run(capsys, "analyze", str(empty))[0] == EXIT_USAGE
    bad = tmp_path / "bad.txt"
    bad.write_text("0 <= 1\n1 => 2\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == EXIT_USAGE and "line 2" in err
    assert run(capsys, "analyze", str(tmp_path / "missing.txt"))[0] == EXIT_USAGE


def test_failures_give_exit_one(capsys, monkeypatch):
    import modalbench.cli as cli

    bad = cli._record("broken", "anchor", {}, "fail", {"why": "forced"})
    monkeypatch.setitem(cli.COMMANDS, "enumerate", lambda args: [bad])
    code, out, _ = run(capsys, "enumerate")
    assert code == EXIT_FAIL
    assert "failure in broken" in out


def test_build_report_round_trips():
    r = build_report(["x"], [{"name": "n", "anchor": "a", "inputs": {"t": (1, 2)}, "verdict": "pass",
                              "witness": None}], None)
    assert json.loads(json.dumps(r)) == r
