import json
import subprocess
import sys

import pytest

from coxcat.cli import SCHEMA, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_betti(capsys):
    code, out, _ = run(capsys, "cohomology", "betti", "--type", "B", "--rank", "2")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == SCHEMA and data["betti"] == [1, 2, 3]


def test_enumerate_nc_counts(capsys):
    code, out, _ = run(capsys, "enumerate", "nc", "--type", "A", "--rank", "3", "--coxeter", "2,1,3")
    assert code == 0
    assert len(json.loads(out)["clust_plus"]) == 14


def test_verify_exits_zero_on_success(capsys):
    code, out, _ = run(capsys, "verify", "cluster", "--type", "B", "--rank", "2")
    assert code == 0 and json.loads(out)["ok"] is True


@pytest.mark.parametrize("argv", [
    ["enumerate", "nc", "--type", "A", "--rank", "9"],
    ["charts", "sample", "--type", "A", "--rank", "2", "--cell", "321", "--prime", "100"],
    ["enumerate", "nc", "--bogus"],
    ["enumerate", "nc", "--type", "Q", "--rank", "2"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2


def test_usage_error_is_json(capsys):
    code, _, err = run(capsys, "charts", "show", "--type", "A", "--rank", "2", "--cell", "3,3,1")
    assert code == 2
    assert "error" in json.loads(err)


def test_output_is_deterministic(capsys):
    argv = ["charts", "sample", "--type", "B", "--rank", "2", "--cell", "2,-1", "--seed", "3", "--format", "json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b and json.loads(a)["schema"] == SCHEMA


def test_chart_text(capsys):
    code, out, _ = run(capsys, "charts", "show", "--type", "A", "--rank", "2", "--cell", "321")
    assert code == 0
    assert out.splitlines()[1].split() == ["1", "*", "*", "1"]


def test_exports(capsys, tmp_path):
    code, out, _ = run(capsys, "export", "complex", "--type", "A", "--rank", "2", "--format", "off")
    assert code == 0 and out.startswith("OFF")
    target = tmp_path / "h.dot"
    code, _, _ = run(capsys, "export", "hasse", "--type", "A", "--rank", "2", "--format", "dot", "--out", str(target))
    assert code == 0 and target.read_text().strip().endswith("}")


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "coxcat.cli", "cohomology", "betti-full",
                          "--type", "B", "--rank", "2"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["betti"] == [1, 2, 2, 2, 1]


def test_failed_check_exits_one(capsys, monkeypatch):
    import coxcat.cli as cli
    monkeypatch.setattr(cli, "_suite_cluster", lambda c, cfg: (1, [{"reason": "forced"}]))
    code, out, _ = run(capsys, "verify", "cluster", "--type", "A", "--rank", "2")
    assert code == 1
    assert json.loads(out)["suites"]["cluster"]["failure_count"] == 1
