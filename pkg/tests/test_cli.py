import json
import subprocess
import sys

import pytest

from cmherm.cli import main
from cmherm.suites import HERMITE_M1_TABLE


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_hermite1d_latex(capsys):
    code, out, _ = run(["compute", "hermite1d", "--m", "1", "--n-max", "10", "--format", "latex"], capsys)
    assert code == 0
    lines = out.strip().split(",\n")
    assert len(lines) == 11
    assert lines[4] == "H_{4}^{(1)} = 3(x^4 - 2x^2 - 1)"
    assert lines[9] == "H_{9}^{(1)} = 8x^3(x^6 - 27x^4 + 189x^2 - 315)"
    assert lines[10] == "H_{10}^{(1)} = 9(x^{10} - 35x^8 + 350x^6 - 1050x^4 + 525x^2 + 105)"


def test_compute_ba(capsys):
    code, out, _ = run(["compute", "ba", "--n", "2", "--m", "1"], capsys)
    assert code == 0
    assert json.loads(out)["entries"][0]["phi00"] == "-2"


def test_compute_qbasis_writes_files(tmp_path, capsys):
    target = tmp_path / "q.json"
    code, _, _ = run(["compute", "qbasis", "--n", "2", "--m", "1", "--deg", "3", "--out", str(target), "--cache-dir", str(tmp_path / "c")], capsys)
    assert code == 0
    entries = json.loads(target.read_text())["entries"]
    assert sum(e["role"] == "basis" for e in entries) == 1 + 1 + 2 + 3
    assert len(list((tmp_path / "c").iterdir())) == 4


@pytest.mark.parametrize("fmt", ["json", "csv", "latex"])
@pytest.mark.parametrize(
    "family,extra",
    [
        ("hermite-multi", ["--n", "2", "--m", "1", "--deg", "3"]),
        ("jack", ["--n", "3", "--m", "2", "--deg", "3"]),
        ("gould-hopper", ["--l-max", "2", "--tau", "2/3", "--n-max", "6"]),
        ("deformed-newton", ["--k", "1/2", "--deg", "3"]),
    ],
)
def test_compute_families(family, extra, fmt, capsys):
    code, out, _ = run(["compute", family, "--format", fmt] + extra, capsys)
    assert code == 0 and out


def test_verify_exit_codes(capsys):
    code, out, _ = run(["verify", "jordan", "--l-max", "4"], capsys)
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(["verify", "intertwine", "--n", "2", "--m", "1", "--deg", "4"], capsys)
    assert code == 0
    code, _, _ = run(["verify", "no-such-suite"], capsys)
    assert code == 2
    code, _, err = run(["compute", "ba", "--m", "1/2"], capsys)
    assert code == 2 and "error" in err
    code, _, _ = run(["compute", "ba", "--m", "x/y"], capsys)
    assert code == 2


def test_verify_failure_exit_code(monkeypatch, capsys):
    from cmherm import suites

    monkeypatch.setitem(HERMITE_M1_TABLE, 2, (1, 0, [1, 2]))
    code, out, _ = run(["verify", "hermite1d-golden"], capsys)
    assert code == 1
    report = json.loads(out)
    bad = [c for c in report["checks"] if not c["passed"]]
    assert [c["name"] for c in bad] == ["H_2^(1)"] and "witness" in bad[0]


def test_reports_are_reproducible(capsys):
    _, a, _ = run(["verify", "jack"], capsys)
    _, b, _ = run(["verify", "jack"], capsys)
    assert a == b


def test_cache_commands(tmp_path, capsys):
    root = str(tmp_path / "c")
    code, out, _ = run(["cache", "warm", "--cache-dir", root, "--n", "2", "--m", "1", "--deg", "2"], capsys)
    assert code == 0 and len(json.loads(out)["entries"]) == 3
    code, out, _ = run(["cache", "status", "--cache-dir", root], capsys)
    assert json.loads(out)["entries"] == [f"qbasis_N2_m1_d{d}.json" for d in range(3)]
    code, out, _ = run(["cache", "clear", "--cache-dir", root], capsys)
    assert json.loads(out)["removed"] == 3
    _, out, _ = run(["cache", "status", "--cache-dir", root], capsys)
    assert json.loads(out)["entries"] == []


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cmherm.cli", "verify", "jordan"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"]


def test_verify_all_desk_within_budget(capsys):
    import time

    t = time.perf_counter()
    code, out, _ = run(["verify", "all", "--profile", "desk"], capsys)
    elapsed = time.perf_counter() - t
    report = json.loads(out)
    assert code == 0 and report["passed"]
    suites = {c["name"].split("]")[0].lstrip("[") for c in report["checks"]}
    assert len(suites) == 16
    assert elapsed < 15 * 60
