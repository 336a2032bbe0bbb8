from __future__ import annotations

import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from walkcent.cli import main
from walkcent.graph import parse_edge_list
from walkcent.interlacing import mesh_values
from walkcent.plot import read_curve_csv

from conftest import NINE, TEN, EIGHT


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in (("nine", NINE), ("ten", TEN), ("eight", EIGHT)):
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def test_interlace_nine(files):
    code, text = run(["interlace", "--input", files["nine"], "--pair", "2", "8", "--beta-max", "10"])
    assert code == 0
    assert "interlacing values: 2" in text
    assert "2.1223" in text and "4.4765" in text


def test_interlace_ten(files):
    for measure, extra in (("rc", []), ("sc", ["--beta-max", "30"])):
        code, text = run(["interlace", "--input", files["ten"], "--pair", "3", "4", "--measure", measure,
                          "--format", "json"] + extra)
        assert code == 0
        assert json.loads(text)["count"] == 2


def test_interlace_exit_codes(files):
    assert run(["interlace", "--input", files["eight"], "--pair", "1", "8"])[0] == 3
    assert run(["interlace", "--g6", "Bg", "--pair", "1", "2"])[0] == 1      # P3 end vs middle
    assert run(["interlace", "--input", files["nine"], "--pair", "2", "2"])[0] == 2
    assert run(["interlace", "--input", files["nine"], "--pair", "2", "10"])[0] == 2
    assert run(["interlace", "--input", files["nine"]])[0] == 2


def test_interlace_json_full_precision(files):
    code, text = run(["interlace", "--input", files["nine"], "--pair", "2", "8", "--beta-max", "10",
                      "--format", "json"])
    zeros = [z["value"] for z in json.loads(text)["zeros"]]
    code, table = run(["interlace", "--input", files["nine"], "--pair", "2", "8", "--beta-max", "10"])
    assert f"{zeros[0]:.12g}" in table
    assert repr(zeros[0]) != f"{zeros[0]:.12g}"


def test_plot_roundtrip(files, tmp_path):
    stem = tmp_path / "curve"
    code, _ = run(["interlace", "--input", files["nine"], "--pair", "2", "8", "--beta-max", "10",
                   "--resolution", "500", "--plot", str(stem)])
    assert code == 0
    data = read_curve_csv((tmp_path / "curve.csv").read_text())
    g = parse_edge_list(NINE)
    x, raw, resc = mesh_values(g, 1, 7, "sc", (0.0, 10.0), 500)
    assert np.allclose(data[:, 0], x, rtol=1e-12, atol=0)
    assert np.allclose(data[:, 1], raw, rtol=1e-12, atol=0)
    assert np.allclose(data[:, 2], resc, rtol=1e-12, atol=0)
    svg = (tmp_path / "curve.svg").read_text()
    assert svg.startswith("<svg") and svg.count('class="crossing"') == 2


def test_analyze_eight(files):
    code, text = run(["analyze", "--input", files["eight"]])
    assert code == 0
    assert "walk regular: no" in text
    classes = text.split("cospectral classes:")[1].splitlines()[0]
    assert any({"1", "8"} <= set(c.strip("{}").split(",")) for c in classes.split())
    code, text = run(["analyze", "--input", files["eight"], "--format", "json"])
    rows = json.loads(text)["vertices"]
    assert rows[0]["Katz"] != rows[7]["Katz"]
    assert rows[0]["SC"] == pytest.approx(rows[7]["SC"], rel=1e-10)


def test_analyze_c5_and_nine(files):
    code, text = run(["analyze", "--g6", "Dhc", "--format", "json"])
    rep = json.loads(text)
    assert rep["walk_regular"] and rep["walk_entropy"] == pytest.approx(math.log(5))
    code, text = run(["analyze", "--input", files["nine"], "--format", "json"])
    rep = json.loads(text)
    assert rep["d"] == len(rep["mu"]) and sum(rep["multiplicities"]) == 9
    assert not any({2, 8} <= set(c) for c in rep["cospectral_classes"])


def test_analyze_csv(files):
    code, text = run(["analyze", "--input", files["nine"], "--format", "csv", "--beta", "2"])
    lines = text.strip().splitlines()
    assert len(lines) == 10 and lines[0].startswith("vertex,degree,EC")


def test_analyze_errors(files, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3\n1 2\n1 2\n")
    assert run(["analyze", "--input", str(bad)])[0] == 2
    assert run(["analyze", "--input", files["nine"], "--alpha", "5"])[0] == 2
    assert run(["analyze", "--input", files["nine"], "--g6", "A_"])[0] == 2
    assert run(["analyze", "--g6", "A_x"])[0] == 2


def test_cospectral_exit_codes(files):
    assert run(["cospectral", "--g6", "Dhc"])[0] == 0       # C5
    assert run(["cospectral", "--g6", "Bg"])[0] == 1        # P3
    code, text = run(["cospectral", "--input", files["eight"]])
    assert code == 1 and "{1,2,8}" in text
    assert run(["cospectral", "--input", "/nonexistent"])[0] == 2


def test_search_stream_and_summary(files, tmp_path):
    src = tmp_path / "in.g6"
    src.write_text("H?bF`xw\n")  # arbitrary 9-vertex graph; checks plumbing only
    code, text = run(["search", "--input", str(src), "--min-count", "1"])
    assert code == 0
    assert text.strip().splitlines()[-1].startswith("# ")
    assert "graphs scanned" in text


def test_search_eight_pattern(files, tmp_path):
    src = tmp_path / "in.g6"
    src.write_text("G??xuO\n")
    code, text = run(["search", "--input", str(src), "--predicate", "cospectral-katz-gap"])
    assert code == 0 and "\tcospectral\t" in text and "2 findings" in text


def test_search_resume_mismatch(tmp_path):
    r = tmp_path / "r.txt"
    assert run(["search", "--n", "4", "--resume", str(r)])[0] == 0
    assert run(["search", "--n", "4", "--min-count", "2", "--resume", str(r)])[0] == 2


def test_search_json_and_n1():
    code, text = run(["search", "--n", "1", "--format", "json"])
    rep = json.loads(text)
    assert code == 0 and rep["findings"] == [] and rep["graphs_scanned"] == 1


def test_workers_env(monkeypatch):
    from walkcent import cli

    monkeypatch.setenv("WALKCENT_WORKERS", "3")
    assert cli.build_parser().parse_args(["search", "--n", "3"]).workers == 3


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "walkcent", "cospectral", "--g6", "Bg"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "walk regular: no" in proc.stdout
