from __future__ import annotations

import argparse
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from qorder.cli import CSV_COLUMNS, RunConfig, UsageError, main, read_config_file, resolve_config
from qorder.graph import Graph, emit_graph6, parse_graph6

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_family_text(capsys):
    code, out, _ = run(["family", "--spec", "G0(m=12,g=4)"], capsys)
    assert code == 0
    fields = dict(line.split(None, 1) for line in out.splitlines())
    assert fields["girth"] == "4" and fields["delta"] == "10"
    assert 11 < float(fields["q"]) < 12


def test_family_b2_json(capsys):
    code, out, _ = run(["family", "--spec", "B2(m=9)", "--format", "json"], capsys)
    info = json.loads(out)
    assert code == 0 and info["girth"] == 3 and info["delta"] == 7


def test_family_graph6_emit(capsys):
    code, out, _ = run(["family", "--spec", "Star(m=9)", "--emit", "graph6"], capsys)
    G = parse_graph6(out.strip())
    assert code == 0 and G.degrees == (9,) + (1,) * 9


def test_family_bad_index(capsys):
    code, _, err = run(["family", "--spec", "Gi(m=5,g=4,i=3)"], capsys)
    assert code == 2 and "qorder" in err


def test_qindex(capsys):
    code, out, _ = run(["qindex", "--graph6", "I??????~w"], capsys)
    assert code == 0 and "q=10\t" in out
    c6 = emit_graph6(Graph(6, [(i, (i + 1) % 6) for i in range(6)]))
    code, out, _ = run(["qindex", "--graph6", c6, "--format", "json"], capsys)
    assert code == 0 and abs(json.loads(out)["q"] - 4) <= 1e-10


def test_qindex_disconnected(capsys):
    code, _, err = run(["qindex", "--graph6", "C`"], capsys)
    assert code == 2
    assert "{0,1}, {2,3}" in err


def test_qindex_bad_graph6(capsys):
    code, _, _ = run(["qindex", "--graph6", "A__"], capsys)
    assert code == 2


def test_qindex_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("A_\nBw\n"))
    code, out, _ = run(["qindex", "--stdin", "--format", "csv"], capsys)
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()]
    assert rows[0] == ["graph6", "q", "residual"]
    # K_2 and K_3
    assert [(r[0], r[1]) for r in rows[1:]] == [("A_", "2"), ("Bw", "4")]
    assert all(float(r[2]) <= 1e-12 * 2 for r in rows[1:])


def test_verify_pass_json(capsys):
    code, out, _ = run(["verify", "--theorem", "thm-1.3", "--m", "9", "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["pass"] and rep["status"] == "pass"


def test_verify_fail_exit_1(capsys):
    code, out, _ = run(["verify", "--theorem", "lem-3.1", "--m", "9", "--g", "4"], capsys)
    assert code == 1 and "FAIL" in out


def test_verify_hypothesis_exit_2(capsys):
    code, _, err = run(["verify", "--theorem", "thm-1.1", "--m", "9", "--g", "3"], capsys)
    assert code == 2 and "3g" in err


def test_identity(capsys):
    assert run(["identity", "--id", "eq4"], capsys)[0] == 0
    code, out, _ = run(["identity", "--id", "all"], capsys)
    assert code == 0 and out.count("PASS") == 9
    assert run(["identity", "--id", "eq99"], capsys)[0] == 2


def test_bounds(capsys):
    code, out, _ = run(["bounds", "--sweep", "entry", "--max-m", "5"], capsys)
    assert code == 0 and out.startswith("entry: PASS")
    code, _, _ = run(["bounds", "--sweep", "degree", "--m", "12", "--s", "7"], capsys)
    assert code == 2


def test_rank_golden_csv(capsys, tmp_path):
    out_path = tmp_path / "rank.csv"
    code = main(["rank", "--m", "9", "--girth", "any", "--top", "11", "--format", "csv", "-o", str(out_path)])
    assert code == 0
    text = out_path.read_text()
    assert text == (GOLDEN / "rank_m9_top11.csv").read_text()
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)


def test_rank_deterministic(capsys):
    a = run(["rank", "--m", "8", "--girth", ">=4", "--top", "5", "--format", "json"], capsys)[1]
    b = run(["rank", "--m", "8", "--girth", ">=4", "--top", "5", "--format", "json"], capsys)[1]
    assert a == b and json.loads(a)["rows"][0]["family"] == "G0(m=8,g=4)"


def test_enumerate(capsys, tmp_path):
    code, out, _ = run(["enumerate", "--m", "5", "--count"], capsys)
    assert code == 0 and out == "12\n"
    path = tmp_path / "g.g6"
    code, _, _ = run(["enumerate", "--m", "4", "--out", str(path)], capsys)
    assert code == 0 and len(path.read_text().splitlines()) == 5


def test_enumerate_cap(capsys):
    assert run(["enumerate", "--m", "13", "--count"], capsys)[0] == 2
    assert run(["enumerate", "--m", "5", "--enum-cap", "14"], capsys)[0] == 2


def test_usage_errors(capsys):
    assert run([], capsys)[0] == 2
    assert run(["rank"], capsys)[0] == 2
    assert run(["rank", "--m", "5", "--girth", "bogus"], capsys)[0] == 2
    assert run(["qindex"], capsys)[0] == 2
    assert run(["qindex", "--graph6", "A_", "--tolerance", "-1"], capsys)[0] == 2


def _ns(**kw):
    base = dict(config=None, tolerance=None, tie_gap=None, enum_cap=None, format=None, output=None, jobs=None)
    base.update(kw)
    return argparse.Namespace(**base)


def test_config_precedence(tmp_path):
    cfg_file = tmp_path / "q.cfg"
    cfg_file.write_text("# comment\ntolerance = 1e-10\ntie-gap=1e-8\nformat=csv\n")
    env_file = tmp_path / "env.cfg"
    env_file.write_text("tolerance=1e-11\nenum_cap=10\n")
    assert resolve_config(_ns(), {}) == RunConfig()
    cfg = resolve_config(_ns(), {"QORDER_CONFIG": str(env_file)})
    assert cfg.tolerance == 1e-11 and cfg.enum_cap == 10
    cfg = resolve_config(_ns(config=str(cfg_file)), {"QORDER_CONFIG": str(env_file)})
    assert cfg.tolerance == 1e-10 and cfg.tie_gap == 1e-8 and cfg.format == "csv" and cfg.enum_cap == 12
    cfg = resolve_config(_ns(config=str(cfg_file), tolerance=1e-9), {})
    assert cfg.tolerance == 1e-9 and cfg.format == "csv"


def test_config_errors(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense\n")
    with pytest.raises(UsageError):
        read_config_file(str(bad))
    bad.write_text("colour=blue\n")
    with pytest.raises(UsageError):
        resolve_config(_ns(config=str(bad)), {})
    with pytest.raises(UsageError):
        resolve_config(_ns(config=str(tmp_path / "missing.cfg")), {})
    with pytest.raises(UsageError):
        resolve_config(_ns(enum_cap=20), {})


def test_env_config_via_subprocess(tmp_path):
    cfg_file = tmp_path / "q.cfg"
    cfg_file.write_text("format=json\n")
    env = {"QORDER_CONFIG": str(cfg_file), "PATH": "/usr/bin:/bin"}
    proc = subprocess.run(
        [sys.executable, "-m", "qorder", "qindex", "--graph6", "A_"], capture_output=True, text=True, env=env
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["q"] == 2
