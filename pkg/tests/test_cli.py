import json
import subprocess
import sys
from pathlib import Path

import pytest

from gridspan.cli import main, run_command

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(argv):
    return run_command([str(a) for a in argv])


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return p


def test_span_sample_prints_two(capsys):
    assert main(["span", "--arrangement", str(SAMPLES / "three_lines.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["span_squared"] == "2"


def test_span_errors(tmp_path):
    assert run(["span", "--arrangement", tmp_path / "missing.json"])[0] == 2
    bad = write(tmp_path, "two.json", {"lines": [{"w": ["1", "0"], "c": "0"}, {"w": ["0", "1"], "c": "0"}]})
    assert run(["span", "--arrangement", bad])[0] == 2
    junk = write(tmp_path, "junk.json", "{not json")
    assert run(["span", "--arrangement", junk])[0] == 2


def test_usage_errors():
    assert run([])[0] == 2
    assert run(["gen-pair"])[0] == 2
    assert run(["gen-instance", "--kind", "xyz", "--k", "1"])[0] == 2
    assert run(["gen-pair", "--k", "0"])[0] == 2


def test_gen_config():
    code, doc = run(["gen-config", "--squarings", "2"])
    assert code == 0 and doc["cross"] == "16" and doc["constructible"]
    code, doc = run(["--approx", "gen-config", "--squarings", "1"])
    assert doc["cross"] == "4" and "cross_approx" in doc


def test_gen_pair():
    code, doc = run(["gen-pair", "--k", "1"])
    assert code == 0 and doc["verified"] and doc["bound_holds"]
    assert doc["lines"] == 4 * doc["hard_pair"]["n"] + 1


def test_max_halvings_env(monkeypatch):
    monkeypatch.setenv("GRIDSPAN_MAX_HALVINGS", "1")
    assert run(["gen-pair", "--k", "1"])[0] == 3
    monkeypatch.setenv("GRIDSPAN_MAX_HALVINGS", "zero")
    assert run(["gen-pair", "--k", "1"])[0] == 2


def test_gen_instance_verify_audit(tmp_path):
    out, dim = tmp_path / "udg.json", tmp_path / "udg.col"
    code, doc = run(["gen-instance", "--kind", "udg", "--k", "1", "--out", out, "--dimacs", dim])
    assert code == 0 and doc["vertices"] == json.loads(out.read_text())["graph"]["n"]
    code, doc = run(["verify", "--graph", out, "--realization", out])
    assert code == 0 and doc["ok"]
    assert run(["verify", "--graph", dim, "--realization", out])[0] == 0
    bundle = json.loads(out.read_text())
    bundle["graph"]["edges"] = bundle["graph"]["edges"][1:]
    broken = write(tmp_path, "broken.json", bundle["graph"])
    assert run(["verify", "--graph", broken, "--realization", out])[0] == 1


def test_verify_grid_realization(tmp_path):
    g = write(tmp_path, "k2.json", {"n": 2, "edges": [[0, 1]]})
    good = write(tmp_path, "good.json", {"kind": "udg", "centers": [[0, 0], [1, 0]], "radius": 1})
    far = write(tmp_path, "far.json", {"kind": "udg", "centers": [[0, 0], [2, 0]], "radius": 1})
    assert run(["verify", "--graph", g, "--realization", good])[0] == 0
    code, doc = run(["verify", "--graph", g, "--realization", far])
    assert code == 1 and doc["discrepancy"]["u"] == 0
    three = write(tmp_path, "three.json", {"kind": "udg", "centers": [[0, 0]] * 3, "radius": 1})
    assert run(["verify", "--graph", g, "--realization", three])[0] == 2


def test_search(tmp_path):
    g = write(tmp_path, "g.col", "p edge 2 0\n")
    code, doc = run(["search", "--graph", g, "--kind", "udg", "--max-m", "3"])
    assert code == 0 and doc["found"] and doc["m"] == 2
    assert run(["search", "--graph", g, "--kind", "udg", "--max-m", "0"])[0] == 2
    bad = write(tmp_path, "bad.col", "x 1 2\n")
    assert run(["search", "--graph", bad, "--kind", "udg", "--max-m", "1"])[0] == 2


def test_round(tmp_path):
    k2 = {"n": 2, "edges": [[0, 1]]}
    slack = write(tmp_path, "s.json", {"graph": k2, "centers": [["0", "0"], ["50", "0"]], "r": "100"})
    code, doc = run(["round", "--solution", slack])
    assert code == 0 and doc["solution"]["r"] == "100"
    strict = write(tmp_path, "t.json", {"graph": k2, "centers": [["0", "0"], ["1", "0"]], "r": "2"})
    assert run(["round", "--solution", strict])[0] == 1
    assert run(["round", "--from-strict", "--solution", strict])[0] == 0


def test_render(tmp_path):
    svg = tmp_path / "a.svg"
    code, doc = run(["render", "--input", SAMPLES / "three_lines.json", "--out", svg])
    assert code == 0 and doc["rendered"] == "arrangement"
    assert svg.read_text().count("<line ") == 3
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(run(["gen-config", "--squarings", "0"])[1]))
    assert run(["render", "--input", cfg, "--out", tmp_path / "c.svg"])[1]["rendered"] == "configuration"
    assert run(["render", "--input", write(tmp_path, "x.json", {"a": 1}), "--out", svg])[0] == 2


def test_console_script_split_streams(tmp_path):
    r = subprocess.run([sys.executable, "-m", "gridspan.cli", "-v", "span", "--arrangement",
                        str(SAMPLES / "three_lines.json")], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["span_squared"] == "2"
    r = subprocess.run([sys.executable, "-m", "gridspan.cli", "span", "--arrangement", str(tmp_path / "none.json")],
                       capture_output=True, text=True)
    assert r.returncode == 2 and "no such file" in r.stderr


def test_audit_toy_bundle(tmp_path):
    from gridspan.embeddings.instances import build_udg_instance
    from gridspan.verification import GridRealization

    from test_instances import TOY

    b = build_udg_instance(TOY)
    b.source = dict(b.source, k=None)
    real, _ = GridRealization.from_objects("udg", b.disks)
    bp = write(tmp_path, "b.json", b.to_json())
    rp = write(tmp_path, "r.json", real.to_json())
    code, doc = run(["audit", "--bundle", bp, "--realization", rp])
    assert code == 0 and doc["pass"]
    code, doc = run(["audit", "--bundle", bp, "--realization", bp])     # rational realization, integerized
    assert code == 0
    d = real.to_json()
    d["centers"][0] = [d["centers"][0][0] + 10 ** 12, 0]
    code, doc = run(["audit", "--bundle", bp, "--realization", write(tmp_path, "t.json", d)])
    assert code == 1 and not doc["pass"]
