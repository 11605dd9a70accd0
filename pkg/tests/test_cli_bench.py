import csv
import io
import json
import math

import pytest
from scipy import stats

from hipermotif import build_graph
from hipermotif.bench import Instance, ablate_reorder, ci95, planted_pattern, run_bench
from hipermotif.cli import main
from hipermotif.errors import EngineDisagreement
from hipermotif.generators import GeneratorSpec, generate
from hipermotif.io import load_edge_list, save_edge_list
from hipermotif.rng import SplitMix64

TRI = build_graph([(0, 1), (1, 2), (2, 0)])
K3_BI = build_graph([(u, v) for u in range(3) for v in range(3) if u != v])


@pytest.fixture
def files(tmp_path):
    tri, k3 = tmp_path / "tri.el", tmp_path / "k3bi.el"
    save_edge_list(TRI, tri)
    save_edge_list(K3_BI, k3)
    return str(tri), str(k3)


def test_match_counts(files, capsys):
    tri, k3 = files
    assert main(["match", "--pattern", tri, "--target", k3, "--semantics", "mono"]) == 0
    assert capsys.readouterr().out == "count=6\n"
    assert main(["match", "--pattern", tri, "--target", k3, "--engine", "oracle"]) == 0
    assert capsys.readouterr().out == "count=6\n"
    assert main(["match", "--pattern", tri, "--target", k3, "--semantics", "iso"]) == 0
    assert capsys.readouterr().out == "count=0\n"


def test_match_limit_prints_embeddings(files, capsys):
    tri, k3 = files
    assert main(["match", "--pattern", tri, "--target", k3, "--limit", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "count=2" and len(lines) == 3


def test_match_emit_uses_original_ids(tmp_path, capsys):
    pattern = build_graph([(0, 1), (1, 2), (2, 0), (2, 3)])
    p, t = tmp_path / "p.el", tmp_path / "t.el"
    save_edge_list(pattern, p)
    save_edge_list(pattern, t)
    for flag in ([], ["--no-reorder"]):
        assert main(["match", "--pattern", str(p), "--target", str(t), "--emit", "--verify"] + flag) == 0
        assert capsys.readouterr().out.splitlines() == ["count=1", "0 1 2 3"]


def test_match_errors(files, tmp_path, capsys):
    tri, k3 = files
    lone = tmp_path / "lone.el"
    lone.write_text("#vertices\n0\n")
    assert main(["match", "--pattern", str(lone), "--target", k3]) == 1
    assert "--engine vf2ps" in capsys.readouterr().err
    assert main(["match", "--pattern", str(lone), "--target", k3, "--engine", "vf2ps"]) == 0
    assert capsys.readouterr().out == "count=3\n"
    assert main(["match", "--pattern", str(tmp_path / "missing.el"), "--target", k3]) == 1
    bad = tmp_path / "bad.el"
    bad.write_text("0\n")
    assert main(["match", "--pattern", str(bad), "--target", k3]) == 1
    assert ":1:" in capsys.readouterr().err


def test_generate_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.el", tmp_path / "b.el"
    for out in (a, b):
        assert main(["generate", "er", "--n", "1000", "--p", "0.005", "--seed", "42", "-o", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert load_edge_list(a).vertex_count == 1000


def test_generate_ws_degrees(tmp_path):
    out = tmp_path / "ws.el"
    assert main(["generate", "ws", "--n", "1000", "--k", "10", "--p", "0.01", "--seed", "42", "-o", str(out)]) == 0
    g = load_edge_list(out)
    total = g.in_degree + g.out_degree
    assert abs(total.mean() - 20) < 1e-9 and total.min() >= 14


def test_generate_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["generate", "er", "--n", "10"])
    assert exc.value.code == 2
    assert "--p" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        main(["generate", "--n", "10"])
    assert main(["generate", "ws", "--n", "10", "--k", "3", "--p", "0.1"]) == 1


def test_generate_from_config_with_attrs(tmp_path):
    cfg = tmp_path / "g.cfg"
    cfg.write_text("family=scale_free\nn=200\nseed=1\nvertex_attr.c=A,B\n")
    out = tmp_path / "g.el"
    assert main(["generate", "--config", str(cfg), "--edge-attr", "w=x,y", "--seed", "2", "-o", str(out)]) == 0
    g = load_edge_list(out)
    assert g.vertex_keys == ("c",) and g.edge_keys == ("w",)


def test_ci95_student_t():
    samples = [1.0, 1.2, 0.9, 1.1, 1.05]
    sd = stats.tstd(samples)
    assert ci95(samples) == pytest.approx(stats.t.ppf(0.975, 4) * sd / math.sqrt(5))
    assert ci95([3.0]) == 0.0


def test_bench_rows_and_speedup(files, tmp_path):
    tri, k3 = files
    out = tmp_path / "r.csv"
    assert main(["bench", "--target", k3, "--pattern", tri, "--engine", "hipermotif,vf2ps",
                 "--workers", "1,2", "--reps", "3", "-o", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert [(r["engine"], r["workers"]) for r in rows] == [
        ("hipermotif", "1"), ("hipermotif", "2"), ("vf2ps", "1")]
    assert {r["matches"] for r in rows} == {"6"}
    means = {(r["engine"], r["workers"]): float(r["mean_s"]) for r in rows}
    two = rows[1]
    assert float(two["speedup"]) == pytest.approx(means[("hipermotif", "1")] / means[("hipermotif", "2")])
    for r in rows:
        for col in ("mean_s", "ci95_s", "speedup", "load_s", "reorder_s"):
            assert math.isfinite(float(r[col]))


def test_bench_json(files, capsys):
    tri, k3 = files
    assert main(["bench", "--target", k3, "--pattern", tri, "--reps", "1", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data[0]["ci95_s"] == 0.0 and data[0]["speedup"] == 1.0


def test_bench_disagreement_dumps_instance(tmp_path, monkeypatch):
    from hipermotif import bench

    original = bench.run_engine

    def broken(engine, pattern, target, config):
        result = original(engine, pattern, target, config)
        return result if engine == "vf2ps" else result.embeddings[:1]

    monkeypatch.setattr(bench, "run_engine", broken)
    inst = Instance("k3", K3_BI, "tri", TRI)
    with pytest.raises(EngineDisagreement):
        run_bench([inst], engines=("hipermotif", "vf2ps"), reps=1, dump_dir=tmp_path / "dump")
    assert load_edge_list(tmp_path / "dump" / "target.el") == K3_BI
    assert json.loads((tmp_path / "dump" / "counts.json").read_text())


def test_ablation_ratio_is_off_over_on():
    target = generate(GeneratorSpec("er", 60, seed=2, p=0.1))
    rng = SplitMix64(3)
    insts = [Instance("er", target, f"p{i}", planted_pattern(target, 3 + i, rng)) for i in range(4)]
    report = ablate_reorder(insts, reps=2)
    assert len(report) == 4
    for row in report:
        assert row.ratio == pytest.approx(row.off_mean_s / row.on_mean_s)
        assert not row.timed_out


def test_planted_pattern_is_an_induced_copy():
    target = generate(GeneratorSpec("er", 40, seed=8, p=0.2))
    pattern = planted_pattern(target, 6, SplitMix64(1))
    assert pattern is not None and pattern.vertex_count == 6
    for v in range(1, 6):
        assert any(w < v for w in pattern.neighbors(v))
    assert planted_pattern(build_graph([], vertex_count=3), 2, SplitMix64(0)) is None
