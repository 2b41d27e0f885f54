import json

import pytest

from mmsreach.ccm import EXAMPLE_MACHINE
from mmsreach.cli import main

from conftest import needs_smt

HALTING = "inc c1 goto 1\ndec c1 goto 2\nifz c1 pos 0 zero 3\nhalt\n"


@pytest.fixture
def arena(tmp_path):
    def make(family, *extra):
        path = tmp_path / f"{family}{'-'.join(extra)}.json"
        assert main(["gen", "--family", family, "--output", str(path), *extra]) == 0
        return path

    return make


def test_gen_is_deterministic(arena, tmp_path):
    a = arena("Snake", "--obstacles", "3")
    b = tmp_path / "again.json"
    main(["gen", "--family", "Snake", "--obstacles", "3", "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert len(doc["obstacles"]) == 3


def test_gen_errors(tmp_path, capsys):
    assert main(["gen", "--family", "Spiral", "--output", str(tmp_path / "x.json")]) == 2
    assert main(["gen", "--output", str(tmp_path / "x.json")]) == 2
    assert main(["frobnicate"]) == 2
    assert "error" in capsys.readouterr().err


def test_missing_instance_is_usage_error(tmp_path):
    assert main(["plan"]) == 2
    assert main(["plan", "--instance", str(tmp_path / "none.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"modes": []}')
    assert main(["cover", "--instance", str(bad)]) == 2


@needs_smt
def test_plan_then_verify(arena, tmp_path, capsys):
    inst = arena("LShaped")
    plan = tmp_path / "plan.json"
    svg = tmp_path / "plan.svg"
    assert main(["plan", "--instance", str(inst), "--output", str(plan), "--svg", str(svg)]) == 0
    doc = json.loads(plan.read_text())
    assert doc["outcome"] == "planned" and doc["witness_length"] == 2 and doc["bound"] == 15
    assert [v[1] for v in doc["verdicts"]] == ["unsat", "sat"]
    assert svg.read_text().startswith("<svg")
    assert main(["verify", "--instance", str(inst), "--plan", str(plan)]) == 0
    assert "verified" in capsys.readouterr().out


@needs_smt
def test_tampered_plan_is_rejected(arena, tmp_path, capsys):
    inst = arena("LShaped")
    plan = tmp_path / "plan.json"
    main(["plan", "--instance", str(inst), "--output", str(plan)])
    doc = json.loads(plan.read_text())
    # stretch the first action so the run cuts through an obstacle
    doc["schedule"][0][1] = "2"
    plan.write_text(json.dumps(doc))
    report = tmp_path / "report.json"
    assert main(["verify", "--instance", str(inst), "--plan", str(plan), "--output", str(report)]) == 1
    out = capsys.readouterr().out
    assert "violation" in out and "rejected" in out
    assert json.loads(report.read_text())["ok"] is False


def test_verify_unknown_mode(arena, tmp_path):
    inst = arena("LShaped")
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"schedule": [["warp", "1"]]}))
    assert main(["verify", "--instance", str(inst), "--plan", str(plan)]) == 2


def test_high_dimension_needs_a_bound(arena, capsys):
    inst = arena("LShaped", "--dim", "3")
    assert main(["plan", "--instance", str(inst)]) == 2
    assert "--max-bound" in capsys.readouterr().err


@needs_smt
def test_unreachable_l(arena, capsys):
    inst = arena("UnreachableL")
    assert main(["plan", "--instance", str(inst)]) == 0
    assert "unreachable" in capsys.readouterr().out


@needs_smt
def test_cover_bound_feeds_plan(arena, tmp_path):
    inst = arena("Snake", "--obstacles", "3")
    cover = tmp_path / "cover.json"
    assert main(["cover", "--instance", str(inst), "--output", str(cover)]) == 0
    doc = json.loads(cover.read_text())
    out = tmp_path / "plan.json"
    assert main(["plan", "--instance", str(inst), "--max-bound", str(doc["bound"]), "--output", str(out)]) == 0
    assert (json.loads(out.read_text())["outcome"] == "planned") == doc["reachable"]


def test_cover_and_render(arena, tmp_path):
    inst = arena("UnreachableL")
    out = tmp_path / "cover.json"
    svg = tmp_path / "cells.svg"
    assert main(["cover", "--instance", str(inst), "--output", str(out), "--svg", str(svg)]) == 0
    doc = json.loads(out.read_text())
    assert doc["bound"] == 10 and doc["reachable"] is False and len(doc["components"]) == 2
    pic = tmp_path / "arena.svg"
    assert main(["render", "--instance", str(inst), "--svg", str(pic)]) == 0
    assert pic.read_text().count('fill="#999999"') == 2


def test_render_rejects_3d(arena, tmp_path):
    inst = arena("LShaped", "--dim", "3")
    assert main(["render", "--instance", str(inst), "--svg", str(tmp_path / "x.svg")]) == 2


def test_sampling_backend_runs(arena, tmp_path):
    inst = arena("LShaped")
    out = tmp_path / "plan.json"
    code = main(["plan", "--instance", str(inst), "--backend", "sampling", "--budget", "200",
                 "--max-bound", "2", "--output", str(out)])
    doc = json.loads(out.read_text())
    assert (code, doc["outcome"]) in ((0, "planned"), (1, "exhausted"))


def test_ccm_compile_and_run(tmp_path, capsys):
    m = tmp_path / "a3.ccm"
    m.write_text(EXAMPLE_MACHINE)
    out = tmp_path / "a3.json"
    assert main(["ccm", "compile", str(m), "--output", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["modes"]) == 12 and doc["modes"]["M0"]["c1"] == "1"
    assert main(["ccm", "run", str(m), "--steps", "20"]) == 0
    text = capsys.readouterr().out
    assert "modes: I M0 M01 M1 M12 M2^2 M20" in text and "all deviations rejected: True" in text


def test_ccm_literal_reports_gaps(tmp_path, capsys):
    m = tmp_path / "a3.ccm"
    m.write_text(EXAMPLE_MACHINE)
    # the unguarded halt clause happens to reject the wrong branch here
    assert main(["ccm", "run", str(m), "--steps", "20", "--literal"]) == 0
    capsys.readouterr()
    h = tmp_path / "halt.ccm"
    h.write_text(HALTING)
    assert main(["ccm", "run", str(h), "--literal"]) == 1
    assert "phi_g" in capsys.readouterr().out


def test_ccm_halting_machine(tmp_path, capsys):
    h = tmp_path / "halt.ccm"
    h.write_text(HALTING)
    out = tmp_path / "run.json"
    assert main(["ccm", "run", str(h), "--output", str(out)]) == 0
    assert json.loads(out.read_text())["reached_target"] is True


def test_ccm_bad_machine(tmp_path):
    m = tmp_path / "bad.ccm"
    m.write_text("halt\n")
    assert main(["ccm", "run", str(m)]) == 2
    assert main(["ccm", "run", str(tmp_path / "missing.ccm")]) == 2


def test_bench_single_rrt_row(tmp_path, capsys):
    csv = tmp_path / "rows.csv"
    assert main(["bench", "--family", "Snake", "--obstacles", "3", "--method", "rrt",
                 "--rrt-iters", "3000", "--output", str(csv)]) == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == "family,dim,size,method,outcome,witness_length,nodes,time_s"
    assert lines[1].startswith("Snake-o3,2,4,rrt,Found,")
