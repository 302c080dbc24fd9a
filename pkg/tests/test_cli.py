import json
import math

import pytest

from heisconvex import Point3, gallery
from heisconvex.cli import (
    RunConfig,
    export_curve,
    export_levelset,
    import_curve,
    main,
    parse_descriptor,
)


def read_report(path):
    data = json.loads(path.read_text())
    data.pop("timestamp")
    return data


def test_parse_descriptor_forms(tmp_path):
    assert parse_descriptor("koranyi_ball") == ("koranyi_ball", {})
    assert parse_descriptor('{"set": "cylinder"}') == ("cylinder", {})
    spec = tmp_path / "set.json"
    spec.write_text('{"set": "koranyi_ball", "params": {"r": 2.0}}')
    assert parse_descriptor(str(spec)) == ("koranyi_ball", {"r": 2.0})
    with pytest.raises(ValueError):
        parse_descriptor('{"params": {}}')


def test_runconfig_validation():
    with pytest.raises(ValueError):
        RunConfig("axioms", budget=0)
    with pytest.raises(ValueError):
        RunConfig("axioms", samples=0)


def test_axioms_roundtrip(tmp_path):
    code = main(
        ["axioms", "--set", "koranyi_ball", "--samples", "400", "--out", str(tmp_path)]
    )
    assert code == 0
    rep = read_report(tmp_path / "axioms_koranyi_ball_r_1.json")
    ax = rep["axioms"]
    assert ax["a_holds"] and ax["b_holds"] and ax["c_holds"]
    assert rep["samples"] == 400
    assert rep["tolerances"]["eps_geom"] == 1e-7


def test_axioms_witness_exit(tmp_path):
    code = main(["axioms", "--set", "slab_x", "--samples", "300", "--out", str(tmp_path)])
    assert code == 2
    rep = read_report(tmp_path / "axioms_slab_x.json")
    assert not rep["axioms"]["a_holds"]


def test_ch_witness_and_curve(tmp_path):
    code = main(["ch", "--set", "cylinder", "--budget", "2000", "--out", str(tmp_path)])
    assert code == 2
    rep = read_report(tmp_path / "ch_cylinder.json")
    w = rep["ch"]["witness"]
    assert w["pair_index"] == 30
    assert w["tau"] == pytest.approx(0.923292357228)
    curve = import_curve(tmp_path / "ch_curve_cylinder.csv")
    assert len(curve) == 101
    assert curve[0].x == pytest.approx(w["xi0"][0])


def test_ch_clean_exit(tmp_path):
    code = main(["ch", "--set", "koranyi_ball", "--budget", "1000", "--out", str(tmp_path)])
    assert code == 0
    rep = read_report(tmp_path / "ch_koranyi_ball_r_1.json")
    assert rep["ch"]["witness"] is None


def test_ch_reports_are_deterministic(tmp_path):
    a_dir, b_dir = tmp_path / "a", tmp_path / "b"
    for d in (a_dir, b_dir):
        assert main(["ch", "--set", "cylinder", "--budget", "1500", "--out", str(d)]) == 2
    a = read_report(a_dir / "ch_cylinder.json")
    b = read_report(b_dir / "ch_cylinder.json")
    assert a == b
    assert (a_dir / "ch_curve_cylinder.csv").read_bytes() == (
        b_dir / "ch_curve_cylinder.csv"
    ).read_bytes()


def test_cone_command_with_closed_form(tmp_path):
    code = main(
        [
            "cone",
            "--set",
            "koranyi_ball",
            "--samples",
            "600",
            "--compare-closed-form",
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 0
    rep = read_report(tmp_path / "cone_koranyi_ball_r_1_heisenberg.json")
    cone = rep["cone"]
    assert cone["verdict"].startswith("candidate")
    assert cone["closed_form_max_dev"] <= 1e-6
    assert cone["family_axioms"]["i"] and cone["family_axioms"]["ii"]


def test_cone_falsified_exit(tmp_path):
    code = main(
        ["cone", "--set", "euclidean_ball", "--samples", "1000", "--out", str(tmp_path)]
    )
    assert code == 2
    rep = read_report(tmp_path / "cone_euclidean_ball_r_1_heisenberg.json")
    assert rep["cone"]["verdict"] == "horizontal convexity witness found"
    assert rep["cone"]["convexity_witness"] is not None


def test_radial_command(tmp_path):
    code = main(["radial", "--set", "importante", "--samples", "1000", "--out", str(tmp_path)])
    assert code == 2
    rep = read_report(tmp_path / "radial_importante.json")
    rad = rep["radial"]
    assert not rad["thm_i_ok"] and not rad["thm_ii_ok"]
    assert rad["thm_ii_witness"][0] == pytest.approx(2.152556, abs=1e-3)
    assert rad["envelopes"]

    assert main(["radial", "--set", "koranyi_ball", "--out", str(tmp_path)]) == 0


def test_gallery_matches_expectations(tmp_path):
    code = main(
        ["gallery", "--budget", "2000", "--samples", "1000", "--out", str(tmp_path)]
    )
    assert code == 0
    rep = read_report(tmp_path / "gallery.json")
    assert rep["all_match"]
    assert rep["gallery"]["cylinder"]["ch_witness"]["pair_index"] == 30
    assert rep["gallery"]["importante"]["radial"] == [False, False]


def test_export_mesh(tmp_path):
    code = main(
        [
            "export",
            "--set",
            "koranyi_ball",
            "--kind",
            "mesh",
            "--tau",
            "1.0",
            "--resolution",
            "16",
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 0
    lines = (tmp_path / "levelset_koranyi_ball_r_1_tau1.obj").read_text().splitlines()
    verts = [l for l in lines if l.startswith("v ")]
    faces = [l for l in lines if l.startswith("f ")]
    assert verts and faces
    for f in faces:
        idx = [int(s) for s in f.split()[1:]]
        assert len(idx) == 3
        assert all(1 <= i <= len(verts) for i in idx)
    # every mesh vertex hugs the unit gauge sphere at grid resolution
    from heisconvex import norm

    for l in verts[:50]:
        _, xs, ys, ts = l.split()
        r = norm(Point3(float(xs), float(ys), float(ts)), "koranyi")
        assert abs(r - 1.0) < 0.25


def test_export_curve_roundtrip(tmp_path):
    spec = tmp_path / "curve.json"
    spec.write_text(
        json.dumps({"xi0": [0.5, 0.0, 1.0], "v": [0.0, -0.5], "tau": math.sqrt(1.5), "m": 21})
    )
    code = main(["export", "--kind", "curve", "--curve-json", str(spec), "--out", str(tmp_path)])
    assert code == 0
    pts = import_curve(tmp_path / "curve.csv")
    assert len(pts) == 21
    assert pts[0] == Point3(0.5, 0.0, 1.0)


def test_export_curve_from_ch_report(tmp_path):
    main(["ch", "--set", "cylinder", "--budget", "1500", "--out", str(tmp_path)])
    code = main(
        [
            "export",
            "--kind",
            "curve",
            "--curve-json",
            str(tmp_path / "ch_cylinder.json"),
            "--out",
            str(tmp_path / "curve_out"),
        ]
    )
    assert code == 0
    assert (tmp_path / "curve_out" / "curve.csv").exists()


def test_error_exits(tmp_path):
    out = ["--out", str(tmp_path)]
    assert main(["axioms", "--set", "nonsense"] + out) == 1
    assert main(["radial", "--set", "slab_x"] + out) == 1
    assert main(["cone", "--set", "cylinder", "--compare-closed-form"] + out) == 1
    assert main(["export", "--kind", "curve"] + out) == 1
    assert main(["export", "--set", "slab_x", "--kind", "mesh"] + out) == 1
    assert main(["export", "--set", "koranyi_ball", "--kind", "mesh", "--resolution", "4"] + out) == 1
    assert main(["axioms", "--set", "radial_custom"] + out) == 1
    assert main(["axioms", "--set", "{bad json"] + out) == 1


def test_eps_flags_propagate(tmp_path):
    code = main(
        [
            "axioms",
            "--set",
            "koranyi_ball",
            "--samples",
            "200",
            "--eps-geom",
            "1e-6",
            "--eps-eq",
            "1e-8",
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 0
    rep = read_report(tmp_path / "axioms_koranyi_ball_r_1.json")
    assert rep["tolerances"] == {"eps_geom": 1e-6, "eps_eq": 1e-8, "max_iter": 60}


def test_params_flag_merges(tmp_path):
    code = main(
        [
            "axioms",
            "--set",
            "koranyi_ball",
            "--params",
            '{"r": 2.0}',
            "--samples",
            "200",
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 0
    assert (tmp_path / "axioms_koranyi_ball_r_2.json").exists()


def test_export_levelset_validates():
    K = gallery("koranyi_ball")
    with pytest.raises(ValueError):
        export_levelset(K, 0.0, 16, "/tmp/never.obj")
    with pytest.raises(ValueError):
        export_levelset(K, 1.0, 4, "/tmp/never.obj")
    with pytest.raises(ValueError):
        export_levelset(gallery("slab_x"), 1.0, 16, "/tmp/never.obj")


def test_export_curve_requires_rows(tmp_path):
    with pytest.raises(ValueError):
        export_curve([], tmp_path / "empty.csv")
