"""Command-line front end.

Subcommands run the library pipelines on a named or JSON-described set
and write JSON reports (plus CSV curves and OBJ meshes) to an output
directory.  Exit codes: 0 checks passed / no witness, 2 witness found or
an expected verdict missed, 1 usage or precondition error.

Set descriptors are JSON objects {"set": <name>, "params": {...}}
accepted inline, as a file path, or as a bare gallery name.  The
radial_custom set takes params {"vertices": [[r, t], ...]}, a closed
polygon in the half-plane r >= 0 with even-odd membership.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__
from .chcheck import (
    ChWitness,
    ch_curve,
    envelope_check,
    falsify_ch,
    radial_necessary,
)
from .cones import make_cone, cone_validate, compare_closed_form
from .core import DEFAULT_TOL, HVec, Point3, Tolerances, dilate
from .sets import GALLERY_NAMES, SetOracle, check_axioms, gallery

MESH_KINDS = ("mesh", "curve")


@dataclass
class RunConfig:
    """One CLI invocation, fully determined (reports replay byte-for-byte)."""

    command: str
    set_descriptor: str = "koranyi_ball"
    seed: int = 0
    budget: int = 2000
    samples: int = 2000
    tolerances: Tolerances = field(default_factory=lambda: DEFAULT_TOL)
    output_dir: Path = Path(".")
    compare_closed_form: bool = False
    tau_one: bool = False
    cone_kind: str = "heisenberg"
    export_kind: str = "mesh"
    tau: float = 1.0
    resolution: int = 32
    curve_json: str = ""

    def __post_init__(self) -> None:
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        self.output_dir = Path(self.output_dir)


def parse_descriptor(descriptor: str) -> tuple[str, dict]:
    """Resolve a bare name, inline JSON, or JSON file path to (name, params)."""
    text = descriptor.strip()
    path = Path(text)
    if text.endswith(".json") or path.is_file():
        text = path.read_text().strip()
    if text.startswith("{"):
        obj = json.loads(text)
        if not isinstance(obj, dict) or "set" not in obj:
            raise ValueError('set descriptor JSON must look like {"set": name, "params": {...}}')
        return str(obj["set"]), dict(obj.get("params") or {})
    return text, {}


def _resolve_set(cfg: RunConfig, extra_params: Optional[dict] = None) -> SetOracle:
    name, params = parse_descriptor(cfg.set_descriptor)
    if extra_params:
        params.update(extra_params)
    return gallery(name, params, cfg.tolerances)


def _pt(p: Optional[Point3]) -> Optional[list[float]]:
    return None if p is None else [p.x, p.y, p.t]


def _hv(v: Optional[HVec]) -> Optional[list[float]]:
    return None if v is None else [v.a, v.b]


def _witness_dict(w: Optional[ChWitness]) -> Optional[dict]:
    if w is None:
        return None
    return {
        "xi0": _pt(w.xi0),
        "xi1": _pt(w.xi1),
        "tau": w.tau,
        "v": _hv(w.v),
        "theta_star": w.theta_star,
        "escape_point": _pt(w.escape_point),
        "margin": w.margin,
        "pair_index": w.pair_index,
    }


def _report_skeleton(cfg: RunConfig) -> dict:
    return {
        "version": __version__,
        "command": cfg.command,
        "set": cfg.set_descriptor,
        "seed": cfg.seed,
        "budget": cfg.budget,
        "samples": cfg.samples,
        "tolerances": {
            "eps_geom": cfg.tolerances.eps_geom,
            "eps_eq": cfg.tolerances.eps_eq,
            "max_iter": cfg.tolerances.max_iter,
        },
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }


def _write_report(cfg: RunConfig, stem: str, report: dict) -> Path:
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    out = cfg.output_dir / f"{stem}.json"
    out.write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return out


def _slug(label: str) -> str:
    return "".join(ch if ch.isalnum() else "_" for ch in label).strip("_")


# ---------------------------------------------------------------------------
# exports


_CUBE_CORNERS = (
    (0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0),
    (0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1),
)
# six tetrahedra around the 0-6 cube diagonal
_TETS = ((0, 5, 1, 6), (0, 1, 2, 6), (0, 2, 3, 6), (0, 3, 7, 6), (0, 7, 4, 6), (0, 4, 5, 6))


def export_levelset(K: SetOracle, tau: float, resolution: int, path: Path) -> Path:
    """Triangle mesh of the boundary of the tau-dilated set, OBJ text.

    Marches tetrahedra over a resolution^3 grid of the dilated bounding
    box; crossing vertices sit at edge midpoints of the binary membership
    field, so they are within one cell diagonal of the true boundary.

    Raises:
        ValueError: non-compact set or resolution < 8.
    """
    if resolution < 8:
        raise ValueError("resolution must be >= 8")
    if not K.is_compact:
        raise ValueError(f"{K.label} is not compact: level-set mesh is unbounded")
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    (xlo, xhi), (ylo, yhi), (tlo, thi) = K.bbox
    pad = 1.05
    xs = [tau * pad * (xlo + (xhi - xlo) * i / (resolution - 1)) for i in range(resolution)]
    ys = [tau * pad * (ylo + (yhi - ylo) * i / (resolution - 1)) for i in range(resolution)]
    ts = [tau * tau * pad * (tlo + (thi - tlo) * i / (resolution - 1)) for i in range(resolution)]

    inv = 1.0 / tau
    field_ = [
        [
            [K.contains(dilate(inv, Point3(x, y, t))) for t in ts]
            for y in ys
        ]
        for x in xs
    ]

    verts: dict[tuple, int] = {}
    vert_list: list[tuple[float, float, float]] = []
    faces: list[tuple[int, int, int]] = []

    def midpoint(a: tuple[int, int, int], b: tuple[int, int, int]) -> int:
        key = (a, b) if a <= b else (b, a)
        idx = verts.get(key)
        if idx is None:
            pa = (xs[a[0]], ys[a[1]], ts[a[2]])
            pb = (xs[b[0]], ys[b[1]], ts[b[2]])
            vert_list.append(((pa[0] + pb[0]) / 2.0, (pa[1] + pb[1]) / 2.0, (pa[2] + pb[2]) / 2.0))
            idx = len(vert_list)
            verts[key] = idx
        return idx

    n = resolution
    for i in range(n - 1):
        for j in range(n - 1):
            for k in range(n - 1):
                corner_idx = [(i + dx, j + dy, k + dz) for dx, dy, dz in _CUBE_CORNERS]
                inside = [field_[a][b][c] for a, b, c in corner_idx]
                if all(inside) or not any(inside):
                    continue
                for tet in _TETS:
                    ins = [t for t in tet if inside[t]]
                    outs = [t for t in tet if not inside[t]]
                    if not ins or not outs:
                        continue
                    if len(ins) == 1 or len(outs) == 1:
                        lone, others = (ins[0], outs) if len(ins) == 1 else (outs[0], ins)
                        m = [midpoint(corner_idx[lone], corner_idx[o]) for o in others]
                        faces.append((m[0], m[1], m[2]))
                    else:
                        p, q = ins
                        r, s = outs
                        m_pr = midpoint(corner_idx[p], corner_idx[r])
                        m_ps = midpoint(corner_idx[p], corner_idx[s])
                        m_qr = midpoint(corner_idx[q], corner_idx[r])
                        m_qs = midpoint(corner_idx[q], corner_idx[s])
                        faces.append((m_pr, m_ps, m_qr))
                        faces.append((m_ps, m_qs, m_qr))

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as fh:
        fh.write(f"# level-set mesh: {K.label}, tau={tau:g}, resolution={resolution}\n")
        for x, y, t in vert_list:
            fh.write(f"v {x:.17g} {y:.17g} {t:.17g}\n")
        for a, b, c in faces:
            fh.write(f"f {a} {b} {c}\n")
    return path


def export_curve(curve: list[Point3], path: Path) -> Path:
    """CSV of a sampled curve: header theta,x,y,t, 17 significant digits."""
    if not curve:
        raise ValueError("cannot export an empty curve")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    m = len(curve)
    with path.open("w", newline="") as fh:
        fh.write("theta,x,y,t\n")
        for j, p in enumerate(curve):
            th = j / (m - 1) if m > 1 else 0.0
            fh.write(f"{th:.17g},{p.x:.17g},{p.y:.17g},{p.t:.17g}\n")
    return path


def import_curve(path: Path) -> list[Point3]:
    """Parse a CSV written by export_curve back into points."""
    pts = []
    lines = Path(path).read_text().strip().splitlines()
    if not lines or lines[0].strip() != "theta,x,y,t":
        raise ValueError(f"{path} is not a curve CSV (missing theta,x,y,t header)")
    for line in lines[1:]:
        _th, x, y, t = line.split(",")
        pts.append(Point3(float(x), float(y), float(t)))
    return pts


# ---------------------------------------------------------------------------
# commands


def _cmd_axioms(cfg: RunConfig) -> int:
    K = _resolve_set(cfg)
    rep = check_axioms(K, cfg.samples, cfg.seed, cfg.tolerances)
    report = _report_skeleton(cfg)
    report["axioms"] = {
        "a_holds": rep.a_holds,
        "b_holds": rep.b_holds,
        "c_holds": rep.c_holds,
        "samples_used": rep.samples_used,
        "b_witness": None
        if rep.b_witness is None
        else {"point": _pt(rep.b_witness[0]), "tau": rep.b_witness[1]},
        "hconvex_witness": None
        if rep.hconvex_witness is None
        else {
            "base": _pt(rep.hconvex_witness[0]),
            "v": _hv(rep.hconvex_witness[1]),
            "theta": rep.hconvex_witness[2],
            "escape_point": _pt(rep.escape_point),
            "margin": rep.escape_margin,
        },
    }
    ok = rep.a_holds and rep.b_holds and rep.c_holds
    out = _write_report(cfg, f"axioms_{_slug(K.label)}", report)
    print(f"axioms {K.label}: a={rep.a_holds} b={rep.b_holds} c={rep.c_holds} -> {out}")
    return 0 if ok else 2


def _cmd_cone(cfg: RunConfig) -> int:
    K = _resolve_set(cfg)
    C = make_cone(K, cfg.cone_kind, cfg.tolerances, n=min(cfg.samples, 1000), seed=cfg.seed)
    validation = cone_validate(C, cfg.samples, cfg.seed)
    report = _report_skeleton(cfg)
    fam = validation.family
    report["cone"] = {
        "kind": C.kind,
        "family_axioms": {
            "i": fam.axiom_i_ok,
            "ii": fam.axiom_ii_ok,
            "iii": fam.axiom_iii_ok,
            "nesting_witness": None
            if fam.nesting_witness is None
            else {
                "tau1": fam.nesting_witness[0],
                "tau2": fam.nesting_witness[1],
                "point": _pt(fam.nesting_witness[2]),
            },
        },
        "homogeneity": None
        if validation.homogeneity is None
        else {"ok": validation.homogeneity.ok, "max_dev": validation.homogeneity.max_dev},
        "convexity_witness": None
        if validation.convexity_witness is None
        else {
            "base": _pt(validation.convexity_witness.base),
            "v": _hv(validation.convexity_witness.v),
            "theta": validation.convexity_witness.theta,
            "lhs": validation.convexity_witness.lhs,
            "rhs": validation.convexity_witness.rhs,
        },
        "verdict": validation.verdict,
    }
    if cfg.compare_closed_form:
        if K.closed_form_cone is None:
            raise ValueError(f"{K.label} has no closed-form cone to compare against")
        dev = compare_closed_form(C, cfg.samples, cfg.seed)
        report["cone"]["closed_form_max_dev"] = dev
    out = _write_report(cfg, f"cone_{_slug(K.label)}_{C.kind}", report)
    print(f"cone {K.label} [{C.kind}]: {validation.verdict} -> {out}")
    return 0 if validation.verdict.startswith("candidate") else 2


def _cmd_ch(cfg: RunConfig) -> int:
    K = _resolve_set(cfg)
    w = falsify_ch(K, cfg.budget, seed=cfg.seed, tol=cfg.tolerances, tau_one=cfg.tau_one)
    report = _report_skeleton(cfg)
    report["ch"] = {"tau_one": cfg.tau_one, "witness": _witness_dict(w)}
    out = _write_report(cfg, f"ch_{_slug(K.label)}", report)
    if w is None:
        print(f"ch {K.label}: no witness in {cfg.budget} pairs -> {out}")
        return 0
    curve_path = cfg.output_dir / f"ch_curve_{_slug(K.label)}.csv"
    export_curve(ch_curve(w.xi0, w.v, w.tau, 101, cfg.tolerances), curve_path)
    print(
        f"ch {K.label}: witness at pair {w.pair_index} "
        f"(tau={w.tau:.6g}, theta={w.theta_star:.4g}, margin={w.margin:.3g}) "
        f"-> {out}, {curve_path}"
    )
    return 2


def _anchor_points(K: SetOracle, count: int = 3) -> list[Point3]:
    """Deterministic envelope anchors: in-set profile points, |t| and r large."""
    P = K.profile
    assert P is not None
    t_lo, t_hi = P.t_range
    found: list[Point3] = []
    for frac_t in (0.8, 0.5, 0.25, -0.8, -0.5, -0.25):
        t = (t_hi if frac_t > 0 else -t_lo) * frac_t
        if t == 0.0:
            continue
        for frac_r in (0.8, 0.6, 0.4, 0.2):
            r = P.r_max * frac_r
            if P.contains2d(r, t):
                found.append(Point3(r, 0.0, t))
                break
        if len(found) >= count:
            break
    return found


def _cmd_radial(cfg: RunConfig) -> int:
    K = _resolve_set(cfg)
    if not K.is_radial or K.profile is None:
        raise ValueError(f"{K.label} is not radial: the necessary conditions do not apply")
    rep = radial_necessary(K.profile, cfg.samples, cfg.seed, cfg.tolerances)
    report = _report_skeleton(cfg)
    report["radial"] = {
        "thm_i_ok": rep.thm_i_ok,
        "thm_ii_ok": rep.thm_ii_ok,
        "thm_i_witness": _pt(rep.thm_i_witness),
        "thm_ii_witness": _pt(rep.thm_ii_witness),
        "caps_checked": rep.caps_checked,
        "solids_checked": rep.solids_checked,
        "r_flat": rep.r_flat,
        "r_sup": rep.r_sup,
    }
    envelope_ok = True
    envelopes = []
    for anchor in _anchor_points(K):
        env = envelope_check(K, anchor, max(64, cfg.samples // 8), cfg.tolerances)
        envelopes.append(
            {
                "anchor": _pt(anchor),
                "solid_min_margin": env.solid_min_margin,
                "cap_min_margin": env.cap_min_margin,
                "solid_failure": _pt(env.solid_failure),
                "cap_failure": _pt(env.cap_failure),
            }
        )
        envelope_ok = envelope_ok and env.ok()
    report["radial"]["envelopes"] = envelopes
    out = _write_report(cfg, f"radial_{_slug(K.label)}", report)
    ok = rep.thm_i_ok and rep.thm_ii_ok and envelope_ok
    print(
        f"radial {K.label}: thm_i={rep.thm_i_ok} thm_ii={rep.thm_ii_ok} "
        f"envelopes_ok={envelope_ok} -> {out}"
    )
    return 0 if ok else 2


# measured outcomes of the reference suite; the gallery command re-runs
# them and flags any drift (None = informational, not enforced)
GALLERY_EXPECTATIONS: dict[str, dict] = {
    "koranyi_ball": {
        "axioms": (True, True, True),
        "ch_witness": False,
        "radial": (True, True),
        "cone_verdict_prefix": "candidate",
    },
    "euclidean_ball": {
        "axioms": (True, True, True),
        "ch_witness": True,
        "radial": (False, True),
        "cone_verdict_prefix": None,
    },
    "cylinder": {
        "axioms": (True, True, True),
        "ch_witness": True,
        "radial": (True, True),
        "cone_verdict_prefix": None,
    },
    "cylinder_hat": {
        "axioms": (True, True, True),
        "ch_witness": False,
        "radial": (True, True),
        "cone_verdict_prefix": "candidate",
    },
    "importante": {
        "axioms": (True, True, True),
        "ch_witness": True,
        "radial": (False, False),
        "cone_verdict_prefix": None,
    },
    "slab_x": {
        "axioms": (False, True, True),
        "ch_witness": False,
        "radial": None,
        "cone_verdict_prefix": None,
    },
}


def _cmd_gallery(cfg: RunConfig) -> int:
    report = _report_skeleton(cfg)
    all_match = True
    blocks = {}
    for name, expect in GALLERY_EXPECTATIONS.items():
        K = gallery(name, None, cfg.tolerances)
        block: dict = {}
        mismatches: list[str] = []

        ax = check_axioms(K, cfg.samples, cfg.seed, cfg.tolerances)
        got_ax = (ax.a_holds, ax.b_holds, ax.c_holds)
        block["axioms"] = list(got_ax)
        if expect["axioms"] is not None and got_ax != expect["axioms"]:
            mismatches.append(f"axioms: expected {expect['axioms']}, got {got_ax}")

        w = falsify_ch(K, cfg.budget, seed=cfg.seed, tol=cfg.tolerances)
        block["ch_witness"] = _witness_dict(w)
        if expect["ch_witness"] is not None and (w is not None) != expect["ch_witness"]:
            mismatches.append(
                f"ch: expected witness={expect['ch_witness']}, got {w is not None}"
            )

        if K.is_radial and K.profile is not None:
            rad = radial_necessary(K.profile, cfg.samples, cfg.seed, cfg.tolerances)
            block["radial"] = [rad.thm_i_ok, rad.thm_ii_ok]
            block["radial_witness"] = _pt(rad.thm_ii_witness or rad.thm_i_witness)
            if expect["radial"] is not None and (rad.thm_i_ok, rad.thm_ii_ok) != expect["radial"]:
                mismatches.append(
                    f"radial: expected {expect['radial']}, got {(rad.thm_i_ok, rad.thm_ii_ok)}"
                )

        if expect["cone_verdict_prefix"] is not None:
            C = make_cone(K, "heisenberg", cfg.tolerances, seed=cfg.seed)
            verdict = cone_validate(C, min(cfg.samples, 800), cfg.seed).verdict
            block["cone_verdict"] = verdict
            if not verdict.startswith(expect["cone_verdict_prefix"]):
                mismatches.append(
                    f"cone: expected prefix {expect['cone_verdict_prefix']!r}, got {verdict!r}"
                )

        block["mismatches"] = mismatches
        blocks[name] = block
        all_match = all_match and not mismatches
        status = "ok" if not mismatches else "MISMATCH"
        print(f"gallery {name}: {status}" + (f" ({'; '.join(mismatches)})" if mismatches else ""))

    report["gallery"] = blocks
    report["all_match"] = all_match
    out = _write_report(cfg, "gallery", report)
    print(f"gallery: {'all expectations matched' if all_match else 'MISMATCHES found'} -> {out}")
    return 0 if all_match else 2


def _cmd_export(cfg: RunConfig) -> int:
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    if cfg.export_kind == "mesh":
        K = _resolve_set(cfg)
        out = cfg.output_dir / f"levelset_{_slug(K.label)}_tau{cfg.tau:g}.obj"
        export_levelset(K, cfg.tau, cfg.resolution, out)
        print(f"export mesh {K.label}: tau={cfg.tau:g} res={cfg.resolution} -> {out}")
        return 0
    if cfg.export_kind == "curve":
        if not cfg.curve_json:
            raise ValueError("export --kind curve requires --curve-json")
        obj = json.loads(Path(cfg.curve_json).read_text())
        if "ch" in obj and obj["ch"].get("witness"):
            spec = obj["ch"]["witness"]
        elif "witness" in obj and obj["witness"]:
            spec = obj["witness"]
        else:
            spec = obj
        xi0 = Point3(*spec["xi0"])
        v = HVec(*spec["v"])
        tau = float(spec["tau"])
        m = int(spec.get("m", 101))
        out = cfg.output_dir / "curve.csv"
        export_curve(ch_curve(xi0, v, tau, m, cfg.tolerances), out)
        print(f"export curve: tau={tau:g}, {m} samples -> {out}")
        return 0
    raise ValueError(f"unknown export kind {cfg.export_kind!r}")


_COMMANDS = {
    "axioms": _cmd_axioms,
    "cone": _cmd_cone,
    "ch": _cmd_ch,
    "radial": _cmd_radial,
    "gallery": _cmd_gallery,
    "export": _cmd_export,
}


def run(cfg: RunConfig) -> int:
    """Execute one configured command; returns the process exit code."""
    handler = _COMMANDS.get(cfg.command)
    if handler is None:
        raise ValueError(f"unknown command {cfg.command!r}")
    return handler(cfg)


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1; exit code 2 is reserved for found witnesses
    def error(self, message: str) -> None:  # noqa: D102
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="heisconvex",
        description="Convexity verification toolkit for the Heisenberg group.",
    )
    parser.add_argument("--version", action="version", version=f"heisconvex {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_set: bool = True) -> None:
        if with_set:
            p.add_argument(
                "--set",
                default="koranyi_ball",
                help=f"gallery name, inline JSON, or JSON file (names: {', '.join(GALLERY_NAMES)})",
            )
            p.add_argument("--params", default="", help="JSON object merged into the set params")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=2000, help="pair budget for falsifiers")
        p.add_argument("--samples", type=int, default=2000, help="sample count for checks")
        p.add_argument("--eps-geom", type=float, default=DEFAULT_TOL.eps_geom)
        p.add_argument("--eps-eq", type=float, default=DEFAULT_TOL.eps_eq)
        p.add_argument("--out", default=".", help="output directory for reports")

    common(sub.add_parser("axioms", help="check assumptions a/b/c on a set"))

    cone = sub.add_parser("cone", help="build and validate the cone function of a set")
    common(cone)
    cone.add_argument("--kind", choices=("heisenberg", "euclidean"), default="heisenberg")
    cone.add_argument(
        "--compare-closed-form",
        action="store_true",
        help="also compare against the gallery closed form (error if none)",
    )

    ch = sub.add_parser("ch", help="hunt for a dilation-family convexity violation")
    common(ch)
    ch.add_argument("--tau-one", action="store_true", help="restrict to tau=1 (horizontal segments)")

    common(sub.add_parser("radial", help="radial necessary conditions and envelope sweep"))

    common(sub.add_parser("gallery", help="run the reference suite against expected verdicts"), with_set=False)

    exp = sub.add_parser("export", help="export a level-set mesh or an interpolation curve")
    common(exp)
    exp.add_argument("--kind", choices=MESH_KINDS, default="mesh")
    exp.add_argument("--tau", type=float, default=1.0, help="dilation level of the exported set")
    exp.add_argument("--resolution", type=int, default=32, help="grid resolution (>= 8)")
    exp.add_argument("--curve-json", default="", help="witness JSON (from ch) or curve spec")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        tol = Tolerances(eps_geom=args.eps_geom, eps_eq=args.eps_eq)
        params = {}
        if getattr(args, "params", ""):
            params = json.loads(args.params)
            if not isinstance(params, dict):
                raise ValueError("--params must be a JSON object")
        descriptor = getattr(args, "set", "koranyi_ball")
        if params:
            name, base = parse_descriptor(descriptor)
            base.update(params)
            descriptor = json.dumps({"set": name, "params": base})
        cfg = RunConfig(
            command=args.command,
            set_descriptor=descriptor,
            seed=args.seed,
            budget=args.budget,
            samples=args.samples,
            tolerances=tol,
            output_dir=Path(args.out),
            compare_closed_form=getattr(args, "compare_closed_form", False),
            tau_one=getattr(args, "tau_one", False),
            cone_kind=getattr(args, "kind", "heisenberg") if args.command == "cone" else "heisenberg",
            export_kind=getattr(args, "kind", "mesh") if args.command == "export" else "mesh",
            tau=getattr(args, "tau", 1.0),
            resolution=getattr(args, "resolution", 32),
            curve_json=getattr(args, "curve_json", ""),
        )
        return run(cfg)
    except (ValueError, RuntimeError, OSError, json.JSONDecodeError) as exc:
        print(f"heisconvex: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
