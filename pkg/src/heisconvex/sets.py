"""Compact candidate sets as membership oracles.

A set is a predicate on points plus a finite bounding box and some
metadata; radial sets additionally carry their profile in the (r, t)
half-plane.  The module ships a small gallery of reference sets, checks
the three standing assumptions on a candidate set by seeded sampling

    a. compact with the identity interior,
    b. star-shaped under dilations: dilate(tau, K) inside K for tau in (0,1),
    c. horizontally convex: horizontal segments with endpoints in K stay in K,

and provides the sampling utilities (rejection sampling, boundary points
by ray bisection, dilation-level bisection, robust escape tests) shared by
the falsifiers in the other modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    HVec,
    ORIGIN,
    Point3,
    Tolerances,
    dilate,
    exp_h,
    group_mul,
    norm,
)

Bbox = tuple[tuple[float, float], tuple[float, float], tuple[float, float]]

GALLERY_NAMES = (
    "koranyi_ball",
    "euclidean_ball",
    "cylinder",
    "cylinder_hat",
    "importante",
    "slab_x",
    "radial_custom",
)


@dataclass
class RadialProfile:
    """A rotation-invariant set described in the (r, t) half-plane."""

    contains2d: Callable[[float, float], bool]
    r_max: float
    t_range: tuple[float, float]


@dataclass
class SetOracle:
    """A candidate set: membership predicate, bounding box, metadata.

    The bounding box is the compactness proxy: for compact oracles the
    predicate is false outside it.  Non-compact sets (the slab) keep a
    truncated box for sampling and are flagged is_compact=False.
    """

    contains: Callable[[Point3], bool]
    bbox: Bbox
    label: str
    is_radial: bool = False
    is_compact: bool = True
    profile: Optional[RadialProfile] = None
    closed_form_cone: Optional[Callable[[Point3], float]] = None


@dataclass
class AxiomReport:
    """Outcome of the a/b/c assumption checks on one set."""

    a_holds: bool
    b_holds: bool
    hconvex_witness: Optional[tuple[Point3, HVec, float]]
    samples_used: int
    seed: int
    b_witness: Optional[tuple[Point3, float]] = None
    escape_point: Optional[Point3] = None
    escape_margin: Optional[float] = None

    @property
    def c_holds(self) -> bool:
        return self.hconvex_witness is None


def bbox_diameter(bbox: Bbox) -> float:
    dx = bbox[0][1] - bbox[0][0]
    dy = bbox[1][1] - bbox[1][0]
    dt = bbox[2][1] - bbox[2][0]
    return math.sqrt(dx * dx + dy * dy + dt * dt)


def bbox_scale(bbox: Bbox) -> float:
    return max(abs(v) for pair in bbox for v in pair)


def box_oracle(bbox: Bbox, label: str = "box") -> SetOracle:
    """Axis-aligned box as an oracle; handy as a sampling domain."""

    def inside(p: Point3) -> bool:
        return (
            bbox[0][0] <= p.x <= bbox[0][1]
            and bbox[1][0] <= p.y <= bbox[1][1]
            and bbox[2][0] <= p.t <= bbox[2][1]
        )

    return SetOracle(inside, bbox, label, is_radial=False)


# ---------------------------------------------------------------------------
# gallery


def _pad(b: float) -> float:
    return b + 1e-5 * (1.0 + abs(b))


def _sym_bbox(hx: float, hy: float, ht: float) -> Bbox:
    return ((-_pad(hx), _pad(hx)), (-_pad(hy), _pad(hy)), (-_pad(ht), _pad(ht)))


def _koranyi_ball(radius: float, tol: Tolerances) -> SetOracle:
    eps = tol.eps_geom

    def inside(p: Point3) -> bool:
        return norm(p, "koranyi") <= radius + eps

    profile = RadialProfile(
        contains2d=lambda r, t: (r * r * r * r + t * t) ** 0.25 <= radius + eps,
        r_max=radius,
        t_range=(-radius * radius, radius * radius),
    )
    return SetOracle(
        inside,
        _sym_bbox(radius, radius, radius * radius),
        f"koranyi_ball(r={radius:g})",
        is_radial=True,
        profile=profile,
        closed_form_cone=lambda p: norm(p, "koranyi") / radius,
    )


def _euclidean_cone_value(p: Point3, radius: float) -> float:
    # smallest tau with dilate(1/tau, p) in the Euclidean ball of this radius
    rho2 = p.x * p.x + p.y * p.y
    inner = math.sqrt(rho2 * rho2 + 4.0 * radius * radius * p.t * p.t)
    return math.sqrt((rho2 + inner) / (2.0 * radius * radius))


def _euclidean_ball(radius: float, tol: Tolerances) -> SetOracle:
    eps = tol.eps_geom

    def inside(p: Point3) -> bool:
        return norm(p, "euclidean") <= radius + eps

    profile = RadialProfile(
        contains2d=lambda r, t: math.hypot(r, t) <= radius + eps,
        r_max=radius,
        t_range=(-radius, radius),
    )
    return SetOracle(
        inside,
        _sym_bbox(radius, radius, radius),
        f"euclidean_ball(r={radius:g})",
        is_radial=True,
        profile=profile,
        closed_form_cone=lambda p: _euclidean_cone_value(p, radius),
    )


def _cylinder(tol: Tolerances) -> SetOracle:
    eps = tol.eps_geom

    def inside(p: Point3) -> bool:
        return math.hypot(p.x, p.y) <= 1.0 + eps and abs(p.t) <= 1.0 + eps

    profile = RadialProfile(
        contains2d=lambda r, t: r <= 1.0 + eps and abs(t) <= 1.0 + eps,
        r_max=1.0,
        t_range=(-1.0, 1.0),
    )
    return SetOracle(
        inside,
        _sym_bbox(1.0, 1.0, 1.0),
        "cylinder",
        is_radial=True,
        profile=profile,
    )


def _cylinder_hat(tol: Tolerances) -> SetOracle:
    # Unit-radius cylinder capped by the Koranyi ball of radius 2; this is
    # exactly the level-1 set of max(|(x,y)|_E, |.|_G / 2).
    eps = tol.eps_geom

    def cone_value(p: Point3) -> float:
        return max(math.hypot(p.x, p.y), 0.5 * norm(p, "koranyi"))

    def inside(p: Point3) -> bool:
        return cone_value(p) <= 1.0 + eps

    profile = RadialProfile(
        contains2d=lambda r, t: max(r, 0.5 * (r * r * r * r + t * t) ** 0.25)
        <= 1.0 + eps,
        r_max=1.0,
        t_range=(-4.0, 4.0),
    )
    return SetOracle(
        inside,
        _sym_bbox(1.0, 1.0, 4.0),
        "cylinder_hat",
        is_radial=True,
        profile=profile,
        closed_form_cone=cone_value,
    )


# constants of the capped-sine radial set, computed once at import
IMPORTANTE_R_FLAT = ((1.0 + 2.0 ** 0.25) ** 4 - 2.0) ** 0.25
IMPORTANTE_R_MAX = ((1.0 + 2.0 ** 0.25) ** 4 - 1.5) ** 0.25
IMPORTANTE_ANCHOR = Point3(IMPORTANTE_R_MAX, 0.0, 1.5 * math.pi)
IMPORTANTE_ANCHOR_NORM = norm(IMPORTANTE_ANCHOR, "koranyi")


def importante_defining_fn(p: Point3) -> float:
    """max of the sine-perturbed quartic gauge and the scaled Koranyi norm.

    The first branch is horizontally convex but not homogeneous; the level-1
    set of the max is compact, radial, horizontally convex, and its widest
    horizontal slice sits away from t=0, which is what makes it the standard
    counterexample for the radial necessary conditions.
    """
    rho2 = p.x * p.x + p.y * p.y
    f1 = (rho2 * rho2 + 2.0 + 0.5 * math.sin(p.t)) ** 0.25 - 2.0 ** 0.25
    return max(f1, norm(p, "koranyi") / IMPORTANTE_ANCHOR_NORM)


def _importante(tol: Tolerances) -> SetOracle:
    eps = tol.eps_geom

    def inside(p: Point3) -> bool:
        return importante_defining_fn(p) <= 1.0 + eps

    half_t = IMPORTANTE_ANCHOR_NORM * IMPORTANTE_ANCHOR_NORM
    profile = RadialProfile(
        contains2d=lambda r, t: importante_defining_fn(Point3(r, 0.0, t)) <= 1.0 + eps,
        r_max=IMPORTANTE_R_MAX,
        t_range=(-half_t, half_t),
    )
    return SetOracle(
        inside,
        _sym_bbox(IMPORTANTE_ANCHOR_NORM, IMPORTANTE_ANCHOR_NORM, half_t),
        "importante",
        is_radial=True,
        profile=profile,
    )


def _slab_x(tol: Tolerances) -> SetOracle:
    eps = tol.eps_geom

    def inside(p: Point3) -> bool:
        return abs(p.x) <= 1.0 + eps

    return SetOracle(
        inside,
        _sym_bbox(1.0, 4.0, 4.0),
        "slab_x",
        is_radial=False,
        is_compact=False,
    )


def _segment_distance(px: float, py: float, ax: float, ay: float, bx: float, by: float) -> float:
    vx, vy = bx - ax, by - ay
    wx, wy = px - ax, py - ay
    vv = vx * vx + vy * vy
    s = 0.0 if vv == 0.0 else max(0.0, min(1.0, (wx * vx + wy * vy) / vv))
    dx, dy = wx - s * vx, wy - s * vy
    return math.hypot(dx, dy)


def polygon_profile(vertices: Sequence[Sequence[float]], tol: Tolerances = DEFAULT_TOL) -> RadialProfile:
    """Closed polygon in the (r, t) half-plane, even-odd membership.

    Points within eps_geom of an edge count as inside (closed set).
    """
    verts = [(float(r), float(t)) for r, t in vertices]
    if len(verts) < 3:
        raise ValueError("polygon profile needs at least 3 vertices")
    if any(r < 0.0 for r, _ in verts):
        raise ValueError("polygon profile vertices must have r >= 0")
    r_max = max(r for r, _ in verts)
    t_lo = min(t for _, t in verts)
    t_hi = max(t for _, t in verts)
    eps = tol.eps_geom

    def contains2d(r: float, t: float) -> bool:
        inside = False
        n = len(verts)
        for i in range(n):
            ax, ay = verts[i]
            bx, by = verts[(i + 1) % n]
            if _segment_distance(r, t, ax, ay, bx, by) <= eps:
                return True
            if (ay > t) != (by > t):
                x_cross = ax + (t - ay) * (bx - ax) / (by - ay)
                if x_cross > r:
                    inside = not inside
        return inside

    return RadialProfile(contains2d=contains2d, r_max=r_max, t_range=(t_lo, t_hi))


def radial_to_oracle(P: RadialProfile, label: str = "radial", tol: Tolerances = DEFAULT_TOL) -> SetOracle:
    """Rotate a profile around the t-axis into a full membership oracle."""

    def inside(p: Point3) -> bool:
        return P.contains2d(math.hypot(p.x, p.y), p.t)

    ht = max(abs(P.t_range[0]), abs(P.t_range[1]))
    return SetOracle(
        inside,
        _sym_bbox(P.r_max, P.r_max, ht),
        label,
        is_radial=True,
        profile=P,
    )


def gallery(name: str, params: Optional[dict] = None, tol: Tolerances = DEFAULT_TOL) -> SetOracle:
    """Build one of the named reference sets.

    Args:
        name: one of GALLERY_NAMES.
        params: per-set parameters; koranyi_ball/euclidean_ball accept
            {"r": radius}, radial_custom requires {"vertices": [[r, t], ...]}.

    Raises:
        ValueError: unknown name or missing/invalid params.
    """
    params = dict(params or {})
    if name == "koranyi_ball":
        return _koranyi_ball(float(params.pop("r", 1.0)), tol)
    if name == "euclidean_ball":
        return _euclidean_ball(float(params.pop("r", 1.0)), tol)
    if name == "cylinder":
        return _cylinder(tol)
    if name == "cylinder_hat":
        return _cylinder_hat(tol)
    if name == "importante":
        return _importante(tol)
    if name == "slab_x":
        return _slab_x(tol)
    if name == "radial_custom":
        if "vertices" not in params:
            raise ValueError("radial_custom requires params['vertices']")
        profile = polygon_profile(params.pop("vertices"), tol)
        return radial_to_oracle(profile, "radial_custom", tol)
    raise ValueError(f"unknown gallery set {name!r}; known: {', '.join(GALLERY_NAMES)}")


# ---------------------------------------------------------------------------
# sampling and bisection utilities


def sample_in_set(
    K: SetOracle,
    n: int,
    rng: np.random.Generator,
    max_tries: Optional[int] = None,
) -> list[Point3]:
    """n points of K by rejection from the bounding box (seeded, deterministic)."""
    if max_tries is None:
        max_tries = 1000 + 400 * n
    (xlo, xhi), (ylo, yhi), (tlo, thi) = K.bbox
    out: list[Point3] = []
    tries = 0
    while len(out) < n:
        if tries >= max_tries:
            raise RuntimeError(
                f"rejection sampling stalled on {K.label}: {len(out)}/{n} after {tries} tries"
            )
        m = min(max(64, n), max_tries - tries)
        xs = rng.uniform(xlo, xhi, m)
        ys = rng.uniform(ylo, yhi, m)
        ts = rng.uniform(tlo, thi, m)
        tries += m
        for i in range(m):
            p = Point3(float(xs[i]), float(ys[i]), float(ts[i]))
            if K.contains(p):
                out.append(p)
                if len(out) == n:
                    break
    return out


def dilation_level(
    K: SetOracle,
    q: Point3,
    tol: Tolerances = DEFAULT_TOL,
    scaling: str = "heisenberg",
) -> float:
    """Smallest level tau with q inside the tau-scaled copy of K.

    Uses exponential bracketing from tau=1 followed by bisection, assuming
    the single-flip monotonicity that assumption b guarantees.  Levels
    below eps_geom snap to 0 (the vertex).

    Args:
        scaling: "heisenberg" for anisotropic dilations, "euclidean" for
            plain scalar scaling.

    Raises:
        RuntimeError: bracketing runs away (identity not interior, or the
            set is not star-shaped under dilations: assumption b fails).
    """
    if scaling == "heisenberg":
        def member(tau: float) -> bool:
            return K.contains(dilate(1.0 / tau, q))
    elif scaling == "euclidean":
        def member(tau: float) -> bool:
            return K.contains(Point3(q.x / tau, q.y / tau, q.t / tau))
    else:
        raise ValueError(f"unknown scaling {scaling!r}")

    limit = max(1.0, bbox_scale(K.bbox)) * 2.0 ** 32
    if member(1.0):
        hi = 1.0
        lo = 0.5
        while member(lo):
            hi = lo
            lo *= 0.5
            if lo < 0.25 * tol.eps_geom:
                return 0.0
    else:
        lo = 1.0
        hi = 2.0
        while not member(hi):
            lo = hi
            hi *= 2.0
            if hi > limit:
                raise RuntimeError(
                    f"dilation bracketing ran away on {K.label}: the identity is "
                    "not interior or the set violates assumption b "
                    "(star-shapedness under dilations)"
                )
    for _ in range(tol.max_iter):
        if hi - lo <= tol.eps_geom * max(1.0, lo):
            break
        mid = 0.5 * (lo + hi)
        if member(mid):
            hi = mid
        else:
            lo = mid
    level = 0.5 * (lo + hi)
    return 0.0 if level < tol.eps_geom else level


def dilation_bracket(
    K: SetOracle,
    q: Point3,
    tol: Tolerances = DEFAULT_TOL,
    scaling: str = "heisenberg",
) -> tuple[float, float]:
    """The final (lo, hi) bisection bracket around the dilation level."""
    level = dilation_level(K, q, tol, scaling)
    if level == 0.0:
        return 0.0, tol.eps_geom
    half = 0.5 * tol.eps_geom * max(1.0, level)
    return level - half, level + half


def escapes(K: SetOracle, p: Point3, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Robustly outside K: p and its slight pullback toward e both fail.

    The pullback uses the dilation by 1/(1+eta), eta = 10*eps_geom, which
    is an erosion for sets star-shaped under dilations; points merely
    within membership slack of the boundary do not count as escaped.
    """
    if K.contains(p):
        return False
    eta = 10.0 * tol.eps_geom
    return not K.contains(dilate(1.0 / (1.0 + eta), p))


def escape_margin(K: SetOracle, p: Point3, tol: Tolerances = DEFAULT_TOL) -> float:
    """How far outside K the point sits, in dilation-level units.

    Positive for escaped points: the dilation level of p minus one.
    """
    return dilation_level(K, p, tol) - 1.0


def boundary_sample(
    K: SetOracle,
    n: int,
    seed: int,
    tol: Tolerances = DEFAULT_TOL,
) -> list[Point3]:
    """n near-boundary points found by bisecting dilation rays from e.

    Requires a compact set with the identity interior (assumption a); the
    ray parameter is the dilation scale, which is exact for sets that are
    star-shaped under dilations (assumption b).

    Raises:
        ValueError: non-compact input (rays never exit the box).
        RuntimeError: a ray fails to exit or the identity is not interior.
    """
    if not K.is_compact:
        raise ValueError(f"{K.label} is not compact: boundary rays never exit the box")
    if not K.contains(ORIGIN):
        raise RuntimeError(f"identity not inside {K.label}; cannot shoot rays from e")
    rng = np.random.default_rng([seed, 0xB0])
    out: list[Point3] = []
    while len(out) < n:
        d = rng.normal(size=3)
        length = math.sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2])
        if length < 1e-12:
            continue
        u = Point3(float(d[0]) / length, float(d[1]) / length, float(d[2]) / length)
        scale = max(1.0, norm(u, "koranyi"))
        lo, hi = 0.0, 1.0
        steps = 0
        while K.contains(dilate(hi, u)):
            lo = hi
            hi *= 2.0
            steps += 1
            if steps > 60:
                raise RuntimeError(f"ray from e never exits {K.label}: non-compact input?")
        for _ in range(tol.max_iter):
            if (hi - lo) * scale <= tol.eps_geom:
                break
            mid = 0.5 * (lo + hi)
            if K.contains(dilate(mid, u)):
                lo = mid
            else:
                hi = mid
        # inner bracket end: guaranteed member, still within eps of the boundary
        out.append(dilate(lo, u))
    return out


def sample_hvec(rng: np.random.Generator, diameter: float, floor: float = 1e-3) -> HVec:
    """Random horizontal vector: uniform direction, log-uniform magnitude."""
    phi = rng.uniform(0.0, 2.0 * math.pi)
    mag = math.exp(rng.uniform(math.log(floor), math.log(max(diameter, 2.0 * floor))))
    return HVec(mag * math.cos(phi), mag * math.sin(phi))


def theta_grid(m: int) -> list[float]:
    """m uniform samples of [0,1]; always contains 1/2."""
    if m < 2:
        raise ValueError("need at least 2 segment samples")
    grid = [j / (m - 1) for j in range(m)]
    if 0.5 not in grid:
        grid.append(0.5)
        grid.sort()
    return grid


def horizontal_probes(
    K: SetOracle,
    n: int,
    seed: int,
    tol: Tolerances = DEFAULT_TOL,
):
    """Yield up to n seeded probes (p, v, q) with p, q = p o exp_h(v) in K.

    This is the shared sampling core of the horizontal-segment axiom check
    and of the tau=1 restriction of the family falsifier, so the two
    deliver identical verdicts on identical seeds.
    """
    rng = np.random.default_rng([seed, 0xC])
    diam = bbox_diameter(K.bbox)
    produced = 0
    tries = 0
    max_tries = 1000 + 400 * n
    while produced < n and tries < max_tries:
        tries += 1
        p = sample_in_set(K, 1, rng)[0]
        v = sample_hvec(rng, diam)
        q = group_mul(p, exp_h(v))
        if K.contains(q):
            produced += 1
            yield p, v, q


def scan_horizontal_segments(
    K: SetOracle,
    n: int,
    grid: int,
    seed: int,
    tol: Tolerances = DEFAULT_TOL,
) -> tuple[Optional[tuple[Point3, HVec, float, Point3, float]], int]:
    """Hunt for a horizontal segment leaving K.

    Returns ((p, v, theta, escape_point, margin) or None, probes_used);
    the first escape in seeded sample order wins.
    """
    thetas = [th for th in theta_grid(grid) if 0.0 < th < 1.0]
    used = 0
    for p, v, _q in horizontal_probes(K, n, seed, tol):
        used += 1
        for th in thetas:
            pt = group_mul(p, exp_h(HVec(th * v.a, th * v.b)))
            if escapes(K, pt, tol):
                try:
                    margin = escape_margin(K, pt, tol)
                except RuntimeError:
                    # margin needs the level bisection; on sets violating
                    # assumption b it diverges, but the escape still stands
                    margin = math.inf
                return (p, v, th, pt, margin), used
    return None, used


def check_axioms(
    K: SetOracle,
    n: int,
    seed: int,
    tol: Tolerances = DEFAULT_TOL,
    grid: int = 9,
) -> AxiomReport:
    """Check assumptions a, b, c on K by seeded sampling.

    a probes a small quasi-ball around the identity (plus the compactness
    flag); b dilates n sampled points by factors in (0,1); c scans n
    horizontal segments with both endpoints in K on a theta grid.
    """
    if n < 1:
        raise ValueError("need n >= 1 samples")
    rng = np.random.default_rng([seed, 0xA])

    (xlo, xhi), (ylo, yhi), (tlo, thi) = K.bbox
    half = min((xhi - xlo) / 2.0, (yhi - ylo) / 2.0, math.sqrt(max(thi - tlo, 0.0) / 2.0))
    rho = 1e-3 * min(1.0, half) if half > 0.0 else 1e-3
    probes = [
        ORIGIN,
        Point3(rho, 0.0, 0.0),
        Point3(-rho, 0.0, 0.0),
        Point3(0.0, rho, 0.0),
        Point3(0.0, -rho, 0.0),
        Point3(0.0, 0.0, rho * rho),
        Point3(0.0, 0.0, -rho * rho),
    ]
    for _ in range(8):
        phi = rng.uniform(0.0, 2.0 * math.pi)
        s = rng.uniform(0.0, rho)
        probes.append(Point3(s * math.cos(phi), s * math.sin(phi), rng.uniform(-1.0, 1.0) * rho * rho))
    a_holds = K.is_compact and all(K.contains(p) for p in probes)

    b_holds = True
    b_witness = None
    if a_holds or K.contains(ORIGIN):
        for p in sample_in_set(K, n, rng):
            tau = rng.uniform(0.0, 1.0)
            if not K.contains(dilate(tau, p)):
                b_holds = False
                b_witness = (p, tau)
                break
    else:
        b_holds = False

    found, used = scan_horizontal_segments(K, n, grid, seed, tol)
    if found is None:
        return AxiomReport(a_holds, b_holds, None, used, seed, b_witness)
    p, v, th, pt, margin = found
    return AxiomReport(
        a_holds,
        b_holds,
        (p, v, th),
        used,
        seed,
        b_witness,
        escape_point=pt,
        escape_margin=margin,
    )


def dilate_oracle(K: SetOracle, alpha: float) -> SetOracle:
    """The dilated set: membership of p tested as dilate(1/alpha, p) in K."""
    if alpha <= 0.0:
        raise ValueError("dilation factor must be positive")
    (xlo, xhi), (ylo, yhi), (tlo, thi) = K.bbox
    a2 = alpha * alpha
    profile = None
    if K.profile is not None:
        inner = K.profile
        profile = RadialProfile(
            contains2d=lambda r, t: inner.contains2d(r / alpha, t / a2),
            r_max=inner.r_max * alpha,
            t_range=(inner.t_range[0] * a2, inner.t_range[1] * a2),
        )
    cone = None
    if K.closed_form_cone is not None:
        inner_cone = K.closed_form_cone
        cone = lambda p: inner_cone(p) / alpha
    return SetOracle(
        contains=lambda p: K.contains(dilate(1.0 / alpha, p)),
        bbox=((alpha * xlo, alpha * xhi), (alpha * ylo, alpha * yhi), (a2 * tlo, a2 * thi)),
        label=f"dilate({alpha:g}, {K.label})",
        is_radial=K.is_radial,
        is_compact=K.is_compact,
        profile=profile,
        closed_form_cone=cone,
    )
