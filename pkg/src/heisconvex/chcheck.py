"""Falsifier and necessary conditions for dilation-family convexity.

A compact set K generates the nested family {dilate(tau, K)}.  The family
interpolates convexly (condition C_H) exactly when, for every pair of
points xi0 in K and dilate(tau, xi1) reachable from xi0 by one horizontal
step v, the reparametrized curve

    theta -> dilate(1/tau_theta, xi0 o exp_h(theta v)),
    tau_theta = (1 - theta) + theta tau,

stays inside K.  The admissible tau come from a quadratic (the vertical
component of xi0^{-1} o dilate(tau, xi1) must vanish), the curves have
piecewise closed forms used as cross-checks, and for rotation-invariant
sets two necessary conditions and two explicit envelopes (a revolution
solid and a gauge-sphere cap) must hold.  Everything is a seeded
semidecision producing replayable witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    DEFAULT_TOL,
    HVec,
    Point3,
    Tolerances,
    dilate,
    exp_h,
    group_mul,
    norm,
)
from .sets import (
    RadialProfile,
    SetOracle,
    boundary_sample,
    dilation_level,
    escape_margin,
    escapes,
    sample_in_set,
    scan_horizontal_segments,
    theta_grid,
)

DEGENERATE_TAU_GRID = (0.25, 0.5, 2.0, 4.0)


@dataclass
class TauSolution:
    """A level tau connecting two points horizontally.

    v is the horizontal step with xi0 o exp_h(v) = dilate(tau, xi1);
    degenerate marks the all-tau-admissible case, where tau comes from a
    fixed probe grid rather than the quadratic.
    """

    tau: float
    v: HVec
    discriminant: float
    degenerate: bool = False


@dataclass
class ChWitness:
    """A certified violation of the interpolation condition."""

    xi0: Point3
    xi1: Point3
    tau: float
    v: HVec
    theta_star: float
    escape_point: Point3
    margin: float
    pair_index: int = -1


@dataclass
class RadialNecessityReport:
    """Outcomes of the two radial necessary conditions."""

    thm_i_ok: bool
    thm_ii_ok: bool
    thm_i_witness: Optional[Point3]
    thm_ii_witness: Optional[Point3]
    caps_checked: int
    solids_checked: int
    r_flat: float
    r_sup: float


@dataclass
class EnvelopeReport:
    """Membership margins of the revolution-solid and cap envelopes.

    Margins are 1 minus the dilation level of the probed point: positive
    strictly inside, about zero on the boundary, negative outside.
    """

    solid_min_margin: float
    cap_min_margin: float
    solid_checked: int
    cap_checked: int
    solid_failure: Optional[Point3]
    cap_failure: Optional[Point3]
    phi_endpoint_residual: float
    cap_identity_residual: float

    def ok(self, slack: float = 1e-6) -> bool:
        return self.solid_min_margin >= -slack and self.cap_min_margin >= -slack


def solve_tau(
    xi0: Point3,
    xi1: Point3,
    tol: Tolerances = DEFAULT_TOL,
) -> list[TauSolution]:
    """All tau > 0 with dilate(tau, xi1) on the horizontal plane of xi0.

    Solves t1 tau^2 + 2 (x0 y1 - x1 y0) tau - t0 = 0 (stable form), the
    condition that xi0^{-1} o dilate(tau, xi1) has no vertical component.
    The linear (t1 = 0) and the all-tau-admissible (both points planar
    through e, zero cross term) degenerations are handled; the latter
    returns the fixed probe grid flagged degenerate.
    """
    x0, y0, t0 = xi0
    x1, y1, t1 = xi1
    cross = x0 * y1 - x1 * y0
    scale = 1.0 + abs(t0) + abs(t1) + abs(cross)
    res_bound = tol.eps_eq * (1.0 + abs(t0) + abs(t1))

    def make(tau: float, disc: float, degenerate: bool = False) -> TauSolution:
        return TauSolution(tau, HVec(tau * x1 - x0, tau * y1 - y0), disc, degenerate)

    def verified(tau: float) -> bool:
        # every returned root must replay the quadratic; this rejects the
        # Vieta complement when clamping or cancellation corrupted it
        if not (math.isfinite(tau) and tau > tol.eps_eq):
            return False
        return abs(t1 * tau * tau + 2.0 * cross * tau - t0) <= res_bound

    if t1 == 0.0:
        if cross == 0.0:
            if t0 == 0.0:
                return [make(tau, math.inf, degenerate=True) for tau in DEGENERATE_TAU_GRID]
            return []
        tau = t0 / (2.0 * cross)
        return [make(tau, cross * cross)] if verified(tau) else []

    disc = cross * cross + t0 * t1
    if disc < 0.0:
        if disc >= -tol.eps_eq * scale * scale:
            disc = 0.0
        else:
            return []
    root = math.sqrt(disc)
    # stable quadratic: avoid cancellation between -cross and the root
    if cross >= 0.0:
        q = -(cross + root)
    else:
        q = -(cross - root)
    candidates = [q / t1, -t0 / q] if q != 0.0 else [root / t1]
    out: list[TauSolution] = []
    for tau in candidates:
        if verified(tau) and all(abs(tau - s.tau) > tol.eps_eq * scale for s in out):
            out.append(make(tau, disc))
    out.sort(key=lambda s: s.tau)
    return out


def tau_residual(xi0: Point3, xi1: Point3, tau: float) -> float:
    """Residual of the connecting quadratic at tau."""
    cross = xi0.x * xi1.y - xi1.x * xi0.y
    return xi1.t * tau * tau + 2.0 * cross * tau - xi0.t


def ch_curve(
    xi0: Point3,
    v: HVec,
    tau: float,
    m: int,
    tol: Tolerances = DEFAULT_TOL,
) -> list[Point3]:
    """The interpolation curve at m uniform theta samples of [0, 1].

    Endpoints are xi0 and dilate(1/tau, xi0 o exp_h(v)).
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    if m < 2:
        raise ValueError("need m >= 2 samples")
    pts = []
    for j in range(m):
        th = j / (m - 1)
        tau_th = (1.0 - th) + th * tau
        if tau_th <= tol.eps_eq:
            raise RuntimeError("interpolated level crossed zero")
        pts.append(dilate(1.0 / tau_th, group_mul(xi0, exp_h(HVec(th * v.a, th * v.b)))))
    return pts


def _case_of(xi0: Point3, alpha: float, beta: float, tau: float, tol: Tolerances) -> str:
    scale = 1.0 + abs(xi0.x) + abs(xi0.y) + abs(alpha) + abs(beta) + abs(tau)
    if abs(xi0.x * (tau - 1.0) - alpha) > tol.eps_eq * scale:
        return "i"
    if abs(xi0.y * (tau - 1.0) - beta) > tol.eps_eq * scale:
        return "ii"
    return "iii"


def ch_curve_cases(
    xi0: Point3,
    alpha: float,
    beta: float,
    tau: float,
    m: int,
    tol: Tolerances = DEFAULT_TOL,
    case: Optional[str] = None,
) -> list[Point3]:
    """The same curve as ch_curve, from the piecewise closed forms.

    Case i applies when x0 (tau - 1) != alpha, case ii when that is an
    equality but y0 (tau - 1) != beta, case iii when both are equalities.
    The closed forms are evaluated at the parameter values matching the
    uniform theta grid, so the output is pointwise comparable to ch_curve.

    Raises:
        ValueError: an explicitly requested case does not match the inputs.
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    if m < 2:
        raise ValueError("need m >= 2 samples")
    x0, y0, t0 = xi0
    actual = _case_of(xi0, alpha, beta, tau, tol)
    if case is not None and case != actual:
        raise ValueError(f"inputs select case {actual}, not case {case}")
    A = x0 * beta - y0 * alpha
    pts = []
    for j in range(m):
        th = j / (m - 1)
        tau_th = (1.0 - th) + th * tau
        if actual == "i":
            s = (x0 + th * alpha) / tau_th
            den = (tau - 1.0) * x0 - alpha
            w = (tau - 1.0) * s - alpha
            y = ((y0 * (tau - 1.0) - beta) * s + A) / den
            t = (t0 * w * w - 2.0 * A * (x0 - s) * w) / (den * den)
            pts.append(Point3(s, y, t))
        elif actual == "ii":
            s = (y0 + th * beta) / tau_th
            den = (tau - 1.0) * y0 - beta
            w = (tau - 1.0) * s - beta
            a2 = x0 * (beta - (tau - 1.0) * y0)
            t = (t0 * w * w - 2.0 * a2 * (y0 - s) * w) / (den * den)
            pts.append(Point3(x0, s, t))
        else:
            s = th
            den = 1.0 + s * (tau - 1.0)
            pts.append(Point3(x0, y0, t0 / (den * den)))
    return pts


def _interior_thetas(m: int) -> list[float]:
    return [th for th in theta_grid(m) if 0.0 < th < 1.0]


def falsify_ch(
    K: SetOracle,
    budget: int,
    m: int = 33,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOL,
    tau_one: bool = False,
) -> Optional[ChWitness]:
    """Hunt for a pair of points whose interpolation curve leaves K.

    Samples point pairs (half uniform, a quarter near the boundary, a
    quarter biased to the vertical extremes), solves for every admissible
    tau, and tests the m-sample curve with the robust escape predicate.
    With tau_one=True the search restricts to horizontally reachable pairs
    at tau = 1, which is literally the horizontal-segment convexity check
    of the set module (same probe stream, same verdicts on equal seeds).

    Requires assumptions a and b on K (the escape predicate and the
    boundary sampler rely on them); run check_axioms first.

    Returns:
        The first witness in seeded sample order, or None after budget pairs.
    """
    if budget < 1:
        raise ValueError("need budget >= 1")
    if tau_one:
        found, used = scan_horizontal_segments(K, budget, m, seed, tol)
        if found is None:
            return None
        p, v, th, pt, margin = found
        return ChWitness(p, group_mul(p, exp_h(v)), 1.0, v, th, pt, margin, pair_index=used - 1)

    rng = np.random.default_rng([seed, 0xC4])
    thetas = _interior_thetas(m)
    pool: Optional[list[Point3]] = None
    try:
        pool = boundary_sample(K, min(256, max(16, budget // 16)), seed, tol)
    except (ValueError, RuntimeError):
        pool = None
    (tlo, thi) = K.bbox[2]

    def draw_uniform() -> Point3:
        return sample_in_set(K, 1, rng)[0]

    def draw_extreme() -> Point3:
        batch = sample_in_set(K, 8, rng)
        return max(batch, key=lambda p: abs(p.t))

    for i in range(budget):
        mode = i % 4
        if mode == 2 and pool:
            xi0 = pool[int(rng.integers(0, len(pool)))]
            xi1 = pool[int(rng.integers(0, len(pool)))]
        elif mode == 3:
            xi0 = draw_extreme()
            xi1 = draw_uniform()
        else:
            xi0 = draw_uniform()
            xi1 = draw_uniform()
        for sol in solve_tau(xi0, xi1, tol):
            for th in thetas:
                tau_th = (1.0 - th) + th * sol.tau
                pt = dilate(
                    1.0 / tau_th,
                    group_mul(xi0, exp_h(HVec(th * sol.v.a, th * sol.v.b))),
                )
                if escapes(K, pt, tol):
                    return ChWitness(
                        xi0,
                        xi1,
                        sol.tau,
                        sol.v,
                        th,
                        pt,
                        escape_margin(K, pt, tol),
                        pair_index=i,
                    )
    return None


def transport_witness(w: ChWitness, alpha: float) -> ChWitness:
    """Carry a witness along the dilation by alpha.

    Both endpoints and the escape point dilate, the step scales linearly,
    tau and theta are invariant; the result witnesses the dilated set.
    """
    if alpha <= 0.0:
        raise ValueError("dilation factor must be positive")
    return ChWitness(
        dilate(alpha, w.xi0),
        dilate(alpha, w.xi1),
        w.tau,
        HVec(alpha * w.v.a, alpha * w.v.b),
        w.theta_star,
        dilate(alpha, w.escape_point),
        w.margin,
        w.pair_index,
    )


def replay_ch_witness(K: SetOracle, w: ChWitness, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Re-verify a witness from its stored fields alone."""
    if not (K.contains(w.xi0) and K.contains(w.xi1)):
        return False
    scale = 1.0 + abs(w.xi0.t) + abs(w.xi1.t)
    if abs(tau_residual(w.xi0, w.xi1, w.tau)) > 1e-9 * scale * (1.0 + abs(w.tau)) ** 2:
        return False
    expect_v = HVec(w.tau * w.xi1.x - w.xi0.x, w.tau * w.xi1.y - w.xi0.y)
    vscale = 1.0 + abs(expect_v.a) + abs(expect_v.b)
    if abs(expect_v.a - w.v.a) > tol.eps_eq * vscale or abs(expect_v.b - w.v.b) > tol.eps_eq * vscale:
        return False
    tau_th = (1.0 - w.theta_star) + w.theta_star * w.tau
    pt = dilate(
        1.0 / tau_th,
        group_mul(w.xi0, exp_h(HVec(w.theta_star * w.v.a, w.theta_star * w.v.b))),
    )
    pscale = 1.0 + norm(pt, "euclidean")
    if max(abs(pt.x - w.escape_point.x), abs(pt.y - w.escape_point.y), abs(pt.t - w.escape_point.t)) > tol.eps_geom * pscale:
        return False
    return escapes(K, w.escape_point, tol)


# ---------------------------------------------------------------------------
# radial necessary conditions


def _outer_radius(P: RadialProfile, t: float, tol: Tolerances, grid: int = 512) -> float:
    """Outermost radius of the profile at height t, by scan plus bisection."""
    r_hi = P.r_max * 1.01 + 10.0 * tol.eps_geom
    last_true = None
    for j in range(grid, -1, -1):
        r = r_hi * j / grid
        if P.contains2d(r, t):
            last_true = r
            break
    if last_true is None:
        return 0.0
    lo = last_true
    hi = min(last_true + r_hi / grid, r_hi)
    for _ in range(tol.max_iter):
        if hi - lo <= tol.eps_geom:
            break
        mid = 0.5 * (lo + hi)
        if P.contains2d(mid, t):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def radial_necessary(
    P: RadialProfile,
    n: int,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOL,
) -> RadialNecessityReport:
    """The two necessary conditions for a radial set's dilation family.

    i: with r* the outer radius of the t = 0 slice, the gauge ball of
    radius r* lies inside the set (probed on n points of its slightly
    shrunk profile region, boundary arc plus seeded interior);
    ii: the widest radius over all heights does not exceed r* (+slack),
    i.e. the planar projection of the set stays in the t = 0 slice.
    Witness points replay against the oracle via the profile.
    """
    if n < 1:
        raise ValueError("need n >= 1 samples")
    rng = np.random.default_rng([seed, 0x8A])
    r_flat = _outer_radius(P, 0.0, tol)
    shrink = 1.0 - max(1e-6, 10.0 * tol.eps_geom)

    thm_i_ok = True
    thm_i_witness = None
    caps_checked = 0
    if r_flat > 0.0:
        half = n // 2
        for k in range(half):
            r = r_flat * math.sqrt(k / max(1, half - 1)) if half > 1 else 0.0
            t_abs = math.sqrt(max(r_flat ** 4 - r ** 4, 0.0))
            for t in (t_abs, -t_abs):
                caps_checked += 1
                if not P.contains2d(r * shrink, t * shrink * shrink):
                    thm_i_ok = False
                    thm_i_witness = Point3(r * shrink, 0.0, t * shrink * shrink)
                    break
            if not thm_i_ok:
                break
        if thm_i_ok:
            for _ in range(n - 2 * (n // 2) + n // 2):
                r = r_flat * rng.uniform(0.0, 1.0) ** 0.25
                t_cap = math.sqrt(max(r_flat ** 4 - r ** 4, 0.0))
                t = rng.uniform(-t_cap, t_cap)
                caps_checked += 1
                if not P.contains2d(r * shrink, t * shrink * shrink):
                    thm_i_ok = False
                    thm_i_witness = Point3(r * shrink, 0.0, t * shrink * shrink)
                    break

    t_lo, t_hi = P.t_range
    r_sup = r_flat
    t_at = 0.0
    grid = max(64, n // 8)
    for j in range(grid + 1):
        t = t_lo + (t_hi - t_lo) * j / grid
        r_t = _outer_radius(P, t, tol)
        if r_t > r_sup:
            r_sup = r_t
            t_at = t
    slack = max(10.0 * tol.eps_geom, tol.eps_geom * (1.0 + r_flat))
    thm_ii_ok = r_sup <= r_flat + slack
    thm_ii_witness = None if thm_ii_ok else Point3(r_sup, 0.0, 0.0)
    if not thm_ii_ok:
        # refine around the best height so the witness radius is sharp
        span = (t_hi - t_lo) / grid
        for t in np.linspace(max(t_lo, t_at - span), min(t_hi, t_at + span), 65):
            r_t = _outer_radius(P, float(t), tol)
            if r_t > r_sup:
                r_sup = r_t
        thm_ii_witness = Point3(r_sup, 0.0, 0.0)

    return RadialNecessityReport(
        thm_i_ok,
        thm_ii_ok,
        thm_i_witness,
        thm_ii_witness,
        caps_checked,
        solids_checked=1 if r_flat > 0.0 else 0,
        r_flat=r_flat,
        r_sup=r_sup,
    )


# ---------------------------------------------------------------------------
# envelopes


def envelope_phi(r: float, r0: float, t0: float) -> float:
    """Height profile of the revolution solid anchored at (r0, t0)."""
    mag = 0.5 * (abs(t0) + math.sqrt(t0 * t0 + 4.0 * r0 * r0 * r * r - 4.0 * r ** 4))
    return math.copysign(mag, t0)


def envelope_psi(r: float, r0: float, t0: float) -> float:
    """Gauge-sphere cap profile through (r0, t0): r^4 + psi^2 is constant."""
    return math.sqrt(max(r0 ** 4 + t0 * t0 - r ** 4, 0.0))


def envelope_check(
    K: SetOracle,
    xi0: Point3,
    n: int,
    tol: Tolerances = DEFAULT_TOL,
) -> EnvelopeReport:
    """Probe the two envelopes every interpolating family must contain.

    The revolution solid stacks disks of radius r at height phi(r) for r
    in [r0/sqrt(2), r0]; the cap is the gauge-ball sector beyond t0.  Both
    are necessary once the set's dilation family interpolates convexly, so
    a negative margin beyond slack is a genuine obstruction.  Grids are
    deterministic; margins come from dilation-level bisection.

    Raises:
        ValueError: xi0 outside K, or t0 = 0, or r0 = 0.
    """
    if n < 2:
        raise ValueError("need n >= 2 samples")
    if not K.contains(xi0):
        raise ValueError("anchor point must lie in the set")
    r0 = math.hypot(xi0.x, xi0.y)
    t0 = xi0.t
    if abs(t0) <= tol.eps_eq or r0 <= tol.eps_eq:
        raise ValueError("anchor needs nonzero vertical part and nonzero radius")

    fine = Tolerances(eps_geom=tol.eps_eq, eps_eq=tol.eps_eq, max_iter=tol.max_iter)

    def margin(pt: Point3) -> float:
        return 1.0 - dilation_level(K, pt, fine)

    golden = math.pi * (3.0 - math.sqrt(5.0))
    solid_min = math.inf
    solid_failure = None
    for k in range(n):
        r = r0 / math.sqrt(2.0) + (r0 - r0 / math.sqrt(2.0)) * k / (n - 1)
        rho = r * ((k % 3) + 1) / 3.0
        ang = k * golden
        pt = Point3(rho * math.cos(ang), rho * math.sin(ang), envelope_phi(r, r0, t0))
        mg = margin(pt)
        if mg < solid_min:
            solid_min = mg
            if mg < -max(1e-6, 10.0 * tol.eps_geom):
                solid_failure = pt
    phi_res = abs(envelope_phi(r0, r0, t0) - t0)

    cap_min = math.inf
    cap_failure = None
    cap_res = 0.0
    sgn = math.copysign(1.0, t0)
    for k in range(n):
        r = r0 * k / (n - 1)
        psi = envelope_psi(r, r0, t0)
        cap_res = max(cap_res, abs(r ** 4 + psi * psi - (r0 ** 4 + t0 * t0)))
        ang = k * golden + 1.0
        for t in (sgn * psi, 0.5 * (t0 + sgn * psi)):
            pt = Point3(r * math.cos(ang), r * math.sin(ang), t)
            mg = margin(pt)
            if mg < cap_min:
                cap_min = mg
                if mg < -max(1e-6, 10.0 * tol.eps_geom):
                    cap_failure = pt
    return EnvelopeReport(
        solid_min_margin=solid_min,
        cap_min_margin=cap_min,
        solid_checked=n,
        cap_checked=2 * n,
        solid_failure=solid_failure,
        cap_failure=cap_failure,
        phi_endpoint_residual=phi_res,
        cap_identity_residual=cap_res,
    )
