"""Candidate cone functions built from a set by dilation bisection.

For a compact set K, star-shaped under dilations with the identity
interior, the nested family {dilate(tau, K)} determines the function
f(p) = min{tau >= 0 : p in dilate(tau, K)}; this module evaluates it by
monotone bisection, checks the three level-family axioms (coverage,
nesting, closedness from above) by sampling, and validates the built
function's homogeneity and horizontal convexity with the falsifiers.
A Euclidean variant scales all three coordinates by the same factor,
giving the classical cone baseline f(p) = min{tau : p in tau K}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import DEFAULT_TOL, Point3, Tolerances, dilate
from .convexity import (
    ConvexityWitness,
    FnOracle,
    HomogeneityReport,
    check_hconvex_fn,
    check_homogeneous,
)
from .sets import (
    SetOracle,
    box_oracle,
    check_axioms,
    dilation_bracket,
    dilation_level,
    sample_in_set,
)

KINDS = ("heisenberg", "euclidean")


@dataclass
class ConeFunction:
    """An evaluation handle for the dilation-level function of a set.

    Build through make_cone, which enforces the set assumptions the
    bisection relies on.
    """

    source: SetOracle
    kind: str = "heisenberg"
    tol: Tolerances = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.tol is None:
            self.tol = DEFAULT_TOL


@dataclass
class FamilyReport:
    """Sampled outcomes of the level-family axioms for one cone."""

    axiom_i_ok: bool
    axiom_ii_ok: bool
    axiom_iii_ok: bool
    nesting_witness: Optional[tuple[float, float, Point3]]
    samples: int
    seed: int
    coverage_failure: Optional[Point3] = None
    closedness_failure: Optional[tuple[Point3, float]] = None

    @property
    def all_ok(self) -> bool:
        return self.axiom_i_ok and self.axiom_ii_ok and self.axiom_iii_ok


@dataclass
class ConeValidation:
    family: FamilyReport
    homogeneity: Optional[HomogeneityReport]
    convexity_witness: Optional[ConvexityWitness]
    verdict: str


def make_cone(
    K: SetOracle,
    kind: str = "heisenberg",
    tol: Tolerances = DEFAULT_TOL,
    n: int = 1000,
    seed: int = 0,
    require_axioms: bool = True,
) -> ConeFunction:
    """Build the cone handle, checking assumptions a and b first.

    The bisection in cone_eval is only monotone for compact sets with the
    identity interior that are star-shaped under dilations, so oracles
    failing those checks are refused.  require_axioms=False skips the
    refusal; that exists so family_axioms_check can demonstrate how the
    axioms fail on such sets, not for production use.
    """
    if require_axioms:
        report = check_axioms(K, n, seed, tol)
        if not report.a_holds:
            raise ValueError(
                f"{K.label} fails assumption a (compact with identity interior); "
                "refusing to build a cone function"
            )
        if not report.b_holds:
            raise ValueError(
                f"{K.label} fails assumption b (star-shaped under dilations); "
                "the dilation family is not nested, refusing to build"
            )
    return ConeFunction(K, kind, tol)


def cone_eval(C: ConeFunction, xi: Point3) -> float:
    """The dilation level of xi: exponential bracketing plus bisection.

    Returns the midpoint of the final bracket; levels below eps_geom snap
    to 0, so cone_eval(e) = 0 exactly.
    """
    return dilation_level(C.source, xi, C.tol, scaling=C.kind)


def cone_eval_bracket(C: ConeFunction, xi: Point3) -> tuple[float, float]:
    """The (lo, hi) bracket around the returned level, for interval tests."""
    return dilation_bracket(C.source, xi, C.tol, scaling=C.kind)


def cone_fn_oracle(C: ConeFunction) -> FnOracle:
    return FnOracle(lambda p: cone_eval(C, p), f"cone[{C.source.label}]")


def _scaled_box(C: ConeFunction, factor: float) -> SetOracle:
    (xlo, xhi), (ylo, yhi), (tlo, thi) = C.source.bbox
    f2 = factor if C.kind == "euclidean" else factor * factor
    return box_oracle(
        ((factor * xlo, factor * xhi), (factor * ylo, factor * yhi), (f2 * tlo, f2 * thi)),
        label=f"box({factor:g} x {C.source.label})",
    )


def family_axioms_check(C: ConeFunction, n: int, seed: int = 0) -> FamilyReport:
    """Sample the three level-family axioms for the dilation family of C.

    I (coverage): points of an enlarged box all get a finite level;
    II (nesting): a point of the tau1-copy lies in every larger copy;
    III (closedness from above): membership holds at the computed level
    plus shrinking upward probes.
    """
    if n < 1:
        raise ValueError("need n >= 1 samples")
    rng = np.random.default_rng([seed, 0xFA])
    tol = C.tol
    big = _scaled_box(C, 2.0)
    (xlo, xhi), (ylo, yhi), (tlo, thi) = big.bbox

    axiom_i_ok = True
    coverage_failure = None
    for _ in range(max(1, n // 3)):
        p = Point3(rng.uniform(xlo, xhi), rng.uniform(ylo, yhi), rng.uniform(tlo, thi))
        try:
            cone_eval(C, p)
        except RuntimeError:
            axiom_i_ok = False
            coverage_failure = p
            break

    axiom_ii_ok = True
    nesting_witness = None
    K = C.source
    try:
        nested_pts = sample_in_set(K, max(1, n // 3), rng)
    except RuntimeError:
        nested_pts = []
        axiom_ii_ok = False
    for p in nested_pts:
        taus = np.exp(rng.uniform(np.log(0.125), np.log(8.0), 2))
        tau1, tau2 = float(min(taus)), float(max(taus))
        if tau2 - tau1 < 1e-3:
            tau2 = tau1 * 1.5
        if not K.contains(_scale(C, tau1 / tau2, p)):
            axiom_ii_ok = False
            nesting_witness = (tau1, tau2, _scale(C, tau1, p))
            break

    axiom_iii_ok = True
    closedness_failure = None
    if axiom_i_ok:
        for _ in range(max(1, n // 3)):
            p = Point3(rng.uniform(xlo, xhi), rng.uniform(ylo, yhi), rng.uniform(tlo, thi))
            try:
                level = cone_eval(C, p)
            except RuntimeError:
                continue
            if level <= 0.0:
                continue
            for eps in (1e-2, 1e-3, 1e-4, 1e-5):
                tau = level * (1.0 + eps) + tol.eps_geom
                if not K.contains(_scale(C, 1.0 / tau, p)):
                    axiom_iii_ok = False
                    closedness_failure = (p, tau)
                    break
            if closedness_failure is not None:
                break

    return FamilyReport(
        axiom_i_ok,
        axiom_ii_ok,
        axiom_iii_ok,
        nesting_witness,
        samples=n,
        seed=seed,
        coverage_failure=coverage_failure,
        closedness_failure=closedness_failure,
    )


def _scale(C: ConeFunction, lam: float, p: Point3) -> Point3:
    if C.kind == "euclidean":
        return Point3(lam * p.x, lam * p.y, lam * p.t)
    return dilate(lam, p)


def cone_validate(C: ConeFunction, n: int, seed: int = 0) -> ConeValidation:
    """Validate the built function: family axioms, homogeneity, convexity.

    Bisection output carries eps_geom-level noise, so the falsifiers run
    with slack an order above it; genuine violations (the flat cylinder's
    arcs overshoot by ~1e-2) sit far above that.
    """
    family = family_axioms_check(C, min(n, 600), seed)
    if not family.all_ok:
        return ConeValidation(family, None, None, "family axioms failed")
    tol = C.tol
    slack = max(100.0 * tol.eps_geom, tol.eps_eq)
    loose = Tolerances(
        eps_geom=max(tol.eps_geom, slack),
        eps_eq=slack,
        max_iter=tol.max_iter,
    )
    f = cone_fn_oracle(C)
    (xlo, xhi), (ylo, yhi), (tlo, thi) = C.source.bbox
    hom = check_homogeneous(f, max(50, n // 20), seed, loose, box=((xlo, xhi), (ylo, yhi), (tlo, thi)))
    witness = check_hconvex_fn(f, _scaled_box(C, 1.5), n, grid=5, seed=seed, tol=loose)
    if not hom.ok:
        verdict = "homogeneity deviation above tolerance"
    elif witness is not None:
        verdict = "horizontal convexity witness found"
    else:
        verdict = "candidate cone function (not falsified)"
    return ConeValidation(family, hom, witness, verdict)


def compare_closed_form(C: ConeFunction, n: int, seed: int = 0) -> float:
    """Max |cone_eval - closed form| over n sampled points of a 1.5x box.

    Raises:
        ValueError: the source set has no recorded closed form.
    """
    if C.source.closed_form_cone is None:
        raise ValueError(f"{C.source.label} has no closed-form cone function")
    rng = np.random.default_rng([seed, 0xCF])
    (xlo, xhi), (ylo, yhi), (tlo, thi) = _scaled_box(C, 1.5).bbox
    worst = 0.0
    for _ in range(n):
        p = Point3(rng.uniform(xlo, xhi), rng.uniform(ylo, yhi), rng.uniform(tlo, thi))
        worst = max(worst, abs(cone_eval(C, p) - C.source.closed_form_cone(p)))
    return worst
