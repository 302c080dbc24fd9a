import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heisconvex import (
    ConvexityWitness,
    FnOracle,
    HVec,
    Point3,
    check_hconvex_fn,
    check_homogeneous,
    check_hquasiconvex_fn,
    gallery,
    horizontal_gradient,
    norm,
    replay_witness,
    subdiff_contains,
    subdiff_properties,
)
from heisconvex.sets import box_oracle

BOX3 = box_oracle(((-3.0, 3.0), (-3.0, 3.0), (-3.0, 3.0)), "box3")

gauge = FnOracle(eval=lambda p: norm(p, "koranyi"), label="gauge")
planar = FnOracle(eval=lambda p: math.hypot(p.x, p.y), label="planar")
ln_bump = FnOracle(
    eval=lambda p: math.log(p.x * p.x + p.y * p.y + p.t * p.t + 1.0), label="ln-bump"
)


def test_planar_norm_is_hconvex():
    # |(x,y)| restricted to horizontal segments is a 1d convex function
    assert check_hconvex_fn(planar, BOX3, 2000, seed=0) is None


def test_gauge_is_hquasiconvex():
    assert check_hquasiconvex_fn(gauge, BOX3, 2000, seed=0) is None


def test_ln_bump_witness_and_replay():
    w = check_hconvex_fn(ln_bump, BOX3, 2000, seed=0)
    assert w is not None
    assert w.kind == "convex"
    assert w.lhs > w.rhs
    assert replay_witness(ln_bump, w)
    # but its sublevels are balls, so the quasiconvex falsifier stays quiet
    assert check_hquasiconvex_fn(ln_bump, BOX3, 2000, seed=0) is None


def test_replay_recomputes_from_fields():
    w = check_hconvex_fn(ln_bump, BOX3, 2000, seed=0)
    # same stored data against a convex function cannot replay
    assert not replay_witness(planar, w)
    fabricated = ConvexityWitness(
        base=Point3(1.0, 0.0, 0.0), v=HVec(0.5, 0.0), theta=0.5, lhs=9.0, rhs=0.0
    )
    assert not replay_witness(planar, fabricated)


def test_hconvex_implies_hquasiconvex_on_shared_seeds():
    for f in (planar, gauge):
        for seed in (0, 1, 7):
            if check_hconvex_fn(f, BOX3, 500, seed=seed) is None:
                assert check_hquasiconvex_fn(f, BOX3, 500, seed=seed) is None


def test_quasi_witness_on_indicator_like_profile():
    # max of shifted planar norms has square-ish sublevels in (x,t): still quasiconvex;
    # a genuinely non-quasiconvex profile (two bumps) must be caught
    two_wells = FnOracle(
        eval=lambda p: min((p.x - 1.0) ** 2 + p.y * p.y, (p.x + 1.0) ** 2 + p.y * p.y),
        label="two-wells",
    )
    w = check_hquasiconvex_fn(two_wells, BOX3, 2000, seed=0)
    assert w is not None
    assert w.kind == "quasi"
    assert replay_witness(two_wells, w)


def test_check_homogeneous_gauge():
    rep = check_homogeneous(gauge, 500, seed=0)
    assert rep.ok
    assert rep.max_dev <= 1e-12
    assert rep.samples == 500


def test_check_homogeneous_rejects_ln():
    rep = check_homogeneous(ln_bump, 500, seed=0)
    assert not rep.ok
    assert rep.max_dev > 1e-3
    lam, p = rep.worst
    assert 0.25 <= lam <= 4.0


def test_check_homogeneous_validates_n():
    with pytest.raises(ValueError):
        check_homogeneous(gauge, 0)


def test_closed_form_cones_are_homogeneous():
    for name in ("euclidean_ball", "cylinder_hat", "koranyi_ball"):
        f = FnOracle(eval=gallery(name).closed_form_cone, label=name)
        rep = check_homogeneous(f, 400, seed=0)
        assert rep.ok, name
        assert rep.max_dev <= 1e-12


def test_horizontal_gradient_matches_analytic():
    # f = x^2 + y^2: X f = 2x, Y f = 2y at any point (t plays no role)
    f = FnOracle(eval=lambda p: p.x * p.x + p.y * p.y, label="rho2")
    g = horizontal_gradient(f, Point3(0.7, -0.3, 2.0))
    assert g.a == pytest.approx(1.4, abs=1e-8)
    assert g.b == pytest.approx(-0.6, abs=1e-8)


def test_subdiff_contains_gauge():
    xi = Point3(1.0, 0.0, 0.0)
    p = horizontal_gradient(gauge, xi)
    assert subdiff_contains(gauge, xi, p, 200, 1.0, seed=0)
    # an overscaled candidate fails the supporting inequality
    assert not subdiff_contains(gauge, xi, HVec(3.0 * p.a, 3.0 * p.b), 200, 1.0, seed=0)
    with pytest.raises(ValueError):
        subdiff_contains(gauge, xi, p, 10, 0.0)


@given(st.floats(min_value=0.3, max_value=2.0), st.floats(min_value=0.0, max_value=2 * math.pi))
@settings(max_examples=20, deadline=None)
def test_subdiff_gradient_everywhere_smooth(rad, phi):
    xi = Point3(rad * math.cos(phi), rad * math.sin(phi), 0.3)
    p = horizontal_gradient(planar, xi)
    assert subdiff_contains(planar, xi, p, 100, 0.5, seed=3)


def test_subdiff_properties_gauge():
    rep = subdiff_properties(gauge, 20, seed=0)
    assert not rep.precondition_failed
    assert rep.homogeneous
    assert rep.radial
    assert rep.pairs_tested == 20
    assert rep.persistence_ok
    assert rep.rotation_ok


def test_subdiff_properties_requires_homogeneity():
    rep = subdiff_properties(ln_bump, 10, seed=0)
    assert rep.precondition_failed
    assert not rep.homogeneous
    assert rep.pairs_tested == 0
