import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heisconvex import (
    Point3,
    Tolerances,
    boundary_sample,
    check_axioms,
    dilate,
    dilation_bracket,
    dilation_level,
    escape_margin,
    escapes,
    gallery,
    norm,
    sample_in_set,
)
from heisconvex.sets import (
    GALLERY_NAMES,
    IMPORTANTE_R_FLAT,
    IMPORTANTE_R_MAX,
    box_oracle,
    dilate_oracle,
    polygon_profile,
    radial_to_oracle,
    scan_horizontal_segments,
    theta_grid,
)

PLUS_VERTICES = [
    (0.0, 2.0),
    (0.2, 2.0),
    (0.2, 0.2),
    (2.0, 0.2),
    (2.0, -0.2),
    (0.2, -0.2),
    (0.2, -2.0),
    (0.0, -2.0),
]


def plus_set():
    return gallery("radial_custom", {"vertices": PLUS_VERTICES, "t_half": 0.5})


def test_gallery_names_resolve():
    for name in GALLERY_NAMES:
        if name == "radial_custom":
            K = plus_set()
        else:
            K = gallery(name)
        assert K.contains(Point3(0.0, 0.0, 0.0))
    with pytest.raises(ValueError):
        gallery("not_a_set")
    with pytest.raises(ValueError):
        gallery("radial_custom")


def test_gallery_params():
    K = gallery("koranyi_ball", {"r": 2.0})
    assert K.contains(Point3(1.9, 0.0, 0.0))
    assert not K.contains(Point3(2.1, 0.0, 0.0))


def test_membership_spot_checks():
    K = gallery("koranyi_ball")
    assert K.contains(Point3(0.0, 0.0, 1.0))
    assert not K.contains(Point3(0.0, 0.0, 1.01))
    # gauge-sphere point outside the euclidean ball
    s = Point3(2.0 ** -0.5, 0.0, math.sqrt(3.0) / 2.0)
    assert K.contains(s)
    assert not gallery("euclidean_ball").contains(s)

    C = gallery("cylinder")
    assert C.contains(Point3(1.0, 0.0, 1.0))
    assert not C.contains(Point3(1.0, 0.0, 1.001))
    assert not C.contains(Point3(1.001, 0.0, 0.0))

    H = gallery("cylinder_hat")
    assert H.contains(Point3(1.0, 0.0, 0.0))
    assert H.contains(Point3(0.0, 0.0, 3.999))  # hat: gauge norm <= 2 allows t up to 4
    assert not H.contains(Point3(0.0, 0.0, 4.01))
    assert not H.contains(Point3(1.01, 0.0, 0.0))

    S = gallery("slab_x")
    assert S.contains(Point3(1.0, 50.0, -999.0))
    assert not S.contains(Point3(1.01, 0.0, 0.0))
    assert not S.is_compact


def test_importante_profile_constants():
    # widest slice sits at t = -pi/2 (depth 3/2), flat slice at depth 2
    K = gallery("importante")
    assert K.is_radial
    assert K.profile.contains2d(IMPORTANTE_R_FLAT - 1e-9, 0.0)
    assert not K.profile.contains2d(IMPORTANTE_R_FLAT + 1e-3, 0.0)
    assert K.profile.contains2d(IMPORTANTE_R_MAX - 1e-9, -math.pi / 2.0)
    assert not K.profile.contains2d(IMPORTANTE_R_MAX + 1e-3, -math.pi / 2.0)
    assert IMPORTANTE_R_MAX > IMPORTANTE_R_FLAT


def test_dilation_level_koranyi_is_gauge():
    K = gallery("koranyi_ball")
    for p in (Point3(0.5, 0.0, 0.0), Point3(0.3, -0.4, 0.7), Point3(0.0, 0.0, -2.0)):
        assert dilation_level(K, p) == pytest.approx(norm(p, "koranyi"), abs=1e-6)
    assert dilation_level(K, Point3(0.0, 0.0, 0.0)) == 0.0


def test_dilation_level_euclidean_scaling():
    K = gallery("euclidean_ball")
    p = Point3(0.3, -0.4, 0.7)
    assert dilation_level(K, p, scaling="euclidean") == pytest.approx(
        norm(p, "euclidean"), abs=1e-6
    )


def test_dilation_bracket_sandwiches():
    K = gallery("cylinder")
    p = Point3(0.4, 0.3, -0.8)
    lo, hi = dilation_bracket(K, p)
    lvl = dilation_level(K, p)
    assert lo <= lvl <= hi
    assert hi - lo <= 2e-7


def test_dilation_level_unbounded_direction():
    S = gallery("slab_x")
    # (0,1,0) never enters a scaled slab's bbox truncation but is in the slab itself
    assert dilation_level(S, Point3(0.5, 0.0, 0.0)) <= 0.5 + 1e-6


def test_escapes_and_margin():
    K = gallery("koranyi_ball")
    assert not escapes(K, Point3(0.5, 0.0, 0.0))
    assert not escapes(K, Point3(1.0, 0.0, 0.0))  # boundary is not a robust escape
    out = Point3(1.1, 0.0, 0.0)
    assert escapes(K, out)
    assert escape_margin(K, out) == pytest.approx(0.1, abs=1e-5)


def test_sample_in_set_members_and_determinism():
    K = gallery("cylinder_hat")
    pts1 = sample_in_set(K, 64, np.random.default_rng(9))
    pts2 = sample_in_set(K, 64, np.random.default_rng(9))
    assert pts1 == pts2
    assert all(K.contains(p) for p in pts1)
    assert all(isinstance(p.x, float) for p in pts1)


def test_boundary_sample_members_near_level_one():
    K = gallery("euclidean_ball")
    pts = boundary_sample(K, 32, seed=4)
    assert len(pts) == 32
    for p in pts:
        assert K.contains(p)
        assert dilation_level(K, p) == pytest.approx(1.0, abs=1e-4)


def test_boundary_sample_needs_compact():
    with pytest.raises(ValueError):
        boundary_sample(gallery("slab_x"), 8, seed=0)


def test_theta_grid_contains_half():
    for m in (2, 3, 9, 10, 33):
        grid = theta_grid(m)
        assert 0.5 in grid
        assert grid[0] == 0.0 and grid[-1] == 1.0
        assert grid == sorted(grid)
    with pytest.raises(ValueError):
        theta_grid(1)


AXIOM_TABLE = {
    "koranyi_ball": (True, True, True),
    "euclidean_ball": (True, True, True),
    "cylinder": (True, True, True),
    "cylinder_hat": (True, True, True),
    "importante": (True, True, True),
    "slab_x": (False, True, True),
}


@pytest.mark.parametrize("name", sorted(AXIOM_TABLE))
def test_check_axioms_gallery(name):
    rep = check_axioms(gallery(name), 800, seed=0)
    assert (rep.a_holds, rep.b_holds, rep.c_holds) == AXIOM_TABLE[name]


def test_plus_polygon_not_hconvex():
    K = plus_set()
    rep = check_axioms(K, 800, seed=0)
    assert rep.a_holds and rep.b_holds
    assert not rep.c_holds
    p, v, theta = rep.hconvex_witness
    assert K.contains(p)
    assert rep.escape_point is not None
    assert escapes(K, rep.escape_point)

    # hand instance: both arm tips are in, the elbow midpoint is not
    a = Point3(1.5, 0.0, 0.1)
    b = Point3(0.0, -0.2, a.t + 2.0 * (a.y * (0.0 - a.x) - a.x * (-0.2 - a.y)))
    mid = Point3(0.75, -0.1, 0.1 + 2.0 * (a.y * (0.75 - a.x) - a.x * (-0.1 - a.y)))
    assert K.contains(a) and K.contains(b)
    assert not K.contains(mid)


def test_scan_clean_on_koranyi():
    w, used = scan_horizontal_segments(gallery("koranyi_ball"), 500, 9, seed=0)
    assert w is None
    assert used == 500


def test_box_oracle():
    B = box_oracle(((-1.0, 1.0), (-2.0, 2.0), (-3.0, 3.0)), "b")
    assert B.contains(Point3(0.9, -1.9, 2.9))
    assert not B.contains(Point3(1.1, 0.0, 0.0))


@given(st.floats(min_value=0.25, max_value=4.0))
@settings(max_examples=25, deadline=None)
def test_dilate_oracle_membership(alpha):
    K = gallery("koranyi_ball")
    KA = dilate_oracle(K, alpha)
    p = Point3(0.4, 0.2, -0.5)
    assert KA.contains(dilate(alpha, p)) == K.contains(p)
    assert KA.profile.r_max == pytest.approx(alpha * K.profile.r_max)


def test_dilate_oracle_closed_form():
    K = gallery("koranyi_ball")
    K2 = dilate_oracle(K, 2.0)
    p = Point3(0.7, -0.2, 1.3)
    assert K2.closed_form_cone(p) == pytest.approx(K.closed_form_cone(p) / 2.0)
    with pytest.raises(ValueError):
        dilate_oracle(K, 0.0)


def test_polygon_profile_plus():
    P = polygon_profile(PLUS_VERTICES)
    assert P.contains2d(1.9, 0.0)
    assert P.contains2d(0.0, 1.9)
    assert not P.contains2d(1.0, 1.0)
    K = radial_to_oracle(P, "plus")
    assert K.is_radial
    assert K.contains(Point3(0.0, 1.9, 0.0))
    assert K.contains(Point3(-1.9, 0.0, 0.0))  # radial: any planar rotation


def test_cylinder_hat_closed_form_matches_oracle():
    K = gallery("cylinder_hat")
    rng = np.random.default_rng(12)
    for _ in range(300):
        p = Point3(*(rng.uniform(-1.7, 1.7, size=2)), rng.uniform(-4.5, 4.5))
        f = K.closed_form_cone(p)
        if abs(f - 1.0) > 1e-6:
            assert K.contains(p) == (f <= 1.0)
