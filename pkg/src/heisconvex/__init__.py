"""Convexity verification toolkit for the first Heisenberg group.

Exact group and dilation arithmetic, falsifiers for horizontal convexity
of sets and functions, cone functions built from compact sets by
dilation-level bisection, and a counterexample/necessary-condition suite
for deciding (at sampling resolution) whether a compact set generates a
horizontally convex family under the anisotropic dilations.
"""

from .core import (
    DEFAULT_TOL,
    HVec,
    HorizontalLine,
    ORIGIN,
    Point3,
    Tolerances,
    cone_contains,
    dilate,
    exp_h,
    group_inv,
    group_mul,
    horizontal_plane_t,
    horizontal_reach,
    norm,
    proj_pair,
    x_axis,
)
from .sets import (
    AxiomReport,
    GALLERY_NAMES,
    RadialProfile,
    SetOracle,
    boundary_sample,
    box_oracle,
    check_axioms,
    dilate_oracle,
    dilation_bracket,
    dilation_level,
    escape_margin,
    escapes,
    gallery,
    polygon_profile,
    radial_to_oracle,
    sample_in_set,
)
from .convexity import (
    ConvexityWitness,
    FnOracle,
    HomogeneityReport,
    SubdiffReport,
    check_hconvex_fn,
    check_homogeneous,
    check_hquasiconvex_fn,
    horizontal_gradient,
    replay_witness,
    subdiff_contains,
    subdiff_properties,
)
from .cones import (
    ConeFunction,
    ConeValidation,
    FamilyReport,
    compare_closed_form,
    cone_eval,
    cone_eval_bracket,
    cone_fn_oracle,
    cone_validate,
    family_axioms_check,
    make_cone,
)
from .chcheck import (
    ChWitness,
    EnvelopeReport,
    RadialNecessityReport,
    TauSolution,
    ch_curve,
    ch_curve_cases,
    envelope_check,
    envelope_phi,
    envelope_psi,
    falsify_ch,
    radial_necessary,
    replay_ch_witness,
    solve_tau,
    tau_residual,
    transport_witness,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "ChWitness",
    "ConeFunction",
    "ConeValidation",
    "ConvexityWitness",
    "DEFAULT_TOL",
    "EnvelopeReport",
    "FamilyReport",
    "FnOracle",
    "GALLERY_NAMES",
    "HVec",
    "HomogeneityReport",
    "HorizontalLine",
    "ORIGIN",
    "Point3",
    "RadialNecessityReport",
    "RadialProfile",
    "SetOracle",
    "SubdiffReport",
    "TauSolution",
    "Tolerances",
    "boundary_sample",
    "box_oracle",
    "ch_curve",
    "ch_curve_cases",
    "check_axioms",
    "check_hconvex_fn",
    "check_homogeneous",
    "check_hquasiconvex_fn",
    "compare_closed_form",
    "cone_contains",
    "cone_eval",
    "cone_eval_bracket",
    "cone_fn_oracle",
    "cone_validate",
    "dilate",
    "dilate_oracle",
    "dilation_bracket",
    "dilation_level",
    "envelope_check",
    "envelope_phi",
    "envelope_psi",
    "escape_margin",
    "escapes",
    "exp_h",
    "falsify_ch",
    "family_axioms_check",
    "gallery",
    "group_inv",
    "group_mul",
    "horizontal_gradient",
    "horizontal_plane_t",
    "horizontal_reach",
    "make_cone",
    "norm",
    "polygon_profile",
    "proj_pair",
    "radial_necessary",
    "radial_to_oracle",
    "replay_ch_witness",
    "replay_witness",
    "sample_in_set",
    "solve_tau",
    "subdiff_contains",
    "subdiff_properties",
    "tau_residual",
    "transport_witness",
    "x_axis",
]
