"""Twist subgroups of mapping class groups of nonorientable surfaces."""

from .linalg import AbelianInvariants, IntegerMatrix, SmithForm, det, invariant_factors, snf
from .fpgroup import (
    FiniteQuotientHom,
    Presentation,
    Transversal,
    abelianization,
    check_hom,
    free_reduce,
    reidemeister_schreier,
    schreier_generators,
    tietze_simplify,
)
from .surface import SurfaceSpec, build_polygon, cycle_class, glue, h1, is_orientable
from .homology_rep import (
    CurveDatum,
    HomologyRepresentation,
    det_hom,
    evaluate,
    load_representation,
    subgroup_indices,
    twist_generators,
    twist_matrix,
    verify_relation,
)
from .h1twist import build_ledger, compute_h1, explain

__version__ = "0.1.0"
