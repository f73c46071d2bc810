"""Exact computations on arrangements of topological lines in the plane.

Topolines are piecewise-linear curves with two infinite rays and rational
coordinates.  The package validates arrangements of them, classifies meeting
pairs as crossing or touching, counts regions by the Möbius formula and by
direct face enumeration, reglues touching arrangements into affine ones and
decides and constructs projectivizations.
"""

from .arrangement import (
    Arrangement,
    Branch,
    IntersectionPoint,
    InvalidArrangement,
    PairClass,
    build_arrangement,
    classify_pair,
    flats_on_line,
    is_affine,
)
from .faces import (
    FaceCensus,
    PlanarSubdivision,
    ResolutionTooLow,
    build_subdivision,
    classify_pair_via_regions,
    direct_region_count,
    face_cell_check,
    grid_flood_fill_oracle,
    safe_resolution,
)
from .formats import FormatError, emit_arrangement, fixture_path, load_fixture, parse_arrangement
from .generate import random_arrangement, random_lines
from .model import Box, Dir, Point, Topoline, curve_intersection, point_on_curve, validate_topoline
from .projective import (
    ParallelClassification,
    ProjectiveStructure,
    TailOrder,
    is_projectivizable,
    parallel_classes,
    projectivize,
    tail_order,
)
from .reglue import ReglueStep, find_noncrossing_point, make_affine, reglue_at, union_pieces
from .semilattice import (
    Flat,
    Semilattice,
    check_geometric_intervals,
    mobius,
    parse_abstract,
    region_count_formula,
    semilattice_of,
)

__version__ = "0.1.0"
