"""Beta-skeletons, Gabriel graphs and Delaunay graphs of planar line segments."""

from .geom import (
    EPS_GEOM,
    CoincidentPointsError,
    DegenerateSegmentError,
    Disc,
    GeometryError,
    InvalidInputError,
    Point,
    Segment,
    SegmentSet,
    Violation,
    angle_at,
    dist,
    homothety_segment,
    param_point,
    validate_general_position,
)
from .graph import GeneratorPair, SkeletonGraph
from .kernels import BACKEND
from .neighborhoods import (
    BetaSpec,
    Neighborhood,
    delta_of_beta,
    make_neighborhood,
    nbhd_contains,
    segment_intersects_disc,
    segment_intersects_nbhd,
)
from .solver import DEFAULT_EPSILON, WitnessError, beta_skeleton, find_witness

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BetaSpec",
    "CoincidentPointsError",
    "DEFAULT_EPSILON",
    "DegenerateSegmentError",
    "Disc",
    "EPS_GEOM",
    "GeneratorPair",
    "GeometryError",
    "InvalidInputError",
    "Neighborhood",
    "Point",
    "Segment",
    "SegmentSet",
    "SkeletonGraph",
    "Violation",
    "WitnessError",
    "angle_at",
    "beta_skeleton",
    "delta_of_beta",
    "dist",
    "find_witness",
    "homothety_segment",
    "make_neighborhood",
    "nbhd_contains",
    "param_point",
    "segment_intersects_disc",
    "segment_intersects_nbhd",
    "validate_general_position",
]
