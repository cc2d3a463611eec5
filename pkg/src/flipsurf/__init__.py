"""flipsurf: triangulations and edge-flip graphs on locally Euclidean surfaces."""

from .errors import (
    DisconnectedError,
    EnumerationLimitError,
    EuclideanPositionError,
    FlipsurfError,
    InvalidGeometryError,
    NoSegmentError,
    NotTriangulableError,
    UnknownFixtureError,
    UnsupportedSurfaceError,
)
from .surfaces import (
    GroupElement,
    LiftedSegment,
    Motion,
    SurfaceGroup,
    SurfacePoint,
    apply_motion,
    canonicalize,
    element_motion,
    lifts_within,
    quotient_distance,
    segment_between,
    surface_point,
    surface_segments_cross,
)

__version__ = "0.1.0"

__all__ = [
    "DisconnectedError",
    "EnumerationLimitError",
    "EuclideanPositionError",
    "FlipsurfError",
    "GroupElement",
    "InvalidGeometryError",
    "LiftedSegment",
    "Motion",
    "NoSegmentError",
    "NotTriangulableError",
    "SurfaceGroup",
    "SurfacePoint",
    "UnknownFixtureError",
    "UnsupportedSurfaceError",
    "apply_motion",
    "canonicalize",
    "element_motion",
    "lifts_within",
    "quotient_distance",
    "segment_between",
    "surface_point",
    "surface_segments_cross",
]
