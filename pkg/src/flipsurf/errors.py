"""Exception types shared across the package."""


class FlipsurfError(Exception):
    """Base class for all domain errors raised by flipsurf."""


class InvalidGeometryError(FlipsurfError):
    """Input geometry violates a structural precondition."""


class UnsupportedSurfaceError(FlipsurfError):
    """Operation is not defined for this surface kind."""


class NotTriangulableError(FlipsurfError):
    """The polygon admits no triangulation."""


class EnumerationLimitError(FlipsurfError):
    """Instance exceeds the configured enumeration size bound."""


class NoSegmentError(FlipsurfError):
    """A required pair of points has no segment (tied minimal geodesics)."""


class EuclideanPositionError(FlipsurfError):
    """Signal that a point set is in Euclidean position (planar behavior);

    raised where an operation requires essential boundary chains so callers
    can fall back to planar handling.
    """


class DisconnectedError(FlipsurfError):
    """Requested flip path endpoints lie in different components."""


class ConstructionStalledError(FlipsurfError):
    """A constructive flip-path strategy cannot proceed on this instance;

    callers may fall back to another starting vertex or to breadth-first
    search over the enumerated graph.
    """


class UnknownFixtureError(FlipsurfError):
    """No fixture with the requested name."""


class InternalError(FlipsurfError):
    """A guaranteed geometric invariant failed; indicates a bug."""
