"""Point sets on surfaces: segments, face tracing, triangulation enumeration.

A triangulation of a point set is a maximal set of pairwise non-crossing
segments whose bounded regions are all triangles.  Faces of a candidate edge
set are traced through a rotation system: edge ends are sorted by developed
angle around each point, and on non-orientable surfaces each edge carries an
orientation flag (the glide parity of the lift realizing it) that reverses
the local rotation sense when crossed.

Each face is developed into the plane along its boundary walk.  Walks are
anchored so the face lies on the left of the developed path, which makes
disc faces develop counterclockwise and lets bounded/essential/unbounded
classification run on exact planar data.
"""
from __future__ import annotations

import functools
import os
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import (
    EnumerationLimitError,
    EuclideanPositionError,
    InternalError,
    InvalidGeometryError,
    NoSegmentError,
    UnsupportedSurfaceError,
)
from .planar import orient, point_on_segment, signed_area2
from .scalars import Fraction, Vec, v_cross, v_dot, v_sub
from .surfaces import (
    CYLINDER,
    KLEIN_BOTTLE,
    PLANE,
    TORUS,
    TWISTED_CYLINDER,
    GroupElement,
    LiftedSegment,
    SurfaceGroup,
    SurfacePoint,
    canonicalize_with_element,
    element_inverse,
    element_motion,
    lifts_within,
    quotient_distance,
    segment_between,
    segments_conflict,
    surface_point,
)

DEFAULT_POINT_SET_BOUND = 12

Edge = Tuple[int, int]
Dart = Tuple[int, int]  # (edge index, end flag); end 0 starts at min vertex


def point_set_enumeration_bound() -> int:
    value = os.environ.get("FLIPSURF_MAX_N")
    if value:
        return int(value)
    return DEFAULT_POINT_SET_BOUND


class SurfacePointSet:
    """A finite set of distinct surface points."""

    def __init__(self, group: SurfaceGroup, points: Sequence):
        self.group = group
        pts = []
        for p in points:
            if isinstance(p, SurfacePoint):
                if p.group != group:
                    raise InvalidGeometryError("point belongs to a different group")
                pts.append(p)
            else:
                pts.append(surface_point(group, p[0], p[1]))
        if len(set(pts)) != len(pts):
            raise InvalidGeometryError("points must be pairwise distinct")
        if len(pts) < 3:
            raise InvalidGeometryError("point set needs at least 3 points")
        self.points: Tuple[SurfacePoint, ...] = tuple(pts)
        self.n = len(pts)
        self._segments: Dict[Edge, Optional[LiftedSegment]] = {}
        self._usable: Optional[List[Edge]] = None
        self._conflicts: Optional[Dict[Edge, FrozenSet[Edge]]] = None
        self.general_position = self._check_general_position()

    def _check_general_position(self) -> bool:
        for i in range(self.n):
            base = self.points[i].rep
            lifted = []
            for j in range(self.n):
                if j == i:
                    continue
                _, count, nearest = quotient_distance(self.group, self.points[i],
                                                      self.points[j])
                if count != 1:
                    continue
                lifted.append(nearest)
            for a in range(len(lifted)):
                for b in range(a + 1, len(lifted)):
                    if orient(base, lifted[a], lifted[b]) == 0:
                        return False
        return True

    def segment(self, i: int, j: int) -> Optional[LiftedSegment]:
        """Segment realization for the pair, anchored at min(i,j)'s canonical
        representative; None when the pair is tied."""
        key = (min(i, j), max(i, j))
        if key not in self._segments:
            self._segments[key] = segment_between(
                self.group, self.points[key[0]], self.points[key[1]])
        return self._segments[key]

    def admissible_pairs(self) -> List[Edge]:
        """All index pairs joined by a segment (unique nearest lift)."""
        out = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.segment(i, j) is not None:
                    out.append((i, j))
        return out

    def usable_pairs(self) -> List[Edge]:
        """Admissible pairs whose open segment passes through no other point
        of the set; only these can participate in a triangulation."""
        if self._usable is None:
            out = []
            for (i, j) in self.admissible_pairs():
                seg = self.segment(i, j)
                blocked = False
                for k in range(self.n):
                    if k in (i, j):
                        continue
                    if _point_lift_inside_segment(self.group, self.points[k], seg):
                        blocked = True
                        break
                if not blocked:
                    out.append((i, j))
            self._usable = out
        return self._usable

    def conflict_map(self) -> Dict[Edge, FrozenSet[Edge]]:
        """edge -> usable edges whose interiors meet it on the surface."""
        if self._conflicts is None:
            usable = self.usable_pairs()
            conflicts: Dict[Edge, set] = {e: set() for e in usable}
            for a in range(len(usable)):
                for b in range(a + 1, len(usable)):
                    e, f = usable[a], usable[b]
                    if segments_conflict(self.group, self.segment(*e), self.segment(*f)):
                        conflicts[e].add(f)
                        conflicts[f].add(e)
            self._conflicts = {e: frozenset(s) for e, s in conflicts.items()}
        return self._conflicts


def _point_lift_inside_segment(group: SurfaceGroup, p: SurfacePoint,
                               seg: LiftedSegment) -> bool:
    mid = ((seg.start[0] + seg.end[0]) / 2, (seg.start[1] + seg.end[1]) / 2)
    quarter = seg.length2 / 4
    for _, lift in lifts_within(group, p, mid, quarter):
        if point_on_segment(lift, seg.start, seg.end, strict=True):
            return True
    return False


def is_euclidean_position(s: SurfacePointSet) -> bool:
    """Planar-behavior test: on the cylinder the axis projections must fit
    in an arc shorter than half the period; on the flat torus the points
    must fit in an open half-period-by-half-period rectangle."""
    kind = s.group.kind
    if kind == CYLINDER:
        period = s.group.period
        return _circular_span(sorted(p.x for p in s.points), period) < period / 2
    if kind == TORUS:
        if not s.group.is_axis_aligned_flat_torus:
            raise UnsupportedSurfaceError(
                "Euclidean-position test requires an axis-aligned flat torus")
        span_a, span_b = s.group.flat_torus_spans
        return _circular_span(sorted(p.x for p in s.points), span_a) < span_a / 2 \
            and _circular_span(sorted(p.y for p in s.points), span_b) < span_b / 2
    raise UnsupportedSurfaceError(
        "Euclidean position is defined for the cylinder and the flat torus")


def _circular_span(values: List[Fraction], period: Fraction) -> Fraction:
    gaps = [values[k + 1] - values[k] for k in range(len(values) - 1)]
    gaps.append(values[0] + period - values[-1])
    return period - max(gaps)


def admissible_point_segments(s: SurfacePointSet) -> List[Edge]:
    return s.admissible_pairs()


# ---------------------------------------------------------------------------
# Face tracing via rotation systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    """One face boundary walk of an embedded edge set.

    corners[k] is the developed position of darts[k]'s origin; closure is
    the developed position after the full walk (equals corners[0] exactly
    when the holonomy is trivial).
    """

    darts: Tuple[Tuple[int, int], ...]      # (origin, target) point indices
    corners: Tuple[Vec, ...]
    closure: Vec
    holonomy: GroupElement
    classification: str                     # bounded | essential | unbounded

    @property
    def closed(self) -> bool:
        return self.closure == self.corners[0]

    @property
    def area2(self) -> Optional[Fraction]:
        return signed_area2(self.corners) if self.closed else None

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(d[0] for d in self.darts)

    @property
    def is_triangle(self) -> bool:
        return len(self.darts) == 3 and self.closed and self.area2 != 0

    @property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset((min(d), max(d)) for d in self.darts)


def _dir_half(d: Vec) -> int:
    return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1


def _ccw_dir_cmp(d1: Vec, d2: Vec) -> int:
    h1, h2 = _dir_half(d1), _dir_half(d2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    c = v_cross(d1, d2)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


class _EmbeddedGraph:
    """Rotation-system embedding of a set of realized segments."""

    def __init__(self, s: SurfacePointSet, edges: Sequence[Edge]):
        self.s = s
        self.group = s.group
        self.edges: Tuple[Edge, ...] = tuple(sorted({(min(e), max(e)) for e in edges}))
        if len(self.edges) != len(list(edges)):
            raise InvalidGeometryError("duplicate edges")
        self.sign: List[int] = []
        self.dart_origin: Dict[Dart, int] = {}
        self.dart_target: Dict[Dart, int] = {}
        self.dart_dir: Dict[Dart, Vec] = {}
        self.dart_end: Dict[Dart, Vec] = {}
        for idx, (i, j) in enumerate(self.edges):
            seg = s.segment(i, j)
            if seg is None:
                raise NoSegmentError(f"pair ({i},{j}) has no segment")
            # seg.start is the canonical rep of i; seg.end a lift of j.
            sp_end, delta = canonicalize_with_element(self.group, seg.end)
            if sp_end != s.points[j]:
                raise InternalError("segment endpoint mismatch")
            back = element_motion(self.group, delta)
            self.sign.append(1 if back.preserves_orientation else -1)
            self.dart_origin[(idx, 0)] = i
            self.dart_target[(idx, 0)] = j
            self.dart_dir[(idx, 0)] = v_sub(seg.end, seg.start)
            self.dart_end[(idx, 0)] = seg.end
            start_from_j = back.apply(seg.start)
            self.dart_origin[(idx, 1)] = j
            self.dart_target[(idx, 1)] = i
            self.dart_dir[(idx, 1)] = v_sub(start_from_j, s.points[j].rep)
            self.dart_end[(idx, 1)] = start_from_j
        self.rotation: Dict[int, List[Dart]] = {}
        cmp = functools.cmp_to_key(
            lambda a, b: _ccw_dir_cmp(self.dart_dir[a], self.dart_dir[b]) or
            (-1 if a < b else 1))
        for v in range(s.n):
            incident = sorted((d for d in self.dart_origin
                               if self.dart_origin[d] == v), key=cmp)
            self.rotation[v] = incident
        self._rot_pos = {d: (v, k)
                         for v, lst in self.rotation.items()
                         for k, d in enumerate(lst)}

    def twin(self, d: Dart) -> Dart:
        return (d[0], 1 - d[1])

    def rot_step(self, d: Dart, step: int) -> Dart:
        v, k = self._rot_pos[d]
        lst = self.rotation[v]
        return lst[(k + step) % len(lst)]

    def edge_sign(self, d: Dart) -> int:
        return self.sign[d[0]]

    def step(self, state: Tuple[Dart, int]) -> Tuple[Dart, int]:
        """Face-tracing successor: cross the dart's edge, then turn.

        With faces kept on the left, the next dart is the rotation
        predecessor of the twin when the local orientation is +1, and the
        successor when a glide-lifted edge has flipped it to -1.
        """
        d, s = state
        s2 = s * self.edge_sign(d)
        r = self.twin(d)
        nxt = self.rot_step(r, -1 if s2 == 1 else 1)
        return (nxt, s2)


def trace_faces(s: SurfacePointSet, edges: Sequence[Edge]) -> List[Face]:
    """Faces of the embedded graph of the given segments.

    Every edge must be a segment; any surface crossing between two edges
    raises.  Each geometric face is reported once.
    """
    edges = [tuple(sorted(e)) for e in edges]
    for a in range(len(edges)):
        sa = s.segment(*edges[a])
        if sa is None:
            raise NoSegmentError(f"pair {edges[a]} has no segment")
        for b in range(a + 1, len(edges)):
            sb = s.segment(*edges[b])
            if sb is None:
                raise NoSegmentError(f"pair {edges[b]} has no segment")
            if segments_conflict(s.group, sa, sb):
                raise InvalidGeometryError(f"edges {edges[a]} and {edges[b]} cross")
    graph = _EmbeddedGraph(s, edges)
    return _trace(graph)


def _trace(graph: _EmbeddedGraph) -> List[Face]:
    """Each traversal state (dart, side) lies on one orbit of the step map;
    a geometric face is a pair of mutually reversed orbits, identified by
    the side involution (d, s) <-> (twin(d), -s), or a single self-paired
    orbit for one-sided faces."""
    anchors = sorted((d, 1) for d in graph.dart_origin)
    anchors += sorted((d, -1) for d in graph.dart_origin)
    seen: Dict[Tuple[Dart, int], int] = {}
    orbits: List[List[Tuple[Dart, int]]] = []
    for anchor in anchors:
        if anchor in seen:
            continue
        orbit = []
        cur = anchor
        while cur not in seen:
            seen[cur] = len(orbits)
            orbit.append(cur)
            cur = graph.step(cur)
        if cur != anchor:
            raise InternalError("face tracing produced a non-cyclic orbit")
        orbits.append(orbit)

    faces: List[Face] = []
    processed = set()
    for idx, orbit in enumerate(orbits):
        if idx in processed:
            continue
        d0, s0 = orbit[0]
        partner = seen[(graph.twin(d0), -s0)]
        processed.add(idx)
        processed.add(partner)
        darts = [d for d, _ in orbit]
        walk = darts
        if partner == idx:
            # One-sided face: the orbit runs around the boundary twice, once
            # per traversal direction; the walk is the first half.
            half = len(darts) // 2
            walk = darts[:half]
            if sorted(darts[:half]) != sorted(graph.twin(d) for d in darts[half:]):
                raise InternalError("one-sided face orbit halves do not match")
        faces.append(_build_face(graph, walk))
    faces.sort(key=lambda f: f.darts)
    total = sum(len(f.darts) for f in faces)
    if total != 2 * len(graph.edges):
        raise InternalError("face walks do not cover every dart exactly once")
    return faces


def _develop_walk(graph: _EmbeddedGraph, walk: List[Dart]):
    """Developed corner positions of the walk plus the closure point.

    The walk starts in the canonical frame of its first origin; each next
    edge is re-lifted so shared endpoints coincide.
    """
    group = graph.group
    corners: List[Vec] = []
    pos = graph.s.points[graph.dart_origin[walk[0]]].rep
    for d in walk:
        corners.append(pos)
        origin_rep = graph.s.points[graph.dart_origin[d]].rep
        _, delta = canonicalize_with_element(group, pos)
        gamma = element_inverse(group, delta)
        mo = element_motion(group, gamma)
        if mo.apply(origin_rep) != pos:
            raise InternalError("development lost the walk position")
        pos = mo.apply(graph.dart_end[d])
    return corners, pos


def _build_face(graph: _EmbeddedGraph, walk: List[Dart]) -> Face:
    group = graph.group
    corners, closure = _develop_walk(graph, walk)
    _, delta = canonicalize_with_element(group, closure)
    holonomy = element_inverse(group, delta)
    if closure == corners[0]:
        holonomy = GroupElement(0, 0)
    darts = tuple((graph.dart_origin[d], graph.dart_target[d]) for d in walk)
    face = Face(darts, tuple(corners), closure, holonomy, "")
    classification = _classify(graph.group, face)
    return Face(darts, tuple(corners), closure, holonomy, classification)


def _corner_sector(face: Face, idx: int, group: SurfaceGroup):
    """(outgoing direction, back-along-incoming direction) at corner idx, in
    the developed frame; the face fills the ccw sector between them."""
    k = len(face.corners)
    pos = face.corners[idx]
    nxt = face.corners[idx + 1] if idx + 1 < k else face.closure
    if idx > 0:
        prv = face.corners[idx - 1]
    else:
        inv = element_motion(group, element_inverse(group, face.holonomy))
        prv = inv.apply(face.corners[-1])
    return v_sub(nxt, pos), v_sub(prv, pos)


def _sector_contains(start: Vec, end: Vec, probe: Vec) -> bool:
    """Is probe strictly inside the ccw sector from start to end?

    Equal start/end directions mean a full turn around a degree-one vertex:
    everything but the ray itself counts as inside."""
    cs = v_cross(start, end)
    ds = v_dot(start, end)
    if cs == 0 and ds > 0:
        return not (v_cross(start, probe) == 0 and v_dot(start, probe) > 0)
    if cs > 0:
        return v_cross(start, probe) > 0 and v_cross(probe, end) > 0
    if cs < 0:
        return v_cross(start, probe) > 0 or v_cross(probe, end) > 0
    # opposite directions: the sector is the open half-plane left of start
    return v_cross(start, probe) > 0


def _escapes_vertically(face: Face, group: SurfaceGroup, up: bool) -> bool:
    """Does this face own the vertical escape direction at a corner of its
    extreme height?  On the cylinder kinds this characterizes the walks of
    unbounded faces."""
    ys = [c[1] for c in face.corners]
    extreme = max(ys) if up else min(ys)
    probe = (Fraction(0), Fraction(1 if up else -1))
    for idx, c in enumerate(face.corners):
        if c[1] != extreme:
            continue
        out_dir, in_dir = _corner_sector(face, idx, group)
        if _sector_contains(out_dir, in_dir, probe):
            return True
    return False


def _classify(group: SurfaceGroup, face: Face) -> str:
    kind = group.kind
    if kind == PLANE:
        return "bounded" if face.closed and face.area2 > 0 else "unbounded"
    if kind in (CYLINDER, TWISTED_CYLINDER):
        if _escapes_vertically(face, group, up=True) or \
                _escapes_vertically(face, group, up=False):
            return "unbounded"
        return "bounded" if face.closed else "essential"
    # compact kinds: no unbounded faces
    if face.closed:
        if face.is_triangle:
            return "bounded"
        if kind == TORUS and face.area2 > 0:
            return "bounded"
        return "essential"
    return "essential"


# ---------------------------------------------------------------------------
# Boundary chains (cylinder)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryChains:
    """The essential polygonal lines bounding a cylinder triangulation's
    region: cyclic point-index sequences, normalized to wrap in the +x
    direction and to start at their lexicographically least rotation."""

    upper: Tuple[int, ...]
    lower: Tuple[int, ...]


def _normalize_chain(vertices: Tuple[int, ...], displacement: Fraction
                     ) -> Tuple[int, ...]:
    seq = list(vertices)
    if displacement < 0:
        seq = list(reversed(seq))
    return min(tuple(seq[r:] + seq[:r]) for r in range(len(seq)))


def boundary_chains(t: "PointSetTriangulation") -> BoundaryChains:
    """Upper and lower essential chains of a cylinder triangulation.

    Raises EuclideanPositionError for sets in Euclidean position (their
    triangulated region is a disc; callers fall back to planar behavior).
    """
    s = t.pointset
    if s.group.kind != CYLINDER:
        raise UnsupportedSurfaceError("boundary chains require the cylinder")
    if is_euclidean_position(s):
        raise EuclideanPositionError("point set is in Euclidean position")
    essential = [f for f in t.faces if f.holonomy != GroupElement(0, 0)]
    if len(essential) != 2:
        raise InternalError("expected exactly two essential boundary walks")
    upper = [f for f in essential if _escapes_vertically(f, s.group, up=True)]
    lower = [f for f in essential if _escapes_vertically(f, s.group, up=False)]
    if len(upper) != 1 or len(lower) != 1 or upper[0] is lower[0]:
        raise InternalError("could not orient the essential walks")

    def chain(face: Face) -> Tuple[int, ...]:
        disp = face.closure[0] - face.corners[0][0]
        return _normalize_chain(face.vertices, disp)

    return BoundaryChains(chain(upper[0]), chain(lower[0]))


def boundary_class_partition(ts: Sequence["PointSetTriangulation"]) -> List[List["PointSetTriangulation"]]:
    """Group triangulations of one cylinder point set by their boundary
    chain pair; these classes are exactly the flip-graph components."""
    groups: Dict[object, List[PointSetTriangulation]] = {}
    for t in ts:
        try:
            chains = boundary_chains(t)
            key = (chains.upper, chains.lower)
        except EuclideanPositionError:
            key = "planar"
        groups.setdefault(key, []).append(t)
    out = [sorted(g, key=lambda t: t.key) for g in groups.values()]
    out.sort(key=lambda g: g[0].key)
    return out


# ---------------------------------------------------------------------------
# Triangulation enumeration
# ---------------------------------------------------------------------------

class PointSetTriangulation:
    """A maximal non-crossing segment set with all bounded faces triangular."""

    def __init__(self, pointset: SurfacePointSet, edges: Sequence[Edge],
                 faces: Optional[List[Face]] = None):
        self.pointset = pointset
        self.edges: Tuple[Edge, ...] = tuple(sorted((min(e), max(e)) for e in edges))
        self.faces: List[Face] = faces if faces is not None \
            else trace_faces(pointset, self.edges)

    @property
    def key(self) -> Tuple[Edge, ...]:
        return self.edges

    def __eq__(self, other):
        return isinstance(other, PointSetTriangulation) and \
            self.pointset is other.pointset and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"PointSetTriangulation({len(self.edges)} edges)"

    def triangle_faces(self) -> List[Face]:
        return [f for f in self.faces if f.classification == "bounded"]

    def euler(self) -> int:
        return self.pointset.n - len(self.edges) + len(self.faces)


def _graph_connected(n: int, edges: Sequence[Edge]) -> bool:
    if n == 0:
        return True
    adj: Dict[int, List[int]] = {v: [] for v in range(n)}
    for (i, j) in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def _triangle_interior_empty(s: SurfacePointSet, face: Face) -> bool:
    tri = list(face.corners)
    cx = sum(p[0] for p in tri) / 3
    cy = sum(p[1] for p in tri) / 3
    r2 = max((p[0] - cx) ** 2 + (p[1] - cy) ** 2 for p in tri)
    corner_set = set(tri)
    sgn = orient(*tri)
    for point in s.points:
        for _, lift in lifts_within(s.group, point, (cx, cy), r2):
            if lift in corner_set:
                continue
            if orient(tri[0], tri[1], lift) * sgn >= 0 and \
                    orient(tri[1], tri[2], lift) * sgn >= 0 and \
                    orient(tri[2], tri[0], lift) * sgn >= 0:
                return False
    return True


def faces_form_triangulation(s: SurfacePointSet, faces: List[Face],
                             edge_count: int) -> bool:
    """Decide whether a maximal non-crossing edge set is a triangulation:
    every bounded region a triangle, with the legitimate unbounded or
    essential faces of the surface kind, pinned by the Euler count."""
    kind = s.group.kind
    v = s.n
    f = len(faces)
    triangles = [fc for fc in faces if fc.is_triangle]
    others = [fc for fc in faces if not fc.is_triangle]
    euler = v - edge_count + f

    if any(not _triangle_interior_empty(s, fc) for fc in triangles):
        return False

    if kind == PLANE:
        return len(others) == 1 and others[0].classification == "unbounded" \
            and euler == 2

    if kind == CYLINDER:
        essential = [fc for fc in others if fc.holonomy != (0, 0)]
        if not essential:
            return len(others) == 1 and others[0].classification == "unbounded" \
                and euler == 2
        return len(others) == 2 and len(essential) == 2 \
            and all(fc.classification == "unbounded" for fc in essential) \
            and all(abs(fc.holonomy.k1) == 1 for fc in essential) \
            and euler == 0

    if kind == TWISTED_CYLINDER:
        essential = [fc for fc in others if fc.holonomy != (0, 0)]
        if not essential:
            return len(others) == 1 and others[0].classification == "unbounded" \
                and euler == 2
        return len(others) == 1 and len(essential) == 1 \
            and essential[0].classification == "unbounded" \
            and abs(essential[0].holonomy.k1) == 2 \
            and euler == 1

    if kind in (TORUS, KLEIN_BOTTLE):
        if others or euler != 0:
            return False
        area = sum(abs(fc.area2) for fc in triangles)
        if kind == TORUS:
            u, w = s.group.torus_vectors
            return area == 2 * abs(v_cross(u, w))
        return area == 2 * s.group.period * s.group.height

    raise UnsupportedSurfaceError(kind)


def enumerate_point_set_triangulations(s: SurfacePointSet,
                                       bound: Optional[int] = None
                                       ) -> List[PointSetTriangulation]:
    """All triangulations of the point set.

    Enumerates the maximal independent sets of the segment conflict graph
    (maximal non-crossing subsets of usable segments) with Bron-Kerbosch
    pivoting on the compatibility graph, then keeps those whose traced
    faces form a triangulation.
    """
    limit = bound if bound is not None else point_set_enumeration_bound()
    if s.n > limit:
        raise EnumerationLimitError(
            f"point set has {s.n} points, enumeration bound is {limit}")
    usable = s.usable_pairs()
    conflicts = s.conflict_map()
    m = len(usable)
    index = {e: k for k, e in enumerate(usable)}
    compat = [0] * m
    full = (1 << m) - 1
    for k, e in enumerate(usable):
        mask = 0
        for f in usable:
            if f != e and f not in conflicts[e]:
                mask |= 1 << index[f]
        compat[k] = mask

    results: List[PointSetTriangulation] = []

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            edges = [usable[k] for k in range(m) if r >> k & 1]
            if not _graph_connected(s.n, edges):
                return
            faces = trace_faces(s, edges)
            if faces_form_triangulation(s, faces, len(edges)):
                results.append(PointSetTriangulation(s, edges, faces))
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        best = pivot
        best_cover = (p & compat[pivot]).bit_count()
        pool = pivot_pool
        while pool:
            c = (pool & -pool).bit_length() - 1
            pool &= pool - 1
            cover = (p & compat[c]).bit_count()
            if cover > best_cover:
                best, best_cover = c, cover
        cands = p & ~compat[best]
        while cands:
            vbit = cands & -cands
            k = vbit.bit_length() - 1
            cands &= cands - 1
            expand(r | vbit, p & compat[k], x & compat[k])
            p &= ~vbit
            x |= vbit
        return

    if m:
        expand(0, full, 0)
    results.sort(key=lambda t: t.key)
    return results
