"""Euclidean polygons on a surface and their triangulations.

A polygon is given by its developed boundary: one planar lift per vertex,
consecutive lifts joined by straight edges.  Every boundary edge must be a
segment (the unique minimal geodesic between its endpoint orbits), the
developed cycle must be simple, and the region must project injectively to
the surface, so the polygon really is an embedded disc.

A diagonal between vertices i and j is admissible iff the developed chord
lies in the open interior of the polygon and that chord is the unique
globally shortest lift pair for the two surface points.  Everything else
(triangulation existence, exhaustive enumeration, ears, extreme vertices,
the empty-quadrant obstruction) is built on that predicate.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import (
    EnumerationLimitError,
    InternalError,
    InvalidGeometryError,
    NotTriangulableError,
    UnsupportedSurfaceError,
)
from .planar import (
    orient,
    point_in_cycle_unchecked,
    point_on_segment,
    segments_interiors_intersect,
    segments_properly_cross,
    signed_area2,
    validate_simple_cycle,
)
from .scalars import Fraction, Vec, midpoint, rat, v_cross, v_sub
from .surfaces import (
    CYLINDER,
    PLANE,
    TORUS,
    LiftedSegment,
    SurfaceGroup,
    SurfacePoint,
    canonicalize,
    orbit_copies_overlap,
    segment_lift_is_unique_minimum,
)

DEFAULT_POLYGON_BOUND = 14


def polygon_enumeration_bound() -> int:
    value = os.environ.get("FLIPSURF_MAX_N")
    if value:
        return int(value)
    return DEFAULT_POLYGON_BOUND


@dataclass(frozen=True)
class Diagonal:
    """An admissible diagonal: a vertex index pair plus its realizing lift."""

    i: int
    j: int
    segment: LiftedSegment


class EuclideanPolygon:
    """A validated polygon; construct through :func:`validate_polygon`."""

    def __init__(self, group: SurfaceGroup, developed: Tuple[Vec, ...],
                 surface_points: Tuple[SurfacePoint, ...]):
        self.group = group
        self.developed = developed
        self.surface_points = surface_points
        self.n = len(developed)
        self._adm_cache: Dict[Tuple[int, int], bool] = {}

    def __repr__(self):
        return f"EuclideanPolygon({self.group.kind}, n={self.n})"

    def cyclic_adjacent(self, i: int, j: int) -> bool:
        n = self.n
        return (i - j) % n == 1 or (j - i) % n == 1

    def edge_pairs(self):
        n = self.n
        return [(i, (i + 1) % n) for i in range(n)]

    def subpolygon(self, indices: Sequence[int]) -> "EuclideanPolygon":
        """Sub-polygon on a subsequence of boundary indices (same cyclic
        order); edges between consecutive chosen vertices must be polygon
        edges or admissible chords, which the callers guarantee."""
        dev = tuple(self.developed[i] for i in indices)
        sps = tuple(self.surface_points[i] for i in indices)
        return EuclideanPolygon(self.group, dev, sps)


def validate_polygon(group: SurfaceGroup, developed, *,
                     allow_repeated_vertices: bool = False) -> EuclideanPolygon:
    """Validate a developed boundary cycle and build the polygon.

    Checks simplicity, counterclockwise orientation (a clockwise cycle is
    reversed, keeping vertex 0 first), no straight (collinear-consecutive)
    vertices, the edge-segment property, distinct surface vertices, and that
    the region does not overlap its own orbit copies.
    """
    dev: Tuple[Vec, ...] = tuple((rat(p[0]), rat(p[1])) for p in developed)
    n = len(dev)
    if n < 3:
        raise InvalidGeometryError("polygon needs at least 3 vertices")
    validate_simple_cycle(dev)
    for i in range(n):
        if orient(dev[i - 1], dev[i], dev[(i + 1) % n]) == 0:
            raise InvalidGeometryError("straight vertex (collinear consecutive points)")
    if signed_area2(dev) < 0:
        dev = (dev[0],) + tuple(reversed(dev[1:]))
    sps = tuple(canonicalize(group, p) for p in dev)
    if not allow_repeated_vertices and len(set(sps)) != n:
        raise InvalidGeometryError("repeated surface vertex")
    for i in range(n):
        j = (i + 1) % n
        if sps[i] == sps[j]:
            raise InvalidGeometryError("edge joins equivalent points")
        if not segment_lift_is_unique_minimum(group, dev[i], dev[j], sps[j]):
            raise InvalidGeometryError(
                f"boundary edge {i}-{j} is not a segment (tie or shorter lift exists)")
    if orbit_copies_overlap(group, dev):
        raise InvalidGeometryError("polygon overlaps its own orbit copies")
    return EuclideanPolygon(group, dev, sps)


def is_admissible_diagonal(poly: EuclideanPolygon, i: int, j: int) -> bool:
    """Exact admissibility of the diagonal (i, j).

    True iff the developed chord lies inside the polygon (no boundary
    contact beyond its endpoints) and is the strict unique nearest lift pair
    of the two surface points.
    """
    n = poly.n
    i %= n
    j %= n
    if i == j or poly.cyclic_adjacent(i, j):
        raise InvalidGeometryError("diagonal endpoints must be non-consecutive")
    key = (min(i, j), max(i, j))
    cached = poly._adm_cache.get(key)
    if cached is not None:
        return cached
    result = _admissible_uncached(poly, *key)
    poly._adm_cache[key] = result
    return result


def _admissible_uncached(poly: EuclideanPolygon, i: int, j: int) -> bool:
    dev = poly.developed
    a, b = dev[i], dev[j]
    if a == b:
        return False
    for k in range(poly.n):
        if k != i and k != j and point_on_segment(dev[k], a, b):
            return False
    for (p, q) in poly.edge_pairs():
        if p in (i, j) or q in (i, j):
            continue
        if segments_properly_cross(a, b, dev[p], dev[q]):
            return False
    if point_in_cycle_unchecked(midpoint(a, b), dev) != "inside":
        return False
    return segment_lift_is_unique_minimum(poly.group, a, b, poly.surface_points[j])


def diagonal(poly: EuclideanPolygon, i: int, j: int) -> Diagonal:
    if not is_admissible_diagonal(poly, i, j):
        raise InvalidGeometryError(f"diagonal ({i},{j}) is not admissible")
    i, j = min(i, j), max(i, j)
    seg = LiftedSegment(poly.developed[i], poly.developed[j])
    return Diagonal(i, j, seg)


def admissible_diagonals(poly: EuclideanPolygon) -> List[Diagonal]:
    """All admissible diagonals, sorted by index pair."""
    out = []
    for i in range(poly.n):
        for j in range(i + 1, poly.n):
            if poly.cyclic_adjacent(i, j):
                continue
            if is_admissible_diagonal(poly, i, j):
                out.append(diagonal(poly, i, j))
    return out


# ---------------------------------------------------------------------------
# Constructive diagonal finding (plane and cylinder)
# ---------------------------------------------------------------------------

def _in_closed_triangle(p: Vec, a: Vec, v: Vec, b: Vec) -> bool:
    s = orient(a, v, b)
    if s == 0:
        return False
    return orient(a, v, p) * s >= 0 and orient(v, b, p) * s >= 0 \
        and orient(b, a, p) * s >= 0


def _visible_vertex(poly: EuclideanPolygon, v: int, w: int) -> bool:
    """Is vertex w visible from vertex v through the polygon interior?

    Adjacent vertices count as visible (along their edge)."""
    if poly.cyclic_adjacent(v, w):
        return True
    dev = poly.developed
    a, b = dev[v], dev[w]
    for k in range(poly.n):
        if k not in (v, w) and point_on_segment(dev[k], a, b):
            return False
    for (p, q) in poly.edge_pairs():
        if p in (v, w) or q in (v, w):
            continue
        if segments_interiors_intersect(a, b, dev[p], dev[q]):
            return False
    return point_in_cycle_unchecked(midpoint(a, b), dev) == "inside"


def _rotation_stopper(poly: EuclideanPolygon, v: int, clockwise: bool) -> Optional[int]:
    """First vertex hit when a vertical ray from v rotates to one side.

    Equivalently the visible vertex minimizing the rotation angle from
    straight up.  Returns None when no vertex is visible (cannot happen for
    valid polygons, where the adjacent vertices always are).
    """
    dev = poly.developed
    origin = dev[v]

    def angle_key(w: int):
        d = v_sub(dev[w], origin)
        if clockwise:
            d = (-d[0], d[1])
        # ccw angle of d from (0,1): rank by quadrant then exact slope
        x, y = d
        if x == 0 and y > 0:
            rank = 0
        elif x < 0:
            rank = 1
        elif x == 0 and y < 0:
            rank = 2
        else:
            rank = 3
        return rank, d

    visible = [w for w in range(poly.n) if w != v and _visible_vertex(poly, v, w)]
    if not visible:
        return None
    best = None
    best_key = None
    for w in visible:
        rank, d = angle_key(w)
        if best is None:
            best, best_key = w, (rank, d)
            continue
        brank, bd = best_key
        if rank != brank:
            better = rank < brank
        else:
            c = v_cross(bd, d)
            if rank in (1, 3):
                better = c < 0
            else:
                better = False  # same exact direction: nearer one already visible
        if better:
            best, best_key = w, (rank, d)
    return best


def find_admissible_diagonal(poly: EuclideanPolygon) -> Diagonal:
    """Constructively find an admissible diagonal on the plane or cylinder.

    Uses the lowest (convex) vertex v with neighbors a, b.  Either the chord
    ab is admissible; or some vertex lies in the closed triangle avb, and
    the one farthest from the line ab gives a diagonal from v (a parallel
    sweep from v); or the triangle is empty and a vertical ray from v,
    rotated right or left until it first reaches a visible vertex, gives
    one.  The produced pair is re-checked with the exact predicate.
    """
    if poly.group.kind not in (PLANE, CYLINDER):
        raise UnsupportedSurfaceError(
            "constructive diagonal search requires the plane or the cylinder")
    n = poly.n
    if n < 4:
        raise InvalidGeometryError("need at least 4 vertices")
    dev = poly.developed
    v = min(range(n), key=lambda k: (dev[k][1], dev[k][0]))
    a, b = (v - 1) % n, (v + 1) % n

    if is_admissible_diagonal(poly, a, b):
        return diagonal(poly, a, b)

    A, V, B = dev[a], dev[v], dev[b]
    cands = [k for k in range(n)
             if k not in (a, v, b) and _in_closed_triangle(dev[k], A, V, B)]
    if cands:
        base = v_sub(B, A)

        def depth(k: int) -> Fraction:
            return abs(v_cross(base, v_sub(dev[k], A)))

        cands.sort(key=lambda k: (-depth(k), k))
        x = cands[0]
        if not is_admissible_diagonal(poly, v, x):
            raise InternalError("sweep vertex failed the admissibility predicate")
        return diagonal(poly, v, x)

    choices = []
    for clockwise in (True, False):
        w = _rotation_stopper(poly, v, clockwise)
        if w is not None and not poly.cyclic_adjacent(v, w) \
                and is_admissible_diagonal(poly, v, w):
            choices.append(w)
    if not choices:
        raise InternalError("ray rotation found no admissible diagonal")
    return diagonal(poly, v, min(choices))


# ---------------------------------------------------------------------------
# Triangulations
# ---------------------------------------------------------------------------

class Triangulation:
    """A polygon triangulation: canonical sorted diagonal set plus faces."""

    def __init__(self, polygon: EuclideanPolygon, diagonals):
        self.polygon = polygon
        self.diagonals: Tuple[Tuple[int, int], ...] = tuple(
            sorted((min(i, j), max(i, j)) for (i, j) in diagonals))
        self.triangles = _faces_of(polygon, self.diagonals)

    @property
    def key(self) -> Tuple[Tuple[int, int], ...]:
        return self.diagonals

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.key == other.key \
            and self.polygon is other.polygon

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Triangulation({list(self.diagonals)})"

    def has_diagonal(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in set(self.diagonals)

    def ear_tips(self) -> List[int]:
        """Vertices whose two polygon neighbors are joined by a diagonal of
        this triangulation (or directly, for a triangle)."""
        n = self.polygon.n
        if n == 3:
            return [0, 1, 2]
        present = set(self.diagonals)
        tips = []
        for u in range(n):
            i, j = (u - 1) % n, (u + 1) % n
            if (min(i, j), max(i, j)) in present:
                tips.append(u)
        return tips

    def validate(self) -> None:
        poly = self.polygon
        n = poly.n
        if len(self.diagonals) != n - 3:
            raise InvalidGeometryError("wrong number of diagonals")
        if len(self.triangles) != n - 2:
            raise InvalidGeometryError("wrong number of triangles")
        dev = poly.developed
        for idx, (i, j) in enumerate(self.diagonals):
            if not is_admissible_diagonal(poly, i, j):
                raise InvalidGeometryError(f"diagonal ({i},{j}) not admissible")
            for (k, l) in self.diagonals[idx + 1:]:
                if segments_properly_cross(dev[i], dev[j], dev[k], dev[l]) or \
                        segments_interiors_intersect(dev[i], dev[j], dev[k], dev[l]):
                    raise InvalidGeometryError("crossing diagonals")


def _faces_of(poly: EuclideanPolygon, diagonals) -> Tuple[Tuple[int, int, int], ...]:
    """Derive the triangle list from a non-crossing diagonal set."""
    n = poly.n
    if n == 3:
        return ((0, 1, 2),)
    present = set(diagonals)

    def connected(x: int, y: int) -> bool:
        return poly.cyclic_adjacent(x, y) or (min(x, y), max(x, y)) in present

    triangles: List[Tuple[int, int, int]] = []

    def walk(i: int, j: int) -> None:
        # triangle fan over the interval i..j (linear indices)
        if j == i + 1:
            return
        apexes = [k for k in range(i + 1, j)
                  if connected(i, k) and connected(k, j)
                  and orient(poly.developed[i], poly.developed[k],
                             poly.developed[j]) != 0]
        if len(apexes) != 1:
            raise InternalError(f"face apex not unique for ({i},{j}): {apexes}")
        k = apexes[0]
        triangles.append(tuple(sorted((i, k, j))))
        walk(i, k)
        walk(k, j)

    walk(0, n - 1)
    return tuple(sorted(triangles))


def enumerate_triangulations(poly: EuclideanPolygon,
                             bound: Optional[int] = None) -> List[Triangulation]:
    """The complete set of triangulations, by interval dynamic programming.

    The edge closing each index interval must bound a triangle whose apex is
    connected to both ends by boundary edges or admissible diagonals;
    sub-intervals recurse and memoize.
    """
    limit = bound if bound is not None else polygon_enumeration_bound()
    if poly.n > limit:
        raise EnumerationLimitError(
            f"polygon has {poly.n} vertices, enumeration bound is {limit}")
    n = poly.n
    dev = poly.developed

    def chord_ok(i: int, j: int) -> bool:
        if poly.cyclic_adjacent(i, j):
            return True
        return is_admissible_diagonal(poly, i, j)

    memo: Dict[Tuple[int, int], List[FrozenSet[Tuple[int, int]]]] = {}

    def solve(i: int, j: int) -> List[FrozenSet[Tuple[int, int]]]:
        if j == i + 1:
            return [frozenset()]
        hit = memo.get((i, j))
        if hit is not None:
            return hit
        acc: List[FrozenSet[Tuple[int, int]]] = []
        for k in range(i + 1, j):
            if orient(dev[i], dev[k], dev[j]) == 0:
                continue
            if not chord_ok(i, k) or not chord_ok(k, j):
                continue
            extra = set()
            if k > i + 1:
                extra.add((i, k))
            if j > k + 1:
                extra.add((k, j))
            for left in solve(i, k):
                for right in solve(k, j):
                    acc.append(left | right | extra)
        memo[(i, j)] = acc
        return acc

    if n == 3:
        return [Triangulation(poly, ())]
    results = [Triangulation(poly, sorted(s)) for s in solve(0, n - 1)]
    results.sort(key=lambda t: t.key)
    return results


def triangulate(poly: EuclideanPolygon) -> Triangulation:
    """One triangulation: recursive diagonal splitting on the plane and the
    cylinder (always succeeds), enumeration fallback elsewhere."""
    if poly.group.kind in (PLANE, CYLINDER):
        diags = _triangulate_by_splitting(poly, list(range(poly.n)))
        return Triangulation(poly, diags)
    found = enumerate_triangulations(poly)
    if not found:
        raise NotTriangulableError("polygon admits no triangulation")
    return found[0]


def _triangulate_by_splitting(parent: EuclideanPolygon,
                              indices: List[int]) -> List[Tuple[int, int]]:
    if len(indices) == 3:
        return []
    sub = parent.subpolygon(indices)
    d = find_admissible_diagonal(sub)
    gi, gj = indices[d.i], indices[d.j]
    left = indices[d.i:d.j + 1]
    right = indices[d.j:] + indices[:d.i + 1]
    return [(min(gi, gj), max(gi, gj))] \
        + _triangulate_by_splitting(parent, left) \
        + _triangulate_by_splitting(parent, right)


# ---------------------------------------------------------------------------
# Vertex classification and the quadrant obstruction
# ---------------------------------------------------------------------------

def extreme_vertices(poly: EuclideanPolygon) -> Dict[int, FrozenSet[str]]:
    """Classify each vertex: any of top/bottom/left/right, empty for reflex
    or non-extreme vertices.

    A convex vertex is top when neither incident edge rises from it (and
    symmetrically for the other labels); a vertex may carry two labels.
    """
    n = poly.n
    dev = poly.developed
    out: Dict[int, FrozenSet[str]] = {}
    for v in range(n):
        labels = set()
        if orient(dev[(v - 1) % n], dev[v], dev[(v + 1) % n]) > 0:
            d1 = v_sub(dev[(v - 1) % n], dev[v])
            d2 = v_sub(dev[(v + 1) % n], dev[v])
            if d1[1] <= 0 and d2[1] <= 0:
                labels.add("top")
            if d1[1] >= 0 and d2[1] >= 0:
                labels.add("bottom")
            if d1[0] <= 0 and d2[0] <= 0:
                labels.add("right")
            if d1[0] >= 0 and d2[0] >= 0:
                labels.add("left")
        out[v] = frozenset(labels)
    return out


def earable_vertices(poly: EuclideanPolygon) -> List[int]:
    """All vertices whose neighbor chord is an admissible diagonal."""
    if poly.n < 4:
        raise InvalidGeometryError("earable vertices need n >= 4")
    out = []
    for u in range(poly.n):
        if is_admissible_diagonal(poly, (u - 1) % poly.n, (u + 1) % poly.n):
            out.append(u)
    return out


def empty_quadrant_obstruction(poly: EuclideanPolygon) -> Optional[Vec]:
    """Search for a point of the polygon interior whose open
    half-period-by-half-period rectangle contains no polygon vertex.

    A witness certifies non-triangulability; absence certifies nothing.
    Candidate centers are taken on the grid of vertex coordinates offset by
    a quarter period in each axis.
    """
    group = poly.group
    if group.kind != TORUS or not group.is_flat_torus:
        raise UnsupportedSurfaceError("empty-quadrant test requires a flat torus")
    if not group.is_axis_aligned_flat_torus:
        raise UnsupportedSurfaceError("empty-quadrant test requires axis-aligned generators")
    span_a, span_b = group.flat_torus_spans
    qa, qb = span_a / 4, span_b / 4
    dev = poly.developed
    xs = sorted({p[0] + qa for p in dev} | {p[0] - qa for p in dev})
    ys = sorted({p[1] + qb for p in dev} | {p[1] - qb for p in dev})

    def vertex_in_quadrant(center: Vec) -> bool:
        for sp in poly.surface_points:
            dx = (sp.x - center[0]) % span_a
            dy = (sp.y - center[1]) % span_b
            if (dx < qa or span_a - dx < qa) and (dy < qb or span_b - dy < qb):
                return True
        return False

    for x in xs:
        for y in ys:
            center = (x, y)
            if point_in_cycle_unchecked(center, dev) != "inside":
                continue
            if not vertex_in_quadrant(center):
                return center
    return None
