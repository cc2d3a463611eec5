"""Exact planar predicates: orientation, crossings, containment.

Everything here operates on developed (planar) coordinates with rational
arithmetic, so every sign decision is exact.
"""
from __future__ import annotations

import functools
from typing import List, Sequence

from .errors import InvalidGeometryError
from .scalars import Fraction, Vec, v_cross, v_dot, v_sub


def orient(p: Vec, q: Vec, r: Vec) -> int:
    """Sign of the cross product (q-p) x (r-p): +1 ccw, -1 cw, 0 collinear."""
    d = v_cross(v_sub(q, p), v_sub(r, p))
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def point_on_segment(p: Vec, a: Vec, b: Vec, strict: bool = False) -> bool:
    """Is p on segment ab?  With strict=True, endpoints do not count."""
    if orient(a, b, p) != 0:
        return False
    if strict and (p == a or p == b):
        return False
    lo_x, hi_x = min(a[0], b[0]), max(a[0], b[0])
    lo_y, hi_y = min(a[1], b[1]), max(a[1], b[1])
    return lo_x <= p[0] <= hi_x and lo_y <= p[1] <= hi_y


def segments_properly_cross(a: Vec, b: Vec, c: Vec, d: Vec) -> bool:
    """True iff open segments ab and cd cross transversally in one point.

    Touching configurations (shared endpoints, endpoint on the other
    segment's interior, collinear overlaps) are not proper crossings.
    """
    if a == b or c == d:
        raise InvalidGeometryError("degenerate segment")
    d1 = orient(a, b, c)
    d2 = orient(a, b, d)
    d3 = orient(c, d, a)
    d4 = orient(c, d, b)
    return d1 * d2 < 0 and d3 * d4 < 0


def segments_interiors_intersect(a: Vec, b: Vec, c: Vec, d: Vec) -> bool:
    """True iff the open segments share at least one point.

    Covers proper crossings and collinear overlaps of positive length;
    an endpoint lying on the other segment's interior does not count
    (the endpoint is not interior to its own segment).
    """
    if segments_properly_cross(a, b, c, d):
        return True
    if orient(a, b, c) != 0 or orient(a, b, d) != 0:
        return False
    # Collinear: check 1D overlap of the interiors along the dominant axis.
    axis = 0 if a[0] != b[0] else 1
    lo1, hi1 = sorted((a[axis], b[axis]))
    lo2, hi2 = sorted((c[axis], d[axis]))
    return max(lo1, lo2) < min(hi1, hi2)


def signed_area2(cycle: Sequence[Vec]) -> Fraction:
    """Twice the signed area of a closed polygonal cycle (ccw positive)."""
    total = Fraction(0)
    n = len(cycle)
    for i in range(n):
        total += v_cross(cycle[i], cycle[(i + 1) % n])
    return total


def validate_simple_cycle(cycle: Sequence[Vec]) -> None:
    """Raise InvalidGeometryError unless the cycle is a simple polygon.

    Checks: n >= 3, distinct consecutive points, no zero-length edges, no
    vertex lying on a non-incident edge, and no two edges intersecting
    except adjacent ones at their shared endpoint.
    """
    n = len(cycle)
    if n < 3:
        raise InvalidGeometryError("polygon needs at least 3 vertices")
    if len(set(cycle)) != n:
        raise InvalidGeometryError("repeated boundary point")
    edges = [(cycle[i], cycle[(i + 1) % n]) for i in range(n)]
    for i, (a, b) in enumerate(edges):
        if a == b:
            raise InvalidGeometryError("zero-length edge")
        for k, p in enumerate(cycle):
            if k != i and k != (i + 1) % n and point_on_segment(p, a, b):
                raise InvalidGeometryError("vertex lies on a non-incident edge")
    for i in range(n):
        for j in range(i + 1, n):
            a, b = edges[i]
            c, d = edges[j]
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent:
                if segments_interiors_intersect(a, b, c, d):
                    raise InvalidGeometryError("adjacent edges overlap")
            else:
                if segments_properly_cross(a, b, c, d) or \
                        segments_interiors_intersect(a, b, c, d):
                    raise InvalidGeometryError("boundary self-intersects")


def point_in_simple_polygon(p: Vec, cycle: Sequence[Vec]) -> str:
    """Exact classification of p against a simple polygon.

    Returns "inside", "boundary" or "outside".  The boundary must be a
    simple closed polygon (validated; self-intersection raises).
    """
    validate_simple_cycle(cycle)
    return point_in_cycle_unchecked(p, cycle)


def point_in_cycle_unchecked(p: Vec, cycle: Sequence[Vec]) -> str:
    """Ray-crossing classification assuming the cycle is already simple."""
    n = len(cycle)
    for i in range(n):
        if point_on_segment(p, cycle[i], cycle[(i + 1) % n]):
            return "boundary"
    # Horizontal ray to +infinity; half-open rule on y handles vertices.
    crossings = 0
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        if (a[1] > p[1]) != (b[1] > p[1]):
            # x-coordinate where edge crosses the horizontal line through p
            t = (p[1] - a[1]) / (b[1] - a[1])
            x_cross = a[0] + t * (b[0] - a[0])
            if x_cross > p[0]:
                crossings += 1
    return "inside" if crossings % 2 == 1 else "outside"


def _direction_half(d: Vec) -> int:
    # 0 for angles in [0, pi) measured ccw from +x, 1 for [pi, 2pi)
    if d[1] > 0 or (d[1] == 0 and d[0] > 0):
        return 0
    return 1


def _direction_cmp(d1: Vec, d2: Vec) -> int:
    h1, h2 = _direction_half(d1), _direction_half(d2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    c = v_cross(d1, d2)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


direction_sort_key = functools.cmp_to_key(_direction_cmp)


def ccw_angle_cmp(base: Vec, d1: Vec, d2: Vec) -> int:
    """Compare ccw angles of d1 and d2 measured from direction ``base``.

    Returns -1 / 0 / +1.  Angle 0 (same direction as base) sorts first.
    """
    def key(d: Vec) -> int:
        c = v_cross(base, d)
        t = v_dot(base, d)
        if c == 0 and t > 0:
            return 0  # aligned with base
        if c > 0:
            return 1  # (0, pi)
        if c == 0:
            return 2  # opposite
        return 3      # (pi, 2pi)

    k1, k2 = key(d1), key(d2)
    if k1 != k2:
        return -1 if k1 < k2 else 1
    if k1 in (0, 2):
        return 0
    c = v_cross(d1, d2)
    if k1 == 1:
        return -1 if c > 0 else (1 if c < 0 else 0)
    return -1 if c > 0 else (1 if c < 0 else 0)


def direction_between_ccw(d: Vec, start: Vec, end: Vec) -> bool:
    """Is direction d strictly inside the ccw angular sector from start to end?

    The sector is the set of directions swept rotating ccw from start to end
    (both exclusive).  start and end must not be parallel-equal.
    """
    cs = v_cross(start, d)
    ce = v_cross(d, end)
    if v_cross(start, end) > 0 or (v_cross(start, end) == 0 and v_dot(start, end) < 0):
        # sector smaller than or equal to pi
        return cs > 0 and ce > 0
    # reflex sector: complement of the <= pi sector from end to start
    return not (v_cross(end, d) > 0 and v_cross(d, start) > 0) and \
        not _parallel_same(d, start) and not _parallel_same(d, end)


def _parallel_same(a: Vec, b: Vec) -> bool:
    return v_cross(a, b) == 0 and v_dot(a, b) > 0


def convex_hull(points: List[Vec]) -> List[Vec]:
    """Monotone-chain convex hull (ccw, no collinear points on the hull)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: List[Vec] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]
