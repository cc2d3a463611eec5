"""Exact model of the five locally Euclidean surfaces as plane quotients.

A surface is the quotient of the plane by a uniformly discontinuous motion
group: the trivial group (plane), one translation (cylinder), one glide
reflection (twisted cylinder), two independent translations (torus, flat or
skew), or a glide reflection plus an orthogonal translation (Klein bottle).

Groups are stored in the standard reference frame: translation generators of
the cylinder and the glide axis of the non-orientable surfaces lie along the
x-axis, and the Klein-bottle translation is vertical.  Torus generators may
be any two non-collinear vectors; the flat (orthogonal, axis-aligned) case
is flagged because several operations elsewhere are only valid there.

All arithmetic is exact rational.  Distances are handled as squared lengths,
which keeps every comparison in the rationals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, List, NamedTuple, Optional, Tuple

from .errors import (
    InternalError,
    InvalidGeometryError,
    NoSegmentError,
    UnsupportedSurfaceError,
)
from .scalars import (
    Fraction,
    Vec,
    dist2,
    q_floor,
    rat,
    v_add,
    v_cross,
    v_dot,
    v_len2,
    v_scale,
    v_sub,
)

PLANE = "plane"
CYLINDER = "cylinder"
TWISTED_CYLINDER = "twisted-cylinder"
TORUS = "torus"
KLEIN_BOTTLE = "klein-bottle"

KINDS = (PLANE, CYLINDER, TWISTED_CYLINDER, TORUS, KLEIN_BOTTLE)

# Safety cap for lift scans; desk-scale inputs never get anywhere near it.
_MAX_SCAN = 1_000_000


@dataclass(frozen=True)
class Motion:
    """A plane motion: identity, translation, or glide reflection.

    Rotations and pure reflections never occur as generators of the five
    group types, so they are unrepresentable here; compositions that would
    produce one raise InvalidGeometryError.
    """

    kind: str
    vector: Vec = (Fraction(0), Fraction(0))
    axis_point: Vec = (Fraction(0), Fraction(0))
    axis_dir: Vec = (Fraction(1), Fraction(0))

    def __post_init__(self):
        if self.kind not in ("identity", "translation", "glide"):
            raise InvalidGeometryError(f"unknown motion kind {self.kind!r}")
        if self.kind == "glide":
            if self.axis_dir == (0, 0):
                raise InvalidGeometryError("glide axis needs a direction")
            if v_cross(self.axis_dir, self.vector) != 0:
                raise InvalidGeometryError("glide vector must be parallel to its axis")
            if self.vector == (0, 0):
                raise InvalidGeometryError("glide vector must be nonzero")

    @staticmethod
    def identity() -> "Motion":
        return Motion("identity")

    @staticmethod
    def translation(vector: Vec) -> "Motion":
        return Motion("translation", vector=vector)

    @staticmethod
    def glide(vector: Vec, axis_point: Vec = (Fraction(0), Fraction(0)),
              axis_dir: Optional[Vec] = None) -> "Motion":
        if axis_dir is None:
            axis_dir = vector
        return Motion("glide", vector=vector, axis_point=axis_point,
                      axis_dir=axis_dir)

    @property
    def preserves_orientation(self) -> bool:
        return self.kind != "glide"

    def apply(self, p: Vec) -> Vec:
        if self.kind == "identity":
            return p
        if self.kind == "translation":
            return v_add(p, self.vector)
        # Glide: reflect across the axis, then translate along it.
        d = self.axis_dir
        w = v_sub(p, self.axis_point)
        t = v_dot(w, d) / v_len2(d)
        proj = v_scale(t, d)
        reflected = v_add(self.axis_point, v_sub(v_scale(Fraction(2), proj), w))
        return v_add(reflected, self.vector)


def apply_motion(m: Motion, p: Vec) -> Vec:
    return m.apply(p)


def _linear_offset(m: Motion) -> Tuple[Optional[Vec], Vec]:
    """Decompose a motion as p -> L(p) + o; L is None (identity linear part)
    or the reflection direction through the origin."""
    if m.kind == "identity":
        return None, (Fraction(0), Fraction(0))
    if m.kind == "translation":
        return None, m.vector
    d = m.axis_dir
    q = m.axis_point
    # glide(p) = R(p - q) + q + v = R(p) + (q - R(q) + v)
    t = v_dot(q, d) / v_len2(d)
    r_of_q = v_sub(v_scale(2 * t, d), q)
    offset = v_add(v_sub(q, r_of_q), m.vector)
    return d, offset


def _reflect_origin(d: Vec, p: Vec) -> Vec:
    t = v_dot(p, d) / v_len2(d)
    return v_sub(v_scale(2 * t, d), p)


def compose_motions(m1: Motion, m2: Motion) -> Motion:
    """Motion equal to applying m2 first, then m1.

    Raises InvalidGeometryError if the result is a rotation or a pure
    reflection (unrepresentable; cannot arise within one group).
    """
    l1, o1 = _linear_offset(m1)
    l2, o2 = _linear_offset(m2)
    if l1 is not None and l2 is not None:
        if v_cross(l1, l2) != 0:
            raise InvalidGeometryError("composition is a rotation")
        linear = None
        offset = v_add(_reflect_origin(l1, o2), o1)
    elif l1 is not None:
        linear = l1
        offset = v_add(_reflect_origin(l1, o2), o1)
    elif l2 is not None:
        linear = l2
        offset = v_add(o2, o1)
    else:
        linear = None
        offset = v_add(o2, o1)
    if linear is None:
        if offset == (0, 0):
            return Motion.identity()
        return Motion.translation(offset)
    # p -> R(p) + offset: split offset into components along/across the axis.
    d = linear
    t = v_dot(offset, d) / v_len2(d)
    o_par = v_scale(t, d)
    o_perp = v_sub(offset, o_par)
    if o_par == (0, 0):
        raise InvalidGeometryError("composition is a pure reflection")
    axis_point = v_scale(Fraction(1, 2), o_perp)
    return Motion.glide(o_par, axis_point, d)


class GroupElement(NamedTuple):
    """Closed form of a word in the generators: integer exponents.

    k1 counts the first generator (translation or glide), k2 the second
    (second torus translation / Klein-bottle translation); k2 is 0 for
    one-generator groups.
    """

    k1: int
    k2: int = 0

    @property
    def reverses_orientation_exponent(self) -> int:
        return self.k1 & 1


IDENTITY_ELEMENT = GroupElement(0, 0)


@dataclass(frozen=True)
class SurfaceGroup:
    """One of the five uniformly discontinuous motion group types."""

    kind: str
    generators: Tuple[Motion, ...] = ()

    def __post_init__(self):
        k = self.kind
        gens = self.generators
        if k == PLANE:
            if gens:
                raise InvalidGeometryError("plane group has no generators")
        elif k == CYLINDER:
            if len(gens) != 1 or gens[0].kind != "translation":
                raise InvalidGeometryError("cylinder needs one translation generator")
            vx, vy = gens[0].vector
            if vy != 0 or vx == 0:
                raise InvalidGeometryError(
                    "cylinder generator must be a nonzero horizontal translation")
        elif k == TWISTED_CYLINDER:
            if len(gens) != 1 or gens[0].kind != "glide":
                raise InvalidGeometryError("twisted cylinder needs one glide generator")
            self._check_x_axis_glide(gens[0])
        elif k == TORUS:
            if len(gens) != 2 or any(g.kind != "translation" for g in gens):
                raise InvalidGeometryError("torus needs two translation generators")
            if v_cross(gens[0].vector, gens[1].vector) == 0:
                raise InvalidGeometryError("torus generators must be non-collinear")
        elif k == KLEIN_BOTTLE:
            if len(gens) != 2:
                raise InvalidGeometryError("Klein bottle needs two generators")
            glide, transl = gens
            if glide.kind != "glide" or transl.kind != "translation":
                raise InvalidGeometryError(
                    "Klein bottle needs a glide followed by a translation")
            self._check_x_axis_glide(glide)
            tx, ty = transl.vector
            if tx != 0 or ty == 0:
                raise InvalidGeometryError(
                    "Klein-bottle translation must be vertical (orthogonal to the axis)")
        else:
            raise InvalidGeometryError(f"unknown surface kind {k!r}")

    @staticmethod
    def _check_x_axis_glide(g: Motion) -> None:
        if v_cross(g.axis_dir, (Fraction(1), Fraction(0))) != 0 or g.axis_point[1] != 0:
            raise InvalidGeometryError("glide axis must be the x-axis")
        if g.vector[1] != 0 or g.vector[0] == 0:
            raise InvalidGeometryError("glide vector must be horizontal and nonzero")

    # -- factories ---------------------------------------------------------

    @staticmethod
    def plane() -> "SurfaceGroup":
        return SurfaceGroup(PLANE)

    @staticmethod
    def cylinder(period) -> "SurfaceGroup":
        return SurfaceGroup(CYLINDER, (Motion.translation((rat(period), Fraction(0))),))

    @staticmethod
    def twisted_cylinder(period) -> "SurfaceGroup":
        return SurfaceGroup(
            TWISTED_CYLINDER,
            (Motion.glide((rat(period), Fraction(0))),))

    @staticmethod
    def torus(u, v) -> "SurfaceGroup":
        uu = (rat(u[0]), rat(u[1]))
        vv = (rat(v[0]), rat(v[1]))
        return SurfaceGroup(TORUS, (Motion.translation(uu), Motion.translation(vv)))

    @staticmethod
    def klein_bottle(glide_period, height) -> "SurfaceGroup":
        return SurfaceGroup(
            KLEIN_BOTTLE,
            (Motion.glide((rat(glide_period), Fraction(0))),
             Motion.translation((Fraction(0), rat(height)))))

    # -- derived properties ------------------------------------------------

    @property
    def orientable(self) -> bool:
        return self.kind in (PLANE, CYLINDER, TORUS)

    @property
    def period(self) -> Fraction:
        """|first generator displacement| along the x-axis (1-generator kinds
        and the Klein bottle)."""
        if self.kind in (CYLINDER, TWISTED_CYLINDER, KLEIN_BOTTLE):
            return abs(self.generators[0].vector[0])
        raise UnsupportedSurfaceError(f"no period for kind {self.kind}")

    @property
    def height(self) -> Fraction:
        if self.kind == KLEIN_BOTTLE:
            return abs(self.generators[1].vector[1])
        raise UnsupportedSurfaceError(f"no height for kind {self.kind}")

    @property
    def torus_vectors(self) -> Tuple[Vec, Vec]:
        if self.kind != TORUS:
            raise UnsupportedSurfaceError("not a torus")
        return self.generators[0].vector, self.generators[1].vector

    @property
    def is_flat_torus(self) -> bool:
        """True iff kind is torus and the generators are orthogonal."""
        if self.kind != TORUS:
            return False
        u, v = self.torus_vectors
        return v_dot(u, v) == 0

    @property
    def is_axis_aligned_flat_torus(self) -> bool:
        if self.kind != TORUS:
            return False
        u, v = self.torus_vectors
        horizontal = u[1] == 0 and v[0] == 0
        vertical = u[0] == 0 and v[1] == 0
        return horizontal or vertical

    @property
    def flat_torus_spans(self) -> Tuple[Fraction, Fraction]:
        """(|a|, |b|) for an axis-aligned flat torus: horizontal and vertical
        generator lengths."""
        if not self.is_axis_aligned_flat_torus:
            raise UnsupportedSurfaceError("requires an axis-aligned flat torus")
        u, v = self.torus_vectors
        if u[1] == 0:
            return abs(u[0]), abs(v[1])
        return abs(v[0]), abs(u[1])


@dataclass(frozen=True)
class SurfacePoint:
    """A surface point stored as its canonical planar representative."""

    group: SurfaceGroup
    x: Fraction
    y: Fraction

    @property
    def rep(self) -> Vec:
        return (self.x, self.y)

    def __repr__(self):
        return f"SurfacePoint({self.x}, {self.y})"


@dataclass(frozen=True)
class LiftedSegment:
    """A segment realized in the plane: canonical lift of the source joined
    to a specific lift of the target."""

    start: Vec
    end: Vec
    length2: Fraction = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        expected = dist2(self.start, self.end)
        if self.length2 is None:
            object.__setattr__(self, "length2", expected)
        elif self.length2 != expected:
            raise InvalidGeometryError("stored squared length disagrees with endpoints")


def element_motion(group: SurfaceGroup, elem: GroupElement) -> Motion:
    """Closed-form motion of the generator word g1^k1 g2^k2."""
    k1, k2 = elem
    kind = group.kind
    if kind == PLANE:
        return Motion.identity()
    if kind == CYLINDER:
        if k1 == 0:
            return Motion.identity()
        a = group.generators[0].vector
        return Motion.translation(v_scale(Fraction(k1), a))
    if kind == TWISTED_CYLINDER:
        g = group.generators[0].vector[0]
        if k1 == 0:
            return Motion.identity()
        if k1 % 2 == 0:
            return Motion.translation((k1 * g, Fraction(0)))
        return Motion.glide((k1 * g, Fraction(0)))
    if kind == TORUS:
        u, v = group.torus_vectors
        w = v_add(v_scale(Fraction(k1), u), v_scale(Fraction(k2), v))
        if w == (0, 0):
            return Motion.identity()
        return Motion.translation(w)
    if kind == KLEIN_BOTTLE:
        g = group.generators[0].vector[0]
        b = group.generators[1].vector[1]
        if k1 % 2 == 0:
            w = (k1 * g, k2 * b)
            if w == (0, 0):
                return Motion.identity()
            return Motion.translation(w)
        # (x, y) -> (x + k1*g, -y - k2*b): glide along y = -k2*b/2
        axis_point = (Fraction(0), Fraction(-k2 * b, 2))
        return Motion.glide((k1 * g, Fraction(0)), axis_point)
    raise UnsupportedSurfaceError(kind)


def element_compose(group: SurfaceGroup, a: GroupElement, b: GroupElement) -> GroupElement:
    """Element of motion(a) o motion(b)."""
    if group.kind == KLEIN_BOTTLE:
        sign = -1 if b.k1 % 2 else 1
        return GroupElement(a.k1 + b.k1, sign * a.k2 + b.k2)
    return GroupElement(a.k1 + b.k1, a.k2 + b.k2)


def element_inverse(group: SurfaceGroup, a: GroupElement) -> GroupElement:
    if group.kind == KLEIN_BOTTLE:
        sign = -1 if a.k1 % 2 else 1
        return GroupElement(-a.k1, -sign * a.k2)
    return GroupElement(-a.k1, -a.k2)


def canonicalize_with_element(group: SurfaceGroup, p: Vec) -> Tuple[SurfacePoint, GroupElement]:
    """Canonical representative plus the element mapping p onto it.

    The fundamental domain is half-open: the vertical band x in [0, |a|) for
    the cylinder and twisted cylinder, the generator-spanned parallelogram
    (coefficients in [0,1)) for the torus, and the rectangle
    [0, |a|) x [0, |b|) for the Klein bottle.
    """
    x, y = rat(p[0]), rat(p[1])
    kind = group.kind
    if kind == PLANE:
        return SurfacePoint(group, x, y), IDENTITY_ELEMENT
    if kind == CYLINDER:
        a = group.generators[0].vector[0]
        k = -q_floor(x / abs(a)) if a > 0 else q_floor(x / abs(a))
        return SurfacePoint(group, x + k * a, y), GroupElement(k, 0)
    if kind == TWISTED_CYLINDER:
        g = group.generators[0].vector[0]
        k = -q_floor(x / abs(g)) if g > 0 else q_floor(x / abs(g))
        ny = y if k % 2 == 0 else -y
        return SurfacePoint(group, x + k * g, ny), GroupElement(k, 0)
    if kind == TORUS:
        u, v = group.torus_vectors
        den = v_cross(u, v)
        alpha = v_cross((x, y), v) / den
        beta = v_cross(u, (x, y)) / den
        ka = -q_floor(alpha)
        kb = -q_floor(beta)
        rep = v_add((x, y), v_add(v_scale(Fraction(ka), u), v_scale(Fraction(kb), v)))
        return SurfacePoint(group, rep[0], rep[1]), GroupElement(ka, kb)
    if kind == KLEIN_BOTTLE:
        g = group.generators[0].vector[0]
        b = group.generators[1].vector[1]
        k = -q_floor(x / abs(g)) if g > 0 else q_floor(x / abs(g))
        ny = y if k % 2 == 0 else -y
        mp = -q_floor(ny / abs(b)) if b > 0 else q_floor(ny / abs(b))
        rep_y = ny + mp * b
        m = mp if k % 2 == 0 else -mp
        return SurfacePoint(group, x + k * g, rep_y), GroupElement(k, m)
    raise UnsupportedSurfaceError(kind)


def canonicalize(group: SurfaceGroup, p: Vec) -> SurfacePoint:
    return canonicalize_with_element(group, p)[0]


def surface_point(group: SurfaceGroup, x, y) -> SurfacePoint:
    return canonicalize(group, (rat(x), rat(y)))


# ---------------------------------------------------------------------------
# Lift enumeration
# ---------------------------------------------------------------------------

def _scan(start: int, step: int, cond) -> Iterator[int]:
    """Yield start, start+step, ... while cond holds (cond is unimodal)."""
    k = start
    count = 0
    while cond(k):
        yield k
        k += step
        count += 1
        if count > _MAX_SCAN:
            raise InternalError("lift scan exceeded the safety bound")


def lifts_within(group: SurfaceGroup, p: SurfacePoint, center: Vec,
                 radius2: Fraction) -> List[Tuple[GroupElement, Vec]]:
    """All orbit points of p within squared distance radius2 of center.

    Returns (element, lift) pairs with lift = element_motion(element)
    applied to p's canonical representative, sorted by lift coordinates.
    Complete: the per-exponent scans stop only when the distance term that
    is unimodal in that exponent already exceeds radius2.
    """
    if p.group != group:
        raise InvalidGeometryError("point belongs to a different group")
    r2 = rat(radius2)
    if r2 < 0:
        return []
    rx, ry = p.rep
    cx, cy = rat(center[0]), rat(center[1])
    out: List[Tuple[GroupElement, Vec]] = []
    kind = group.kind

    if kind == PLANE:
        if dist2(p.rep, (cx, cy)) <= r2:
            out.append((IDENTITY_ELEMENT, p.rep))

    elif kind == CYLINDER:
        a = group.generators[0].vector[0]
        dy2 = (ry - cy) ** 2

        def ok(k: int) -> bool:
            dx = rx + k * a - cx
            return dx * dx + dy2 <= r2

        kstar = (cx - rx) / a
        k0 = q_floor(kstar)
        for k in _scan(k0, -1, ok):
            out.append((GroupElement(k, 0), (rx + k * a, ry)))
        for k in _scan(k0 + 1, 1, ok):
            out.append((GroupElement(k, 0), (rx + k * a, ry)))

    elif kind == TWISTED_CYLINDER:
        g = group.generators[0].vector[0]
        for parity in (0, 1):
            yv = ry if parity == 0 else -ry
            dy2 = (yv - cy) ** 2
            if dy2 > r2:
                continue

            def ok(k: int, dy2=dy2) -> bool:
                dx = rx + k * g - cx
                return dx * dx + dy2 <= r2

            kstar = (cx - rx) / g
            k0 = 2 * q_floor((kstar - parity) / 2) + parity
            for k in _scan(k0, -2, ok):
                out.append((GroupElement(k, 0), (rx + k * g, yv)))
            for k in _scan(k0 + 2, 2, ok):
                out.append((GroupElement(k, 0), (rx + k * g, yv)))

    elif kind == TORUS:
        u, v = group.torus_vectors
        d = (cx - rx, cy - ry)
        den = v_cross(u, v)
        v2 = v_len2(v)

        def line_ok(k: int) -> bool:
            # squared distance from d to the line {k*u + m*v : m real}
            c = k * den - v_cross(d, v)
            return c * c <= r2 * v2

        def emit(k: int) -> None:
            w = v_sub(v_scale(Fraction(k), u), d)

            def ok(m: int) -> bool:
                lift_rel = v_add(w, v_scale(Fraction(m), v))
                return v_len2(lift_rel) <= r2

            mstar = -v_dot(w, v) / v2
            m0 = q_floor(mstar)
            for m in _scan(m0, -1, ok):
                lift = v_add((rx, ry), v_add(v_scale(Fraction(k), u), v_scale(Fraction(m), v)))
                out.append((GroupElement(k, m), lift))
            for m in _scan(m0 + 1, 1, ok):
                lift = v_add((rx, ry), v_add(v_scale(Fraction(k), u), v_scale(Fraction(m), v)))
                out.append((GroupElement(k, m), lift))

        kstar = v_cross(d, v) / den
        k0 = q_floor(kstar)
        for k in _scan(k0, -1, line_ok):
            emit(k)
        for k in _scan(k0 + 1, 1, line_ok):
            emit(k)

    elif kind == KLEIN_BOTTLE:
        g = group.generators[0].vector[0]
        b = group.generators[1].vector[1]
        for parity in (0, 1):
            y_base = ry if parity == 0 else -ry

            def x_ok(k: int) -> bool:
                dx = rx + k * g - cx
                return dx * dx <= r2

            def emit(k: int, y_base=y_base) -> None:
                dx2 = (rx + k * g - cx) ** 2

                def ok(mp: int) -> bool:
                    dy = y_base + mp * b - cy
                    return dx2 + dy * dy <= r2

                mstar = (cy - y_base) / b
                m0 = q_floor(mstar)
                sign = -1 if k % 2 else 1
                for mp in _scan(m0, -1, ok):
                    out.append((GroupElement(k, sign * mp),
                                (rx + k * g, y_base + mp * b)))
                for mp in _scan(m0 + 1, 1, ok):
                    out.append((GroupElement(k, sign * mp),
                                (rx + k * g, y_base + mp * b)))

            kstar = (cx - rx) / g
            k0 = 2 * q_floor((kstar - parity) / 2) + parity
            for k in _scan(k0, -2, x_ok):
                emit(k)
            for k in _scan(k0 + 2, 2, x_ok):
                emit(k)

    else:
        raise UnsupportedSurfaceError(kind)

    out.sort(key=lambda pair: (pair[1][0], pair[1][1], pair[0]))
    return out


def quotient_distance(group: SurfaceGroup, a: SurfacePoint, b: SurfacePoint
                      ) -> Tuple[Fraction, int, Vec]:
    """Exact squared quotient distance between two surface points.

    Returns (dist2, minimizer_count, nearest_lift): the minimum over lifts
    B' of b of |A - B'|^2 with A the canonical representative of a, the
    number of lifts attaining it, and the lexicographically least minimizer.
    """
    if a.group != group or b.group != group:
        raise InvalidGeometryError("points belong to a different group")
    r0 = dist2(a.rep, b.rep)
    cands = lifts_within(group, b, a.rep, r0)
    if not cands:
        raise InternalError("canonical lift missing from its own ball")
    best = min(dist2(a.rep, lift) for _, lift in cands)
    minimizers = [lift for _, lift in cands if dist2(a.rep, lift) == best]
    return best, len(minimizers), minimizers[0]


def segment_between(group: SurfaceGroup, a: SurfacePoint, b: SurfacePoint
                    ) -> Optional[LiftedSegment]:
    """The unique minimal geodesic between a and b, or None when the minimum
    is attained by two or more lifts (no segment exists)."""
    if a == b:
        raise InvalidGeometryError("no segment from a point to itself")
    d2, count, nearest = quotient_distance(group, a, b)
    if count >= 2:
        return None
    return LiftedSegment(a.rep, nearest, d2)


def segment_lift_is_unique_minimum(group: SurfaceGroup, start: Vec, end: Vec,
                                   target: SurfacePoint) -> bool:
    """Is the planar chord start-end the unique global segment realization
    between the orbit of start's point and target?

    start must be a lift of some surface point, end a lift of target.  True
    iff every other lift of target is strictly farther from start than end.
    """
    chord2 = dist2(start, end)
    for _, lift in lifts_within(group, target, start, chord2):
        if lift != end:
            return False
    return True


def surface_segments_cross(group: SurfaceGroup,
                           e1: Tuple[SurfacePoint, SurfacePoint],
                           e2: Tuple[SurfacePoint, SurfacePoint]) -> bool:
    """Do the segments of e1 and e2 properly cross on the surface?

    Both pairs must admit segments.  The segment of e1 is checked against
    every lift of the segment of e2 that could reach it; the lift search is
    bounded through the segment midpoints.
    """
    s1 = segment_between(group, *e1)
    s2 = segment_between(group, *e2)
    if s1 is None or s2 is None:
        raise NoSegmentError("pair has no segment")
    return _lifted_segments_meet(group, s1, s2, proper_only=True)


def segments_conflict(group: SurfaceGroup, s1: LiftedSegment, s2: LiftedSegment) -> bool:
    """Do the two realized segments share interior points on the surface?

    Like a proper-crossing test but also counting collinear overlaps; used
    by the point-set machinery where any interior contact is a conflict.
    """
    return _lifted_segments_meet(group, s1, s2, proper_only=False)


def _lifted_segments_meet(group: SurfaceGroup, s1: LiftedSegment,
                          s2: LiftedSegment, proper_only: bool) -> bool:
    from .planar import segments_interiors_intersect, segments_properly_cross

    m1 = ((s1.start[0] + s1.end[0]) / 2, (s1.start[1] + s1.end[1]) / 2)
    m2 = ((s2.start[0] + s2.end[0]) / 2, (s2.start[1] + s2.end[1]) / 2)
    # If the segments meet at q, |m1-q| <= len1/2 and |lift(m2)-q| <= len2/2,
    # so |m1 - lift(m2)| <= (len1+len2)/2, and ((l1+l2)/2)^2 <= (l1^2+l2^2)/2.
    bound = (s1.length2 + s2.length2) / 2
    sp_m2, delta = canonicalize_with_element(group, m2)
    delta_motion = element_motion(group, delta)
    a2 = delta_motion.apply(s2.start)
    b2 = delta_motion.apply(s2.end)
    for elem, _ in lifts_within(group, sp_m2, m1, bound):
        mo = element_motion(group, elem)
        c = mo.apply(a2)
        d = mo.apply(b2)
        if proper_only:
            if segments_properly_cross(s1.start, s1.end, c, d):
                return True
        else:
            if segments_interiors_intersect(s1.start, s1.end, c, d):
                return True
    return False


def orbit_copies_overlap(group: SurfaceGroup, cycle: Tuple[Vec, ...]) -> bool:
    """Does the closed planar cycle meet any of its own nontrivial copies?

    Used to certify that a developed polygon projects injectively to the
    surface (the region really is an embedded disc).
    """
    from .planar import point_in_cycle_unchecked, segments_interiors_intersect, \
        segments_properly_cross

    if group.kind == PLANE:
        return False
    n = len(cycle)
    # Bounding radius: all copies whose anchor lands within twice the
    # diameter of the cycle's anchor can touch it.
    anchor = cycle[0]
    diam2 = max(dist2(anchor, q) for q in cycle)
    sp, delta = canonicalize_with_element(group, anchor)
    delta_motion = element_motion(group, delta)
    shifted = tuple(delta_motion.apply(q) for q in cycle)
    for elem, _ in lifts_within(group, sp, anchor, 16 * (diam2 + 1)):
        mo = element_motion(group, elem)
        copy = tuple(mo.apply(q) for q in shifted)
        if copy == cycle:
            continue
        for i in range(n):
            a, b = cycle[i], cycle[(i + 1) % n]
            for j in range(n):
                c, d = copy[j], copy[(j + 1) % n]
                if segments_properly_cross(a, b, c, d) or \
                        segments_interiors_intersect(a, b, c, d):
                    return True
        if point_in_cycle_unchecked(copy[0], cycle) == "inside":
            return True
        if point_in_cycle_unchecked(cycle[0], copy) == "inside":
            return True
    return False
