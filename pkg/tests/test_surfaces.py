"""Kernel tests: motions, canonicalization, lifts, quotient metric."""
import random
from fractions import Fraction

import pytest

from flipsurf.errors import InvalidGeometryError
from flipsurf.planar import (
    orient,
    point_in_simple_polygon,
    segments_properly_cross,
)
from flipsurf.scalars import dist2, rat, vec
from flipsurf.surfaces import (
    GroupElement,
    Motion,
    SurfaceGroup,
    apply_motion,
    canonicalize,
    canonicalize_with_element,
    compose_motions,
    element_motion,
    lifts_within,
    quotient_distance,
    segment_between,
    surface_point,
    surface_segments_cross,
)

F = Fraction


def brute_lifts(group, sp, center, r2, span=25):
    """Independent oracle: scan a fixed exponent grid for orbit points."""
    found = []
    if group.kind == "plane":
        grid = [GroupElement(0, 0)]
    elif group.kind in ("cylinder", "twisted-cylinder"):
        grid = [GroupElement(k, 0) for k in range(-span, span + 1)]
    else:
        grid = [GroupElement(k, m)
                for k in range(-span, span + 1)
                for m in range(-span, span + 1)]
    for e in grid:
        lift = element_motion(group, e).apply(sp.rep)
        if dist2(lift, center) <= r2:
            found.append(lift)
    return sorted(set(found))


UNIT_CYLINDER = SurfaceGroup.cylinder(1)
UNIT_TWISTED = SurfaceGroup.twisted_cylinder(1)
UNIT_TORUS = SurfaceGroup.torus(("1", "0"), ("0", "1"))
SKEW_TORUS = SurfaceGroup.torus(("1", "0"), ("1/2", "1"))
KLEIN = SurfaceGroup.klein_bottle(1, 2)
PLANE = SurfaceGroup.plane()

ALL_GROUPS = [PLANE, UNIT_CYLINDER, UNIT_TWISTED, UNIT_TORUS, SKEW_TORUS, KLEIN]


class TestMotions:
    def test_identity(self):
        assert apply_motion(Motion.identity(), vec(3, 4)) == vec(3, 4)

    def test_translation(self):
        m = Motion.translation(vec(1, 0))
        assert apply_motion(m, vec("1/10", 0)) == vec("11/10", 0)

    def test_glide_unit_x_axis(self):
        # The twisted-cylinder generator: reflect across the x-axis, then
        # shift one unit along it.
        m = Motion.glide(vec(1, 0))
        assert apply_motion(m, vec("1/4", "1/4")) == vec("5/4", "-1/4")

    def test_glide_requires_parallel_vector(self):
        with pytest.raises(InvalidGeometryError):
            Motion.glide(vec(1, 1), axis_dir=vec(1, 0))

    @pytest.mark.parametrize("m", [
        Motion.identity(),
        Motion.translation(vec("2/3", "-5")),
        Motion.glide(vec(1, 0)),
        Motion.glide(vec("-3/2", 0), axis_point=vec(0, "7/3")),
    ])
    def test_motions_preserve_squared_distance(self, m):
        rng = random.Random(7)
        for _ in range(20):
            p = vec(F(rng.randint(-50, 50), 7), F(rng.randint(-50, 50), 11))
            q = vec(F(rng.randint(-50, 50), 5), F(rng.randint(-50, 50), 13))
            assert dist2(apply_motion(m, p), apply_motion(m, q)) == dist2(p, q)

    def test_compose_glide_glide_same_axis(self):
        g = Motion.glide(vec(1, 0))
        gg = compose_motions(g, g)
        assert gg.kind == "translation"
        assert gg.vector == vec(2, 0)

    def test_compose_translation_glide(self):
        g = Motion.glide(vec(1, 0))
        t = Motion.translation(vec(0, 2))
        m = compose_motions(t, g)
        assert m.kind == "glide"
        for p in [vec(0, 0), vec("1/3", "5/7"), vec(-2, 1)]:
            assert m.apply(p) == t.apply(g.apply(p))

    def test_compose_crossing_axes_rejected(self):
        g1 = Motion.glide(vec(1, 0))
        g2 = Motion.glide(vec(0, 1), axis_dir=vec(0, 1))
        with pytest.raises(InvalidGeometryError):
            compose_motions(g1, g2)


class TestGroupConstruction:
    def test_plane_rejects_generators(self):
        with pytest.raises(InvalidGeometryError):
            SurfaceGroup("plane", (Motion.translation(vec(1, 0)),))

    def test_cylinder_requires_horizontal(self):
        with pytest.raises(InvalidGeometryError):
            SurfaceGroup("cylinder", (Motion.translation(vec(1, 1)),))

    def test_torus_requires_independent_generators(self):
        with pytest.raises(InvalidGeometryError):
            SurfaceGroup.torus((1, 0), (2, 0))

    def test_flat_flags(self):
        assert UNIT_TORUS.is_flat_torus
        assert UNIT_TORUS.is_axis_aligned_flat_torus
        assert not SKEW_TORUS.is_flat_torus
        assert UNIT_TORUS.flat_torus_spans == (1, 1)


class TestElementMotion:
    def test_cylinder_power(self):
        m = element_motion(UNIT_CYLINDER, GroupElement(3, 0))
        assert m.kind == "translation" and m.vector == vec(3, 0)

    def test_twisted_even_power_is_translation(self):
        m = element_motion(UNIT_TWISTED, GroupElement(2, 0))
        assert m.kind == "translation" and m.vector == vec(2, 0)

    def test_twisted_inverse_glide(self):
        m = element_motion(UNIT_TWISTED, GroupElement(-1, 0))
        assert m.kind == "glide" and m.vector == vec(-1, 0)
        assert m.apply(vec("1/4", "1/4")) == vec("-3/4", "-1/4")

    def test_closed_form_equals_generator_word(self):
        rng = random.Random(3)
        for group in ALL_GROUPS:
            for _ in range(25):
                k1 = rng.randint(-4, 4)
                k2 = rng.randint(-4, 4)
                if group.kind in ("plane",):
                    k1 = k2 = 0
                if group.kind in ("cylinder", "twisted-cylinder"):
                    k2 = 0
                word = Motion.identity()
                g1 = group.generators[0] if group.generators else None
                # build g1^k1 g2^k2 by explicit composition
                if len(group.generators) == 2:
                    g2 = group.generators[1]
                    step2 = g2 if k2 >= 0 else _inverse(g2)
                    for _ in range(abs(k2)):
                        word = compose_motions(step2, word)
                if g1 is not None:
                    step1 = g1 if k1 >= 0 else _inverse(g1)
                    for _ in range(abs(k1)):
                        word = compose_motions(step1, word)
                closed = element_motion(group, GroupElement(k1, k2))
                p = vec(F(rng.randint(-20, 20), 3), F(rng.randint(-20, 20), 4))
                assert closed.apply(p) == word.apply(p), (group.kind, k1, k2)


def _inverse(m: Motion) -> Motion:
    if m.kind == "identity":
        return m
    if m.kind == "translation":
        return Motion.translation((-m.vector[0], -m.vector[1]))
    return Motion("glide", vector=(-m.vector[0], -m.vector[1]),
                  axis_point=m.axis_point, axis_dir=m.axis_dir)


class TestCanonicalize:
    def test_cylinder(self):
        assert canonicalize(UNIT_CYLINDER, vec("17/10", 3)).rep == vec("7/10", 3)

    def test_twisted(self):
        assert canonicalize(UNIT_TWISTED, vec("3/2", "1/4")).rep == vec("1/2", "-1/4")

    def test_torus(self):
        assert canonicalize(UNIT_TORUS, vec("-1/4", "5/4")).rep == vec("3/4", "1/4")

    def test_element_maps_input_to_rep(self):
        rng = random.Random(11)
        for group in ALL_GROUPS:
            for _ in range(40):
                p = vec(F(rng.randint(-60, 60), 7), F(rng.randint(-60, 60), 9))
                sp, e = canonicalize_with_element(group, p)
                assert element_motion(group, e).apply(p) == sp.rep

    def test_idempotent_and_orbit_invariant(self):
        rng = random.Random(13)
        for group in ALL_GROUPS:
            for _ in range(30):
                p = vec(F(rng.randint(-60, 60), 7), F(rng.randint(-60, 60), 9))
                sp = canonicalize(group, p)
                assert canonicalize(group, sp.rep) == sp
                k1 = rng.randint(-5, 5)
                k2 = rng.randint(-5, 5) if len(group.generators) == 2 else 0
                moved = element_motion(group, GroupElement(k1, k2)).apply(p)
                assert canonicalize(group, moved) == sp


class TestLifts:
    def test_plane_trivial(self):
        sp = surface_point(PLANE, 5, 6)
        assert lifts_within(PLANE, sp, vec(0, 0), 10**6) == \
            [(GroupElement(0, 0), vec(5, 6))]

    def test_cylinder_three_lifts(self):
        sp = surface_point(UNIT_CYLINDER, "1/10", 0)
        lifts = lifts_within(UNIT_CYLINDER, sp, vec("1/10", 0), 1)
        assert [lift for _, lift in lifts] == \
            [vec("-9/10", 0), vec("1/10", 0), vec("11/10", 0)]

    def test_torus_radius_half_and_one(self):
        # Derived by brute force over the exponent grid.
        sp = surface_point(UNIT_TORUS, 0, 0)
        small = lifts_within(UNIT_TORUS, sp, vec(0, 0), F(1, 2))
        assert [lift for _, lift in small] == [vec(0, 0)]
        unit = lifts_within(UNIT_TORUS, sp, vec(0, 0), 1)
        assert sorted(lift for _, lift in unit) == \
            sorted([vec(0, 0), vec(1, 0), vec(-1, 0), vec(0, 1), vec(0, -1)])

    @pytest.mark.parametrize("group", ALL_GROUPS)
    def test_against_brute_oracle(self, group):
        rng = random.Random(17)
        for _ in range(15):
            p = vec(F(rng.randint(-30, 30), 7), F(rng.randint(-30, 30), 5))
            c = vec(F(rng.randint(-30, 30), 4), F(rng.randint(-30, 30), 3))
            r2 = F(rng.randint(0, 40), rng.randint(1, 6))
            sp = canonicalize(group, p)
            got = sorted(set(lift for _, lift in lifts_within(group, sp, c, r2)))
            assert got == brute_lifts(group, sp, c, r2), (group.kind, p, c, r2)

    def test_lift_elements_act_on_rep(self):
        for group in ALL_GROUPS:
            sp = surface_point(group, "2/7", "3/5")
            for e, lift in lifts_within(group, sp, vec(0, 0), 9):
                assert element_motion(group, e).apply(sp.rep) == lift


class TestQuotientDistance:
    def test_cylinder_wraparound(self):
        a = surface_point(UNIT_CYLINDER, "1/10", 0)
        b = surface_point(UNIT_CYLINDER, "9/10", 0)
        d2, count, nearest = quotient_distance(UNIT_CYLINDER, a, b)
        assert (d2, count, nearest) == (F(1, 25), 1, vec("-1/10", 0))

    def test_torus_tie(self):
        a = surface_point(UNIT_TORUS, 0, 0)
        b = surface_point(UNIT_TORUS, "1/2", 0)
        d2, count, nearest = quotient_distance(UNIT_TORUS, a, b)
        assert d2 == F(1, 4)
        assert count == 2
        assert nearest == vec("-1/2", 0)

    def test_identical_points(self):
        a = surface_point(KLEIN, "1/3", "1/3")
        assert quotient_distance(KLEIN, a, a) == (0, 1, a.rep)

    def test_symmetry_and_triangle_inequality(self):
        import mpmath
        mpmath.mp.dps = 60
        rng = random.Random(23)
        for group in ALL_GROUPS:
            pts = [surface_point(group, F(rng.randint(0, 40), 41),
                                 F(rng.randint(0, 40), 37)) for _ in range(6)]
            for a in pts:
                for b in pts:
                    d_ab = quotient_distance(group, a, b)
                    d_ba = quotient_distance(group, b, a)
                    assert d_ab[0] == d_ba[0]
                    assert d_ab[1] == d_ba[1]
                    for c in pts:
                        d_ac = quotient_distance(group, a, c)[0]
                        d_cb = quotient_distance(group, c, b)[0]
                        lhs = mpmath.sqrt(mpmath.mpf(d_ab[0].numerator) / d_ab[0].denominator)
                        rhs = mpmath.sqrt(mpmath.mpf(d_ac.numerator) / d_ac.denominator) + \
                            mpmath.sqrt(mpmath.mpf(d_cb.numerator) / d_cb.denominator)
                        assert lhs <= rhs + mpmath.mpf("1e-30")

    def test_motion_equivariance(self):
        rng = random.Random(29)
        for group in ALL_GROUPS:
            for _ in range(10):
                p = vec(F(rng.randint(-20, 20), 7), F(rng.randint(-20, 20), 9))
                q = vec(F(rng.randint(-20, 20), 8), F(rng.randint(-20, 20), 5))
                k1 = rng.randint(-3, 3)
                k2 = rng.randint(-3, 3) if len(group.generators) == 2 else 0
                m = element_motion(group, GroupElement(k1, k2))
                a, b = canonicalize(group, p), canonicalize(group, q)
                a2 = canonicalize(group, m.apply(p))
                b2 = canonicalize(group, m.apply(q))
                d1 = quotient_distance(group, a, b)
                d2_ = quotient_distance(group, a2, b2)
                assert (d1[0], d1[1]) == (d2_[0], d2_[1])


class TestSegments:
    def test_cylinder_segment(self):
        a = surface_point(UNIT_CYLINDER, "1/10", 0)
        b = surface_point(UNIT_CYLINDER, "9/10", 0)
        seg = segment_between(UNIT_CYLINDER, a, b)
        assert seg is not None
        assert seg.end == vec("-1/10", 0)
        assert seg.length2 == F(1, 25)

    def test_torus_tie_has_no_segment(self):
        a = surface_point(UNIT_TORUS, 0, 0)
        b = surface_point(UNIT_TORUS, "1/2", 0)
        assert segment_between(UNIT_TORUS, a, b) is None

    def test_torus_in_domain_chord(self):
        a = surface_point(UNIT_TORUS, "1/10", "1/10")
        b = surface_point(UNIT_TORUS, "4/10", "2/10")
        seg = segment_between(UNIT_TORUS, a, b)
        assert seg is not None and seg.length2 == F(1, 10)
        assert seg.end == b.rep

    def test_same_point_is_error(self):
        a = surface_point(UNIT_TORUS, "1/10", "1/10")
        with pytest.raises(InvalidGeometryError):
            segment_between(UNIT_TORUS, a, a)

    def test_absent_exactly_when_tied(self):
        rng = random.Random(31)
        for group in ALL_GROUPS:
            for _ in range(25):
                a = surface_point(group, F(rng.randint(0, 12), 13), F(rng.randint(0, 12), 13))
                b = surface_point(group, F(rng.randint(0, 12), 13), F(rng.randint(0, 12), 13))
                if a == b:
                    continue
                _, count, _ = quotient_distance(group, a, b)
                seg = segment_between(group, a, b)
                assert (seg is None) == (count >= 2)


class TestSurfaceSegmentsCross:
    def test_torus_in_domain_crossing(self):
        e1 = (surface_point(UNIT_TORUS, "1/10", "1/10"),
              surface_point(UNIT_TORUS, "4/10", "4/10"))
        e2 = (surface_point(UNIT_TORUS, "1/10", "4/10"),
              surface_point(UNIT_TORUS, "4/10", "1/10"))
        assert surface_segments_cross(UNIT_TORUS, e1, e2)

    def test_torus_disjoint(self):
        e1 = (surface_point(UNIT_TORUS, "1/10", "1/10"),
              surface_point(UNIT_TORUS, "4/10", "4/10"))
        e2 = (surface_point(UNIT_TORUS, "6/10", "6/10"),
              surface_point(UNIT_TORUS, "8/10", "8/10"))
        assert not surface_segments_cross(UNIT_TORUS, e1, e2)

    def test_cylinder_wrap_crossing(self):
        # Derived by brute-force lift enumeration: the short wrap segment
        # from (1/10,0) to (9/10,0) passes through (0,0), crossing the
        # vertical segment there.
        e1 = (surface_point(UNIT_CYLINDER, "1/10", 0),
              surface_point(UNIT_CYLINDER, "9/10", 0))
        e2 = (surface_point(UNIT_CYLINDER, 0, -1),
              surface_point(UNIT_CYLINDER, 0, 1))
        assert brute_cross_oracle(UNIT_CYLINDER, e1, e2)
        assert surface_segments_cross(UNIT_CYLINDER, e1, e2)


def brute_cross_oracle(group, e1, e2, span=6):
    s1 = segment_between(group, *e1)
    s2 = segment_between(group, *e2)
    for k in range(-span, span + 1):
        m = element_motion(group, GroupElement(k, 0))
        c, d = m.apply(s2.start), m.apply(s2.end)
        if segments_properly_cross(s1.start, s1.end, c, d):
            return True
    return False


class TestPlanarPredicates:
    def test_orient(self):
        assert orient(vec(0, 0), vec(1, 0), vec(0, 1)) == 1
        assert orient(vec(0, 0), vec(1, 0), vec(2, 0)) == 0
        assert orient(vec(0, 0), vec(0, 1), vec(1, 0)) == -1

    def test_orient_alternating(self):
        rng = random.Random(37)
        for _ in range(30):
            p = vec(rng.randint(-9, 9), rng.randint(-9, 9))
            q = vec(rng.randint(-9, 9), rng.randint(-9, 9))
            r = vec(rng.randint(-9, 9), rng.randint(-9, 9))
            assert orient(p, q, r) == -orient(q, p, r) == -orient(p, r, q)

    def test_proper_crossings(self):
        assert segments_properly_cross(vec(0, 0), vec(1, 1), vec(0, 1), vec(1, 0))
        assert not segments_properly_cross(vec(0, 0), vec(1, 0), vec(0, 0), vec(0, 1))
        assert not segments_properly_cross(vec(0, 0), vec(1, 0), vec(0, 1), vec(1, 1))

    def test_point_in_polygon(self):
        square = [vec(0, 0), vec(1, 0), vec(1, 1), vec(0, 1)]
        assert point_in_simple_polygon(vec("1/2", "1/2"), square) == "inside"
        assert point_in_simple_polygon(vec(0, "1/2"), square) == "boundary"
        assert point_in_simple_polygon(vec(2, 0), square) == "outside"

    def test_self_intersecting_rejected(self):
        bowtie = [vec(0, 0), vec(1, 1), vec(1, 0), vec(0, 1)]
        with pytest.raises(InvalidGeometryError):
            point_in_simple_polygon(vec("1/2", "1/2"), bowtie)
