"""Constructive flip sequences.

Three constructions, each validated step by step against the exact flip
predicate before being returned:

* cylinder (and plane) polygons: ear induction.  If the two triangulations
  share a diagonal, split and recurse; otherwise flip one of them until it
  has an ear at an ear tip of the other, which creates a shared diagonal.
  Making an ear works by ear-removal reduction, or inside the star of the
  target vertex, with a breadth-first fallback on small stubborn cases.

* flat-torus polygons: route both triangulations to an ear at a common
  extreme earable vertex, remove the ear, recurse.  The routing treats the
  star of the vertex as a cylinder polygon when it fits in half a period;
  stalls fall back to other extreme vertices or to breadth-first search.

* cylinder point sets with equal boundary chains: triangulate the region
  between the chains ignoring interior points, flip each triangulation to
  contain that scaffold (channel polygons along each scaffold edge), then
  reconcile the leftover differences inside each scaffold triangle, where
  behavior is planar.
"""
from __future__ import annotations

from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .errors import (
    ConstructionStalledError,
    InternalError,
    InvalidGeometryError,
    UnsupportedSurfaceError,
)
from .flips import (
    FlipMove,
    apply_flip,
    build_flip_graph,
    flip_path_bfs,
    legal_flips,
    validate_flip_walk,
)
from .planar import orient, segments_properly_cross, signed_area2
from .pointsets import (
    BoundaryChains,
    Face,
    PointSetTriangulation,
    SurfacePointSet,
    boundary_chains,
    enumerate_point_set_triangulations,
    trace_faces,
)
from .polygons import (
    EuclideanPolygon,
    Triangulation,
    enumerate_triangulations,
    extreme_vertices,
    find_admissible_diagonal,
    is_admissible_diagonal,
    triangulate,
    validate_polygon,
)
from .scalars import Fraction, Vec, v_cross, v_dot, v_sub
from .surfaces import (
    CYLINDER,
    PLANE,
    TORUS,
    GroupElement,
    SurfaceGroup,
    canonicalize_with_element,
    element_compose,
    element_inverse,
    element_motion,
)

Edge = Tuple[int, int]
DiagSet = FrozenSet[Edge]


def _norm(i: int, j: int) -> Edge:
    return (min(i, j), max(i, j))


class _SubPolyCtx:
    """Cache of sub-polygons of one parent polygon, keyed by index cycles."""

    def __init__(self, poly: EuclideanPolygon):
        self.poly = poly
        self._cache: Dict[Tuple[int, ...], EuclideanPolygon] = {}

    def sub(self, indices: Tuple[int, ...]) -> EuclideanPolygon:
        if indices not in self._cache:
            if len(indices) == self.poly.n and list(indices) == list(range(self.poly.n)):
                self._cache[indices] = self.poly
            else:
                self._cache[indices] = self.poly.subpolygon(indices)
        return self._cache[indices]


def _cycle_neighbors(indices: Sequence[int], u: int) -> Tuple[int, int]:
    pos = indices.index(u)
    return indices[pos - 1], indices[(pos + 1) % len(indices)]


def _cycle_adjacent(indices: Sequence[int], a: int, b: int) -> bool:
    pa, pb = indices.index(a), indices.index(b)
    n = len(indices)
    return (pa - pb) % n == 1 or (pb - pa) % n == 1


def _ear_tips(indices: Sequence[int], dset: DiagSet) -> List[int]:
    if len(indices) == 3:
        return list(indices)
    tips = []
    for u in indices:
        p, nx = _cycle_neighbors(indices, u)
        if _norm(p, nx) in dset:
            tips.append(u)
    return tips


def _apply_to_set(dset: DiagSet, moves: Sequence[FlipMove]) -> DiagSet:
    cur = set(dset)
    for m in moves:
        cur.discard(m.removed)
        cur.add(m.inserted)
    return frozenset(cur)


def _local_pairs(indices: Sequence[int], dset: DiagSet) -> List[Edge]:
    loc = {v: k for k, v in enumerate(indices)}
    return [_norm(loc[i], loc[j]) for (i, j) in dset]


def _moves_to_parent(indices: Sequence[int], moves: Sequence[FlipMove]) -> List[FlipMove]:
    out = []
    for m in moves:
        out.append(FlipMove(_norm(indices[m.removed[0]], indices[m.removed[1]]),
                            _norm(indices[m.inserted[0]], indices[m.inserted[1]])))
    return out


def _triangulate_cycle(ctx: _SubPolyCtx, indices: Tuple[int, ...]) -> Set[Edge]:
    """Triangulation of the sub-polygon on the index cycle, as parent pairs,
    found by recursive splitting along constructively found diagonals."""
    if len(indices) == 3:
        return set()
    sub = ctx.sub(indices)
    d = find_admissible_diagonal(sub)
    gi, gj = indices[d.i], indices[d.j]
    left = indices[d.i:d.j + 1]
    right = indices[d.j:] + indices[:d.i + 1]
    out = {_norm(gi, gj)}
    out |= _triangulate_cycle(ctx, left)
    out |= _triangulate_cycle(ctx, right)
    return out


# ---------------------------------------------------------------------------
# Cylinder polygon paths (ear induction)
# ---------------------------------------------------------------------------

def _bfs_to_predicate(ctx: _SubPolyCtx, indices: Tuple[int, ...], dset: DiagSet,
                      accept) -> List[FlipMove]:
    """Shortest flip walk from dset to any accepted diagonal set, over the
    enumerated triangulations of the sub-polygon."""
    sub = ctx.sub(indices)
    nodes = enumerate_triangulations(sub)
    graph = build_flip_graph(nodes)
    start_local = frozenset(_local_pairs(indices, dset))
    targets = set()
    for t in nodes:
        parent = frozenset(_norm(indices[i], indices[j]) for (i, j) in t.diagonals)
        if accept(parent):
            targets.add(t.key)
    if not targets:
        raise InternalError("no triangulation satisfies the search target")
    start_key = tuple(sorted(start_local))
    if start_key in targets:
        return []
    from collections import deque
    prev: Dict[tuple, Tuple[tuple, FlipMove]] = {}
    seen = {start_key}
    queue = deque([start_key])
    while queue:
        cur = queue.popleft()
        for move, nxt in graph.adjacency[cur]:
            if nxt in seen:
                continue
            prev[nxt] = (cur, move)
            if nxt in targets:
                local_moves = []
                at = nxt
                while at != start_key:
                    at, mv = prev[at]
                    local_moves.append(mv)
                local_moves.reverse()
                return _moves_to_parent(indices, local_moves)
            seen.add(nxt)
            queue.append(nxt)
    raise InternalError("flip search exhausted the graph without a target")


def _make_ear(ctx: _SubPolyCtx, indices: Tuple[int, ...], dset: DiagSet,
              u: int) -> List[FlipMove]:
    """Flips carrying dset to a triangulation with an ear at u.

    Requires the chord joining u's neighbors to be admissible in the
    sub-polygon on `indices`.
    """
    p, nx = _cycle_neighbors(indices, u)
    c_u = _norm(p, nx)
    if c_u in dset or len(indices) == 3:
        return []
    if len(indices) == 4:
        other = next(iter(dset))
        move = FlipMove(other, c_u)
        return [move]

    dev = ctx.poly.developed
    for w in sorted(_ear_tips(indices, dset)):
        if w in (u, p, nx):
            continue
        wp, wn = _cycle_neighbors(indices, w)
        chord_w = _norm(wp, wn)
        if segments_properly_cross(dev[c_u[0]], dev[c_u[1]],
                                   dev[chord_w[0]], dev[chord_w[1]]):
            continue
        reduced = tuple(v for v in indices if v != w)
        sub = ctx.sub(reduced)
        lp, ln = _cycle_neighbors(reduced, u)
        if not is_admissible_diagonal(sub, reduced.index(lp), reduced.index(ln)):
            continue
        return _make_ear(ctx, reduced, dset - {chord_w}, u)

    # Star strategy: flip inside the subpolygon of triangles incident to u.
    link = [v for v in _cycle_from(indices, nx, p)
            if v in (nx, p) or _norm(u, v) in dset]
    star = tuple([u] + link)
    if len(star) < len(indices):
        sub = ctx.sub(star)
        if is_admissible_diagonal(sub, 1, len(star) - 1):
            d_star = frozenset(_norm(u, v) for v in link[1:-1])
            target = frozenset({c_u} | _triangulate_cycle(ctx, tuple(link)))
            return _path(ctx, star, d_star, target)
        return _bfs_to_predicate(ctx, indices, dset, lambda d: c_u in d)

    # The triangulation is the fan from u: collapse it one flip at a time.
    sub = ctx.sub(indices)
    t_obj = Triangulation(sub, _local_pairs(indices, dset))
    moves = legal_flips(t_obj)
    if not moves:
        return _bfs_to_predicate(ctx, indices, dset, lambda d: c_u in d)
    move = _moves_to_parent(indices, [moves[0]])[0]
    rest = _make_ear(ctx, indices, _apply_to_set(dset, [move]), u)
    return [move] + rest


def _cycle_from(indices: Sequence[int], start: int, end: int) -> List[int]:
    """Vertices from start to end inclusive, following the cycle order."""
    pos = indices.index(start)
    out = []
    n = len(indices)
    for k in range(n):
        v = indices[(pos + k) % n]
        out.append(v)
        if v == end:
            return out
    raise InternalError("end vertex not on the cycle")


def _path(ctx: _SubPolyCtx, indices: Tuple[int, ...], d1: DiagSet,
          d2: DiagSet) -> List[FlipMove]:
    if d1 == d2:
        return []
    shared = d1 & d2
    if shared:
        (i, j) = min(shared)
        side_a = tuple(_cycle_from(indices, i, j))
        side_b = tuple(_cycle_from(indices, j, i))
        set_a, set_b = set(side_a), set(side_b)
        rest1 = d1 - {(i, j)}
        rest2 = d2 - {(i, j)}
        a1 = frozenset(d for d in rest1 if d[0] in set_a and d[1] in set_a)
        a2 = frozenset(d for d in rest2 if d[0] in set_a and d[1] in set_a)
        b1 = rest1 - a1
        b2 = rest2 - a2
        return _path(ctx, side_a, a1, a2) + _path(ctx, side_b, b1, b2)
    if len(indices) == 4:
        move = FlipMove(next(iter(d1)), next(iter(d2)))
        return [move]
    v1 = min(_ear_tips(indices, d1))
    seq2 = _make_ear(ctx, indices, d2, v1)
    d2b = _apply_to_set(d2, seq2)
    main = _path(ctx, indices, d1, d2b)
    return main + [m.inverse() for m in reversed(seq2)]


def flip_path_cylinder(poly: EuclideanPolygon, t1: Triangulation,
                       t2: Triangulation) -> List[FlipMove]:
    """A valid flip sequence between two triangulations of a plane or
    cylinder polygon, by the ear induction; validated step by step."""
    if poly.group.kind not in (PLANE, CYLINDER):
        raise UnsupportedSurfaceError("flip_path_cylinder needs the plane or cylinder")
    if t1.polygon is not poly or t2.polygon is not poly:
        raise InvalidGeometryError("triangulations of a different polygon")
    ctx = _SubPolyCtx(poly)
    indices = tuple(range(poly.n))
    seq = _path(ctx, indices, frozenset(t1.diagonals), frozenset(t2.diagonals))
    validate_flip_walk(t1, seq, t2)
    return seq


# ---------------------------------------------------------------------------
# Flat-torus polygon paths
# ---------------------------------------------------------------------------

def _require_flat_torus(group: SurfaceGroup) -> None:
    if group.kind != TORUS or not group.is_flat_torus:
        raise UnsupportedSurfaceError("operation requires a flat torus")
    if not group.is_axis_aligned_flat_torus:
        raise UnsupportedSurfaceError("operation requires axis-aligned flat-torus generators")


def extreme_earable_vertex(poly: EuclideanPolygon) -> Tuple[int, Triangulation]:
    """An extreme vertex u of a triangulable flat-torus polygon together
    with a triangulation having an ear at u, found by ear-removal induction
    with the one corrective flip the quadrilateral case needs."""
    _require_flat_torus(poly.group)
    t = triangulate(poly)
    ctx = _SubPolyCtx(poly)
    u, dset = _extreme_ear_rec(ctx, tuple(range(poly.n)), frozenset(t.diagonals))
    return u, Triangulation(poly, sorted(dset))


def _extreme_ear_rec(ctx: _SubPolyCtx, indices: Tuple[int, ...], dset: DiagSet
                     ) -> Tuple[int, DiagSet]:
    sub = ctx.sub(indices)
    ext = extreme_vertices(sub)
    tips = sorted(_ear_tips(indices, dset))
    for tip in tips:
        if ext[indices.index(tip)]:
            return tip, dset
    if len(indices) == 4:
        for t in enumerate_triangulations(sub):
            parent = frozenset(_norm(indices[i], indices[j]) for (i, j) in t.diagonals)
            for tip in sorted(_ear_tips(indices, parent)):
                if ext[indices.index(tip)]:
                    return tip, parent
        raise InternalError("quadrilateral without an extreme ear")
    v = tips[0]
    a, b = _cycle_neighbors(indices, v)
    c_v = _norm(a, b)
    reduced = tuple(x for x in indices if x != v)
    u2, d2 = _extreme_ear_rec(ctx, reduced, dset - {c_v})
    full = d2 | {c_v}
    if u2 not in (a, b):
        return u2, full
    if ext[indices.index(v)]:
        return v, full
    # u2 is a neighbor of v; flip the ear base to move the ear onto it.
    other = b if u2 == a else a
    ra, rb = _cycle_neighbors(reduced, u2)
    c = ra if rb == other else rb
    move = FlipMove(c_v, _norm(c, v))
    t_obj = Triangulation(sub, _local_pairs(indices, full))
    local_move = FlipMove(
        _norm(indices.index(c_v[0]), indices.index(c_v[1])),
        _norm(indices.index(move.inserted[0]), indices.index(move.inserted[1])))
    if local_move not in legal_flips(t_obj):
        raise InternalError("the corrective ear flip is not legal")
    flipped = _apply_to_set(full, [move])
    if not ext[indices.index(u2)]:
        raise InternalError("corrective flip did not yield an extreme ear")
    return u2, flipped


def _rotated(p: Vec) -> Vec:
    return (p[1], -p[0])


def _ear_route(ctx: _SubPolyCtx, indices: Tuple[int, ...], dset: DiagSet,
               u: int) -> List[FlipMove]:
    """Flips carrying a flat-torus triangulation to one with an ear at u, by
    flipping inside the star of u viewed as a cylinder polygon.

    Raises ConstructionStalledError when the star does not fit in half a
    period or the target ear chord is not admissible inside it.
    """
    p, nx = _cycle_neighbors(indices, u)
    c_u = _norm(p, nx)
    if c_u in dset:
        return []
    sub = ctx.sub(indices)
    loc = {v: k for k, v in enumerate(indices)}
    if not is_admissible_diagonal(sub, loc[p], loc[nx]):
        raise InvalidGeometryError("vertex is not earable")
    link = [v for v in _cycle_from(indices, nx, p)
            if v in (nx, p) or _norm(u, v) in dset]
    star = tuple([u] + link)
    dev = ctx.poly.developed
    span_a, span_b = ctx.poly.group.flat_torus_spans
    xs = [dev[v][0] for v in star]
    ys = [dev[v][1] for v in star]
    frames = []
    if max(ys) - min(ys) < span_b / 2:
        frames.append(("horizontal", span_a))
    if max(xs) - min(xs) < span_a / 2:
        frames.append(("vertical", span_b))
    star_dev = [dev[v] for v in star]
    for frame, period in frames:
        pts = star_dev if frame == "horizontal" else [_rotated(q) for q in star_dev]
        cyl = SurfaceGroup.cylinder(period)
        try:
            cyl_poly = validate_polygon(cyl, pts)
        except InvalidGeometryError:
            continue
        if signed_area2(tuple(pts)) < 0:
            raise InternalError("star development changed orientation")
        if not is_admissible_diagonal(cyl_poly, 1, len(star) - 1):
            continue
        cyl_ctx = _SubPolyCtx(cyl_poly)
        local_cycle = tuple(range(len(star)))
        d_star = frozenset(_norm(0, k) for k in range(2, len(star) - 1))
        target = frozenset({_norm(1, len(star) - 1)} |
                           _triangulate_cycle(cyl_ctx, tuple(range(1, len(star)))))
        local_moves = _path(cyl_ctx, local_cycle, d_star, target)
        return _moves_to_parent(star, local_moves)
    raise ConstructionStalledError(
        f"star of vertex {u} admits no half-period cylinder route")


def flip_path_flat_torus(poly: EuclideanPolygon, t1: Triangulation,
                         t2: Triangulation) -> List[FlipMove]:
    """A valid flip sequence between two triangulations of a flat-torus
    polygon: both are routed to an ear at a common extreme earable vertex,
    the ear is cut off, and the rest recurses; stalled ear routes fall back
    to other extreme vertices and finally to breadth-first search."""
    _require_flat_torus(poly.group)
    if t1.polygon is not poly or t2.polygon is not poly:
        raise InvalidGeometryError("triangulations of a different polygon")
    ctx = _SubPolyCtx(poly)
    seq = _torus_path(ctx, tuple(range(poly.n)),
                      frozenset(t1.diagonals), frozenset(t2.diagonals))
    validate_flip_walk(t1, seq, t2)
    return seq


def _torus_path(ctx: _SubPolyCtx, indices: Tuple[int, ...], d1: DiagSet,
                d2: DiagSet) -> List[FlipMove]:
    if d1 == d2:
        return []
    shared = d1 & d2
    if shared:
        (i, j) = min(shared)
        side_a = tuple(_cycle_from(indices, i, j))
        side_b = tuple(_cycle_from(indices, j, i))
        set_a = set(side_a)
        rest1, rest2 = d1 - {(i, j)}, d2 - {(i, j)}
        a1 = frozenset(d for d in rest1 if d[0] in set_a and d[1] in set_a)
        a2 = frozenset(d for d in rest2 if d[0] in set_a and d[1] in set_a)
        return _torus_path(ctx, side_a, a1, a2) + \
            _torus_path(ctx, side_b, rest1 - a1, rest2 - a2)
    sub = ctx.sub(indices)
    ext = extreme_vertices(sub)
    loc = {v: k for k, v in enumerate(indices)}
    candidates = []
    for u in indices:
        if not ext[loc[u]]:
            continue
        p, nx = _cycle_neighbors(indices, u)
        if is_admissible_diagonal(sub, loc[p], loc[nx]):
            candidates.append(u)
    for u in candidates:
        try:
            s1 = _ear_route(ctx, indices, d1, u)
            s2 = _ear_route(ctx, indices, d2, u)
        except ConstructionStalledError:
            continue
        d1b = _apply_to_set(d1, s1)
        d2b = _apply_to_set(d2, s2)
        mid = _torus_path(ctx, indices, d1b, d2b)
        return s1 + mid + [m.inverse() for m in reversed(s2)]
    return _bfs_between(ctx, indices, d1, d2)


def _bfs_between(ctx: _SubPolyCtx, indices: Tuple[int, ...], d1: DiagSet,
                 d2: DiagSet) -> List[FlipMove]:
    sub = ctx.sub(indices)
    nodes = enumerate_triangulations(sub)
    graph = build_flip_graph(nodes)
    k1 = tuple(sorted(_local_pairs(indices, d1)))
    k2 = tuple(sorted(_local_pairs(indices, d2)))
    path = flip_path_bfs(graph, graph.node_map[k1], graph.node_map[k2])
    if path is None:
        raise InternalError("expected connected flip graph, found none")
    return _moves_to_parent(indices, path)
