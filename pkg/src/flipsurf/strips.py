"""Flip paths between cylinder point-set triangulations with equal
boundary chains.

The construction mirrors the three-stage argument that proves such paths
exist: (a) triangulate the region between the chains using chain vertices
only (the scaffold), cutting the annular part open along one chain-to-chain
segment; (b) flip each input triangulation until it contains every scaffold
edge, working inside the channel polygon of triangles each scaffold edge
crosses; (c) the remaining differences live inside scaffold triangles,
where behavior is planar, and are reconciled by local flips.

Every produced sequence is replay-validated move by move.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import (
    ConstructionStalledError,
    InternalError,
    InvalidGeometryError,
    UnsupportedSurfaceError,
)
from .flips import FlipMove, apply_flip, build_flip_graph, flip_path_bfs, \
    validate_flip_walk
from .paths import _SubPolyCtx, _path, _triangulate_cycle
from .planar import orient, segments_properly_cross, signed_area2
from .pointsets import (
    Face,
    PointSetTriangulation,
    SurfacePointSet,
    boundary_chains,
    enumerate_point_set_triangulations,
    trace_faces,
    _sector_contains,
)
from .polygons import EuclideanPolygon, enumerate_triangulations, validate_polygon
from .scalars import Fraction, Vec, dist2, v_sub
from .surfaces import (
    CYLINDER,
    GroupElement,
    LiftedSegment,
    canonicalize_with_element,
    element_compose,
    element_inverse,
    element_motion,
    lifts_within,
    segments_conflict,
)

Edge = Tuple[int, int]


def _norm(i: int, j: int) -> Edge:
    return (min(i, j), max(i, j))


def _deck_to(group, src: Vec, dst: Vec):
    """The motion of the deck element carrying lift src onto lift dst (both
    lifts of the same surface point)."""
    sp1, d1 = canonicalize_with_element(group, src)
    sp2, d2 = canonicalize_with_element(group, dst)
    if sp1 != sp2:
        raise InternalError("points are not on the same orbit")
    elem = element_compose(group, element_inverse(group, d2), d1)
    mo = element_motion(group, elem)
    if mo.apply(src) != dst:
        raise InternalError("deck transform failed to match lifts")
    return mo


def _edge_realization_from(s: SurfacePointSet, u: int, other: int
                           ) -> Tuple[Vec, Vec]:
    """The segment realization of (u, other) anchored at u's canonical
    representative."""
    seg = s.segment(u, other)
    if seg is None:
        raise InvalidGeometryError(f"pair ({u},{other}) has no segment")
    if u == min(u, other):
        return seg.start, seg.end
    mo = _deck_to(s.group, seg.end, s.points[u].rep)
    return s.points[u].rep, mo.apply(seg.start)


def _face_corner_dirs(face: Face, idx: int, group) -> Tuple[Vec, Vec]:
    k = len(face.corners)
    pos = face.corners[idx]
    nxt = face.corners[idx + 1] if idx + 1 < k else face.closure
    if idx > 0:
        prv = face.corners[idx - 1]
    else:
        inv = element_motion(group, element_inverse(group, face.holonomy))
        prv = inv.apply(face.corners[-1])
    return v_sub(nxt, pos), v_sub(prv, pos)


# ---------------------------------------------------------------------------
# Scaffold construction
# ---------------------------------------------------------------------------

def _split_closed_cycle(positions: List[Vec], ids: List[int]
                        ) -> List[Tuple[List[Vec], List[int]]]:
    """Split a closed developed cycle at repeated positions (pinch points)
    into simple cycles."""
    for i in range(len(positions)):
        for j in range(i + 1, len(positions)):
            if positions[i] == positions[j]:
                first = _split_closed_cycle(positions[i:j], ids[i:j])
                second = _split_closed_cycle(positions[:i] + positions[j:],
                                             ids[:i] + ids[j:])
                return first + second
    if len(positions) < 3:
        return []
    return [(positions, ids)]


def _oriented(positions: List[Vec], ids: List[int]):
    if signed_area2(positions) < 0:
        positions = [positions[0]] + list(reversed(positions[1:]))
        ids = [ids[0]] + list(reversed(ids[1:]))
    return positions, ids


def _piece_polygon(s: SurfacePointSet, positions: List[Vec], ids: List[int]
                   ) -> Tuple[EuclideanPolygon, List[int]]:
    positions, ids = _oriented(positions, ids)
    try:
        poly = validate_polygon(s.group, positions, allow_repeated_vertices=True)
    except InvalidGeometryError as exc:
        raise ConstructionStalledError(f"scaffold piece is degenerate: {exc}")
    return poly, ids


def _triangulate_piece(s: SurfacePointSet, positions: List[Vec], ids: List[int]
                       ) -> Set[Edge]:
    """Parent-index diagonals triangulating one scaffold piece; every chord
    must be a usable segment of the point set."""
    poly, ids = _piece_polygon(s, positions, ids)
    usable = set(s.usable_pairs())
    ctx = _SubPolyCtx(poly)
    local = _triangulate_cycle(ctx, tuple(range(poly.n)))
    parent = {_norm(ids[i], ids[j]) for (i, j) in local}
    if all(e in usable for e in parent):
        return parent
    for t in enumerate_triangulations(poly):
        parent = {_norm(ids[i], ids[j]) for (i, j) in t.diagonals}
        if all(e in usable for e in parent):
            return parent
    raise ConstructionStalledError(
        "no scaffold piece triangulation avoids interior points")


def _choose_cut(s: SurfacePointSet, w1: Face, w2: Face,
                chain_edges: Set[Edge]) -> Edge:
    """A chain-to-chain segment entering the annular region at a vertex of
    the first walk; deterministic lexicographic choice."""
    usable = set(s.usable_pairs())
    group = s.group
    for u in sorted(set(w1.vertices)):
        for l in sorted(set(w2.vertices)):
            if u == l:
                continue
            pair = _norm(u, l)
            if pair in chain_edges or pair not in usable:
                continue
            seg = s.segment(*pair)
            if any(segments_conflict(group, seg, s.segment(*ce))
                   for ce in chain_edges):
                continue
            start, end = _edge_realization_from(s, u, l)
            ok = False
            for idx in range(len(w1.corners)):
                if w1.vertices[idx] != u:
                    continue
                mo = _deck_to(group, start, w1.corners[idx])
                direction = v_sub(mo.apply(end), w1.corners[idx])
                out_dir, in_dir = _face_corner_dirs(w1, idx, group)
                if _sector_contains(out_dir, in_dir, direction):
                    ok = True
                    break
            if ok:
                return pair
    raise ConstructionStalledError("no usable cut between the boundary chains")


def _rotate_walk(face: Face, idx: int, group) -> Tuple[List[Vec], List[int], Vec]:
    """Develop the walk starting from corner idx: rotated corner positions,
    vertex ids, and the position one full walk past the new start."""
    h = element_motion(group, face.holonomy)
    corners = list(face.corners[idx:]) + [h.apply(q) for q in face.corners[:idx]]
    ids = list(face.vertices[idx:]) + list(face.vertices[:idx])
    end = h.apply(face.corners[idx])
    return corners, ids, end


def _cut_polygon(s: SurfacePointSet, w1: Face, w2: Face, cut: Edge
                 ) -> Tuple[List[Vec], List[int]]:
    """Develop the annular region cut open along the chain-to-chain segment:
    one full pass of each chain joined by the two lifts of the cut."""
    group = s.group
    u, l = cut if cut[0] in set(w1.vertices) and cut[1] in set(w2.vertices) \
        else (cut[1], cut[0])
    if u not in set(w1.vertices) or l not in set(w2.vertices):
        raise InternalError("cut endpoints are not on the two walks")
    start_u, end_l = _edge_realization_from(s, u, l)
    for idx1 in [k for k, v in enumerate(w1.vertices) if v == u]:
        c1, ids1, end1 = _rotate_walk(w1, idx1, group)
        base = _deck_to(group, start_u, c1[0])
        for idx2 in [k for k, v in enumerate(w2.vertices) if v == l]:
            c2r, ids2, _ = _rotate_walk(w2, idx2, group)
            # the cut copy at the far end of walk 1
            far = _deck_to(group, start_u, end1)
            l_far = far.apply(end_l)
            glue = _deck_to(group, c2r[0], l_far)
            c2 = [glue.apply(q) for q in c2r]
            end2 = glue.apply(element_motion(group, w2.holonomy).apply(c2r[0]))
            # closing cut: from end2 back to the start of walk 1
            closing = _deck_to(group, start_u, c1[0])
            if closing.apply(end_l) == end2:
                positions = c1 + [end1] + c2 + [end2]
                ids = ids1 + [u] + ids2 + [l]
                return positions, ids
    raise ConstructionStalledError("could not close the cut annulus development")


def chain_scaffold(s: SurfacePointSet, t: PointSetTriangulation) -> Set[Edge]:
    """Edges triangulating the region between t's boundary chains using
    chain vertices only: the chains themselves, piece diagonals, and one
    cut for the annular part."""
    essential = [f for f in t.faces if f.holonomy != GroupElement(0, 0)]
    if len(essential) != 2:
        raise InternalError("expected two essential faces")
    chain_edges: Set[Edge] = set()
    for f in essential:
        chain_edges |= {(min(d), max(d)) for d in f.darts}
    scaffold = set(chain_edges)
    faces = trace_faces(s, sorted(chain_edges))
    annulus_walks = [f for f in faces
                     if f.holonomy != GroupElement(0, 0)
                     and f.classification != "unbounded"]
    for f in faces:
        if f.classification != "bounded":
            continue
        for positions, ids in _split_closed_cycle(list(f.corners),
                                                  list(f.vertices)):
            scaffold |= _triangulate_piece(s, positions, ids)
    if annulus_walks:
        if len(annulus_walks) != 2:
            raise InternalError("unexpected annular structure between chains")
        w1, w2 = annulus_walks
        cut = _choose_cut(s, w1, w2, chain_edges)
        scaffold.add(cut)
        positions, ids = _cut_polygon(s, w1, w2, cut)
        scaffold |= _triangulate_piece(s, positions, ids)
    return scaffold


# ---------------------------------------------------------------------------
# Channel insertion
# ---------------------------------------------------------------------------

def _glue_faces(group, shared: Edge, cur_positions: Dict[int, Vec],
                nxt: Face) -> List[Vec]:
    """Positions of nxt's corners developed so its copy of the shared edge
    coincides with cur_positions."""
    idx = next(k for k, d in enumerate(nxt.darts) if _norm(*d) == shared)
    q_start = nxt.corners[idx]
    q_end = nxt.corners[idx + 1] if idx + 1 < len(nxt.corners) else nxt.closure
    i, j = nxt.darts[idx]
    mo = _deck_to(group, q_start, cur_positions[i])
    if mo.apply(q_end) != cur_positions[j]:
        raise InternalError("face gluing failed along the channel")
    return [mo.apply(q) for q in nxt.corners]


def _march_channel(s: SurfacePointSet, t: PointSetTriangulation, e: Edge):
    """The triangles of t crossed by the segment e, developed along it.

    Returns (ordered crossed edges with developed endpoint positions,
    the developed endpoints of e)."""
    group = s.group
    u, l = e
    e_start, e_end = _edge_realization_from(s, u, l)
    triangles = t.triangle_faces()
    by_edge: Dict[Edge, List[Face]] = {}
    for f in triangles:
        for d in f.darts:
            by_edge.setdefault(_norm(*d), []).append(f)

    start_face = None
    for f in triangles:
        for idx, d in enumerate(f.darts):
            if d[0] != u:
                continue
            mo = _deck_to(group, e_start, f.corners[idx])
            direction = v_sub(mo.apply(e_end), f.corners[idx])
            out_dir, in_dir = _face_corner_dirs(f, idx, group)
            if _sector_contains(out_dir, in_dir, direction):
                shift = _deck_to(group, f.corners[idx], e_start)
                start_face = (f, [shift.apply(q) for q in f.corners])
                break
        if start_face:
            break
    if start_face is None:
        raise ConstructionStalledError(f"no triangle of the current "
                                       f"triangulation starts the channel of {e}")

    crossed: List[Tuple[Edge, Dict[int, Vec]]] = []
    face, positions = start_face
    entry: Optional[Edge] = None
    for _ in range(4 * len(triangles) + 4):
        pos_by_vertex = {face.darts[k][0]: positions[k]
                         for k in range(len(face.darts))}
        if any(p == e_end for p in positions):
            return crossed, e_start, e_end
        exit_edge = None
        for k, d in enumerate(face.darts):
            pair = _norm(*d)
            if pair == entry:
                continue
            a = positions[k]
            b = positions[k + 1] if k + 1 < len(positions) else \
                _deck_to(group, face.corners[0], positions[0]).apply(face.closure)
            if segments_properly_cross(e_start, e_end, a, b):
                exit_edge = (pair, {d[0]: a, d[1]: b})
                break
        if exit_edge is None:
            raise ConstructionStalledError(
                f"channel march lost the segment {e}")
        pair, endpoint_pos = exit_edge
        crossed.append((pair, endpoint_pos))
        candidates = [f2 for f2 in by_edge.get(pair, []) if f2 is not face]
        if len(candidates) != 1:
            raise ConstructionStalledError(
                f"scaffold edge {e} crosses a non-flippable boundary edge")
        nxt = candidates[0]
        positions = _glue_faces(group, pair, endpoint_pos, nxt)
        face = nxt
        entry = pair
    raise InternalError("channel march did not terminate")


def _insert_edge_moves(s: SurfacePointSet, t: PointSetTriangulation,
                       e: Edge) -> List[FlipMove]:
    """Flips making the segment e an edge of t, confined to the polygon of
    triangles crossed by e."""
    crossed, e_start, e_end = _march_channel(s, t, e)
    if not crossed:
        raise InternalError(f"edge {e} crosses nothing yet is absent")
    u, l = e
    rights: List[Tuple[int, Vec]] = []
    lefts: List[Tuple[int, Vec]] = []
    for pair, endpoint_pos in crossed:
        for vid, pos in endpoint_pos.items():
            side = orient(e_start, e_end, pos)
            if side == 0:
                raise ConstructionStalledError("channel endpoint on the segment line")
            bucket = rights if side < 0 else lefts
            if not bucket or bucket[-1][1] != pos:
                bucket.append((vid, pos))
    cycle_ids = [u] + [vid for vid, _ in rights] + [l] + \
        [vid for vid, _ in reversed(lefts)]
    cycle_pos = [e_start] + [pos for _, pos in rights] + [e_end] + \
        [pos for _, pos in reversed(lefts)]
    cycle_pos, cycle_ids = _oriented(cycle_pos, cycle_ids)
    try:
        poly = validate_polygon(s.group, cycle_pos, allow_repeated_vertices=True)
    except InvalidGeometryError as exc:
        raise ConstructionStalledError(f"channel polygon is degenerate: {exc}")
    pos_index = {p: k for k, p in enumerate(cycle_pos)}
    current = set()
    for pair, endpoint_pos in crossed:
        li = [pos_index[p] for p in endpoint_pos.values()]
        current.add(_norm(*li))
    l_idx = pos_index[e_end]
    ctx = _SubPolyCtx(poly)
    n = poly.n
    side_a = tuple(range(0, l_idx + 1))
    side_b = tuple(range(l_idx, n)) + (0,)
    target = {_norm(0, l_idx)}
    target |= _triangulate_cycle(ctx, side_a)
    target |= _triangulate_cycle(ctx, side_b)
    local_moves = _path(ctx, tuple(range(n)), frozenset(current),
                        frozenset(target))
    return [FlipMove(_norm(cycle_ids[m.removed[0]], cycle_ids[m.removed[1]]),
                     _norm(cycle_ids[m.inserted[0]], cycle_ids[m.inserted[1]]))
            for m in local_moves]


def _ensure_edges(s: SurfacePointSet, t: PointSetTriangulation,
                  scaffold: Set[Edge]):
    moves: List[FlipMove] = []
    cur = t
    for e in sorted(scaffold):
        if e in cur.edges:
            continue
        seq = _insert_edge_moves(s, cur, e)
        for m in seq:
            cur = apply_flip(cur, m)
        moves.extend(seq)
        if e not in cur.edges:
            raise InternalError(f"channel flips failed to insert {e}")
    return moves, cur


# ---------------------------------------------------------------------------
# Reconciliation inside scaffold triangles
# ---------------------------------------------------------------------------

def _points_in_triangle(s: SurfacePointSet, face: Face):
    """(point index, lift) pairs strictly inside the developed triangle."""
    tri = list(face.corners)
    cx = sum(p[0] for p in tri) / 3
    cy = sum(p[1] for p in tri) / 3
    r2 = max((p[0] - cx) ** 2 + (p[1] - cy) ** 2 for p in tri)
    sgn = orient(*tri)
    out = []
    for idx, point in enumerate(s.points):
        for _, lift in lifts_within(s.group, point, (cx, cy), r2):
            if orient(tri[0], tri[1], lift) * sgn > 0 and \
                    orient(tri[1], tri[2], lift) * sgn > 0 and \
                    orient(tri[2], tri[0], lift) * sgn > 0:
                out.append((idx, lift))
    return out


def _edges_inside(s: SurfacePointSet, t: PointSetTriangulation,
                  scaffold: Set[Edge], id_pos: Dict[int, Vec]) -> Set[Edge]:
    """Edges of t (beyond the scaffold) whose segment develops inside the
    triangle described by id_pos."""
    out = set()
    for (x, y) in t.edges:
        if (x, y) in scaffold or x not in id_pos or y not in id_pos:
            continue
        seg = s.segment(x, y)
        if dist2(id_pos[x], id_pos[y]) == seg.length2:
            out.add((x, y))
    return out


def _reconcile(s: SurfacePointSet, t1: PointSetTriangulation,
               t2: PointSetTriangulation, scaffold: Set[Edge]
               ) -> List[FlipMove]:
    from .surfaces import PLANE as _PLANE
    from .surfaces import SurfaceGroup as _SG

    if t1.key == t2.key:
        return []
    moves: List[FlipMove] = []
    cur = t1
    scaffold_faces = trace_faces(s, sorted(scaffold))
    for face in scaffold_faces:
        if not face.is_triangle:
            continue
        inside = _points_in_triangle(s, face)
        if not inside:
            continue
        corner_ids = list(face.vertices)
        id_pos = {face.vertices[k]: face.corners[k] for k in range(3)}
        for idx, lift in inside:
            id_pos[idx] = lift
        ids = corner_ids + [idx for idx, _ in inside]
        e1 = _edges_inside(s, cur, scaffold, id_pos)
        e2 = _edges_inside(s, t2, scaffold, id_pos)
        if e1 == e2:
            continue
        plane = _SG.plane()
        local_points = [id_pos[i] for i in ids]
        local = SurfacePointSet(plane, local_points)
        loc = {pid: k for k, pid in enumerate(ids)}
        tris = enumerate_point_set_triangulations(local)
        graph = build_flip_graph(tris)

        def local_key(edges: Set[Edge]) -> tuple:
            sides = {_norm(loc[corner_ids[a]], loc[corner_ids[(a + 1) % 3]])
                     for a in range(3)}
            pairs = {_norm(loc[x], loc[y]) for (x, y) in edges} | sides
            return tuple(sorted(pairs))

        k1, k2 = local_key(e1), local_key(e2)
        if k1 not in graph.node_map or k2 not in graph.node_map:
            raise InternalError("triangle restriction is not a local triangulation")
        sub = flip_path_bfs(graph, graph.node_map[k1], graph.node_map[k2])
        if sub is None:
            raise InternalError("planar local flip graph is disconnected")
        for m in sub:
            parent = FlipMove(_norm(ids[m.removed[0]], ids[m.removed[1]]),
                              _norm(ids[m.inserted[0]], ids[m.inserted[1]]))
            cur = apply_flip(cur, parent)
            moves.append(parent)
    if cur.key != t2.key:
        raise InternalError("reconciliation did not reach the target")
    return moves


def flip_path_same_boundary(s: SurfacePointSet, t1: PointSetTriangulation,
                            t2: PointSetTriangulation) -> List[FlipMove]:
    """A valid flip sequence between two triangulations of a cylinder point
    set sharing identical boundary chains.

    Raises for non-cylinder kinds and for differing boundaries, and signals
    Euclidean-position sets through boundary_chains.
    """
    if s.group.kind != CYLINDER:
        raise UnsupportedSurfaceError("same-boundary paths require the cylinder")
    if t1.pointset is not s or t2.pointset is not s:
        raise InvalidGeometryError("triangulations of a different point set")
    ch1 = boundary_chains(t1)
    ch2 = boundary_chains(t2)
    if ch1 != ch2:
        raise InvalidGeometryError("triangulations have different boundary chains")
    if t1.key == t2.key:
        return []
    scaffold = chain_scaffold(s, t1)
    moves1, t1b = _ensure_edges(s, t1, scaffold)
    moves2, t2b = _ensure_edges(s, t2, scaffold)
    mid = _reconcile(s, t1b, t2b, scaffold)
    seq = moves1 + mid + [m.inverse() for m in reversed(moves2)]
    validate_flip_walk(t1, seq, t2)
    return seq
