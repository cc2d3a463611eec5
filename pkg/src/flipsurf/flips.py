"""Edge flips, flip graphs, and component analysis.

A flip removes an edge shared by two triangles and inserts the opposite
diagonal of their quadrilateral, when that diagonal is a segment and lies
inside the quadrilateral.  Both conditions are decided exactly; convexity of
the developed quadrilateral is not assumed or required.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import InternalError, InvalidGeometryError
from .planar import point_in_cycle_unchecked, point_on_segment
from .pointsets import Face, PointSetTriangulation, SurfacePointSet
from .polygons import EuclideanPolygon, Triangulation
from .scalars import Vec, midpoint
from .surfaces import (
    canonicalize_with_element,
    element_compose,
    element_inverse,
    element_motion,
    segment_lift_is_unique_minimum,
)

Edge = Tuple[int, int]
AnyTriangulation = Union[Triangulation, PointSetTriangulation]


@dataclass(frozen=True)
class FlipMove:
    """One edge flip: the removed and inserted diagonals of a quadrilateral.

    quad lists the four vertex indices in cyclic order (removed[0],
    inserted[0], removed[1], inserted[1])."""

    removed: Edge
    inserted: Edge

    @property
    def quad(self) -> Tuple[int, int, int, int]:
        return (self.removed[0], self.inserted[0], self.removed[1], self.inserted[1])

    def inverse(self) -> "FlipMove":
        return FlipMove(self.inserted, self.removed)


def _normalized_move(removed: Edge, k: int, l: int) -> FlipMove:
    i, j = min(removed), max(removed)
    return FlipMove((i, j), (min(k, l), max(k, l)))


def _quad_chord_legal(group, quad_cycle: Sequence[Vec], target_sp) -> bool:
    """Is the chord between quad corners 1 and 3 admissible in the
    quadrilateral?  quad_cycle = (i, k, j, l) developed positions; the chord
    k-l must avoid i and j, run inside the cycle, and be the unique global
    segment to target_sp (the surface point of corner l)."""
    pi, pk, pj, pl = quad_cycle
    if pk == pl:
        return False
    if point_on_segment(pi, pk, pl) or point_on_segment(pj, pk, pl):
        return False
    if point_in_cycle_unchecked(midpoint(pk, pl), quad_cycle) != "inside":
        return False
    return segment_lift_is_unique_minimum(group, pk, pl, target_sp)


# ---------------------------------------------------------------------------
# Polygon flips
# ---------------------------------------------------------------------------

def _polygon_legal_flips(t: Triangulation) -> List[FlipMove]:
    poly = t.polygon
    dev = poly.developed
    moves = []
    for (i, j) in t.diagonals:
        tris = [tr for tr in t.triangles if i in tr and j in tr]
        if len(tris) != 2:
            raise InternalError("diagonal not shared by two triangles")
        k = next(v for v in tris[0] if v not in (i, j))
        l = next(v for v in tris[1] if v not in (i, j))
        k, l = min(k, l), max(k, l)
        quad_cycle = (dev[i], dev[k], dev[j], dev[l])
        if _quad_chord_legal(poly.group, quad_cycle, poly.surface_points[l]):
            moves.append(_normalized_move((i, j), k, l))
    moves.sort(key=lambda m: (m.removed, m.inserted))
    return moves


def _polygon_apply(t: Triangulation, move: FlipMove) -> Triangulation:
    if move not in _polygon_legal_flips(t):
        raise InvalidGeometryError(f"illegal flip {move}")
    diagonals = [d for d in t.diagonals if d != move.removed] + [move.inserted]
    return Triangulation(t.polygon, diagonals)


# ---------------------------------------------------------------------------
# Point-set flips
# ---------------------------------------------------------------------------

def _face_edge_position(face: Face, e: Edge) -> Optional[int]:
    for idx, d in enumerate(face.darts):
        if (min(d), max(d)) == e:
            return idx
    return None


def _face_corner(face: Face, idx: int) -> Tuple[Vec, Vec]:
    start = face.corners[idx]
    end = face.corners[idx + 1] if idx + 1 < len(face.corners) else face.closure
    return start, end


def _pointset_legal_flips(t: PointSetTriangulation) -> List[FlipMove]:
    s = t.pointset
    group = s.group
    moves = []
    triangles = t.triangle_faces()
    for e in t.edges:
        incident = [f for f in triangles if e in f.edge_set]
        if len(incident) != 2:
            continue
        f1, f2 = incident
        idx1 = _face_edge_position(f1, e)
        idx2 = _face_edge_position(f2, e)
        p_start, p_end = _face_corner(f1, idx1)
        d1 = f1.darts[idx1]
        # positions of the shared edge endpoints in f1's development
        if d1 == e:
            p_i, p_j = p_start, p_end
        else:
            p_j, p_i = p_start, p_end
        q_start, q_end = _face_corner(f2, idx2)
        d2 = f2.darts[idx2]
        if d2 == e:
            q_i, q_j = q_start, q_end
        else:
            q_j, q_i = q_start, q_end
        # glue f2 onto f1 along the shared edge lift
        _, delta_q = canonicalize_with_element(group, q_i)
        _, delta_p = canonicalize_with_element(group, p_i)
        gamma = element_compose(group, element_inverse(group, delta_p), delta_q)
        mo = element_motion(group, gamma)
        if mo.apply(q_i) != p_i or mo.apply(q_j) != p_j:
            raise InternalError("triangle gluing failed along the shared edge")
        apex1_pos = next(face_pos for k, face_pos in enumerate(f1.corners)
                         if f1.darts[k][0] not in e)
        apex2_pos = next(face_pos for k, face_pos in enumerate(f2.corners)
                         if f2.darts[k][0] not in e)
        apex1_idx = next(d[0] for d in f1.darts if d[0] not in e)
        apex2_idx = next(d[0] for d in f2.darts if d[0] not in e)
        if apex1_idx == apex2_idx:
            continue
        a2 = mo.apply(apex2_pos)
        quad_cycle = (p_i, apex1_pos, p_j, a2)
        target = s.points[apex2_idx]
        if _quad_chord_legal(group, quad_cycle, target):
            moves.append(_normalized_move(e, apex1_idx, apex2_idx))
    moves.sort(key=lambda m: (m.removed, m.inserted))
    return moves


def _pointset_apply(t: PointSetTriangulation, move: FlipMove) -> PointSetTriangulation:
    if move not in _pointset_legal_flips(t):
        raise InvalidGeometryError(f"illegal flip {move}")
    edges = [e for e in t.edges if e != move.removed] + [move.inserted]
    return PointSetTriangulation(t.pointset, edges)


# ---------------------------------------------------------------------------
# Public flip interface
# ---------------------------------------------------------------------------

def legal_flips(t: AnyTriangulation) -> List[FlipMove]:
    """All flips of the triangulation: for each interior edge shared by two
    triangles, the move exchanging it for the opposite diagonal of their
    quadrilateral, when that diagonal is a segment lying inside the quad."""
    if isinstance(t, Triangulation):
        return _polygon_legal_flips(t)
    if isinstance(t, PointSetTriangulation):
        return _pointset_legal_flips(t)
    raise TypeError(f"not a triangulation: {t!r}")


def apply_flip(t: AnyTriangulation, move: FlipMove) -> AnyTriangulation:
    """The triangulation after performing the move; rejects illegal moves."""
    if isinstance(t, Triangulation):
        return _polygon_apply(t, move)
    if isinstance(t, PointSetTriangulation):
        return _pointset_apply(t, move)
    raise TypeError(f"not a triangulation: {t!r}")


# ---------------------------------------------------------------------------
# Flip graphs
# ---------------------------------------------------------------------------

class FlipGraph:
    """Flip graph over a flip-closed set of triangulations."""

    def __init__(self, triangulations: Sequence[AnyTriangulation]):
        self.node_map: Dict[tuple, AnyTriangulation] = {}
        for t in triangulations:
            self.node_map[t.key] = t
        self.nodes: List[tuple] = sorted(self.node_map)
        self.adjacency: Dict[tuple, List[Tuple[FlipMove, tuple]]] = {}
        for key in self.nodes:
            t = self.node_map[key]
            nbrs = []
            for move in legal_flips(t):
                new = apply_flip(t, move)
                if new.key not in self.node_map:
                    raise InvalidGeometryError(
                        "triangulation set is not closed under flips")
                nbrs.append((move, new.key))
            self.adjacency[key] = nbrs
        self._check_symmetry()
        self.component_lists = self._components_bfs()
        self._check_components_union_find()

    def _check_symmetry(self) -> None:
        for key, nbrs in self.adjacency.items():
            for move, other in nbrs:
                back = [m for m, k in self.adjacency[other] if k == key]
                if move.inverse() not in back:
                    raise InternalError("flip adjacency is not symmetric")

    def _components_bfs(self) -> List[List[tuple]]:
        comps = []
        seen = set()
        for start in self.nodes:
            if start in seen:
                continue
            comp = []
            queue = deque([start])
            seen.add(start)
            while queue:
                cur = queue.popleft()
                comp.append(cur)
                for _, nxt in self.adjacency[cur]:
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
            comps.append(sorted(comp))
        comps.sort(key=lambda c: c[0])
        return comps

    def _check_components_union_find(self) -> None:
        parent = {k: k for k in self.nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for key, nbrs in self.adjacency.items():
            for _, other in nbrs:
                ra, rb = find(key), find(other)
                if ra != rb:
                    parent[ra] = rb
        groups: Dict[tuple, set] = {}
        for k in self.nodes:
            groups.setdefault(find(k), set()).add(k)
        if sorted(sorted(g) for g in groups.values()) != \
                sorted(self.component_lists):
            raise InternalError("union-find disagrees with BFS components")

    @property
    def edge_count(self) -> int:
        return sum(len(v) for v in self.adjacency.values()) // 2

    def component_of(self, key: tuple) -> int:
        for idx, comp in enumerate(self.component_lists):
            if key in comp:
                return idx
        raise KeyError(key)


def build_flip_graph(triangulations: Sequence[AnyTriangulation]) -> FlipGraph:
    return FlipGraph(triangulations)


def components(graph: FlipGraph) -> Tuple[List[List[tuple]], str]:
    """Connected components plus an empty/connected/disconnected flag."""
    comps = graph.component_lists
    if not comps:
        flag = "empty"
    elif len(comps) == 1:
        flag = "connected"
    else:
        flag = "disconnected"
    return comps, flag


def flip_path_bfs(graph: FlipGraph, t1: AnyTriangulation,
                  t2: AnyTriangulation) -> Optional[List[FlipMove]]:
    """A shortest flip sequence between two nodes, or None when they lie in
    different components."""
    if t1.key not in graph.node_map or t2.key not in graph.node_map:
        raise InvalidGeometryError("triangulation is not a node of the graph")
    if t1.key == t2.key:
        return []
    prev: Dict[tuple, Tuple[tuple, FlipMove]] = {}
    seen = {t1.key}
    queue = deque([t1.key])
    while queue:
        cur = queue.popleft()
        for move, nxt in graph.adjacency[cur]:
            if nxt in seen:
                continue
            prev[nxt] = (cur, move)
            if nxt == t2.key:
                path = []
                at = nxt
                while at != t1.key:
                    at, mv = prev[at]
                    path.append(mv)
                path.reverse()
                return path
            seen.add(nxt)
            queue.append(nxt)
    return None


def graph_metrics(graph: FlipGraph) -> dict:
    """Exact node/edge/component counts and per-component diameters."""
    diameters = []
    for comp in graph.component_lists:
        best = 0
        comp_set = set(comp)
        for start in comp:
            dist = {start: 0}
            queue = deque([start])
            while queue:
                cur = queue.popleft()
                for _, nxt in graph.adjacency[cur]:
                    if nxt in comp_set and nxt not in dist:
                        dist[nxt] = dist[cur] + 1
                        queue.append(nxt)
            best = max(best, max(dist.values()))
        diameters.append(best)
    return {
        "node_count": len(graph.nodes),
        "edge_count": graph.edge_count,
        "component_count": len(graph.component_lists),
        "component_diameters": diameters,
    }


def validate_flip_walk(start: AnyTriangulation, moves: Sequence[FlipMove],
                       end: AnyTriangulation) -> None:
    """Replay a flip sequence, checking each step is legal and the endpoints
    match; raises InternalError otherwise."""
    cur = start
    for move in moves:
        if move not in legal_flips(cur):
            raise InternalError(f"illegal step {move} in flip walk")
        cur = apply_flip(cur, move)
    if cur.key != end.key:
        raise InternalError("flip walk does not reach the target")
