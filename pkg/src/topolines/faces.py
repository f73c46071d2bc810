"""Direct face enumeration of a planar arrangement.

The arrangement is clipped to an axis-aligned box that holds every curve
vertex and intersection point strictly inside, so that outside the box each
curve is a single straight ray.  The clipped curves plus the box boundary
form a connected plane graph whose bounded faces are traced with the usual
"next edge clockwise from the twin" rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy import ndimage

from .arrangement import Arrangement, PairClass, build_arrangement, pair_key
from .model import Box, Point, cross, curve_param, dot, pseudo_angle, sub


@dataclass
class Face:
    darts: list  # (u, v) vertex-index pairs, face on the left
    area2: Fraction  # twice the signed area
    labels: frozenset  # line ids of curve edges on the boundary

    @property
    def bounded(self) -> bool:
        return self.area2 > 0


@dataclass
class PlanarSubdivision:
    clip_box: Box
    vertices: list
    edges: list  # (u, v, label); label is a line id or None for box edges
    faces: list
    exits: list = field(default_factory=list)  # vertex indices where rays leave the box
    intersections: frozenset = frozenset()  # vertex indices of arrangement points

    @property
    def inner_faces(self) -> list:
        return [f for f in self.faces if f.bounded]

    def euler(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def face_polygon(self, face: Face) -> list:
        return [self.vertices[u] for u, _ in face.darts]


@dataclass(frozen=True)
class FaceCensus:
    regions: int
    edges_1faces: int
    vertices_0faces: int


def feature_points(arr: Arrangement) -> list:
    pts = {p.location for p in arr.points}
    for t in arr.lines:
        pts.update(t.vertices)
    return sorted(pts)


def default_clip_box(arr: Arrangement) -> Box:
    return Box.around(feature_points(arr), margin=1)


def _line_chain(t, box: Box, extra) -> list:
    """Points of ``t`` inside ``box`` in curve order, rays cut at the boundary."""
    entry = box.ray_exit(t.vertices[0], t.start_ray)
    exit_ = box.ray_exit(t.vertices[-1], t.end_ray)
    pts = {entry, exit_, *t.vertices, *extra}
    return sorted(pts, key=lambda p: curve_param(t, p))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)

    def classes(self, items) -> int:
        return len({self.find(i) for i in items})


def build_subdivision(arr: Arrangement, box: Optional[Box] = None) -> PlanarSubdivision:
    box = box or default_clip_box(arr)
    for p in feature_points(arr):
        if not box.contains(p, strict=True):
            raise ValueError(f"clip box must strictly contain {p!r}")

    index = {}
    vertices = []

    def vid(p):
        if p not in index:
            index[p] = len(vertices)
            vertices.append(p)
        return index[p]

    edges = []
    exits = []
    for t in arr.lines:
        on = [p.location for p in arr.points if t.id in p.lines]
        chain = _line_chain(t, box, on)
        exits += [chain[0], chain[-1]]
        ids = [vid(p) for p in chain]
        edges += [(u, v, t.id) for u, v in zip(ids, ids[1:])]

    rim = sorted(set(exits) | set(box.corners), key=box.perimeter_param)
    rim_ids = [vid(p) for p in rim]
    edges += [(u, v, None) for u, v in zip(rim_ids, rim_ids[1:] + rim_ids[:1])]

    nbrs = [[] for _ in vertices]
    label = {}
    for u, v, lab in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
        label[(u, v)] = label[(v, u)] = lab
    for u, lst in enumerate(nbrs):
        lst.sort(key=lambda w: pseudo_angle(sub(vertices[w], vertices[u])))
    pos = {(u, w): k for u, lst in enumerate(nbrs) for k, w in enumerate(lst)}

    faces = []
    used = set()
    for start in label:
        if start in used:
            continue
        darts = []
        d = start
        while d not in used:
            used.add(d)
            darts.append(d)
            u, v = d
            k = pos[(v, u)]
            d = (v, nbrs[v][k - 1])
        area2 = sum(cross(vertices[u], vertices[v]) for u, v in darts)
        labels = frozenset(label[d] for d in darts if label[d] is not None)
        faces.append(Face(darts, Fraction(area2), labels))

    inter = frozenset(index[p.location] for p in arr.points)
    return PlanarSubdivision(box, vertices, edges, faces, [index[p] for p in exits], inter)


def _glued_regions(sd: PlanarSubdivision) -> int:
    """Count arrangement regions, checking the gluing along ray gaps.

    Every stretch of the box boundary between consecutive ray exits must be
    seen by a single bounded face; faces seen through the same gap merge.
    """
    inner = [i for i, f in enumerate(sd.faces) if f.bounded]
    face_of = {}
    for i in inner:
        for d in sd.faces[i].darts:
            face_of[d] = i
    uf = _UnionFind(len(sd.faces))
    exits = set(sd.exits)
    # walk the rim counterclockwise, cutting at exits
    rim = sorted(
        {u for u, v, lab in sd.edges if lab is None},
        key=lambda i: sd.clip_box.perimeter_param(sd.vertices[i]),
    )
    start = next((k for k, i in enumerate(rim) if i in exits), 0)
    rim = rim[start:] + rim[:start]
    gap = []
    gaps = []
    for a, b in zip(rim, rim[1:] + rim[:1]):
        gap.append(face_of[(a, b)])
        if b in exits:
            gaps.append(gap)
            gap = []
    if gap:
        gaps.append(gap)
    for g in gaps:
        if len(set(g)) != 1:
            raise AssertionError("ray gap seen by more than one face")
        for f in g:
            uf.union(f, g[0])
    return uf.classes(inner)


def _one_faces(arr: Arrangement, sd: PlanarSubdivision) -> int:
    curve = [(u, v) for u, v, lab in sd.edges if lab is not None]
    uf = _UnionFind(len(curve))
    at = {}
    for k, (u, v) in enumerate(curve):
        for w in (u, v):
            if w in sd.intersections:
                continue
            if w in at:
                uf.union(k, at[w])
            else:
                at[w] = k
    return uf.classes(range(len(curve)))


def direct_region_count(arr: Arrangement, box: Optional[Box] = None) -> FaceCensus:
    sd = build_subdivision(arr, box)
    if sd.euler() != 2:
        raise AssertionError(f"Euler relation fails: V - E + F = {sd.euler()}")
    return FaceCensus(_glued_regions(sd), _one_faces(arr, sd), len(arr.points))


def face_cell_check(arr: Arrangement) -> list:
    """Faces that might not be open cells; an empty list means all are cells.

    A region is a cell when it has exactly one boundary walk.  The clipped
    graph is connected, so any extra negatively oriented walk besides the
    outside of the box would be the rim of a hole.
    """
    sd = build_subdivision(arr)
    outer = [f for f in sd.faces if not f.bounded]
    if len(outer) == 1:
        return []
    return [sd.face_polygon(f) for f in outer[1:]]


def classify_pair_via_regions(arr: Arrangement, a: str, b: str) -> PairClass:
    """Crossing iff every region of {a, b} is bordered by both curves."""
    pair = build_arrangement([arr.line(a), arr.line(b)])
    if not pair.points:
        return PairClass.DISJOINT
    sd = build_subdivision(pair)
    inner = sd.inner_faces
    if len(inner) != 4:
        raise AssertionError(f"two meeting topolines gave {len(inner)} regions")
    if all(f.labels >= {a, b} for f in inner):
        return PairClass.CROSSING
    return PairClass.TOUCHING


# --- grid flood-fill oracle ---------------------------------------------------

class ResolutionTooLow(ValueError):
    def __init__(self, needed: int):
        self.needed = needed
        super().__init__(f"grid resolution must be at least {needed} cells per unit")


def _dist2_point_piece(p, pc) -> Fraction:
    w = sub(p, pc.origin)
    vv = dot(pc.vec, pc.vec)
    t = Fraction(dot(w, pc.vec)) / vv
    if t < 0:
        t = Fraction(0)
    elif not pc.is_ray and t > 1:
        t = Fraction(1)
    dx = w[0] - t * pc.vec[0]
    dy = w[1] - t * pc.vec[1]
    return dx * dx + dy * dy


_SQRT_SCALE = 1 << 24


def _sqrt_lo(q: Fraction) -> Fraction:
    return Fraction(math.isqrt(math.floor(q * _SQRT_SCALE**2)), _SQRT_SCALE)


def _sqrt_hi(q: Fraction) -> Fraction:
    return Fraction(math.isqrt(math.ceil(q * _SQRT_SCALE**2)) + 1, _SQRT_SCALE)


def _wedge_factor(u, v) -> Fraction:
    """Rational lower bound on sin(a/2) / (1 + sin(a/2)), a = ccw angle u -> v.

    That ratio is the radius of the disk inscribed in a unit-radius sector
    of opening a; openings of at least a half turn are capped at 1/2.
    """
    c = cross(u, v)
    d = dot(u, v)
    if c < 0 or (c == 0 and d < 0):
        return Fraction(1, 2)
    norm2 = Fraction(dot(u, u) * dot(v, v))
    cos_hi = d / _sqrt_lo(norm2) if d > 0 else d / _sqrt_hi(norm2)
    s = _sqrt_lo(max((1 - cos_hi) / 2, Fraction(0)))
    return min(s / (1 + s), Fraction(1, 2))


def feature_separation(arr: Arrangement):
    """(squared separation, wedge factor) of the arrangement.

    The separation is the least distance between two feature points or from
    a feature point to a piece it does not lie on.  The wedge factor is the
    least :func:`_wedge_factor` over the gaps between consecutive branches
    around a feature point.
    """
    feats = feature_points(arr)
    sep2 = None
    for i, p in enumerate(feats):
        for q in feats[i + 1:]:
            d = (p.x - q.x) ** 2 + (p.y - q.y) ** 2
            sep2 = d if sep2 is None else min(sep2, d)
    for t in arr.lines:
        for pc in t.pieces:
            for p in feats:
                if pc.contains(p):
                    continue
                d = _dist2_point_piece(p, pc)
                sep2 = d if sep2 is None else min(sep2, d)
    wedge = Fraction(1, 2)
    for p in feats:
        dirs = []
        for t in arr.lines:
            for pc in t.pieces:
                if pc.contains(p):
                    if p != pc.origin:
                        dirs.append((-pc.vec[0], -pc.vec[1]))
                    if pc.is_ray or p != pc.end:
                        dirs.append(pc.vec)
        dirs.sort(key=pseudo_angle)
        for u, v in zip(dirs, dirs[1:] + dirs[:1]):
            wedge = min(wedge, _wedge_factor(u, v))
    return (Fraction(1) if sep2 is None else Fraction(sep2)), wedge


# Free cells at least this far (in cells) from every blocked cell mark a
# region's core.  Components without one are pockets in the thin tip of a
# wedge and are not counted.
CORE_DISTANCE = 2.25


def safe_resolution(arr: Arrangement) -> int:
    """Smallest grid resolution (cells per unit) the oracle accepts.

    Inside distance sep of a feature point only that point's own branches
    occur, so every wedge there holds a disk of radius rho = sep * wedge
    factor.  Let h be the pitch.  Points at distance sqrt(2) h or more from
    the curves are joined through free cells of their own region, so a pocket
    cell has a distance-transform value below sqrt(2) + 1/sqrt(2) < 2.25.
    A point at distance rho from the curves sits in a free cell whose value
    is at least rho / h - sqrt(2), so rho**2 >= 14 h**2 gives every region
    a core cell.
    """
    sep2, wedge = feature_separation(arr)
    need = Fraction(14) / (sep2 * wedge * wedge)  # resolution**2 must reach this
    r = math.isqrt(math.ceil(need))
    while r * r < need:
        r += 1
    return max(r, 1)


def oracle_box(arr: Arrangement) -> Box:
    feats = feature_points(arr)
    sep2, _ = feature_separation(arr)
    if not feats:
        return Box(Fraction(-1), Fraction(-1), Fraction(1), Fraction(1))
    xs = [p.x for p in feats]
    ys = [p.y for p in feats]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half = max((max(xs) - min(xs)) / 2, (max(ys) - min(ys)) / 2, Fraction(1))
    # a rational upper bound on sep keeps the margin at least one separation wide
    half = max(half, Fraction(math.isqrt(math.ceil(sep2)) + 1))
    return Box.square((cx, cy), 2 * half)


def oracle_cells(arr: Arrangement, resolution: Optional[int] = None) -> int:
    """Number of grid cells the oracle would allocate."""
    r = resolution or safe_resolution(arr)
    box = oracle_box(arr)
    n = math.ceil((box.xmax - box.xmin) * r)
    return n * n


def grid_flood_fill_oracle(arr: Arrangement, resolution: Optional[int] = None, check: bool = True) -> int:
    """Count regions by flood-filling grid cells that no curve touches.

    Only components holding a core cell (see :data:`CORE_DISTANCE`) count.

    ``resolution`` is the number of cells per unit length; below
    :func:`safe_resolution` the oracle refuses with :class:`ResolutionTooLow`
    unless ``check`` is False, in which case the answer carries no guarantee.
    """
    need = safe_resolution(arr)
    if resolution is None:
        resolution = need
    if check and resolution < need:
        raise ResolutionTooLow(need)
    box = oracle_box(arr)
    h = Fraction(1, resolution)
    n = math.ceil((box.xmax - box.xmin) / h)
    blocked = np.zeros((n, n), dtype=bool)  # [column, row]

    def grid(p):
        return ((p[0] - box.xmin) * resolution, (p[1] - box.ymin) * resolution)

    for t in arr.lines:
        for pc in t.pieces:
            a = grid(pc.origin)
            if pc.is_ray:
                b = grid(box.ray_exit(pc.origin, pc.vec))
            else:
                b = grid(pc.end)
            _stamp(blocked, a, b)
    free = ~blocked
    labels, count = ndimage.label(free)
    if count == 0:
        return 0
    depth = ndimage.distance_transform_edt(free)
    deepest = ndimage.maximum(depth, labels, index=np.arange(1, count + 1))
    return int(np.count_nonzero(np.asarray(deepest) >= CORE_DISTANCE))


def _stamp(blocked, a, b):
    """Mark every closed unit cell the segment ``ab`` touches (grid coordinates)."""
    n = blocked.shape[0]
    (ax, ay), (bx, by) = sorted([a, b])

    def rows(lo, hi):
        j0 = max(math.ceil(lo) - 1, 0)
        j1 = min(math.floor(hi), n - 1)
        return j0, j1

    i0 = max(math.ceil(ax) - 1, 0)
    i1 = min(math.floor(bx), n - 1)
    for i in range(i0, i1 + 1):
        if ax == bx:
            ylo, yhi = min(ay, by), max(ay, by)
        else:
            x0, x1 = max(ax, Fraction(i)), min(bx, Fraction(i + 1))
            y0 = ay + (by - ay) * (x0 - ax) / (bx - ax)
            y1 = ay + (by - ay) * (x1 - ax) / (bx - ax)
            ylo, yhi = min(y0, y1), max(y0, y1)
        j0, j1 = rows(ylo, yhi)
        if j0 <= j1:
            blocked[i, j0:j1 + 1] = True
