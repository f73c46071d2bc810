"""Exact rational kernel: points, directions and piecewise-linear topolines.

A topoline is stored as a start ray, a chain of vertices and an end ray.
Both rays point away from the curve, so a straight line is one vertex with
two opposite rays.  All predicates work on :class:`fractions.Fraction`
coordinates; nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import NamedTuple, Optional, Sequence

Rat = Fraction


def rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coordinates")
    return Fraction(value)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(rat(x), rat(y))

    def __repr__(self):
        return f"({fmt_rat(self.x)}, {fmt_rat(self.y)})"


class Dir(NamedTuple):
    """An oriented direction, normalised to a coprime integer pair."""

    dx: int
    dy: int

    @classmethod
    def of(cls, dx, dy) -> "Dir":
        dx, dy = rat(dx), rat(dy)
        if dx == 0 and dy == 0:
            raise ValueError("zero direction")
        den = dx.denominator * dy.denominator // gcd(dx.denominator, dy.denominator)
        ix, iy = int(dx * den), int(dy * den)
        g = gcd(ix, iy)
        return cls(ix // g, iy // g)

    def __neg__(self) -> "Dir":
        return Dir(-self.dx, -self.dy)

    def __repr__(self):
        return f"<{self.dx}, {self.dy}>"


def fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# --- vector helpers -------------------------------------------------------

def sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def along(p: Point, v, t) -> Point:
    return Point(p[0] + t * v[0], p[1] + t * v[1])


def pseudo_angle(v) -> Fraction:
    """Exact monotone proxy for the counterclockwise angle of ``v`` in [0, 4)."""
    x, y = v
    if y >= 0 and x > 0 or (x == 0 and y > 0):
        return Fraction(y, 1) / (x + y)
    if x <= 0 and y >= 0:
        return 1 + Fraction(-x, 1) / (y - x)
    if x <= 0 and y < 0:
        return 2 + Fraction(-y, 1) / (-x - y)
    return 3 + Fraction(x, 1) / (x - y)


def direction_of(v) -> Dir:
    return Dir.of(v[0], v[1])


# --- pieces -----------------------------------------------------------------

class Piece(NamedTuple):
    """``origin + t * vec`` for t in [0, 1] (segment) or t >= 0 (ray)."""

    origin: Point
    vec: tuple
    is_ray: bool

    @property
    def end(self) -> Optional[Point]:
        return None if self.is_ray else along(self.origin, self.vec, 1)

    def bbox(self):
        """(xmin, ymin, xmax, ymax) with None for an unbounded side."""
        ox, oy = self.origin
        vx, vy = self.vec
        if self.is_ray:
            return (
                None if vx < 0 else ox,
                None if vy < 0 else oy,
                None if vx > 0 else ox,
                None if vy > 0 else oy,
            )
        ex, ey = ox + vx, oy + vy
        return (min(ox, ex), min(oy, ey), max(ox, ex), max(oy, ey))

    def contains(self, p: Point) -> bool:
        w = sub(p, self.origin)
        if cross(self.vec, w) != 0:
            return False
        t = dot(w, self.vec)
        if t < 0:
            return False
        return self.is_ray or t <= dot(self.vec, self.vec)

    def param(self, p: Point) -> Fraction:
        return Fraction(dot(sub(p, self.origin), self.vec)) / dot(self.vec, self.vec)


def _boxes_apart(a, b) -> bool:
    ax0, ay0, ax1, ay1 = a
    bx0, by0, bx1, by1 = b
    return (
        (ax1 is not None and bx0 is not None and ax1 < bx0)
        or (bx1 is not None and ax0 is not None and bx1 < ax0)
        or (ay1 is not None and by0 is not None and ay1 < by0)
        or (by1 is not None and ay0 is not None and by1 < ay0)
    )


def intersect_pieces(a: Piece, b: Piece, abox=None, bbox=None):
    """Intersection of two pieces as ``(points, overlap)``.

    ``overlap`` is True when the pieces share a subsegment of positive
    length; ``points`` then holds nothing useful.
    """
    if _boxes_apart(abox or a.bbox(), bbox or b.bbox()):
        return [], False
    den = cross(a.vec, b.vec)
    w = sub(b.origin, a.origin)
    if den != 0:
        t = Fraction(cross(w, b.vec)) / den
        if t < 0 or (not a.is_ray and t > 1):
            return [], False
        s = Fraction(cross(w, a.vec)) / den
        if s < 0 or (not b.is_ray and s > 1):
            return [], False
        return [along(a.origin, a.vec, t)], False
    if cross(w, a.vec) != 0:
        return [], False
    # collinear: express b as an interval of a's parameter
    aa = dot(a.vec, a.vec)
    t0 = Fraction(dot(w, a.vec)) / aa
    k = Fraction(dot(b.vec, a.vec)) / aa
    if b.is_ray:
        lo, hi = (t0, None) if k > 0 else (None, t0)
    else:
        lo, hi = min(t0, t0 + k), max(t0, t0 + k)
    lo = Fraction(0) if lo is None else max(lo, Fraction(0))
    if not a.is_ray:
        hi = Fraction(1) if hi is None else min(hi, Fraction(1))
    if hi is not None and hi < lo:
        return [], False
    if hi is not None and hi == lo:
        return [along(a.origin, a.vec, lo)], False
    return [], True


# --- topolines ---------------------------------------------------------------

@dataclass(frozen=True)
class Topoline:
    id: str
    start_ray: Dir
    vertices: tuple
    end_ray: Dir

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(Point.of(*v) for v in self.vertices))
        if not self.vertices:
            raise ValueError("a topoline needs at least one vertex")
        if not isinstance(self.start_ray, Dir):
            object.__setattr__(self, "start_ray", Dir.of(*self.start_ray))
        if not isinstance(self.end_ray, Dir):
            object.__setattr__(self, "end_ray", Dir.of(*self.end_ray))

    @classmethod
    def straight(cls, id, point, direction) -> "Topoline":
        d = Dir.of(*direction)
        return cls(id, -d, (point,), d)

    @cached_property
    def pieces(self) -> tuple:
        vs = self.vertices
        out = [Piece(vs[0], self.start_ray, True)]
        out += [Piece(p, sub(q, p), False) for p, q in zip(vs, vs[1:])]
        out.append(Piece(vs[-1], self.end_ray, True))
        return tuple(out)

    @cached_property
    def piece_boxes(self) -> tuple:
        return tuple(p.bbox() for p in self.pieces)

    def renamed(self, new_id: str) -> "Topoline":
        return Topoline(new_id, self.start_ray, self.vertices, self.end_ray)

    def reversed(self) -> "Topoline":
        return Topoline(self.id, self.end_ray, self.vertices[::-1], self.start_ray)

    def __repr__(self):
        return f"Topoline({self.id!r}, {self.start_ray!r}, {list(self.vertices)!r}, {self.end_ray!r})"


@dataclass(frozen=True)
class TopolineViolation:
    line_id: str
    pieces: tuple
    message: str

    def __str__(self):
        return f"{self.line_id}: pieces {self.pieces[0]} and {self.pieces[1]}: {self.message}"


def validate_topoline(t: Topoline) -> Optional[TopolineViolation]:
    """Return None for a simple proper curve, else the first offending piece pair."""
    pcs = t.pieces
    for i in range(1, len(pcs) - 1):
        if pcs[i].vec == (0, 0):
            return TopolineViolation(t.id, (i, i), "zero-length segment")
    for i in range(len(pcs)):
        for j in range(i + 1, len(pcs)):
            pts, overlap = intersect_pieces(pcs[i], pcs[j], t.piece_boxes[i], t.piece_boxes[j])
            if overlap:
                return TopolineViolation(t.id, (i, j), "pieces overlap (the curve doubles back)")
            if j == i + 1:
                shared = t.vertices[i]
                if any(p != shared for p in pts):
                    return TopolineViolation(t.id, (i, j), "adjacent pieces meet away from their common vertex")
            elif pts:
                return TopolineViolation(t.id, (i, j), f"curve touches itself at {pts[0]!r}")
    return None


@dataclass(frozen=True)
class CurveIntersection:
    points: tuple
    overlap: bool = False

    @property
    def empty(self) -> bool:
        return not self.points and not self.overlap


def curve_intersection(a: Topoline, b: Topoline) -> CurveIntersection:
    found = set()
    for pa, ba in zip(a.pieces, a.piece_boxes):
        for pb, bb in zip(b.pieces, b.piece_boxes):
            pts, overlap = intersect_pieces(pa, pb, ba, bb)
            if overlap:
                return CurveIntersection((), True)
            found.update(pts)
    return CurveIntersection(tuple(sorted(found)))


def point_on_curve(t: Topoline, p) -> bool:
    p = Point.of(*p)
    return any(pc.contains(p) for pc in t.pieces)


def curve_param(t: Topoline, p: Point):
    """Sort key of ``p`` along ``t`` from the start ray to the end ray."""
    for i, pc in enumerate(t.pieces):
        if pc.contains(p):
            s = pc.param(p)
            return (i, -s) if i == 0 else (i, s)
    raise ValueError(f"{p!r} is not on {t.id}")


# --- halves at a point --------------------------------------------------------

class Half(NamedTuple):
    """One component of a curve minus a point, walked outward from the point."""

    chain: tuple  # points, chain[0] is the splitting point
    ray: Dir

    @property
    def outgoing(self) -> Dir:
        if len(self.chain) > 1:
            return direction_of(sub(self.chain[1], self.chain[0]))
        return self.ray


def split_at(t: Topoline, p: Point):
    """Split ``t`` at ``p`` into its (minus, plus) halves.

    The minus half runs toward the start ray, the plus half toward the end ray.
    """
    vs = t.vertices
    m = len(vs)
    if p in vs:
        j = vs.index(p)
        return Half(tuple(vs[j::-1]), t.start_ray), Half(tuple(vs[j:]), t.end_ray)
    for i, pc in enumerate(t.pieces):
        if pc.contains(p):
            break
    else:
        raise ValueError(f"{p!r} is not on {t.id}")
    if i == 0:
        return Half((p,), t.start_ray), Half((p,) + vs, t.end_ray)
    if i == m:
        return Half((p,) + vs[::-1], t.start_ray), Half((p,), t.end_ray)
    return Half((p,) + vs[i - 1::-1], t.start_ray), Half((p,) + vs[i:], t.end_ray)


def join_halves(id: str, first: Half, second: Half) -> Topoline:
    """The curve ``first`` (reversed) + ``second``; both halves start at one point."""
    assert first.chain[0] == second.chain[0]
    verts = list(first.chain[::-1]) + list(second.chain[1:])
    return simplify(Topoline(id, first.ray, verts, second.ray))


def simplify(t: Topoline) -> Topoline:
    """Drop vertices where the curve goes straight through."""
    vs = list(t.vertices)
    # incoming direction at vs[0] is -start_ray
    out = []
    for i, v in enumerate(vs):
        prev_dir = -t.start_ray if not out else direction_of(sub(v, out[-1]))
        next_dir = t.end_ray if i == len(vs) - 1 else direction_of(sub(vs[i + 1], v))
        if prev_dir == next_dir and (out or i < len(vs) - 1):
            continue
        out.append(v)
    if not out:
        out = [vs[0]]
    return Topoline(t.id, t.start_ray, out, t.end_ray)


def straight_pieces(t: Topoline):
    """Canonical maximal straight pieces of one curve, for point-set comparison."""
    s = simplify(t)
    if len(s.vertices) == 1 and s.start_ray == -s.end_ray:
        return frozenset([line_key(s.vertices[0], s.end_ray)])
    out = [ray_key(s.vertices[0], s.start_ray), ray_key(s.vertices[-1], s.end_ray)]
    out += [seg_key(p, q) for p, q in zip(s.vertices, s.vertices[1:])]
    return frozenset(out)


def line_key(p: Point, d: Dir):
    if d.dx < 0 or (d.dx == 0 and d.dy < 0):
        d = -d
    return ("line", d, cross(d, p))


def ray_key(p: Point, d: Dir):
    return ("ray", p, d)


def seg_key(p: Point, q: Point):
    return ("seg",) + tuple(sorted((p, q)))


def same_point_set(a: Topoline, b: Topoline) -> bool:
    return straight_pieces(a) == straight_pieces(b)


def canonical_union(pieces) -> frozenset:
    """Canonical description of a union of pieces as a point set.

    Each piece becomes a parameter interval on its supporting line and
    touching intervals on one line are merged, so two families of pieces
    cover the same points iff these sets are equal.
    """
    by_line = {}
    for pc in pieces:
        d = direction_of(pc.vec)
        key = line_key(pc.origin, d)
        nd = key[1]
        s0 = dot(pc.origin, nd)
        if pc.is_ray:
            iv = (s0, None) if dot(d, nd) > 0 else (None, s0)
        else:
            s1 = dot(pc.end, nd)
            iv = (min(s0, s1), max(s0, s1))
        by_line.setdefault(key, []).append(iv)
    out = set()
    for key, ivs in by_line.items():
        ivs.sort(key=lambda iv: (iv[0] is not None, iv[0] or 0))
        lo, hi = ivs[0]
        for a, b in ivs[1:]:
            if hi is None or a <= hi:
                hi = None if hi is None or b is None else max(hi, b)
            else:
                out.add((key, lo, hi))
                lo, hi = a, b
        out.add((key, lo, hi))
    return frozenset(out)


def clip_piece(pc: Piece, box: "Box") -> Optional[Piece]:
    """The part of ``pc`` inside the closed ``box`` as a segment, or None if
    that part has no length."""
    t0, t1 = Fraction(0), None if pc.is_ray else Fraction(1)
    for o, v, lo, hi in ((pc.origin.x, pc.vec[0], box.xmin, box.xmax),
                         (pc.origin.y, pc.vec[1], box.ymin, box.ymax)):
        if v == 0:
            if not lo <= o <= hi:
                return None
            continue
        a, b = Fraction(lo - o) / v, Fraction(hi - o) / v
        if a > b:
            a, b = b, a
        t0 = max(t0, a)
        t1 = b if t1 is None else min(t1, b)
    if t1 is None or t1 <= t0:
        return None
    start = along(pc.origin, pc.vec, t0)
    return Piece(start, sub(along(pc.origin, pc.vec, t1), start), False)


def side_of_curve(t: Topoline, p) -> int:
    """+1 if ``p`` is left of ``t`` (walking start to end), -1 if right, 0 on it.

    Closes the curve with the counterclockwise boundary of a box that holds
    every vertex and ``p``, then runs an exact half-open crossing test.
    """
    p = Point.of(*p)
    if point_on_curve(t, p):
        return 0
    box = Box.around(list(t.vertices) + [p], margin=1)
    entry = box.ray_exit(t.vertices[0], t.start_ray)
    exit_ = box.ray_exit(t.vertices[-1], t.end_ray)
    ring = [entry] + list(t.vertices) + [exit_] + box.ccw_path(exit_, entry)[1:-1]
    return 1 if point_in_ring(p, ring) else -1


def point_in_ring(p: Point, ring: Sequence[Point]) -> bool:
    inside = False
    n = len(ring)
    for k in range(n):
        a, b = ring[k], ring[(k + 1) % n]
        if (a.y > p.y) != (b.y > p.y):
            x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if x > p.x:
                inside = not inside
    return inside


# --- axis-aligned boxes -------------------------------------------------------

@dataclass(frozen=True)
class Box:
    xmin: Fraction
    ymin: Fraction
    xmax: Fraction
    ymax: Fraction

    @classmethod
    def around(cls, points, margin=1) -> "Box":
        """Smallest box holding ``points`` strictly inside, padded by ``margin``."""
        margin = rat(margin)
        if not points:
            return cls(-margin, -margin, margin, margin)
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        return cls(min(xs) - margin, min(ys) - margin, max(xs) + margin, max(ys) + margin)

    @classmethod
    def square(cls, center, half) -> "Box":
        cx, cy = center
        return cls(cx - half, cy - half, cx + half, cy + half)

    @property
    def corners(self):
        """Counterclockwise from the lower-left corner."""
        return [
            Point(self.xmin, self.ymin),
            Point(self.xmax, self.ymin),
            Point(self.xmax, self.ymax),
            Point(self.xmin, self.ymax),
        ]

    def contains(self, p, strict=False) -> bool:
        if strict:
            return self.xmin < p[0] < self.xmax and self.ymin < p[1] < self.ymax
        return self.xmin <= p[0] <= self.xmax and self.ymin <= p[1] <= self.ymax

    def ray_exit(self, origin: Point, d) -> Point:
        """Where a ray from an interior point leaves the box."""
        ts = []
        if d[0] > 0:
            ts.append((self.xmax - origin.x) / d[0])
        elif d[0] < 0:
            ts.append((self.xmin - origin.x) / d[0])
        if d[1] > 0:
            ts.append((self.ymax - origin.y) / d[1])
        elif d[1] < 0:
            ts.append((self.ymin - origin.y) / d[1])
        return along(origin, d, Fraction(min(ts)))

    def perimeter_param(self, p) -> Fraction:
        """Counterclockwise arclength position of a boundary point, from the lower-left corner."""
        w = self.xmax - self.xmin
        h = self.ymax - self.ymin
        x, y = p
        if y == self.ymin and x < self.xmax:
            return x - self.xmin
        if x == self.xmax and y < self.ymax:
            return w + (y - self.ymin)
        if y == self.ymax and x > self.xmin:
            return w + h + (self.xmax - x)
        if x == self.xmin and y > self.ymin:
            return 2 * w + h + (self.ymax - y)
        raise ValueError(f"{p!r} is not on the box boundary")

    @property
    def perimeter(self) -> Fraction:
        return 2 * (self.xmax - self.xmin) + 2 * (self.ymax - self.ymin)

    def ccw_path(self, a, b):
        """Boundary walk from ``a`` counterclockwise to ``b``, corners included."""
        pa, pb = self.perimeter_param(a), self.perimeter_param(b)
        if pb <= pa:
            pb += self.perimeter
        mids = []
        for c in self.corners:
            pc = self.perimeter_param(c)
            for q in (pc, pc + self.perimeter):
                if pa < q < pb:
                    mids.append((q, c))
        return [a] + [c for _, c in sorted(mids)] + [b]
