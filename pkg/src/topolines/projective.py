"""Parallelism, the projectivizability test and the tail-rerouting construction.

Two lines are parallel when they are disjoint.  An affine arrangement whose
parallelism is transitive can be projectivized: outside a large square C the
tails are replaced so that every parallel class leaves along one direction
and its negative.  The new tails live in the annulus between C and a larger
square C'.  A point there is written in square polar form

    c0 + r * S(phi),

where S walks the boundary of [-1, 1]^2 counterclockwise, starting at the
lower-left corner, as phi runs over [0, 1).  S(phi + 1/2) = -S(phi), which
is what makes opposite ends of a class exactly antipodal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Optional

from .arrangement import Arrangement, InvalidArrangement, PairClass, build_arrangement, is_affine
from .faces import direct_region_count, feature_points
from .model import Box, Dir, Point, Topoline, canonical_union, clip_piece, direction_of, simplify
from .semilattice import isomorphic_fixing_points


class ProjectivizeError(RuntimeError):
    """The rerouted tails failed their audit; this indicates a bug."""


# --- parallelism ----------------------------------------------------------------

@dataclass(frozen=True)
class ParallelClassification:
    relation: frozenset  # sorted id pairs of disjoint lines
    classes: Optional[tuple]  # tuples of ids, or None when not transitive
    witness: Optional[tuple]  # (a, b, c) with a || b, b || c, a and c meeting

    @property
    def transitive(self) -> bool:
        return self.classes is not None


def parallel_classes(arr: Arrangement) -> ParallelClassification:
    rel = frozenset(k for k, v in arr.pair_table.items() if v is PairClass.DISJOINT)

    def par(a, b):
        return a == b or (min(a, b), max(a, b)) in rel

    ids = sorted(arr.ids)
    for a in ids:
        for b in ids:
            if b == a or not par(a, b):
                continue
            for c in ids:
                if c not in (a, b) and par(b, c) and not par(a, c):
                    return ParallelClassification(rel, None, (a, b, c))
    classes = []
    for i in ids:
        for cl in classes:
            if par(cl[0], i):
                cl.append(i)
                break
        else:
            classes.append([i])
    return ParallelClassification(rel, tuple(tuple(c) for c in classes), None)


@dataclass(frozen=True)
class Decision:
    ok: bool
    reason: str
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def is_projectivizable(arr: Arrangement) -> Decision:
    touching = arr.touching_pairs()
    if touching:
        a, b = touching[0]
        return Decision(False, f"not affine: {a} and {b} touch without crossing", (a, b))
    pc = parallel_classes(arr)
    if not pc.transitive:
        a, b, c = pc.witness
        return Decision(
            False, f"parallelism is not transitive: {a} || {b} and {b} || {c}, but {a} meets {c}", pc.witness
        )
    return Decision(True, f"affine with {len(pc.classes)} parallel classes")


# --- tails on the square C --------------------------------------------------------

class WPoint(NamedTuple):
    line_id: str
    end: int  # -1 for the start tail, +1 for the end tail
    point: Point


@dataclass(frozen=True)
class TailOrder:
    box: Box
    w_points: tuple  # WPoints in counterclockwise order along the box
    runs: Optional[tuple] = None  # consecutive class groups, when parallelism is transitive

    def param(self, w: WPoint) -> Fraction:
        return self.box.perimeter_param(w.point) / self.box.perimeter


def inner_box(arr: Arrangement) -> Box:
    """A square holding every vertex and intersection point strictly inside."""
    pts = feature_points(arr)
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half = max(max(xs) - cx, max(ys) - cy) + 1
    return Box.square((cx, cy), half)


def tail_order(arr: Arrangement, box: Optional[Box] = None) -> TailOrder:
    if not arr.lines:
        raise ValueError("tail order needs at least one line")
    box = box or inner_box(arr)
    if not all(box.contains(p, strict=True) for p in feature_points(arr)):
        raise ValueError("box must hold every vertex and intersection point strictly inside")
    ws = []
    for t in arr.lines:
        ws.append(WPoint(t.id, -1, box.ray_exit(t.vertices[0], t.start_ray)))
        ws.append(WPoint(t.id, +1, box.ray_exit(t.vertices[-1], t.end_ray)))
    ws.sort(key=lambda w: box.perimeter_param(w.point))
    runs = None
    if is_affine(arr):
        pc = parallel_classes(arr)
        if pc.transitive:
            runs = class_runs(ws, pc.classes)
    return TailOrder(box, tuple(ws), runs)


def class_runs(ws, classes) -> tuple:
    """Split the cyclic tail order into the 2m groups of the m classes.

    Each class must show up as two runs, one end of every line in each, with
    the order in one run the reverse of the other, and the run sequence must
    read c1..cm c1..cm.  The first run returned is the one the rotation
    starts with.
    """
    n = len(ws)
    ids = [w.line_id for w in ws]
    label = {i: k for k, cl in enumerate(classes) for i in cl}
    if len(classes) == 1:
        k = n // 2
        for r in range(n):
            rot = ids[r:] + ids[:r]
            if all(rot[i] == rot[n - 1 - i] for i in range(k)):
                ws = list(ws[r:]) + list(ws[:r])
                return (tuple(ws[:k]), tuple(ws[k:]))
        raise ProjectivizeError("parallel lines do not nest along the box")
    labs = [label[i] for i in ids]
    r = next(i for i in range(n) if labs[i] != labs[i - 1])
    ws = list(ws[r:]) + list(ws[:r])
    runs = [[ws[0]]]
    for w in ws[1:]:
        if label[w.line_id] == label[runs[-1][0].line_id]:
            runs[-1].append(w)
        else:
            runs.append([w])
    m = len(classes)
    seq = [label[run[0].line_id] for run in runs]
    if len(runs) != 2 * m or seq[:m] != seq[m:] or len(set(seq[:m])) != m:
        raise ProjectivizeError(f"class groups along the box are not antipodal: {seq}")
    for a, b in zip(runs[:m], runs[m:]):
        ia = [w.line_id for w in a]
        ib = [w.line_id for w in b]
        if sorted(ia) != sorted(classes[label[ia[0]]]) or ia != ib[::-1]:
            raise ProjectivizeError(f"parallel tails are not nested: {ia} vs {ib}")
    return tuple(tuple(run) for run in runs)


# --- square polar chart ---------------------------------------------------------------

def unit_square(phi: Fraction) -> tuple:
    s = 8 * (phi % 1)
    if s < 2:
        return (s - 1, Fraction(-1))
    if s < 4:
        return (Fraction(1), s - 3)
    if s < 6:
        return (5 - s, Fraction(1))
    return (Fraction(-1), 7 - s)


def _at(c0, r, phi) -> Point:
    u = unit_square(phi)
    return Point(c0[0] + r * u[0], c0[1] + r * u[1])


def _connector(c0, R, rho, Rp, w, v) -> list:
    """W on the inner square, out to level rho, around to v, out to V."""
    pts = [_at(c0, R, w), _at(c0, rho, w)]
    lo, hi = min(w, v), max(w, v)
    corners = []
    for k in range(int(lo * 4) - 1, int(hi * 4) + 2):
        q = Fraction(k, 4)
        if lo < q < hi:
            corners.append(q)
    if v < w:
        corners.reverse()
    pts += [_at(c0, rho, q) for q in corners]
    pts += [_at(c0, rho, v), _at(c0, Rp, v)]
    out = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    return out


# --- projective structure ---------------------------------------------------------------

@dataclass(frozen=True)
class IdealPoint:
    name: str
    lines: tuple
    direction: Dir  # end direction of the first group; the other group uses its negative


@dataclass(frozen=True)
class ProjectiveStructure:
    ideal_points: tuple
    incidences: dict = field(compare=False)  # line id -> ideal point name
    line_at_infinity: tuple  # ideal point names in cyclic order
    rerouted: Arrangement = field(compare=False)
    inner: Optional[Box] = None
    outer: Optional[Box] = None


def projectivize(arr: Arrangement, attempts: int = 8) -> ProjectiveStructure:
    dec = is_projectivizable(arr)
    if not dec:
        raise ValueError(f"arrangement is not projectivizable: {dec.reason}")
    if not arr.lines:
        return ProjectiveStructure((), {}, (), arr)
    classes = parallel_classes(arr).classes
    to = tail_order(arr)
    runs = to.runs
    m = len(classes)
    C = to.box
    c0 = ((C.xmin + C.xmax) / 2, (C.ymin + C.ymax) / 2)
    R = (C.xmax - C.xmin) / 2
    widest = max(len(r) for r in runs)
    delta = Fraction(1, 8 * m * widest)
    Rp = 2 * R
    last = None
    for a in range(attempts):
        try:
            return _build(arr, classes, to, c0, R, Rp, delta, delta / (2 * a + 3))
        except ProjectivizeError as exc:
            last = exc
        delta /= 2
        Rp *= 2
    raise ProjectivizeError(f"could not route disjoint tails: {last}")


def _build(arr, classes, to, c0, R, Rp, delta, eta) -> ProjectiveStructure:
    runs = to.runs
    m = len(runs) // 2
    w0 = to.param(runs[0][0])
    k0 = len(runs[0])
    # Cluster centres sit 1/(2m) apart, just after the first exit.  Cutting
    # the circle at w0 then keeps the exits and the new points in one linear
    # order, which is what lets the levels below nest without crossings.
    base = w0 + (k0 - 1) * delta / 2 + eta

    def frame(x):  # lift into [w0, w0 + 1)
        return w0 + (x - w0) % 1

    entries = []  # (w, v, run index, WPoint)
    for r, run in enumerate(runs):
        centre = base + Fraction(r, 2 * m)
        k = len(run)
        for i, wp in enumerate(run):
            v = centre + (2 * i - (k - 1)) * delta / 2
            entries.append((frame(to.param(wp)), v, r, wp))
    if {e[0] for e in entries} & {e[1] for e in entries}:
        raise ProjectivizeError("a new tail point lies straight out from an exit")
    if max(e[1] for e in entries) >= w0 + 1:
        raise ProjectivizeError("new tail points wrap past the cut")
    # levels: right movers descend with w, left movers climb with w
    right = sorted((e for e in entries if e[1] > e[0]), key=lambda e: -e[0])
    left = sorted((e for e in entries if e[1] < e[0]), key=lambda e: e[0])
    order = right + left
    if len(order) != len(entries):
        raise ProjectivizeError("a tail would not move")
    levels = {e[3]: R + (Rp - R) * Fraction(i + 1, len(order) + 1) for i, e in enumerate(order)}
    dirs = [direction_of(unit_square(base + Fraction(r, 2 * m))) for r in range(2 * m)]

    new_tails = {}
    for w, v, r, wp in entries:
        rho = levels[wp]
        new_tails[(wp.line_id, wp.end)] = (_connector(c0, R, rho, Rp, w, v), dirs[r])
    lines = []
    for t in arr.lines:
        s_chain, s_dir = new_tails[(t.id, -1)]
        e_chain, e_dir = new_tails[(t.id, +1)]
        verts = s_chain[::-1] + list(t.vertices) + e_chain
        lines.append(simplify(Topoline(t.id, s_dir, verts, e_dir)))
    try:
        out = build_arrangement(lines)
    except InvalidArrangement as exc:
        raise ProjectivizeError(str(exc)) from exc

    C = to.box
    Cp = Box.square(c0, Rp)
    _audit(arr, out, classes, C)

    label = {i: k for k, cl in enumerate(classes) for i in cl}
    names = [f"I{k}" for k in range(len(classes))]
    ideal = tuple(
        IdealPoint(names[label[runs[r][0].line_id]], classes[label[runs[r][0].line_id]], dirs[r])
        for r in range(m)
    )
    ideal = tuple(sorted(ideal, key=lambda ip: ip.name))
    incid = {t.id: names[label[t.id]] for t in arr.lines}
    at_inf = tuple(names[label[runs[r][0].line_id]] for r in range(m))
    return ProjectiveStructure(ideal, incid, at_inf, out, C, Cp)


def _audit(arr: Arrangement, out: Arrangement, classes, C: Box):
    def pts(a):
        return {(p.location, p.lines) for p in a.points}

    if pts(arr) != pts(out):
        raise ProjectivizeError("intersection points changed")
    if not isomorphic_fixing_points(arr, out):
        raise ProjectivizeError("semilattice changed")
    if not is_affine(out):
        raise ProjectivizeError("rerouted arrangement is not affine")
    for t in arr.lines:
        u = out.line(t.id)
        if u.start_ray != -u.end_ray:
            raise ProjectivizeError(f"tails of {t.id} are not antipodal")
        inside = [canonical_union(filter(None, (clip_piece(pc, C) for pc in x.pieces))) for x in (t, u)]
        if inside[0] != inside[1]:
            raise ProjectivizeError(f"{t.id} changed inside the inner box")
    for cl in classes:
        d = out.line(cl[0]).end_ray
        if any({out.line(i).end_ray, out.line(i).start_ray} != {d, -d} for i in cl):
            raise ProjectivizeError(f"class {cl} does not share one ideal direction")
    same = {i: k for k, cl in enumerate(classes) for i in cl}
    for a, b in combinations(sorted(out.ids), 2):
        disjoint = out.pair_table[(a, b)] is PairClass.DISJOINT
        if disjoint != (same[a] == same[b]):
            raise ProjectivizeError(f"{a} and {b}: disjoint iff same ideal point fails")
    if direct_region_count(arr) != direct_region_count(out):
        raise ProjectivizeError("face census changed")
