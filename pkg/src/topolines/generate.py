"""Seeded random topoline arrangements for tests and experiments."""

from __future__ import annotations

import random
from fractions import Fraction

from .arrangement import build_arrangement
from .model import Dir, Point, Topoline, along, curve_intersection, pseudo_angle, split_at, validate_topoline

KINDS = ("straight", "parallel", "bent", "polyline", "touching", "concurrent")
MAX_TRIES = 2000


def _coord(rng, lo=-6, hi=6) -> Fraction:
    return Fraction(rng.randint(2 * lo, 2 * hi), 2)


def _point(rng) -> Point:
    return Point(_coord(rng), _coord(rng))


def _dir(rng, lim=3) -> Dir:
    while True:
        dx, dy = rng.randint(-lim, lim), rng.randint(-lim, lim)
        if dx or dy:
            return Dir.of(dx, dy)


def _straight(rng, lid, existing):
    return Topoline.straight(lid, _point(rng), _dir(rng))


def _parallel(rng, lid, existing):
    if not existing:
        return _straight(rng, lid, existing)
    t = rng.choice(existing)
    off = (_coord(rng, -3, 3), _coord(rng, -3, 3))
    verts = [Point(p.x + off[0], p.y + off[1]) for p in t.vertices]
    return Topoline(lid, t.start_ray, verts, t.end_ray)


def _bent(rng, lid, existing):
    while True:
        a, b = _dir(rng), _dir(rng)
        if a != b and a != -b:
            return Topoline(lid, a, (_point(rng),), b)


def _polyline(rng, lid, existing, max_vertices):
    k = rng.randint(2, max(2, max_vertices))
    xs = sorted(rng.sample(range(-12, 13), k))
    verts = [Point(Fraction(x, 2), _coord(rng)) for x in xs]
    start = Dir.of(-rng.randint(1, 3), rng.randint(-3, 3))
    end = Dir.of(rng.randint(1, 3), rng.randint(-3, 3))
    t = Topoline(lid, start, verts, end)
    if rng.random() < 0.5:  # y-monotone instead
        t = Topoline(lid, Dir(t.start_ray.dy, t.start_ray.dx), [Point(p.y, p.x) for p in verts],
                     Dir(t.end_ray.dy, t.end_ray.dx))
    return t


def _on_curve_point(rng, t: Topoline) -> Point:
    i = rng.randrange(len(t.pieces))
    pc = t.pieces[i]
    s = Fraction(rng.randint(0, 4), 4) if not pc.is_ray else Fraction(rng.randint(0, 6), 2)
    return along(pc.origin, pc.vec, s)


def _touching(rng, lid, existing):
    """A bent line meeting an existing line at one point from one side."""
    if not existing:
        return _bent(rng, lid, existing)
    t = rng.choice(existing)
    p = _on_curve_point(rng, t)
    minus, plus = split_at(t, p)
    u, v = sorted([minus.outgoing, plus.outgoing], key=pseudo_angle)
    lo, hi = pseudo_angle(u), pseudo_angle(v)
    inside = rng.random() < 0.5
    picks = []
    for _ in range(60):
        d = _dir(rng)
        a = pseudo_angle(d)
        if (lo < a < hi) == inside and a not in (lo, hi) and d not in picks:
            picks.append(d)
            if len(picks) == 2:
                return Topoline(lid, picks[0], (p,), picks[1])
    return _bent(rng, lid, existing)


def _concurrent(rng, lid, existing):
    """A straight line through a point where earlier lines meet."""
    pts = []
    for i, a in enumerate(existing):
        for b in existing[i + 1:]:
            pts.extend(curve_intersection(a, b).points)
    if not pts:
        return _straight(rng, lid, existing)
    return Topoline.straight(lid, rng.choice(sorted(pts)), _dir(rng))


def _compatible(t: Topoline, existing) -> bool:
    if validate_topoline(t) is not None:
        return False
    for s in existing:
        cut = curve_intersection(s, t)
        if cut.overlap or len(cut.points) > 1:
            return False
    return True


def random_lines(seed: int, n_lines: int, max_vertices: int = 4) -> list:
    """``n_lines`` topolines forming a valid arrangement, determined by ``seed``."""
    if not 0 <= n_lines <= 12:
        raise ValueError("n_lines must be between 0 and 12")
    if not 1 <= max_vertices <= 10:
        raise ValueError("max_vertices must be between 1 and 10")
    rng = random.Random(seed)
    kinds = list(KINDS) if max_vertices >= 2 else [k for k in KINDS if k != "polyline"]
    lines = []
    for k in range(1, n_lines + 1):
        lid = f"L{k}"
        for _ in range(MAX_TRIES):
            kind = rng.choice(kinds)
            if kind == "polyline":
                t = _polyline(rng, lid, lines, max_vertices)
            else:
                t = globals()["_" + kind](rng, lid, lines)
            if _compatible(t, lines):
                lines.append(t)
                break
        else:
            raise RuntimeError(f"seed {seed}: could not place line {lid}")
    return lines


def random_arrangement(seed: int, n_lines: int, max_vertices: int = 4):
    return build_arrangement(random_lines(seed, n_lines, max_vertices))
