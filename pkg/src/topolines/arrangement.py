"""Topoline arrangements: intersection points, branch cycles, pair classes."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

from .model import (
    Dir,
    Point,
    Topoline,
    curve_intersection,
    curve_param,
    pseudo_angle,
    split_at,
    validate_topoline,
)


class PairClass(enum.Enum):
    DISJOINT = "disjoint"
    CROSSING = "crossing"
    TOUCHING = "touching"


class Branch(NamedTuple):
    line_id: str
    half: int  # -1 toward the start ray, +1 toward the end ray
    outgoing_dir: Dir


@dataclass(frozen=True)
class IntersectionPoint:
    location: Point
    lines: frozenset
    branch_cycle: tuple  # Branches in counterclockwise order of outgoing_dir

    def restricted(self, ids) -> list:
        return [b for b in self.branch_cycle if b.line_id in ids]


class InvalidArrangement(Exception):
    """The lines do not form a topoline arrangement."""

    def __init__(self, reason: str, pair=(), witnesses=()):
        self.reason = reason
        self.pair = tuple(pair)
        self.witnesses = tuple(witnesses)
        msg = reason
        if self.pair:
            msg += f" (lines {', '.join(self.pair)})"
        if self.witnesses:
            msg += f" at {', '.join(map(repr, self.witnesses))}"
        super().__init__(msg)


def pair_key(a: str, b: str) -> tuple:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Arrangement:
    lines: tuple
    points: tuple
    pair_table: dict = field(compare=False)

    @property
    def ids(self) -> list:
        return [t.id for t in self.lines]

    def line(self, line_id: str) -> Topoline:
        for t in self.lines:
            if t.id == line_id:
                return t
        raise KeyError(line_id)

    def point_at(self, location) -> IntersectionPoint:
        for p in self.points:
            if p.location == location:
                return p
        raise KeyError(location)

    def touching_pairs(self) -> list:
        return sorted(k for k, v in self.pair_table.items() if v is PairClass.TOUCHING)

    def __len__(self):
        return len(self.lines)


def branch_cycle(lines, location: Point) -> tuple:
    branches = []
    for t in lines:
        minus, plus = split_at(t, location)
        branches.append(Branch(t.id, -1, minus.outgoing))
        branches.append(Branch(t.id, +1, plus.outgoing))
    branches.sort(key=lambda b: pseudo_angle(b.outgoing_dir))
    return tuple(branches)


def alternates(cycle, a: str, b: str) -> bool:
    ids = [br.line_id for br in cycle if br.line_id in (a, b)]
    assert len(ids) == 4
    return ids[0] != ids[1] and ids[1] != ids[2] and ids[2] != ids[3]


def build_arrangement(lines) -> Arrangement:
    """Validate ``lines`` and compute every intersection point and pair class.

    Raises :class:`InvalidArrangement` when a curve is not a topoline, ids
    repeat, or two curves overlap or meet more than once.
    """
    lines = tuple(lines)
    seen = set()
    for t in lines:
        if t.id in seen:
            raise InvalidArrangement("duplicate line id", (t.id,))
        seen.add(t.id)
        bad = validate_topoline(t)
        if bad is not None:
            raise InvalidArrangement(f"invalid topoline: {bad}", (t.id,))

    through = {}
    meets = {}
    for a, b in combinations(lines, 2):
        cut = curve_intersection(a, b)
        if cut.overlap:
            raise InvalidArrangement("curves share a segment", (a.id, b.id))
        if len(cut.points) > 1:
            raise InvalidArrangement("curves meet more than once", (a.id, b.id), cut.points)
        if cut.points:
            p = cut.points[0]
            through.setdefault(p, set()).update((a.id, b.id))
            meets[pair_key(a.id, b.id)] = p

    by_id = {t.id: t for t in lines}
    points = []
    for loc in sorted(through):
        members = [by_id[i] for i in sorted(through[loc])]
        cycle = branch_cycle(members, loc)
        dirs = [b.outgoing_dir for b in cycle]
        if len(set(dirs)) != len(dirs):
            raise InvalidArrangement("two branches leave a point in the same direction", (), (loc,))
        points.append(IntersectionPoint(loc, frozenset(through[loc]), cycle))

    at = {p.location: p for p in points}
    table = {}
    for a, b in combinations(sorted(by_id), 2):
        loc = meets.get((a, b))
        if loc is None:
            table[(a, b)] = PairClass.DISJOINT
        elif alternates(at[loc].branch_cycle, a, b):
            table[(a, b)] = PairClass.CROSSING
        else:
            table[(a, b)] = PairClass.TOUCHING
    return Arrangement(lines, tuple(points), table)


def classify_pair(arr: Arrangement, a: str, b: str) -> PairClass:
    if a == b:
        raise ValueError("a line is not paired with itself")
    ids = set(arr.ids)
    for x in (a, b):
        if x not in ids:
            raise KeyError(x)
    return arr.pair_table[pair_key(a, b)]


def is_affine(arr: Arrangement) -> bool:
    return PairClass.TOUCHING not in arr.pair_table.values()


def flats_on_line(arr: Arrangement, a: str) -> list:
    """Intersection points on line ``a`` in order from its start ray to its end ray."""
    t = arr.line(a)
    on = [p for p in arr.points if a in p.lines]
    return sorted(on, key=lambda p: curve_param(t, p.location))
