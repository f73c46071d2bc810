"""Reglueing: turn any topoline arrangement into an affine one with the same faces.

At a point where some pair of lines touches, the 2k halves leaving the point
are listed counterclockwise and half i is joined to half i + k.  Every pair
of the new lines then alternates at the point, and the union of the curves
is untouched.  Repeating this lowers the number of touching pairs each time.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .arrangement import (
    Arrangement,
    InvalidArrangement,
    IntersectionPoint,
    PairClass,
    build_arrangement,
)
from .model import canonical_union, join_halves, split_at


class ReglueError(RuntimeError):
    """A reglued arrangement failed validation; this indicates a bug."""


@dataclass(frozen=True)
class ReglueStep:
    point: IntersectionPoint
    old_ids: tuple
    new_lines: tuple
    noncrossing_before: int
    noncrossing_after: int


def find_noncrossing_point(arr: Arrangement) -> Optional[IntersectionPoint]:
    """The point of the lexicographically smallest touching pair, if any."""
    pairs = arr.touching_pairs()
    if not pairs:
        return None
    a, b = pairs[0]
    for p in arr.points:
        if a in p.lines and b in p.lines:
            return p
    raise AssertionError("touching pair without a common point")


def _halves_at(arr: Arrangement, p: IntersectionPoint) -> list:
    halves = {}
    for lid in p.lines:
        minus, plus = split_at(arr.line(lid), p.location)
        halves[(lid, -1)] = minus
        halves[(lid, +1)] = plus
    return [halves[(b.line_id, b.half)] for b in p.branch_cycle]


def reglue_at(arr: Arrangement, p: IntersectionPoint) -> Arrangement:
    """Reassemble the lines through ``p`` so that all of them cross there."""
    ids = sorted(p.lines)
    if all(arr.pair_table[(a, b)] is not PairClass.TOUCHING for a, b in combinations(ids, 2)):
        raise ValueError(f"every pair of lines crosses at {p.location!r}")
    halves = _halves_at(arr, p)
    k = len(ids)
    new = [join_halves(ids[i], halves[i], halves[i + k]) for i in range(k)]
    replaced = dict(zip(ids, new))
    lines = [replaced.get(t.id, t) for t in arr.lines]
    try:
        out = build_arrangement(lines)
    except InvalidArrangement as exc:
        raise ReglueError(f"reglueing at {p.location!r} broke the arrangement: {exc}") from exc
    at = out.point_at(p.location)
    if at.lines != p.lines:
        raise ReglueError(f"lines through {p.location!r} changed after reglueing")
    for a, b in combinations(ids, 2):
        if out.pair_table[(a, b)] is not PairClass.CROSSING:
            raise ReglueError(f"{a} and {b} still touch at {p.location!r}")
    if union_pieces(new) != union_pieces(arr.line(i) for i in ids):
        raise ReglueError(f"reglueing at {p.location!r} changed the union of the curves")
    return out


def union_pieces(lines) -> frozenset:
    """Canonical description of the union of ``lines`` as a point set."""
    return canonical_union(pc for t in lines for pc in t.pieces)


def make_affine(arr: Arrangement):
    """Reglue until no touching pair is left; returns (arrangement, steps)."""
    steps = []
    while True:
        p = find_noncrossing_point(arr)
        if p is None:
            return arr, steps
        before = len(arr.touching_pairs())
        new = reglue_at(arr, p)
        after = len(new.touching_pairs())
        if after >= before:
            raise ReglueError(f"touching pairs did not drop at {p.location!r} ({before} -> {after})")
        steps.append(
            ReglueStep(p, tuple(sorted(p.lines)), tuple(new.line(i) for i in sorted(p.lines)), before, after)
        )
        arr = new
