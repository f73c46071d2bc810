"""Intersection semilattices, their Möbius function and the region formula.

Flats are identified with the set of topoplanes containing them and ordered
by inclusion of those sets (reverse inclusion of the flats themselves).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .arrangement import Arrangement


@dataclass(frozen=True)
class Flat:
    name: str
    codim: int
    members: frozenset


class InvalidSemilattice(Exception):
    pass


class Semilattice:
    """A finite set of flats with the member-inclusion order.

    The constructor checks the structural invariants and raises
    :class:`InvalidSemilattice` when one fails.
    """

    def __init__(self, flats):
        self.flats = sorted(flats, key=lambda f: (f.codim, sorted(map(str, f.members)), f.name))
        self._check()
        self.by_name = {f.name: f for f in self.flats}
        self._below = {
            f.name: [g for g in self.flats if g.members < f.members] for f in self.flats
        }

    def _check(self):
        names = [f.name for f in self.flats]
        dup = [n for n, c in Counter(names).items() if c > 1]
        if dup:
            raise InvalidSemilattice(f"duplicate flat name {dup[0]!r}")
        sets = Counter(f.members for f in self.flats)
        dup = [m for m, c in sets.items() if c > 1]
        if dup:
            raise InvalidSemilattice(f"two flats share the member set {_fmt_members(dup[0])}")
        bottom = [f for f in self.flats if f.codim == 0]
        if len(bottom) != 1 or bottom[0].members:
            raise InvalidSemilattice("need exactly one codim-0 flat, with no members")
        ids = set().union(*(f.members for f in self.flats))
        atoms = {f.members: f for f in self.flats if f.codim == 1}
        for f in self.flats:
            if f.codim == 1 and len(f.members) != 1:
                raise InvalidSemilattice(f"codim-1 flat {f.name!r} must have exactly one member")
            if f.codim < 0:
                raise InvalidSemilattice(f"negative codim on {f.name!r}")
        for i in sorted(ids, key=str):
            if frozenset([i]) not in atoms:
                raise InvalidSemilattice(f"topoplane {i!r} has no codim-1 flat")
        for f, g in combinations(self.flats, 2):
            if f.members < g.members and not f.codim < g.codim:
                raise InvalidSemilattice(f"codim does not increase from {f.name!r} to {g.name!r}")
            if g.members < f.members and not g.codim < f.codim:
                raise InvalidSemilattice(f"codim does not increase from {g.name!r} to {f.name!r}")
        for f, g in combinations(self.flats, 2):
            lower = [h for h in self.flats if h.members <= f.members and h.members <= g.members]
            tops = [h for h in lower if all(k.members <= h.members for k in lower)]
            if not tops:
                raise InvalidSemilattice(f"{f.name!r} and {g.name!r} have no meet")

    @property
    def bottom(self) -> Flat:
        return self.flats[0]

    def __len__(self):
        return len(self.flats)

    def __iter__(self):
        return iter(self.flats)

    def leq(self, a: Flat, b: Flat) -> bool:
        return a.members <= b.members

    def below(self, f: Flat) -> list:
        return self._below[f.name]


def semilattice_of(arr: Arrangement) -> Semilattice:
    flats = [Flat("X", 0, frozenset())]
    flats += [Flat(t.id, 1, frozenset([t.id])) for t in arr.lines]
    for k, p in enumerate(arr.points):
        flats.append(Flat(f"P{k}", 2, frozenset(p.lines)))
    return Semilattice(flats)


_LINE = re.compile(r"^\s*(\S+)\s+(-?\d+)\s+\{([^}]*)\}\s*$")


def parse_abstract(text: str) -> Semilattice:
    """Parse ``name codim {a,b,...}`` lines; ``#`` starts a comment."""
    flats = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _LINE.match(line)
        if not m:
            raise InvalidSemilattice(f"line {lineno}: expected 'name codim {{members}}', got {raw.strip()!r}")
        name, codim, body = m.groups()
        members = [s.strip() for s in body.split(",") if s.strip()]
        if len(set(members)) != len(members):
            raise InvalidSemilattice(f"line {lineno}: repeated member in {name!r}")
        flats.append(Flat(name, int(codim), frozenset(members)))
    return Semilattice(flats)


def format_abstract(sl: Semilattice) -> str:
    return "".join(f"{f.name} {f.codim} {_fmt_members(f.members)}\n" for f in sl)


def _fmt_members(members) -> str:
    return "{" + ",".join(sorted(map(str, members))) + "}"


def mobius(sl: Semilattice) -> dict:
    """mu(bottom, Y) for every flat Y, keyed by flat name."""
    mu = {}
    for f in sl.flats:  # sorted by codim, so everything below is done
        mu[f.name] = 1 if f is sl.bottom else -sum(mu[g.name] for g in sl.below(f))
    return mu


def region_count_formula(sl: Semilattice) -> int:
    return sum(abs(v) for v in mobius(sl).values())


@dataclass(frozen=True)
class IntervalViolation:
    bottom: str
    top: str
    u: Optional[str]
    v: Optional[str]
    reason: str

    def __str__(self):
        who = f" on ({self.u}, {self.v})" if self.u else ""
        return f"[{self.bottom}, {self.top}]{who}: {self.reason}"


def check_geometric_intervals(sl: Semilattice) -> Optional[IntervalViolation]:
    """None if every interval is a geometric lattice ranked by codimension.

    Each interval [Z, Y] must be a lattice whose covers raise codim by one,
    whose rank is semimodular and in which every element is the join of the
    atoms below it.
    """
    flats = sl.flats
    for z in flats:
        for y in flats:
            if not z.members <= y.members:
                continue
            found = _check_interval(z, y, [f for f in flats if z.members <= f.members <= y.members])
            if found:
                return found
    return None


def _check_interval(z: Flat, y: Flat, elems) -> Optional[IntervalViolation]:
    def rank(f):
        return f.codim - z.codim

    def bad(u, v, reason):
        return IntervalViolation(z.name, y.name, u and u.name, v and v.name, reason)

    def join(u, v):
        ups = [w for w in elems if u.members <= w.members and v.members <= w.members]
        least = [w for w in ups if all(w.members <= k.members for k in ups)]
        return least[0] if least else None

    def meet(u, v):
        downs = [w for w in elems if w.members <= u.members and w.members <= v.members]
        most = [w for w in downs if all(k.members <= w.members for k in downs)]
        return most[0] if most else None

    for u, v in combinations(elems, 2):
        j, m = join(u, v), meet(u, v)
        if j is None or m is None:
            return bad(u, v, "no join or meet inside the interval")
        if rank(j) + rank(m) > rank(u) + rank(v):
            return bad(u, v, "rank is not semimodular")

    for u in elems:
        for v in elems:
            if u.members < v.members and not any(
                u.members < w.members < v.members for w in elems
            ) and rank(v) != rank(u) + 1:
                return bad(u, v, "cover does not raise codimension by one")

    atoms = [a for a in elems if rank(a) == 1]
    for w in elems:
        if w is z:
            continue
        under = [a for a in atoms if a.members <= w.members]
        acc = z
        for a in under:
            acc = join(acc, a)
        if acc is None or acc.members != w.members:
            return bad(w, None, "element is not a join of atoms")
    return None


def point_flats(arr: Arrangement) -> Counter:
    """Multiset of (location, multiplicity) over the codim-2 flats."""
    return Counter((p.location, len(p.lines)) for p in arr.points)


def isomorphic_fixing_points(a: Arrangement, b: Arrangement) -> bool:
    """Poset isomorphism of the two semilattices that fixes point locations.

    Points are matched by location, so lines can only be permuted; the
    posets are isomorphic iff the lines' incidence sets agree as multisets.
    """
    if len(a.lines) != len(b.lines):
        return False
    if {p.location for p in a.points} != {p.location for p in b.points}:
        return False

    def incidences(arr):
        return Counter(
            frozenset(p.location for p in arr.points if t.id in p.lines) for t in arr.lines
        )

    return incidences(a) == incidences(b)
