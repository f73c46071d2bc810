"""Reading and writing arrangement files (JSON) and semilattice files (.slat).

Rationals are stored as strings, ``"p/q"`` or ``"p"``.  Emission is canonical:
fixed key order, one topoline per text line and a trailing newline, so equal
arrangements give equal bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .model import Dir, Point, Topoline, fmt_rat
from .semilattice import Semilattice, format_abstract, parse_abstract

FORMAT = "topolines-arrangement"
VERSION = 1


class FormatError(ValueError):
    pass


def _parse_rat(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(f"{where}: expected an integer or a 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"{where}: {x!r} is not a rational number") from None


def _parse_pair(x, where: str):
    if not isinstance(x, list) or len(x) != 2:
        raise FormatError(f"{where}: expected a pair, got {x!r}")
    return _parse_rat(x[0], where + "[0]"), _parse_rat(x[1], where + "[1]")


def line_from_dict(d: dict, where: str = "line") -> Topoline:
    if not isinstance(d, dict):
        raise FormatError(f"{where}: expected an object")
    missing = [k for k in ("id", "start_ray", "vertices", "end_ray") if k not in d]
    if missing:
        raise FormatError(f"{where}: missing field {missing[0]!r}")
    if not isinstance(d["id"], str) or not d["id"]:
        raise FormatError(f"{where}.id: expected a non-empty string")
    where = f"line {d['id']!r}"
    verts = d["vertices"]
    if not isinstance(verts, list) or not verts:
        raise FormatError(f"{where}.vertices: expected a non-empty list")
    pts = [Point(*_parse_pair(v, f"{where}.vertices[{i}]")) for i, v in enumerate(verts)]
    rays = []
    for key in ("start_ray", "end_ray"):
        dx, dy = _parse_pair(d[key], f"{where}.{key}")
        if dx == 0 and dy == 0:
            raise FormatError(f"{where}.{key}: zero direction")
        rays.append(Dir.of(dx, dy))
    return Topoline(d["id"], rays[0], tuple(pts), rays[1])


def line_to_dict(t: Topoline) -> dict:
    return {
        "id": t.id,
        "start_ray": [str(t.start_ray.dx), str(t.start_ray.dy)],
        "vertices": [[fmt_rat(p.x), fmt_rat(p.y)] for p in t.vertices],
        "end_ray": [str(t.end_ray.dx), str(t.end_ray.dy)],
    }


def parse_arrangement(text: str) -> list:
    """Topolines from arrangement-file text; geometry is not validated here."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object")
    if doc.get("format") != FORMAT:
        raise FormatError(f"format must be {FORMAT!r}")
    if doc.get("version") != VERSION:
        raise FormatError(f"unsupported version {doc.get('version')!r}")
    lines = doc.get("lines")
    if not isinstance(lines, list):
        raise FormatError("'lines' must be a list")
    return [line_from_dict(d, f"lines[{i}]") for i, d in enumerate(lines)]


def emit_arrangement(lines) -> str:
    """Canonical text: header fields, then one JSON object per topoline."""
    body = ",\n".join("    " + json.dumps(line_to_dict(t), ensure_ascii=False) for t in lines)
    head = f'{{\n  "format": "{FORMAT}",\n  "version": {VERSION},\n  "lines": ['
    if not body:
        return head + "]\n}\n"
    return head + "\n" + body + "\n  ]\n}\n"


def read_arrangement(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return parse_arrangement(fh.read())


def write_arrangement(path, lines):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit_arrangement(lines))


def read_semilattice(path) -> Semilattice:
    with open(path, encoding="utf-8") as fh:
        return parse_abstract(fh.read())


def emit_semilattice(sl: Semilattice) -> str:
    return format_abstract(sl)


def fixture_path(name: str):
    """Path of a file shipped in the package's ``fixtures`` directory."""
    p = resources.files("topolines") / "fixtures" / name
    if not p.is_file():
        raise FileNotFoundError(name)
    return p


def load_fixture(name: str) -> list:
    return parse_arrangement(fixture_path(name).read_text(encoding="utf-8"))


# --- audit records ---------------------------------------------------------------

def steps_to_json(steps) -> list:
    return [
        {
            "point": [fmt_rat(s.point.location.x), fmt_rat(s.point.location.y)],
            "old_ids": list(s.old_ids),
            "new_lines": [line_to_dict(t) for t in s.new_lines],
            "touching_before": s.noncrossing_before,
            "touching_after": s.noncrossing_after,
        }
        for s in steps
    ]


def structure_to_json(ps) -> dict:
    return {
        "ideal_points": [
            {"name": ip.name, "lines": list(ip.lines), "direction": [str(ip.direction.dx), str(ip.direction.dy)]}
            for ip in ps.ideal_points
        ],
        "incidences": {k: ps.incidences[k] for k in sorted(ps.incidences)},
        "line_at_infinity": list(ps.line_at_infinity),
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
