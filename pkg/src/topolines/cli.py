"""Command-line interface.

Exit codes: 0 success, 1 I/O or parse error, 2 invalid arrangement,
3 negative answer (not projectivizable, or counting methods disagree).
"""

from __future__ import annotations

import argparse
import sys

from .arrangement import InvalidArrangement, build_arrangement, is_affine
from .faces import direct_region_count, grid_flood_fill_oracle, oracle_cells
from .formats import (
    FormatError,
    dumps,
    emit_arrangement,
    parse_arrangement,
    steps_to_json,
    structure_to_json,
)
from .generate import random_lines
from .model import fmt_rat
from .projective import inner_box, is_projectivizable, projectivize
from .reglue import make_affine
from .render import render_svg
from .semilattice import InvalidSemilattice, parse_abstract, region_count_formula, semilattice_of

OK, IO_ERROR, INVALID, NEGATIVE = 0, 1, 2, 3
ORACLE_CELL_LIMIT = 16_000_000


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Fail(IO_ERROR, f"cannot read {path}: {exc.strerror}") from None


def _write(path, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Fail(IO_ERROR, f"cannot write {path}: {exc.strerror}") from None


def _is_arrangement_text(text: str) -> bool:
    return text.lstrip().startswith("{")


def _load(path: str):
    text = _read(path)
    try:
        lines = parse_arrangement(text)
    except FormatError as exc:
        raise _Fail(IO_ERROR, f"{path}: {exc}") from None
    try:
        return build_arrangement(lines)
    except InvalidArrangement as exc:
        raise _Fail(INVALID, f"{path}: invalid arrangement: {exc}") from None


def cmd_validate(args) -> int:
    arr = _load(args.path)
    touching = len(arr.touching_pairs())
    print(
        f"valid: {len(arr)} lines, {len(arr.points)} intersection points, "
        f"{touching} touching pairs ({'affine' if touching == 0 else 'not affine'})"
    )
    return OK


def cmd_count(args) -> int:
    text = _read(args.path)
    if not _is_arrangement_text(text):
        if args.method in ("direct", "oracle"):
            raise _Fail(IO_ERROR, f"{args.path}: method {args.method!r} needs an arrangement file")
        try:
            sl = parse_abstract(text)
        except InvalidSemilattice as exc:
            raise _Fail(IO_ERROR, f"{args.path}: {exc}") from None
        print(f"formula: {region_count_formula(sl)}")
        return OK
    arr = _load(args.path)
    methods = ["formula", "direct", "oracle"] if args.method == "all" else [args.method]
    values = {}
    for m in methods:
        if m == "formula":
            values[m] = region_count_formula(semilattice_of(arr))
        elif m == "direct":
            values[m] = direct_region_count(arr).regions
        else:
            cells = oracle_cells(arr)
            if cells > ORACLE_CELL_LIMIT:
                if args.method == "oracle":
                    raise _Fail(IO_ERROR, f"oracle grid would need {cells} cells (limit {ORACLE_CELL_LIMIT})")
                print(f"oracle: skipped ({cells} cells needed)")
                continue
            values[m] = grid_flood_fill_oracle(arr)
        print(f"{m}: {values[m]}")
    if len(set(values.values())) > 1:
        print("methods disagree", file=sys.stderr)
        return NEGATIVE
    return OK


def cmd_reglue(args) -> int:
    arr = _load(args.path)
    out, steps = make_affine(arr)
    audit = sys.stdout if args.out else sys.stderr
    for k, s in enumerate(steps, 1):
        loc = s.point.location
        print(
            f"step {k}: at ({fmt_rat(loc.x)}, {fmt_rat(loc.y)}) reglued {', '.join(s.old_ids)}; "
            f"touching pairs {s.noncrossing_before} -> {s.noncrossing_after}",
            file=audit,
        )
    print(f"steps: {len(steps)}; affine: {'yes' if is_affine(out) else 'no'}", file=audit)
    _write(args.out, emit_arrangement(out.lines))
    if args.audit:
        _write(args.audit, dumps(steps_to_json(steps)))
    return OK


def cmd_projectivize(args) -> int:
    arr = _load(args.path)
    dec = is_projectivizable(arr)
    if not dec:
        print(f"not projectivizable: {dec.reason}")
        if dec.witness:
            print(f"witness: {' '.join(dec.witness)}")
        return NEGATIVE
    ps = projectivize(arr)
    sys.stdout.write(dumps(structure_to_json(ps)))
    if args.out:
        _write(args.out, emit_arrangement(ps.rerouted.lines))
    return OK


def cmd_render(args) -> int:
    arr = _load(args.path)
    boxes = [inner_box(arr)] if args.boxes and arr.lines else []
    _write(args.out, render_svg(arr, boxes))
    return OK


def cmd_generate(args) -> int:
    try:
        lines = random_lines(args.seed, args.lines, args.max_vertices)
    except ValueError as exc:
        raise _Fail(IO_ERROR, str(exc)) from None
    _write(args.out, emit_arrangement(lines))
    return OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are parse errors, not invalid arrangements
        self.print_usage(sys.stderr)
        self.exit(IO_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="topolines", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check that a file holds a valid arrangement")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("count", help="count regions")
    s.add_argument("path", help="arrangement file, or a .slat semilattice for the formula")
    s.add_argument("--method", choices=["formula", "direct", "oracle", "all"], default="all")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("reglue", help="reglue to an affine arrangement with the same faces")
    s.add_argument("path")
    s.add_argument("--out", help="output arrangement file (default: stdout)")
    s.add_argument("--audit", help="also write the step list as JSON")
    s.set_defaults(func=cmd_reglue)

    s = sub.add_parser("projectivize", help="decide projectivizability and reroute tails")
    s.add_argument("path")
    s.add_argument("--out", help="write the rerouted arrangement here")
    s.set_defaults(func=cmd_projectivize)

    s = sub.add_parser("render", help="draw an arrangement as SVG")
    s.add_argument("path")
    s.add_argument("--out", help="SVG file (default: stdout)")
    s.add_argument("--boxes", action="store_true", help="outline the inner square used for tails")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("generate", help="write a seeded random arrangement")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--lines", type=int, required=True)
    s.add_argument("--max-vertices", type=int, default=4)
    s.add_argument("--out", help="output file (default: stdout)")
    s.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
