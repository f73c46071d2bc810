"""A short tour: count, reglue and projectivize the bundled fixtures.

Run with ``python3 demos/tour.py [outdir]``; SVG drawings go to outdir
(default: the current directory).
"""

import sys
from pathlib import Path

from topolines import (
    build_arrangement,
    direct_region_count,
    grid_flood_fill_oracle,
    is_projectivizable,
    load_fixture,
    make_affine,
    projectivize,
    region_count_formula,
    semilattice_of,
)
from topolines.projective import inner_box
from topolines.render import render_svg


def load(name):
    return build_arrangement(load_fixture(name))


def main(outdir: Path):
    outdir.mkdir(parents=True, exist_ok=True)

    # three independent region counts on four lines with intransitive parallelism
    arr = load("noproj2.arr")
    print("noproj2 regions:",
          region_count_formula(semilattice_of(arr)),
          direct_region_count(arr).regions,
          grid_flood_fill_oracle(arr))
    dec = is_projectivizable(arr)
    print("  projectivizable:", bool(dec), "-", dec.reason)

    # two bent lines that touch at the origin become the coordinate axes
    arr = load("gplus-gminus.arr")
    out, steps = make_affine(arr)
    print("gplus-gminus: touching pairs", len(arr.touching_pairs()), "->", len(out.touching_pairs()),
          "in", len(steps), "step(s)")
    for t in out.lines:
        print("  ", t)
    (outdir / "gplus-gminus-reglued.svg").write_text(render_svg(out))

    # two parallels and a bent transversal get tails aimed at shared ideal points
    arr = load("parallel-pair-transversal.arr")
    ps = projectivize(arr)
    for ip in ps.ideal_points:
        print(f"{ip.name}: lines {', '.join(ip.lines)} toward {ip.direction}")
    print("line at infinity:", " ".join(ps.line_at_infinity))
    (outdir / "transversal.svg").write_text(render_svg(arr, [inner_box(arr)]))
    (outdir / "transversal-projectivized.svg").write_text(render_svg(ps.rerouted, [ps.inner, ps.outer]))
    print("drawings written to", outdir)


if __name__ == "__main__":
    main(Path(sys.argv[1] if len(sys.argv) > 1 else "."))
