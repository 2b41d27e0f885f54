"""Plan the L-shaped reference instance step by step and draw it.

Usage: python scripts/lshaped_demo.py [out.svg]
"""

import sys

from mmsreach.bench.arenas import gen_arena
from mmsreach.bench.svg import render_svg
from mmsreach.cellcover2d import channel_decide, compute_cover
from mmsreach.hop import verify_run
from mmsreach.model import simulate
from mmsreach.numeric import format_rational
from mmsreach.planner import SmtBackend, plan


def fmt(point):
    return "(" + ", ".join(format_rational(v) for v in point) + ")"


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    inst = gen_arena("LShaped")
    cover = compute_cover(inst)
    print(f"cell cover: B = {cover.bound} cells in {len(cover.components())} component(s)")
    verdict = channel_decide(inst, cover)
    print("channel: " + " -> ".join(map(str, verdict.channel)))

    region = [c.polygon for c in cover.component_of(inst.start)]
    out = plan(inst, cover.bound, SmtBackend(region=region))
    for k, v in out.verdicts:
        print(f"k = {k}: {v.tag}")
    if out.plan is None:
        print(f"no plan: {out.tag}")
        return 1
    print(f"witness length {out.witness_length}: " + " -> ".join(fmt(w) for w in out.plan.waypoints))
    run = simulate(inst.mms, inst.start, out.plan.schedule)
    print(f"{len(out.plan.schedule)} timed actions, terminal state {fmt(run.terminal)}")
    print(f"exact verification: {'ok' if verify_run(inst, run).ok and run.terminal == inst.target else 'FAILED'}")
    if argv:
        with open(argv[0], "w") as fh:
            fh.write(render_svg(inst, plan=out.plan))
        print(f"wrote {argv[0]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
