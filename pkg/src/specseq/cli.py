"""Command-line interface.

    specseq list
    specseq run <scenario> [--field q|f2|f3|f5] [--max-degree N]
                           [--max-word W] [--pages R] [--out report.json]
    specseq chart <report.json> --ss em|ls|prelude-em|prelude-ls --page R
                           [--slice s=K|t=K] [--format ascii|tex]
    specseq analyze <morphism.json> [--bound N]
    specseq fuzz [--seed S] [--cases N]

Exit code 0 iff every check passes or is inconclusive-by-certification;
nonzero on any hard failure.

The chart subcommand re-runs the scenario named inside the report file
(reports store dims, not coset bases, so pages are recomputed with the
report's bounds; this is cheap for every shipped scenario except bz3).

A morphism file for `analyze` is JSON:

    {"field": "f2",
     "source": {"generators": [["z2", 2], ["z3", 3]]},
     "target": {"generators": [["x", 1], ["y", 1]]},
     "images": {"z2": "x*y", "z3": "x^2*y+x*y^2"},
     "bound": 6}
"""

from __future__ import annotations

import argparse
import json
import sys

from .linalg import field_by_name
from .scenarios import REGISTRY, list_scenarios, report_dict, run_scenario


def main(argv=None):
    parser = argparse.ArgumentParser(prog="specseq")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list registered scenarios")

    p_run = sub.add_parser("run", help="run a scenario and emit its report")
    p_run.add_argument("scenario")
    p_run.add_argument("--field", default=None)
    p_run.add_argument("--max-degree", type=int, default=None)
    p_run.add_argument("--max-word", type=int, default=None)
    p_run.add_argument("--pages", type=int, default=None)
    p_run.add_argument("--out", default=None)

    p_chart = sub.add_parser("chart", help="render a page chart from a report")
    p_chart.add_argument("report")
    p_chart.add_argument("--ss", required=True,
                         help="em | ls | prelude-em | prelude-ls")
    p_chart.add_argument("--page", type=int, required=True)
    p_chart.add_argument("--slice", default=None, help="s=K or t=K for preludes")
    p_chart.add_argument("--format", default="ascii", choices=["ascii", "tex"])

    p_an = sub.add_parser("analyze", help="run analyze_morphism on a descriptor file")
    p_an.add_argument("morphism")
    p_an.add_argument("--bound", type=int, default=None)

    p_fuzz = sub.add_parser("fuzz", help="random-complex property suite")
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument("--cases", type=int, default=25)

    args = parser.parse_args(argv)
    if args.command == "list":
        for name, desc in list_scenarios():
            print(f"{name:16s} {desc}")
        return 0
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "chart":
        return _cmd_chart(args)
    if args.command == "analyze":
        return _cmd_analyze(args)
    if args.command == "fuzz":
        return _cmd_fuzz(args)
    return 2


def _cmd_run(args):
    rep = run_scenario(args.scenario, field=args.field, n_max=args.max_degree,
                       w_max=args.max_word, r_max=args.pages)
    payload = report_dict(rep)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
        print(f"report written to {args.out}")
    for c in rep.checks:
        print(f"[{c.status:12s}] {c.name}" + (f"  ({c.detail})" if c.detail else ""))
    print("scenario", rep.scenario, "OK" if rep.ok else "FAILED")
    return 0 if rep.ok else 1


def _cmd_chart(args):
    from .charts import render_chart, render_tri_slice
    with open(args.report) as fh:
        payload = json.load(fh)
    name = payload["scenario"]
    bounds = payload["bounds"]
    rep = run_scenario(name, n_max=bounds.get("n_max"), w_max=bounds.get("w_max"),
                       r_max=bounds.get("r_max"))
    which = args.ss
    if which in ("prelude-em", "prelude-ls"):
        if not args.slice or "=" not in args.slice:
            print("prelude charts need --slice s=K or t=K", file=sys.stderr)
            return 2
        key, val = args.slice.split("=")
        seq_name = f"{which}[{key}={int(val)}]"
    else:
        seq_name = which
    ss = rep.sequences.get(seq_name)
    if ss is None:
        avail = ", ".join(sorted(rep.sequences))
        print(f"no sequence {seq_name!r} in this report; available: {avail}",
              file=sys.stderr)
        return 2
    print(render_chart(ss, args.page, fmt=args.format))
    if which == "em" and rep.tri is not None and args.slice:
        key, val = args.slice.split("=")
        print(render_tri_slice(rep.tri, key, int(val), fmt=args.format))
    return 0


def _cmd_analyze(args):
    from .dga import AlgebraMorphism, polynomial_dga
    from .tor import analyze_morphism
    with open(args.morphism) as fh:
        desc = json.load(fh)
    field = field_by_name(desc["field"])
    src = polynomial_dga(field, [tuple(g) for g in desc["source"]["generators"]],
                         desc.get("window", 12), name="source")
    tgt = polynomial_dga(field, [tuple(g) for g in desc["target"]["generators"]],
                         desc.get("window", 12), name="target")
    phi = AlgebraMorphism.from_generator_images(src, tgt, desc["images"])
    bound = args.bound or desc.get("bound", 6)
    res = analyze_morphism(phi, bound)
    print(f"kernel dims     {res.kernel_dims}")
    print(f"image dims      {res.image_dims}")
    print(f"ideal J dims    {res.ideal_j_dims}")
    print(f"sequence        {res.regular_sequence} regular={res.regular_ok}")
    print(f"free            {res.freeness.free}")
    print(f"EM verdict      {res.em_verdict}" +
          (f" ({'; '.join(res.em_reasons)})" if res.em_reasons else ""))
    if res.predicted_einf_totals is not None:
        print(f"EM E_inf totals {res.predicted_einf_totals}")
    print(f"LS transgressions {[(g, d) for g, d, _ in res.transgressions]}")
    print(f"LS degeneration page {res.ls_degeneration_page}")
    return 0


def _cmd_fuzz(args):
    from .complexes import (cohomology_dims, random_bifiltered_complex,
                            random_filtered_complex)
    from .engine import compute_spectral_sequence, decalage, zassenhaus_quartet
    failures = 0
    for i in range(args.cases):
        seed = args.seed + i
        fc, expected = random_filtered_complex(seed)
        ss = compute_spectral_sequence(fc, fc.s_max + 2)
        totals = ss.total_dims(fc.s_max + 2)
        for n, hn in enumerate(expected):
            if totals.get(n, 0) != hn:
                print(f"seed {seed}: abutment mismatch at degree {n}")
                failures += 1
        dec = decalage(fc)
        ss_dec = compute_spectral_sequence(dec, 3)
        ss_plus = compute_spectral_sequence(fc, 4)
        for r in (1, 2, 3):
            lhs = {pq: e.dim for pq, e in ss_dec.pages[r].entries.items()}
            rhs = {}
            for (a, b), e in ss_plus.pages[r + 1].entries.items():
                rhs[(-b, a + b + b)] = e.dim
            if lhs != rhs:
                print(f"seed {seed}: decalage identity fails at r={r}")
                failures += 1
        bif, _ = random_bifiltered_complex(seed, n_max=2, max_dim=2)
        rep = zassenhaus_quartet(bif, 2)
        if not rep.zassenhaus_ok:
            print(f"seed {seed}: Zassenhaus commutation fails")
            failures += 1
    print(f"fuzz: {args.cases} cases, {failures} failures")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
