"""Command-line interface: ``radial-mm {dist,matrix,topk,profile,verify}``."""

from __future__ import annotations

import argparse
import io
import sys

import numpy as np

from . import distance as dist_mod
from .graph import load_graph, rooted_profile
from .mmcore import ValidationError, cumulative_distribution


def fmt(x: float) -> str:
    return f"{x:.9g}"


def _add_graph_opts(p: argparse.ArgumentParser, mode: bool = True):
    p.add_argument("--format", choices=("json", "tsv"), default=None,
                   help="graph file format (default: from extension)")
    p.add_argument("--feature", type=int, default=0, help="feature column used as the measure")
    p.add_argument("--restrict-reachable", action="store_true",
                   help="drop nodes unreachable from the origin instead of failing")
    p.add_argument("--decimals", type=int, default=None,
                   help="round shortest-path radii to this many decimals")
    if mode:
        p.add_argument("--mode", default="exact",
                       choices=("exact", "exact-integral", "paper-discrete", "discrete"),
                       help="exact integral (default) or the breakpoint sum")
        p.add_argument("--lambda", dest="decay", type=float, default=1.0,
                       help="experimental, non-standard: decay rate in exp(-lambda*r) (default 1)")


def _profile(g, origin, args, feature=None):
    return cumulative_distribution(rooted_profile(
        g, origin, args.feature if feature is None else feature,
        args.restrict_reachable, args.decimals))


def cmd_dist(args, out) -> int:
    ga = load_graph(args.graph1, args.format)
    gb = load_graph(args.graph2, args.format)
    if args.norm is not None:
        if ga.k != gb.k:
            raise ValidationError(f"feature counts differ: {ga.k} vs {gb.k}")
        fa = [_profile(ga, args.origin1, args, i) for i in range(ga.k)]
        fb = [_profile(gb, args.origin2, args, i) for i in range(gb.k)]
        res = dist_mod.d_rd_multi(fa, fb, args.norm, args.mode, args.decay)
    else:
        res = dist_mod.d_rd(_profile(ga, args.origin1, args), _profile(gb, args.origin2, args),
                            args.mode, args.decay)
    out.write(fmt(res.value) + "\n")
    if args.explain:
        if res.norm is not None:
            out.write("feature\tvalue\taddend\n")
            for i, (part, a) in enumerate(zip(res.components, res.addends.tolist())):
                out.write(f"{i}\t{fmt(part.value)}\t{fmt(a)}\n")
        else:
            out.write("start\tend\taddend\n")
            for s, e, a in zip(res.starts.tolist(), res.ends.tolist(), res.addends.tolist()):
                out.write(f"{fmt(s)}\t{fmt(e)}\t{fmt(a)}\n")
    return 0


def cmd_matrix(args, out) -> int:
    ga = load_graph(args.graph1, args.format)
    gb = load_graph(args.graph2, args.format)
    m = dist_mod.all_pairs(ga, gb, args.feature, args.mode, args.decay,
                           args.restrict_reachable, args.decimals)
    buf = io.StringIO()
    buf.write(",".join([""] + list(gb.node_ids)) + "\n")
    for nid, row in zip(ga.node_ids, m.tolist()):
        buf.write(",".join([nid] + [fmt(v) for v in row]) + "\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())
    return 0


def cmd_topk(args, out) -> int:
    ga = load_graph(args.graph1, args.format)
    gb = load_graph(args.graph2, args.format)
    ranked = dist_mod.top_k(ga, args.origin, gb, args.k, args.feature, args.mode, args.decay,
                            args.restrict_reachable, args.decimals)
    for rank, (nid, v) in enumerate(ranked, start=1):
        out.write(f"{rank}\t{nid}\t{fmt(v)}\n")
    return 0


def cmd_profile(args, out) -> int:
    g = load_graph(args.graph, args.format)
    f = _profile(g, args.origin, args)
    out.write("radius\tmass\n")
    for r, c in f.pairs():
        out.write(f"{fmt(r)}\t{fmt(c)}\n")
    return 0


def cmd_verify(args, out) -> int:
    from .bundled import regression_checks
    from .oracle import check_pseudometric, quadrature_d_rd, random_step_function

    failures = 0
    if args.trials > 0:
        report = check_pseudometric(random_step_function, args.trials, seed=args.seed)
        out.write(f"pseudometric: {report.summary()} (seed {args.seed})\n")
        for v in report.violations:
            out.write(f"  {v.axiom}: excess {v.excess!r} inputs {v.inputs}\n")
        failures += len(report.violations)

        rng = np.random.default_rng(args.seed)
        worst, bad = 0.0, 0
        for _ in range(args.trials):
            f1, f2 = random_step_function(rng), random_step_function(rng)
            err = abs(dist_mod.d_rd_exact(f1, f2).value
                      - quadrature_d_rd(f1, f2, args.quad_step, extrapolate=True))
            worst = max(worst, err)
            bad += err > 1e-9
        out.write(f"quadrature: {args.trials} pairs, {bad} violations, max error {worst:.3g}\n")
        failures += bad
    if args.paper_examples:
        for check in regression_checks():
            out.write(check.line() + "\n")
            failures += not check.ok
    out.write(f"{failures} violations\n")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radial-mm",
        description="Radial distribution distance between rooted weighted graphs. "
                    "RADIAL_MM_THREADS caps worker threads for matrix/topk.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="distance between two rooted graphs")
    p.add_argument("graph1")
    p.add_argument("origin1")
    p.add_argument("graph2")
    p.add_argument("origin2")
    _add_graph_opts(p)
    p.add_argument("--norm", choices=dist_mod.NORMS, default=None,
                   help="combine all feature columns under this norm")
    p.add_argument("--explain", action="store_true", help="print the per-interval addends")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("matrix", help="all-pairs distance matrix as CSV")
    p.add_argument("graph1")
    p.add_argument("graph2")
    _add_graph_opts(p)
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("topk", help="nodes of graph2 closest to a rooted graph1")
    p.add_argument("graph1")
    p.add_argument("origin")
    p.add_argument("graph2")
    p.add_argument("-k", type=int, default=10)
    _add_graph_opts(p)
    p.set_defaults(func=cmd_topk)

    p = sub.add_parser("profile", help="cumulative radial distribution as TSV")
    p.add_argument("graph")
    p.add_argument("origin")
    _add_graph_opts(p, mode=False)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("verify", help="run the oracle and regression checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--quad-step", type=float, default=1e-3)
    p.add_argument("--paper-examples", action="store_true",
                   help="also check the known values of the bundled examples")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = io.StringIO()
    try:
        code = args.func(args, out)
    except (ValidationError, OSError) as exc:
        print(f"radial-mm: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"radial-mm: internal error: {exc!r}", file=sys.stderr)
        return 1
    sys.stdout.write(out.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
