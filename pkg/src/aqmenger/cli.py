"""Command-line entry point: ``aqmenger {generate,verify,witness,replay,export}``.

Exit codes: 0 all checks passed, 1 usage error, 2 counterexample found,
3 hypothesis unmet, 4 infeasible request.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import AqError, HypothesisUnmet, InfeasibleRequest
from .harness import (
    EXIT_COUNTEREXAMPLE,
    EXIT_HYPOTHESIS,
    EXIT_INFEASIBLE,
    EXIT_OK,
    EXIT_USAGE,
    TARGETS,
    CampaignConfig,
    CampaignReport,
    csv_summary,
    export_graph,
    replay,
    run_campaign,
)
from .topology import AqParams, make_graph

WITNESS_TARGETS = ("witness2", "witness3", "witness4")


class _Parser(argparse.ArgumentParser):
    # argparse's default status 2 would collide with "counterexample found"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _graph_args(p):
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)


def _campaign_args(p):
    p.add_argument("--target", required=True, choices=sorted(TARGETS))
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="sampled")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None, help="fault budget override")
    p.add_argument("--probe", action="store_true", help="allow a budget above the proven bound")
    p.add_argument("--sizes", choices=["max", "uniform"], default="max",
                   help="sampled set size: always the budget, or uniform in 0..budget")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--ceiling", type=int, default=None, help="exhaustive enumeration ceiling")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="aqmenger", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="build AQ_{n,k} and print its basic invariants")
    _graph_args(p)
    p.add_argument("--out", help="write the JSON summary here instead of stdout")

    p = sub.add_parser("verify", help="run a verification campaign")
    _graph_args(p)
    _campaign_args(p)
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--csv", help="also write a one-row CSV summary here")

    p = sub.add_parser("witness", help="build and confirm a sharpness witness")
    _graph_args(p)
    p.add_argument("--target", required=True, choices=WITNESS_TARGETS)
    p.add_argument("--out")

    p = sub.add_parser("replay", help="re-verify every counterexample in a stored report")
    p.add_argument("report", help="path to a JSON report written by verify or witness")

    p = sub.add_parser("export", help="write the graph as an edge list or DOT")
    _graph_args(p)
    p.add_argument("--format", choices=["edgelist", "dot"], default="edgelist")
    p.add_argument("--out", help="destination file (stdout if omitted)")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _report_exit(report: CampaignReport, out, csv_path=None) -> int:
    _emit(report.dumps() + "\n", out)
    if csv_path:
        _emit(csv_summary([report]), csv_path)
    status = "PASS" if report.passed else "COUNTEREXAMPLE"
    tot = report.totals
    print(
        f"{status} {report.config['target']} n={report.config['n']} k={report.config['k']}: "
        f"{tot['sets_tested']} tested, {tot['failures']} failures",
        file=sys.stderr,
    )
    return report.exit_code


def _run(args) -> int:
    if args.command == "generate":
        g = make_graph(args.n, args.k)
        summary = {"n": g.n, "k": g.k, "order": g.order, "degree": g.degree, "edges": g.size}
        _emit(json.dumps(summary, sort_keys=True) + "\n", args.out)
        return EXIT_OK
    if args.command == "export":
        params = AqParams(args.n, args.k)
        if args.out is None:
            export_graph(params, args.format, sys.stdout)
        else:
            export_graph(params, args.format, args.out)
        return EXIT_OK
    if args.command == "verify":
        cfg = CampaignConfig(
            n=args.n, k=args.k, target=args.target, mode=args.mode, trials=args.trials,
            seed=args.seed, budget=args.budget, probe=args.probe, sizes=args.sizes,
            jobs=args.jobs, ceiling=args.ceiling,
        )
        return _report_exit(run_campaign(cfg), args.out, args.csv)
    if args.command == "witness":
        cfg = CampaignConfig(n=args.n, k=args.k, target=args.target)
        return _report_exit(run_campaign(cfg), args.out)
    if args.command == "replay":
        with open(args.report, encoding="utf-8") as fh:
            data = json.load(fh)
        results = replay(data)
        for idx, ok in results:
            print(f"{'reproduced' if ok else 'NOT reproduced'}: counterexample {idx}")
        if not results:
            print("no counterexamples stored")
        return EXIT_OK if all(ok for _, ok in results) else EXIT_USAGE
    raise AssertionError(args.command)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return _run(args)
    except InfeasibleRequest as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except HypothesisUnmet as exc:
        print(f"hypothesis unmet: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (AqError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
