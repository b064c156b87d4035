"""Command-line entry point: ``orthospeed {analyze,sweep,haar,verify}``."""

from __future__ import annotations

import argparse
import json
import sys
import time

from .evolution import HamiltonianSpec
from .experiments import haar_summary, sweep_family, verify, write_sweep_csv
from .oracle import DEFAULT_GRID
from .solver import DEFAULT_TOL, SpeedReport, speed_report
from .states import DomainError, StateError, state_from_json, state_to_json

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _opt(v) -> str:
    return "undefined" if v is None else f"{v:.15g}"


def render_report(r: SpeedReport) -> str:
    q = r.qsl
    lines = [
        f"class              {r.ortho.kind.value} (reachable={r.ortho.reachable}, "
        f"residual={r.ortho.condition_residual:.3g})",
        f"tau                {_opt(r.tau)}",
        f"t_ml  (pi hbar/2E) {_opt(q.t_ml)}",
        f"t_mt  (pi hbar/2dE){_opt(q.t_mt)}",
        f"t_min              {_opt(q.t_min)}",
        f"t_min1             {_opt(q.t_min1)}",
        f"t_min != t_min1    {q.min_disagrees_with_min1}",
        f"concurrence        {r.concurrence:.15g}",
        f"ratio              {_opt(r.ratio)} (denominator {r.denominator_used or '-'})",
        f"bound              {r.bound_rhs:.15g}",
        f"violates bound     {r.violates_eq5}",
    ]
    return "\n".join(lines)


def _ham(args) -> HamiltonianSpec:
    return HamiltonianSpec(args.epsilon, args.hbar)


def cmd_analyze(args) -> int:
    try:
        with open(args.state) as fh:
            state = state_from_json(json.load(fh))
    except (OSError, json.JSONDecodeError, StateError, TypeError, ValueError) as exc:
        print(f"error: cannot read state from {args.state}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = speed_report(state, _ham(args), args.tol)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(render_report(report))
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        rows = sweep_family(args.start, args.stop, args.steps, _ham(args))
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        with open(args.out, "w", newline="") as fh:
            write_sweep_csv(rows, fh)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def cmd_haar(args) -> int:
    try:
        summary = haar_summary(args.n, args.seed, args.tol, args.c3_small, args.workers)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        with open(args.out, "w") as fh:
            json.dump(summary.to_dict(), fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def cmd_verify(args) -> int:
    def dump(state, problems):
        print("FAIL " + "; ".join(problems))
        print("  state: " + json.dumps(state_to_json(state)))

    t0 = time.perf_counter()
    try:
        out = verify(args.n_generic, args.n_singular, args.seed, _ham(args),
                     grid_points=args.grid, inject_fault=args.inject_fault, on_failure=dump)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"passed {out.n_pass}, failed {out.n_fail}")
    print(f"max |tau_closed - tau_oracle| = {out.max_tau_err:.3e}")
    print(f"max |C - C_oracle|            = {out.max_conc_err:.3e}")
    print(f"elapsed {time.perf_counter() - t0:.2f} s")
    return EXIT_OK if out.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orthospeed", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def ham_opts(sp):
        sp.add_argument("--epsilon", type=float, default=1.0)
        sp.add_argument("--hbar", type=float, default=1.0)

    a = sub.add_parser("analyze", help="speed report for one state")
    a.add_argument("--state", required=True, help="state JSON file")
    ham_opts(a)
    a.add_argument("--tol", type=float, default=DEFAULT_TOL)
    a.add_argument("--json", action="store_true", help="emit JSON instead of text")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sweep", help="sweep the singular family to CSV")
    s.add_argument("--from", dest="start", type=float, required=True)
    s.add_argument("--to", dest="stop", type=float, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--out", required=True)
    ham_opts(s)
    s.set_defaults(func=cmd_sweep)

    h = sub.add_parser("haar", help="Haar Monte Carlo reachability census")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--seed", type=int, required=True)
    h.add_argument("--tol", type=float, default=1e-9)
    h.add_argument("--c3-small", type=float, default=1e-3)
    h.add_argument("--workers", type=int, default=1)
    h.add_argument("--out", required=True)
    h.set_defaults(func=cmd_haar)

    v = sub.add_parser("verify", help="closed form vs. numeric oracle")
    v.add_argument("--n-generic", type=int, default=500)
    v.add_argument("--n-singular", type=int, default=500)
    v.add_argument("--seed", type=int, default=7)
    v.add_argument("--grid", type=int, default=DEFAULT_GRID, help=argparse.SUPPRESS)
    v.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    ham_opts(v)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
