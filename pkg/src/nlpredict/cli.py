"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 solver non-convergence.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import logging
import sys

from . import __version__
from .discrimination import min_error_solve
from .io import (
    discrimination_to_json,
    dump_json,
    ensemble_from_json,
    load_json,
    measurement_from_json,
    predictability_to_json,
    state_from_json,
)
from .lab.claims import CLAIMS, verify_claim
from .lab.montecarlo import monte_carlo_protocol
from .lab.sweep import SweepConfig, sweep, sweep_failures, write_csv
from .linalg import InputError, make_rng
from .predictability import nonlocal_predictability
from .states import DephasingSpec, dephase

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2, 3

log = logging.getLogger("nlpredict")


def _envelope(args, body: dict) -> dict:
    config = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    return {
        "version": __version__,
        "seed": args.seed,
        "tol": args.tol,
        "config": config,
        "report": body,
        "timestamp_nondeterministic": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }


def _emit(args, body: dict) -> None:
    text = dump_json(_envelope(args, body), args.out)
    if args.out is None:
        sys.stdout.write(text)


def _load_state(args):
    rho, dims = state_from_json(load_json(args.state))
    if args.q is not None:
        rho = dephase(rho, dims, DephasingSpec(args.q))
    return rho, dims


def cmd_predict(args) -> int:
    rho, dims = _load_state(args)
    m = measurement_from_json(load_json(args.measurement))
    rep = nonlocal_predictability(rho, dims, m, tol=args.tol)
    _emit(args, predictability_to_json(rep))
    return EXIT_OK if rep.converged else EXIT_SOLVER


def cmd_discriminate(args) -> int:
    ens = ensemble_from_json(load_json(args.ensemble))
    res = min_error_solve(ens, tol=args.tol)
    _emit(args, discrimination_to_json(res))
    return EXIT_OK if res.converged else EXIT_SOLVER


def cmd_verify(args) -> int:
    claims = CLAIMS if args.claim == "all" else [args.claim]
    reports = [verify_claim(c, dims=args.dim, trials=args.trials, seed=args.seed,
                            tol=args.tol if args.tol_given else None).to_dict()
               for c in claims]
    for r in reports:
        log.info("%s: %s (%d/%d failures, worst residual %.3e)", r["claim"],
                 "pass" if r["pass"] else "FAIL", r["failures"], r["trials"], r["worst_residual"])
    body = reports[0] if len(reports) == 1 else {"claims": reports}
    body_pass = all(r["pass"] for r in reports)
    if len(reports) > 1:
        body["pass"] = body_pass
    _emit(args, body)
    return EXIT_OK if body_pass else EXIT_VERIFY


def cmd_sweep(args) -> int:
    raw = load_json(args.config)
    if args.q is not None:
        raw = dict(raw, q=[args.q])
    cfg = SweepConfig.from_dict(raw)
    records = sweep(cfg)
    failures = sweep_failures(records)
    if args.out:
        write_csv(records, args.out)
    summary = {
        "points": len(records),
        "failures": failures,
        "advantage_points": sum(r.advantage_observed for r in records),
        "max_closed_form_residual": max(r.closed_form_residual for r in records),
        "grid": cfg.to_dict(),
        "csv": args.out,
    }
    sys.stdout.write(dump_json(_envelope(args, summary)))
    return EXIT_OK if failures == 0 else EXIT_VERIFY


def cmd_sample(args) -> int:
    rho, dims = _load_state(args)
    m = measurement_from_json(load_json(args.measurement))
    rep = nonlocal_predictability(rho, dims, m, tol=args.tol)
    mc = monte_carlo_protocol(rho, dims, m, rep.bob_povm, args.samples, make_rng(args.seed))
    body = {
        "success": mc.success,
        "std_error": mc.std_error,
        "samples": mc.n_samples,
        "analytic": mc.analytic,
        "nonlocal": rep.nonlocal_value,
        "local_bound": rep.local_bound,
    }
    _emit(args, body)
    return EXIT_OK if rep.converged else EXIT_SOLVER


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nlpredict", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--tol", type=float, default=None,
                        help="solver / verification tolerance (default 1e-9)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None, help="output file (default: stdout)")
        sp.add_argument("-v", "--verbose", action="store_true")

    sp = sub.add_parser("predict", help="nonlocal predictability of a state and measurement")
    sp.add_argument("--state", required=True)
    sp.add_argument("--measurement", required=True)
    sp.add_argument("--q", type=float, default=None, help="dephase subsystem A with strength q first")
    common(sp)
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("discriminate", help="minimum-error discrimination of an ensemble")
    sp.add_argument("--ensemble", required=True)
    common(sp)
    sp.set_defaults(func=cmd_discriminate)

    sp = sub.add_parser("verify", help="run a claim verification suite")
    sp.add_argument("--claim", required=True, choices=list(CLAIMS) + ["all"])
    sp.add_argument("--dim", type=int, action="append", default=None)
    sp.add_argument("--trials", type=int, default=100)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="closed-form vs numeric sweep, CSV output")
    sp.add_argument("--config", required=True)
    sp.add_argument("--q", type=float, default=None, help="override the q grid with one value")
    common(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("sample", help="Monte Carlo run of the guessing protocol")
    sp.add_argument("--state", required=True)
    sp.add_argument("--measurement", required=True)
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--q", type=float, default=None)
    common(sp)
    sp.set_defaults(func=cmd_sample)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    args.tol_given = args.tol is not None
    if args.tol is None:
        args.tol = 1e-9
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
