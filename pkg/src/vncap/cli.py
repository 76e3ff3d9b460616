"""Command-line front end.

Subcommands: ``capacity``, ``sweep``, ``audit``, ``hamming``, ``superdense``.
All numeric output uses 12 significant digits with a dot decimal separator
and is deterministic (audits are seeded; ``VN_SEED`` overrides the default
seed, an explicit ``--seed`` beats both).  Exit codes: 0 success, 1 audit
violation, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import analysis, depolarizing
from .channel import run_channel
from .depolarizing import DepolParams
from .qmat import DensityMatrix

DEFAULT_SEED = 42
DEFAULT_P_RANGE = "0:0.75:0.05"
DEFAULT_Q_RANGE = "0:1:0.02"
DEFAULT_N_LIST = "25,50,100,200"


class UsageError(ValueError):
    pass


def _fmt(x: float) -> str:
    return "%.12g" % (0.0 if x == 0 else float(x))


def _unit_flag(value: float, flag: str) -> float:
    if value is None or value < 0.0 or value > 1.0:
        raise UsageError(f"{flag} must lie in [0, 1], got {value!r}")
    return float(value)


def _diag_qubit(q: float) -> DensityMatrix:
    return DensityMatrix(np.diag([q, 1.0 - q]).astype(np.complex128), (2,))


def _parse_range(text: str, flag: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"{flag} must look like start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(v) for v in parts)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None
    if step <= 0.0:
        raise UsageError(f"{flag}: step must be positive, got {step!r}")
    if not (0.0 <= start <= 1.0 and 0.0 <= stop <= 1.0):
        raise UsageError(f"{flag}: endpoints must lie in [0, 1]")
    if start > stop:
        raise UsageError(f"{flag}: empty range {text!r}")
    count = math.floor((stop - start) / step + 1e-9) + 1
    return [min(1.0, max(0.0, start + i * step)) for i in range(count)]


def cmd_capacity(args) -> int:
    p = _unit_flag(args.p, "--p")
    if args.channel == "depolarizing":
        if args.use == "quantum":
            result = analysis.maximize_capacity(
                lambda q: depolarizing.analytic_transcript(DepolParams(p, q)), args.tol
            )
            closed = depolarizing.quantum_capacity(p)
        else:
            result = analysis.maximize_scalar_on_unit_interval(
                lambda q: depolarizing.classical_use_transcript(DepolParams(p, q))[0],
                args.tol,
            )
            closed = depolarizing.classical_capacity(p)
    else:
        kraus = depolarizing.dephasing_kraus(p)
        if args.use == "quantum":
            result = analysis.maximize_capacity(
                lambda q: run_channel(kraus, _diag_qubit(q)), args.tol
            )
            closed = depolarizing.dephasing_mutual(p)
        else:
            result = analysis.maximize_scalar_on_unit_interval(
                lambda q: depolarizing.classical_use_channel_simulation(kraus, q)[0],
                args.tol,
            )
            closed = 1.0  # dephasing is lossless for classical bits
    print(f"channel: {args.channel}")
    print(f"use: {args.use}")
    print(f"p: {_fmt(p)}")
    print(f"capacity: {_fmt(result.value)}")
    print(f"argmax_q: {_fmt(result.argmax_q)}")
    print(f"closed_form: {_fmt(closed)}")
    print(f"evaluations: {result.evaluations}")
    if args.channel == "depolarizing" and p > 0.75:
        print("note: p exceeds 3/4, beyond the fully depolarizing point")
    return 0


def cmd_sweep(args) -> int:
    p_values = _parse_range(args.p_range, "--p-range")
    q_values = _parse_range(args.q_range, "--q-range")
    if args.use == "quantum":
        print("p,q,S,S_prime,S_env,loss,I_Q,fidelity")
        for p in p_values:
            dephasing = (
                depolarizing.dephasing_kraus(p) if args.channel == "dephasing" else None
            )
            for q in q_values:
                if dephasing is None:
                    t = depolarizing.analytic_transcript(DepolParams(p, q))
                else:
                    t = run_channel(dephasing, _diag_qubit(q))
                row = (
                    p, q, t.s_in, t.s_out, t.s_env,
                    t.loss, t.mutual_entanglement, t.fidelity,
                )
                print(",".join(_fmt(v) for v in row))
    else:
        print("p,q,mutual,loss")
        for p in p_values:
            dephasing = (
                depolarizing.dephasing_kraus(p) if args.channel == "dephasing" else None
            )
            for q in q_values:
                if dephasing is None:
                    mutual, loss = depolarizing.classical_use_transcript(DepolParams(p, q))
                else:
                    mutual, loss = depolarizing.classical_use_channel_simulation(dephasing, q)
                print(",".join(_fmt(v) for v in (p, q, mutual, loss)))
    return 0


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("VN_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"VN_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def cmd_audit(args) -> int:
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    if args.tol <= 0.0:
        raise UsageError(f"--tol must be positive, got {args.tol!r}")
    report = analysis.audit_inequalities(_resolve_seed(args), args.trials, args.tol)
    payload = {
        "trials": report.trials,
        "violations": [
            [key, params, slack] for key, params, slack in report.violations
        ],
        "max_negative_slack": report.max_negative_slack,
    }
    print(json.dumps(payload))
    return 1 if report.violations else 0


def cmd_hamming(args) -> int:
    finite_flags = (args.n, args.k, args.t)
    have_finite = any(v is not None for v in finite_flags)
    if have_finite and any(v is None for v in finite_flags):
        raise UsageError("--n, --k and --t must be given together")
    if not have_finite and args.p is None:
        raise UsageError("provide --p for rates and/or --n/--k/--t for a finite check")
    print(f"mode: {args.mode}")
    if have_finite:
        try:
            query = analysis.HammingQuery(args.n, args.k, args.t, args.mode)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        holds, slack = analysis.hamming_holds(query)
        verdict = "yes" if holds else "no"
        print(f"n={args.n} k={args.k} t={args.t} holds={verdict} slack={_fmt(slack)}")
    if args.p is not None:
        p = _unit_flag(args.p, "--p")
        print(f"rate_bound: {_fmt(analysis.rate_bound(p, args.mode))}")
        try:
            n_list = [int(v) for v in args.n_list.split(",") if v]
        except ValueError as exc:
            raise UsageError(f"--n-list: {exc}") from None
        try:
            rows = analysis.asymptotic_consistency(p, n_list, args.mode)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        for row in rows:
            print(f"n={row.n} t={row.t} k={row.k_max} rate={_fmt(row.rate)}")
    return 0


def cmd_superdense(args) -> int:
    if args.p is None and not args.threshold:
        raise UsageError("provide --p and/or --threshold")
    if args.p is not None:
        p = _unit_flag(args.p, "--p")
        report = depolarizing.superdense_scenario(p)
        print(f"p: {_fmt(p)}")
        print(f"conditional_mutual: {_fmt(report.conditional_mutual)}")
        print(f"kholevo_chi: {_fmt(report.kholevo_chi)}")
    print(f"threshold_p: {_fmt(depolarizing.superdense_threshold())}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vncap",
        description="Entropy transcripts, capacities, and bounds for noisy qubit channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cap = sub.add_parser("capacity", help="maximize mutual information over the input mix q")
    cap.add_argument("--channel", choices=("depolarizing", "dephasing"), default="depolarizing")
    cap.add_argument("--use", choices=("quantum", "classical"), default="quantum")
    cap.add_argument("--p", type=float, required=True, help="error probability")
    cap.add_argument("--tol", type=float, default=1e-10, help="optimizer tolerance on q")
    cap.set_defaults(func=cmd_capacity)

    sweep = sub.add_parser("sweep", help="emit a (p, q) grid of transcripts as CSV")
    sweep.add_argument("--channel", choices=("depolarizing", "dephasing"), default="depolarizing")
    sweep.add_argument("--use", choices=("quantum", "classical"), default="quantum")
    sweep.add_argument("--p-range", default=DEFAULT_P_RANGE, help="start:stop:step")
    sweep.add_argument("--q-range", default=DEFAULT_Q_RANGE, help="start:stop:step")
    sweep.set_defaults(func=cmd_sweep)

    audit = sub.add_parser("audit", help="randomized inequality audit, JSON report")
    audit.add_argument("--trials", type=int, default=200)
    audit.add_argument("--seed", type=int, default=None, help="defaults to VN_SEED or 42")
    audit.add_argument("--tol", type=float, default=1e-9)
    audit.set_defaults(func=cmd_audit)

    ham = sub.add_parser("hamming", help="sphere-packing verdicts and rate bounds")
    ham.add_argument("--mode", choices=("classical", "quantum", "entanglement"), required=True)
    ham.add_argument("--p", type=float, default=None, help="error probability for rates")
    ham.add_argument("--n", type=int, default=None)
    ham.add_argument("--k", type=int, default=None)
    ham.add_argument("--t", type=int, default=None)
    ham.add_argument("--n-list", default=DEFAULT_N_LIST, help="comma-separated block lengths")
    ham.set_defaults(func=cmd_hamming)

    sup = sub.add_parser("superdense", help="noisy superdense-coding report")
    sup.add_argument("--p", type=float, default=None, help="error probability")
    sup.add_argument("--threshold", action="store_true", help="print only the break-even p")
    sup.set_defaults(func=cmd_superdense)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
