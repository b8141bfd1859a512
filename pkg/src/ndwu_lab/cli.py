"""Command-line interface.

Subcommands: check, aqc, sweep, verify, table1, emit.  Exit codes are a
stable contract: 0 success / criterion satisfied, 2 criterion violated
(check), 1 usage or input error.  Randomized subcommands require an
explicit --seed; there is no wall-clock default.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .behavior import DEFAULT_TOL, Behavior
from .errors import MismatchWithPaper, NdwuError
from . import boxes, criteria, kernels, ndwu, verify


def _default_tol() -> float:
    env = os.environ.get("NDWU_LAB_TOL")
    return float(env) if env else DEFAULT_TOL


def _print_json(obj):
    print(json.dumps(obj, indent=2, default=_jsonable))


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.bool_):
        return bool(x)
    raise TypeError(f"not JSON-serializable: {type(x)}")


def cmd_check(args) -> int:
    try:
        with open(args.behavior_file) as fh:
            behavior = Behavior.from_json(fh.read())
    except (OSError, ValueError, NdwuError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = ndwu.criterion(behavior, tol=args.tol)
    _print_json({
        "criterion": report.to_dict(),
        "chsh": behavior.chsh(),
        "npa_tlm": criteria.npa_tlm(behavior, tol=args.tol),
        "backend": kernels.BACKEND,
    })
    return 0 if report.overall else 2


def cmd_aqc(args) -> int:
    box = boxes.aqc_behavior(swap_joint_order=args.swap_joint_order)
    report = ndwu.criterion(box, tol=args.tol)
    side = report.side_a
    out = {
        "swap_joint_order": args.swap_joint_order,
        "max_lhs": side.max_lhs,
        "min_rhs": side.min_rhs,
        "max_lhs_rounded": round(side.max_lhs, 2),
        "min_rhs_rounded": round(side.min_rhs, 2),
        "verdict": "VIOLATED" if not report.overall else "SATISFIED",
        "criterion": report.to_dict(),
    }
    _print_json(out)
    if not args.swap_joint_order:
        if (out["max_lhs_rounded"], out["min_rhs_rounded"]) != (0.44, -0.25):
            print(
                "error: rounded values differ from the published 0.44 / -0.25; "
                "try --swap-joint-order to diagnose the joint-entry mapping",
                file=sys.stderr,
            )
            return 1
    return 0


_SLICES = {
    "tau0": ("alpha", "beta"),
    "beta0": ("alpha", "tau"),
    "full": ("alpha", "beta", "tau"),
}


def cmd_sweep(args) -> int:
    if args.slice not in _SLICES:
        print(f"error: unknown slice {args.slice!r}", file=sys.stderr)
        return 1
    res = args.res
    if len(res) == 1:
        res = res * len(_SLICES[args.slice])
    if len(res) != len(_SLICES[args.slice]) or min(res) < 2:
        print("error: need one resolution >= 2 per swept axis", file=sys.stderr)
        return 1
    axes = {"alpha": np.array([0.0]), "beta": np.array([0.0]), "tau": np.array([0.0])}
    for name, n in zip(_SLICES[args.slice], res):
        axes[name] = np.linspace(0.0, 1.0, n)
    names = args.criteria.split(",")
    try:
        ds = criteria.sweep_grid(names, axes["alpha"], axes["beta"], axes["tau"],
                                 tol=args.tol)
        ds.to_csv(args.out)
    except (NdwuError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {ds.params.shape[0]} rows x {len(ds.criteria)} criteria to {args.out}")
    return 0


def cmd_verify(args) -> int:
    dims = [int(d) for d in args.dims.split(",")]
    if not all(2 <= d <= 8 for d in dims) or args.trials < 1:
        print("error: dims must lie in [2, 8] and trials must be >= 1", file=sys.stderr)
        return 1
    if args.kind == "theorem1":
        out = verify.theorem1_campaign(args.trials, dims, args.seed, tol=args.tol)
    elif args.kind == "symmetry":
        out = verify.symmetry_campaign(args.trials, dims, args.seed)
    elif args.kind == "tsirelson":
        out = verify.tsirelson_campaign(args.trials, args.seed, tol=args.tol)
    elif args.kind == "quantum-criterion":
        out = verify.quantum_criterion_campaign(args.trials, args.seed, tol=args.tol)
    else:
        print(f"error: unknown kind {args.kind!r}", file=sys.stderr)
        return 1
    _print_json(out)
    return 0 if out["passed"] else 1


def cmd_table1(args) -> int:
    out = verify.table_one(seed=args.seed, trials=args.trials, tol=args.tol)
    width = max(len(r) for r in out["rows"]) + 2
    print(" " * width + "  ".join(f"{c:>4}" for c in out["columns"]))
    for row, cells in zip(out["rows"], out["grid"]):
        print(f"{row:<{width}}" + "  ".join(f"{c:>4}" for c in cells))
    if out["mismatches"]:
        for m in out["mismatches"]:
            print(
                f"error: cell ({m['row']}, {m['column']}) computed {m['computed']}, "
                f"published {m['expected']}",
                file=sys.stderr,
            )
        return 1
    print("all cells match the published table")
    return 0


def _parse_box(spec: str) -> Behavior:
    if spec == "uniform":
        return boxes.uniform_box()
    if spec == "pr":
        return boxes.pr_box()
    if spec == "pr-prime":
        return boxes.pr_prime_box()
    if spec == "aqc":
        return boxes.aqc_behavior()
    kind, _, rest = spec.partition(":")
    parts = rest.split(",") if rest else []
    if kind == "nl" and len(parts) == 3:
        return boxes.nonlocal_box(*(int(p) for p in parts))
    if kind == "local" and len(parts) == 4:
        return boxes.local_box(*(int(p) for p in parts))
    if kind == "family" and len(parts) == 3:
        return boxes.noisy_family(boxes.FamilyPoint(*(float(p) for p in parts)))
    raise ValueError(
        f"unknown box {spec!r}; use uniform, pr, pr-prime, aqc, nl:t,s,l, "
        "local:t,s,l,v, or family:alpha,beta,tau"
    )


def cmd_emit(args) -> int:
    try:
        box = _parse_box(args.box)
    except (ValueError, NdwuError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = box.to_json()
    if args.out == "-":
        print(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ndwu-lab",
        description="Uncertainty-disturbance criteria for no-signaling behaviors",
    )
    parser.add_argument("--tol", type=float, default=_default_tol(),
                        help="numerical tolerance (env NDWU_LAB_TOL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the criterion on a behavior JSON file")
    p.add_argument("behavior_file")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("aqc", help="reproduce the almost-quantum exclusion numbers")
    p.add_argument("--swap-joint-order", action="store_true",
                   help="diagnostic: swap the (1,0)/(0,1) joint-probability entries")
    p.set_defaults(fn=cmd_aqc)

    p = sub.add_parser("sweep", help="emit a boundary-verdict CSV over a parameter grid")
    p.add_argument("--slice", default="beta0", choices=sorted(_SLICES))
    p.add_argument("--res", type=int, nargs="+", default=[400])
    p.add_argument("--criteria", default="ndwu,npa,ic")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("verify", help="run a fuzzing / stress campaign")
    p.add_argument("--kind", required=True,
                   choices=["theorem1", "symmetry", "tsirelson", "quantum-criterion"])
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--dims", default="2,3,4,5")
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("table1", help="reproduce the criterion-comparison table")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=2000)
    p.set_defaults(fn=cmd_table1)

    p = sub.add_parser("emit", help="write a zoo box as a behavior JSON document")
    p.add_argument("--box", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_emit)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return 1
    try:
        return args.fn(args)
    except MismatchWithPaper as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
