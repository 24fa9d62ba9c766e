"""Command line interface.

Exit codes: 0 success (and "yes" for decide), 1 decide answered no,
2 bad input or a refused resource limit, 3 an internal check failed.
JSON output is byte stable across runs: keys are sorted and separators
fixed, so identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import (
    CommutationCertificate,
    classification_table,
    d_hook,
    decide,
    enumerate_commuting,
    witness,
)
from .commutant import HookType
from .errors import (
    BadPrimeError,
    NotNilpotentError,
    ResourceLimitError,
    UnsupportedHookError,
    VerificationError,
    WitnessUnavailableError,
)
from .linalg import ExactMatrix, jordan_type_of
from .oracle import GridSpec, oracle_report, sample_generic
from .partitions import Partition, is_universally_commuting

_INPUT_ERRORS = (
    ValueError,
    UnsupportedHookError,
    NotNilpotentError,
    ResourceLimitError,
    OSError,
    json.JSONDecodeError,
)
_INTERNAL_ERRORS = (VerificationError, WitnessUnavailableError, BadPrimeError)


def _parse_hook(text: str) -> HookType:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"hook must be 'n,m', got {text!r}")
    return HookType(int(parts[0]), int(parts[1]))


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit(args, obj, text_lines) -> None:
    if args.format == "json":
        print(_dump_json(obj))
    else:
        for line in text_lines:
            print(line)


def _cert_tag(cert: CommutationCertificate) -> str:
    return f"{cert.case}(k={cert.k})"


def _cmd_decide(args) -> int:
    hook = _parse_hook(args.hook)
    Q = Partition.parse(args.q)
    certs = decide(hook, Q)
    obj = {
        "hook": [hook.n, hook.m],
        "q": list(Q.parts),
        "commutes": bool(certs),
        "certificates": [c.to_obj() for c in certs],
    }
    if certs:
        lines = [f"{Q.compact()} commutes with {hook}"]
        lines += [f"  case {c.case}  k={c.k}  mu={c.mu.compact()}" for c in certs]
    else:
        lines = ["NO"]
    _emit(args, obj, lines)
    return 0 if certs else 1


def _cmd_enumerate(args) -> int:
    hook = _parse_hook(args.hook)
    types = enumerate_commuting(hook)
    if args.exclude_universal:
        types = [Q for Q in types if not is_universally_commuting(Q)]
    by_case = {"a": [], "b": [], "c": []}
    rows = []
    for Q in types:
        certs = decide(hook, Q)
        rows.append({"type": list(Q.parts), "certificates": [c.to_obj() for c in certs]})
        for case in by_case:
            if any(c.case == case for c in certs):
                by_case[case].append(Q)
    obj = {
        "hook": [hook.n, hook.m],
        "count": len(types),
        "types": rows,
        "by_case": {k: [list(Q.parts) for Q in v] for k, v in by_case.items()},
        "max": list(d_hook(hook).parts),
    }
    lines = [f"{len(types)} commuting types for {hook} (max {d_hook(hook).compact()})"]
    for case in ("a", "b", "c"):
        shown = " ".join(Q.compact() for Q in by_case[case]) or "-"
        lines.append(f"  {case}: {shown}")
    _emit(args, obj, lines)
    return 0


def _cmd_witness(args) -> int:
    hook = _parse_hook(args.hook)
    Q = Partition.parse(args.q)
    certs = decide(hook, Q)
    if not certs:
        print(f"error input: {Q.compact()} does not commute with {hook}", file=sys.stderr)
        return 1
    cert = certs[0]
    A = witness(hook, cert)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_dump_json(A.to_obj()))
            fh.write("\n")
        obj = {
            "hook": [hook.n, hook.m],
            "q": list(Q.parts),
            "certificate": cert.to_obj(),
            "out": args.out,
        }
        lines = [f"witness for {Q.compact()} written to {args.out}"]
    else:
        obj = {
            "hook": [hook.n, hook.m],
            "q": list(Q.parts),
            "certificate": cert.to_obj(),
            "matrix": A.to_obj(),
        }
        lines = [f"witness for {Q.compact()} via case {cert.case}, k={cert.k}"]
        for row in A.rows:
            lines.append("  " + " ".join(str(x) for x in row))
    _emit(args, obj, lines)
    return 0


def _cmd_jordan(args) -> int:
    with open(args.matrix, encoding="utf-8") as fh:
        A = ExactMatrix.from_json(fh.read())
    report = jordan_type_of(A)
    obj = report.to_obj()
    lines = [
        f"jordan type      {report.jordan_type.compact()}",
        f"nilpotency index {report.nilpotency_index}",
        f"rank sequence    {' '.join(str(r) for r in report.rank_sequence)}",
    ]
    _emit(args, obj, lines)
    return 0


def _cmd_table(args) -> int:
    rows = classification_table(args.N, include_universal=args.include_universal)
    obj = {
        "N": args.N,
        "rows": [
            {
                "hook": [r["hook"].n, r["hook"].m],
                "a": [list(Q.parts) for Q in r["a"]],
                "b": [list(Q.parts) for Q in r["b"]],
                "c": [list(Q.parts) for Q in r["c"]],
                "non_commuting": [list(Q.parts) for Q in r["non_commuting"]],
            }
            for r in rows
        ],
    }
    lines = [f"hooks of size {args.N}"]
    for r in rows:
        lines.append(f"{r['hook']}")
        for case in ("a", "b", "c"):
            shown = " ".join(Q.compact() for Q in r[case]) or "-"
            lines.append(f"  {case}: {shown}")
        shown = " ".join(Q.compact() for Q in r["non_commuting"]) or "-"
        lines.append(f"  none: {shown}")
    _emit(args, obj, lines)
    return 0


def _cmd_generic(args) -> int:
    P = Partition.parse(args.p)
    winner = sample_generic(P, trials=args.trials, seed=args.seed, bound=args.bound)
    obj = {
        "p": list(P.parts),
        "trials": args.trials,
        "seed": args.seed,
        "bound": args.bound,
        "type": list(winner.parts),
    }
    _emit(args, obj, [f"generic commuting type of {P.compact()}: {winner.compact()}"])
    return 0


def _cmd_oracle(args) -> int:
    hook = _parse_hook(args.hook)
    values = tuple(int(v) for v in args.values.split(","))
    grid = GridSpec(values=values, max_points=args.max_points)
    report = oracle_report(hook, grid, exact=args.exact)
    clean = report["missing_vs_theorem"] == [] and report["extra_vs_theorem"] == []
    obj = {
        "hook": [hook.n, hook.m],
        "grid": list(grid.values),
        "attained": [list(Q.parts) for Q in report["attained"]],
        "missing_vs_theorem": [list(Q.parts) for Q in report["missing_vs_theorem"]],
        "extra_vs_theorem": [list(Q.parts) for Q in report["extra_vs_theorem"]],
    }
    lines = [f"{len(report['attained'])} types attained on the grid for {hook}"]
    for Q in report["attained"]:
        lines.append(f"  {Q.compact()}")
    if report["missing_vs_theorem"]:
        lines.append(
            "missing: " + " ".join(Q.compact() for Q in report["missing_vs_theorem"])
        )
    if report["extra_vs_theorem"]:
        lines.append(
            "extra: " + " ".join(Q.compact() for Q in report["extra_vs_theorem"])
        )
    lines.append("oracle agrees with the classification" if clean else "MISMATCH")
    _emit(args, obj, lines)
    return 0 if clean else 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hookcomm",
        description="Jordan types in the nilpotent commutator of a hook nilpotent matrix",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="does Q occur in the nilpotent commutant of the hook")
    p.add_argument("--hook", required=True, help="hook as n,m meaning (n,1^m)")
    p.add_argument("--q", required=True, help="candidate type, comma separated parts")
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("enumerate", help="all commuting types for a hook")
    p.add_argument("--hook", required=True)
    p.add_argument("--exclude-universal", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("witness", help="explicit commuting matrix of a given type")
    p.add_argument("--hook", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--out", help="write the matrix JSON to this file")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("jordan", help="jordan type of a rational matrix from a JSON file")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=_cmd_jordan)

    p = sub.add_parser("table", help="classification table for every hook of one size")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--include-universal", action="store_true")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("generic", help="sampled maximum commuting type of any nilpotent type")
    p.add_argument("--p", required=True, help="type, comma separated parts")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=10)
    p.set_defaults(func=_cmd_generic)

    p = sub.add_parser("oracle", help="exhaustive grid check against the classification")
    p.add_argument("--hook", required=True)
    p.add_argument("--values", default="-1,0,1")
    p.add_argument("--max-points", type=int, default=2_000_000)
    p.add_argument("--exact", action="store_true")
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _INTERNAL_ERRORS as exc:
        print(f"error {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except _INPUT_ERRORS as exc:
        print(f"error {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
