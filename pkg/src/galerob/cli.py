"""Command-line interface: ``galerob <command> --a A --c C --N N ...``.

Exit status is 0 on success, 1 when a verification or orbit step fails and
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import degreeset as ds
from .errors import GaleRobinsonError
from .laurent import gr_integers, gr_sequence, sequence_csv
from .quiver import GRParams, build_quiver, export_dot
from .theta import TABLE, theta_orbit, track_mutation_sequence
from .verify import run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _params(args) -> GRParams:
    if args.a is None or args.c is None or args.N is None:
        raise UsageError("--a, --c and --N are required")
    return GRParams(args.a, args.c, args.N)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    return int(os.environ.get("GALEROB_THREADS", "1") or 1)


def _emit(text: str, path: str | None, out) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


def _load_set(path: str) -> ds.DegreeSet:
    with open(path) as fh:
        return ds.DegreeSet.from_json(fh.read())


def cmd_quiver(args, out) -> int:
    q = build_quiver(_params(args))
    census = q.census()
    out.write(f"{len(q.arrows)} arrows on {q.N} vertices\n")
    for (i, j), m in sorted(census.items()):
        kinds = ",".join(ar.kind.name for ar in q.arrows if ar.source == i and ar.target == j)
        out.write(f"{i}->{j} x{m} ({kinds})\n")
    if args.output:
        _emit(q.to_json() + "\n", args.output, out)
    if args.dot:
        _emit(export_dot(q), args.dot, out)
    return EXIT_OK


def _parse_spec(text: str, n: int) -> list[int]:
    body = text.split("=", 1)[1] if "=" in text else text
    values = [int(v) for v in body.split(",") if v.strip()]
    if len(values) == 1:
        values *= n
    if len(values) != n:
        raise UsageError(f"--spec needs 1 or {n} values")
    return values


def cmd_sequence(args, out) -> int:
    p = _params(args)
    lo, hi = args.lo, args.hi
    if args.symbolic:
        seq = gr_sequence(p, min(lo, 1), max(hi, p.N))
        text = "".join(f"x{i} = {seq[i]}\n" for i in range(lo, hi + 1))
    else:
        init = _parse_spec(args.spec, p.N)
        vals = gr_integers(p, min(lo, 1), max(hi, p.N), init)
        text = sequence_csv({i: vals[i] for i in range(lo, hi + 1)})
    _emit(text, args.output, out)
    return EXIT_OK


def _predicate_report(S: ds.DegreeSet) -> dict:
    closed, triple = ds.is_interval_closed(S)
    sturdy, lam = ds.is_sturdy(S)
    return {
        "size": len(S),
        "interval_closed": closed,
        "interval_witness": [list(x) for x in triple] if triple else None,
        "connected": ds.is_connected(S),
        "sturdy": sturdy,
        "sturdy_witness": list(lam) if lam else None,
        "dimension_vector": list(S.dimension_vector()),
    }


def cmd_poset(args, out) -> int:
    p = _params(args)
    if args.cyclic:
        v_text, vbar_text, mu_text = args.cyclic
        vbar = [int(x) for x in vbar_text.replace("{", "").replace("}", "").split(",") if x.strip()]
        S = ds.build_cyclic(p, int(v_text), vbar, ds.parse_weight(mu_text), budget=args.budget)
    elif args.j is not None:
        S = ds.build_Sj(p, args.j)
    else:
        raise UsageError("poset needs --j or --cyclic")
    _emit(S.to_json() + "\n", args.output, out)
    sys.stderr.write(json.dumps(_predicate_report(S)) + "\n")
    return EXIT_OK


def cmd_fpoly(args, out) -> int:
    if args.input:
        S = _load_set(args.input)
        if args.side not in (ds.FILTERS, ds.IDEALS):
            raise UsageError("with --input, --side must be filters or ideals")
        side = args.side
    else:
        if args.j is None:
            raise UsageError("fpoly needs --j or --input")
        S = ds.build_Sj(_params(args), args.j)
        sides = {"pos": ds.IDEALS, "neg": ds.FILTERS}
        if args.side not in sides:
            raise UsageError("with --j, --side must be pos or neg")
        side = sides[args.side]
    _emit(ds.f_polynomial(S, side).to_text("y") + "\n", args.output, out)
    return EXIT_OK


def cmd_theta(args, out) -> int:
    S = _load_set(args.input)
    k = -args.steps if args.inverse else args.steps
    report = theta_orbit(S, k, allow_disconnected=args.allow_disconnected)
    data = report.to_dict()
    if args.sequence:
        direction = "theta_inverse" if args.inverse else "theta"
        seq = [int(x) for x in args.sequence.split(",")]
        data["mutation_sequences"] = [
            track_mutation_sequence(seq, direction, n=S.N, steps=i)
            for i in range(1, args.steps + 1)
        ]
    _emit(json.dumps(data, indent=2) + "\n", args.output, out)
    return EXIT_FAIL if report.failure else EXIT_OK


def _faulty_table(column: int):
    if not 1 <= column <= len(TABLE):
        raise UsageError(f"table column must be in 1..{len(TABLE)}")
    return tuple(col for i, col in enumerate(TABLE, start=1) if i != column)


def cmd_verify(args, out) -> int:
    p = _params(args)
    table = _faulty_table(args.inject_table_fault) if args.inject_table_fault else TABLE
    reports = run_suite(p, jmax=args.jmax, brute_cap=args.brute_cap, threads=_threads(args), table=table)
    data = {"params": p.to_dict(), "jmax": args.jmax, "checks": [r.to_dict() for r in reports]}
    for r in reports:
        sys.stderr.write(f"{r.check}: {r.status}\n")
    _emit(json.dumps(data, indent=2) + "\n", args.output, out)
    return EXIT_FAIL if any(r.status == "fail" for r in reports) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=int)
    common.add_argument("--c", type=int)
    common.add_argument("--N", type=int)
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes for enumeration (default: $GALEROB_THREADS or 1)")
    common.add_argument("-o", "--output", help="write the main output here instead of stdout")

    parser = argparse.ArgumentParser(prog="galerob", description="Gale-Robinson quivers and degree sets")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("quiver", parents=[common], help="build a quiver, print its arrow census")
    sp.add_argument("--dot", help="write a DOT export to this file")
    sp.set_defaults(func=cmd_quiver)

    sp = sub.add_parser("sequence", parents=[common], help="evaluate the recurrence")
    sp.add_argument("--lo", type=int, default=1)
    sp.add_argument("--hi", type=int, required=True)
    sp.add_argument("--spec", default="1", help="initial values: one value, or N comma-separated")
    sp.add_argument("--symbolic", action="store_true", help="print Laurent polynomials")
    sp.set_defaults(func=cmd_sequence)

    sp = sub.add_parser("poset", parents=[common], help="build a degree set")
    sp.add_argument("--j", type=int)
    sp.add_argument("--cyclic", nargs=3, metavar=("V", "VBAR", "MU"))
    sp.add_argument("--budget", type=int, default=ds.DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_poset)

    sp = sub.add_parser("fpoly", parents=[common], help="F-polynomial of a degree set")
    sp.add_argument("--j", type=int)
    sp.add_argument("--input")
    sp.add_argument("--side", required=True, help="pos|neg with --j, filters|ideals with --input")
    sp.set_defaults(func=cmd_fpoly)

    sp = sub.add_parser("theta", parents=[common], help="iterate the operator on a degree set")
    sp.add_argument("--input", required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--inverse", action="store_true")
    sp.add_argument("--allow-disconnected", action="store_true")
    sp.add_argument("--sequence", help="mutation sequence of the input, e.g. 2")
    sp.set_defaults(func=cmd_theta)

    sp = sub.add_parser("verify", parents=[common], help="run the cross-verification suite")
    sp.add_argument("--jmax", type=int, default=8)
    sp.add_argument("--brute-cap", type=int, default=15)
    sp.add_argument("--inject-table-fault", type=int, metavar="COLUMN", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, GaleRobinsonError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
