"""Command line front end: emit, verify, exponents, reduce, taylor."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .chevalley import (FAMILIES, build_rep, family_kind, matrix_from_json,
                        matrix_to_json, normalize_family, parameter_matrix)
from .gauge import reduce_to_complement
from .jets import parse_scalar
from .operators import (DEFAULT_CYCLIC_INDEX, diffrat_latex, find_cyclic_index,
                        matrix_to_scalar, reference_operator,
                        reference_operator_latex)
from .roots import build_root_system, normalize_kind, supported_systems
from .series import JetPoint, matrix_jets, taylor_solution
from .verify import run_suite


def _matrix_text(mat) -> str:
    cells = [[str(e) for e in row] for row in mat]
    widths = [max(len(cells[i][j]) for i in range(len(cells)))
              for j in range(len(cells[0]))]
    lines = []
    for row in cells:
        lines.append("[ " + "  ".join(c.rjust(w) for c, w in zip(row, widths)) + " ]")
    return "\n".join(lines)


def _matrix_latex(mat) -> str:
    rows = [" & ".join(diffrat_latex(e) if e else "0" for e in row) for row in mat]
    body = " \\\\\n".join(rows)
    return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}"


def _cmd_emit(args) -> int:
    family = normalize_family(args.family)
    kind = family_kind(family, args.kind)
    rank = args.rank
    mat = parameter_matrix(kind, rank, family)
    if args.scalar:
        if family == "ms":
            op = matrix_to_scalar(mat, find_cyclic_index(mat))
        else:
            op = matrix_to_scalar(mat, DEFAULT_CYCLIC_INDEX[family])
        if args.format == "text":
            print(op)
        elif args.format == "latex":
            if family == "ms":
                print(op.latex())
            else:
                print(reference_operator_latex(kind, rank))
        else:
            print(json.dumps(op.to_json(), indent=2))
    else:
        if args.format == "text":
            print(_matrix_text(mat))
        elif args.format == "latex":
            print(_matrix_latex(mat))
        else:
            print(json.dumps(matrix_to_json(mat, kind, rank), indent=2))
    return 0


def _cmd_exponents(args) -> int:
    rows = []
    for kind, rank in supported_systems(args.max_rank):
        rs = build_root_system(kind, rank)
        rows.append({
            "kind": kind,
            "rank": rank,
            "census": rs.census(),
            "exponents": rs.exponents(),
        })
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'type':>6} {'census c_k':<28} exponents")
        for r in rows:
            label = f"{r['kind']}{r['rank']}"
            print(f"{label:>6} {str(r['census']):<28} {r['exponents']}")
    return 0


def _cmd_verify(args) -> int:
    report = run_suite(args.suite, max_rank=args.max_rank, seed=args.seed)
    if args.format == "json":
        print(json.dumps(report.to_json(with_timings=not args.no_timings), indent=2))
    else:
        print(report.to_text())
    return 0 if report.passed else 1


def _cmd_reduce(args) -> int:
    if args.input == "-":
        data = json.load(sys.stdin)
    else:
        with open(args.input) as fh:
            data = json.load(fh)
    kind = normalize_kind(data["kind"])
    rank = int(data["rank"])
    rep = build_rep(kind, rank)
    mat = matrix_from_json(data)
    if "complement" in data:
        gammas = [rep.rs.root(c) for c in data["complement"]]
    else:
        gammas = rep.rs.closed_form_complementary_roots()
    u, b = reduce_to_complement(mat, rep, gammas, args.polarity)
    out = {
        "u": matrix_to_json(u.matrix, kind, rank),
        "B": matrix_to_json(b, kind, rank),
        "factors": [[list(beta.coords), str(rho)] for beta, rho in u.factors],
        "complement": [list(g.coords) for g in gammas],
        "polarity": args.polarity,
    }
    print(json.dumps(out, indent=2))
    return 0


def _parse_point(text: str, width: int, depth: int) -> JetPoint:
    """--point accepts {"t1": ["1", "0", ...], ...}; missing jets are zero."""
    data = json.loads(text)
    rows: List[List] = [[] for _ in range(width)]
    for key, values in data.items():
        if not key.startswith("t"):
            raise ValueError(f"bad jet key {key!r}")
        idx = int(key[1:])
        if not 1 <= idx <= width:
            raise ValueError(f"jet key {key!r} out of range 1..{width}")
        rows[idx - 1] = [parse_scalar(str(v)) for v in values]
    return JetPoint.from_rows(rows).padded(width, depth)


def _cmd_taylor(args) -> int:
    if args.input:
        with open(args.input) as fh:
            data = json.load(fh)
        mat = matrix_from_json(data)
        label = {"kind": data.get("kind"), "rank": data.get("rank")}
    else:
        family = normalize_family(args.family)
        kind = family_kind(family, args.kind)
        mat = parameter_matrix(kind, args.rank, family)
        label = {"kind": kind, "rank": args.rank, "family": family}
    width, depth = matrix_jets(mat)
    width = max(width, 1)
    need = depth + args.order + 1
    if args.point:
        point = _parse_point(args.point, width, need)
    else:
        point = JetPoint.from_rows([[]] * width).padded(width, need)
    series = taylor_solution(mat, point, args.order)
    out = dict(label)
    out["order"] = args.order
    out["coefficients"] = series.to_json()
    print(json.dumps(out, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paramode",
        description="Exact parameter differential equations for the classical "
                    "groups and G2: emit the matrices and scalar operators, "
                    "and verify the computational claims behind them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("emit", help="print a parameter matrix or scalar operator")
    p.add_argument("--family", required=True,
                   help=f"one of {', '.join(FAMILIES)} (or a type letter a/b/c/d)")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--kind", help="Lie type for --family ms (A, B, C, D, G2)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--matrix", action="store_true", default=True,
                       help="print the parameter matrix (default)")
    group.add_argument("--scalar", dest="scalar", action="store_true",
                       help="print the scalar operator instead")
    p.add_argument("--format", choices=("text", "latex", "json"), default="text")
    p.set_defaults(func=_cmd_emit, scalar=False)

    p = sub.add_parser("exponents", help="height census and exponents table")
    p.add_argument("--max-rank", type=int, default=8)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_exponents)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", default="all",
                   choices=("exponents", "roots", "decomposition", "gauge",
                            "scalarize", "adjoint", "taylor", "properties", "all"))
    p.add_argument("--max-rank", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-timings", action="store_true",
                   help="omit timings from JSON output")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("reduce", help="gauge a matrix onto the complementary plane")
    p.add_argument("--input", default="-",
                   help="path to a matrix JSON file, or - for stdin")
    p.add_argument("--polarity", choices=("standard", "flipped"), default="flipped")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("taylor", help="truncated series solution as JSON")
    p.add_argument("--family")
    p.add_argument("--rank", type=int)
    p.add_argument("--kind")
    p.add_argument("--input", help="matrix JSON file instead of --family/--rank")
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--point",
                   help='jet values as JSON, e.g. {"t1": ["1", "0"]}; missing jets are 0')
    p.set_defaults(func=_cmd_taylor)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "taylor" and not args.input and (not args.family or not args.rank):
        parser.error("taylor needs --family and --rank, or --input")
    try:
        return args.func(args)
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
