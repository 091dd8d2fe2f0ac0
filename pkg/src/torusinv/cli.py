"""``torusinv`` command line: class tables, verification sweeps, decompositions."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any

import numpy as np

from torusinv import stdecomp, tori, verify, weyl
from torusinv.truncpoly import restriction_violation
from torusinv.weyl import Family, GroupSpec, WeylClassLabel


# ---------------------------------------------------------------------------
# encoding


def encode(obj: Any) -> Any:
    """JSON-ready copy of ``obj``; rationals become ``{"num": .., "den": ..}``."""
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, Family):
        return obj.value
    if isinstance(obj, WeylClassLabel):
        return str(obj)
    if isinstance(obj, dict):
        return {str(encode(k)): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode(obj: Any) -> Any:
    """Inverse of :func:`encode` for rationals."""
    if isinstance(obj, dict):
        if set(obj) == {"num", "den"}:
            return Fraction(obj["num"], obj["den"])
        return {k: decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode(x) for x in obj]
    return obj


def emit_json(obj) -> str:
    return json.dumps(encode(obj), indent=2, sort_keys=False) + "\n"


def emit_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_value(v) for v in row])
    return buf.getvalue()


def _csv_value(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(encode(v), separators=(",", ":"))
    return "" if v is None else v


# ---------------------------------------------------------------------------
# subcommands


def classes_report(spec: GroupSpec) -> dict:
    rows = []
    for label in weyl.enumerate_classes(spec):
        torus = tori.build_canonical_torus(spec, label)
        rows.append({
            "label": str(label),
            "centralizer_order": weyl.centralizer_order(spec, label),
            "torus_order": torus.order,
            "epsilon": stdecomp.epsilon_sign(spec, label),
        })
    return {
        "family": spec.family.value,
        "n": spec.n,
        "q": spec.q,
        "weyl_order": weyl.weyl_order(spec),
        "classes": rows,
    }


def _cmd_classes(args) -> tuple[str, int]:
    spec = GroupSpec.from_q(args.family, args.n, args.q)
    report = classes_report(spec)
    if args.format == "csv":
        header = ["label", "centralizer_order", "torus_order", "epsilon"]
        return emit_csv(header, [[r[h] for h in header] for r in report["classes"]]), 0
    return emit_json(report), 0


def cell_record(cell: verify.Cell) -> dict:
    return {
        "params": cell.params,
        "status": cell.status,
        "expected": cell.expected,
        "actual": cell.actual,
        "note": cell.note,
        "extra": cell.extra,
    }


def verify_report(theorem: str, grid: verify.Grid, cells) -> dict:
    summary = {s: sum(1 for c in cells if c.status == s) for s in ("PASS", "FAIL", "SKIP")}
    return {
        "theorem": theorem,
        "grid": {
            "max_n": grid.max_n,
            "max_n_type_a": grid.type_a_max,
            "q_list": list(grid.q_list),
            "families": [f.value for f in grid.families],
            "max_enum": grid.max_enum,
        },
        "summary": summary,
        "cells": [cell_record(c) for c in cells],
    }


def _cmd_verify(args) -> tuple[str, int]:
    families = tuple(Family(f) for f in args.families.split(",")) if args.families else verify.ALL_FAMILIES
    grid = verify.Grid(
        max_n=args.max_n,
        max_n_a=args.max_n_a,
        q_list=tuple(int(x) for x in args.q_list.split(",")),
        families=families,
        max_enum=args.max_enum,
        group_guard=args.group_guard,
    )
    cells = verify.run(args.theorem, grid, threads=args.threads)
    report = verify_report(args.theorem, grid, cells)
    code = 1 if report["summary"]["FAIL"] else 0
    if args.format == "csv":
        header = ["theorem", "params", "status", "expected", "actual", "note"]
        rows = [[args.theorem, c.params, c.status, c.expected, c.actual, c.note] for c in cells]
        return emit_csv(header, rows), code
    return emit_json(report), code


def decompose_report(spec: GroupSpec, nu, d0=None) -> dict:
    violation = restriction_violation(nu, spec.p, spec.m)
    if violation is not None:
        return {"error": "weight is not strongly q-restricted", "violation": violation,
                "weight": list(nu), "q": spec.q}
    report = stdecomp.theorem_th5_report(spec, nu, d0)
    return {
        "case": report.case,
        "i": report.special_index,
        "d0": report.d0,
        "per_torus_values": [{"label": str(l), "value": v} for l, v in report.per_torus_values.items()],
        "rt1_coeffs": [
            {"label": str(l), "num": c.numerator, "den": c.denominator} for l, c in report.vector.coeffs.items()
        ],
    }


def _cmd_decompose(args) -> tuple[str, int]:
    spec = GroupSpec.from_q(args.family, args.n, args.q)
    try:
        nu = tuple(int(x) for x in args.weight.split(",")) if args.weight.strip() else ()
    except ValueError:
        raise ValueError(f"malformed weight {args.weight!r}; expected comma-separated integers")
    if len(nu) != spec.n - 1:
        raise ValueError(f"weight needs {spec.n - 1} coordinates, got {len(nu)}")
    report = decompose_report(spec, nu, args.d0)
    code = 1 if "error" in report else 0
    if args.format == "csv" and code == 0:
        rows = []
        values = {r["label"]: r["value"] for r in report["per_torus_values"]}
        for r in report["rt1_coeffs"]:
            rows.append([report["case"], report["i"], report["d0"], r["label"], values[r["label"]], r["num"], r["den"]])
        return emit_csv(["case", "i", "d0", "label", "value", "num", "den"], rows), code
    return emit_json(report), code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torusinv", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    families = [f.value for f in Family]

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("classes", help="class labels, centralizer and torus orders")
    p.add_argument("--family", required=True, choices=families)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    common(p)
    p.set_defaults(handler=_cmd_classes)

    p = sub.add_parser("verify", help="run a verification sweep")
    p.add_argument("--theorem", required=True, choices=list(verify.THEOREMS))
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-n-a", type=int, default=None, help="rank bound for GL/SL (defaults to --max-n)")
    p.add_argument("--q-list", default="2,3,4,5")
    p.add_argument("--families", default=None, help="comma-separated subset of " + ",".join(families))
    p.add_argument("--max-enum", type=int, default=10**6, help="element enumeration guard")
    p.add_argument("--group-guard", type=int, default=10**7, help="Weyl group enumeration guard")
    p.add_argument("--threads", type=int, default=None)
    common(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("decompose", help="unipotent part of beta_nu * St for SL")
    p.add_argument("--family", default="sl", choices=["sl"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--weight", required=True, help="lambda coordinates a_1,...,a_{n-1}")
    p.add_argument("--d0", type=int, default=None)
    common(p)
    p.set_defaults(handler=_cmd_decompose)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.handler(args)
    except (ValueError, KeyError) as exc:
        print(f"torusinv: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
