"""Command-line front end.

Subcommands: verify-family, gen-curve, check-curve, table1, find-singular,
sweep.  Parameters are exact rationals written as p/q; floating-point input
is rejected because exactness is the point of the tool.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

# let argparse accept "-1/2" as a value rather than an option flag
_NEGATIVE_RATIONAL = re.compile(r"^-\d+(/\d+)?$")

from .curve import (
    CurveError,
    InvalidFamilyError,
    build_curve,
    build_report,
    curve_from_json,
    curve_to_json,
    report_to_json,
)
from .family import DenominatorZeroError, FamilyError, build_family, verify_eq_42_43, verify_identity_11
from .spectral import (
    SingularSearchError,
    exact_rank,
    find_singular_t,
    find_valid_t,
    pair_common_zero_count,
)

TABLE_COLUMNS = (3, 4, 5)
TABLE_ROWS = (5, 6, 7)
SINGULAR_BRACKETS = {3: (Fraction(0), Fraction(1, 2)), 4: (Fraction(0), Fraction(2, 3))}


def parse_rational(text: str) -> Fraction:
    if any(ch in text for ch in ".eE"):
        raise argparse.ArgumentTypeError(f"{text!r}: floats are rejected, write an exact rational p/q")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational p/q") from exc


def parse_sign(text: str) -> int:
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError("sign must be + or -")


def cmd_verify_family(args) -> int:
    try:
        fp = build_family(args.d, args.t, args.sign)
        eq_ok = verify_eq_42_43(args.d, args.t)
        id_ok, c = verify_identity_11(fp)
    except (DenominatorZeroError, FamilyError) as exc:
        print(f"invalid parameter: {exc}", file=sys.stderr)
        return 2
    q = fp.C.size - exact_rank(fp.C)
    print(f"d={fp.d} t={fp.t} sign={'+' if fp.sign > 0 else '-'}")
    print(f"coefficient recurrences: {'hold' if eq_ok else 'FAIL'}")
    print(f"polynomial identity:     {'holds' if id_ok else 'FAIL'} (c = {c})")
    print(f"validity: {fp.valid} (alpha^2 = {fp.alpha_scale}, PSD = {fp.psd})")
    print(f"zero multiplicity q = {q}")
    return 0 if (eq_ok and id_ok) else 1


def cmd_gen_curve(args) -> int:
    try:
        fp = build_family(args.d, args.t, args.sign)
        curve = build_curve(fp)
    except (DenominatorZeroError, FamilyError, InvalidFamilyError) as exc:
        print(f"cannot build curve: {exc}", file=sys.stderr)
        return 2
    report = build_report(curve)
    q = fp.d + 3 - curve.n
    blob = json.dumps(curve_to_json(curve), indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(blob + "\n")
    else:
        print(blob)
    print(f"n={curve.n} q={q} K={report.K}", file=sys.stderr)
    return 0


def cmd_check_curve(args) -> int:
    try:
        with open(args.path) as fh:
            obj = json.load(fh)
        curve = curve_from_json(obj)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"malformed curve file: {exc}", file=sys.stderr)
        return 3
    try:
        report = build_report(curve)
    except CurveError as exc:
        print(f"degenerate curve: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(report_to_json(report), indent=2))
    else:
        print(f"K = {report.K if report.K is not None else 'not constant'}")
        if report.plucker_c is not None:
            print(f"|w|^2 = ({report.plucker_c}) * (1+z*zbar)^{report.deg}")
        print(f"full in C^{report.full_in} (ambient {curve.n})")
        if report.unramified is not None:
            print(f"unramified: {report.unramified}")
        if report.det_a1_nowhere_zero is not None:
            print(f"|det A_1| nowhere zero: {report.det_a1_nowhere_zero}")
        if report.S_constant is not None:
            print(f"second fundamental form constant: {report.S_constant}")
        for w in report.warnings:
            print(f"warning: {w}")
    return 0 if report.K is not None else 1


def _table_cells() -> dict[tuple[int, int], dict]:
    cells: dict[tuple[int, int], dict] = {}
    for r in TABLE_COLUMNS:
        d = r - 1
        for n in TABLE_ROWS:
            q = d + 3 - n
            if q < 0 or r < n - 2:
                continue
            k = Fraction(4, r)
            if q == 0:
                t = find_valid_t(d)
                cells[(r, n)] = {"kind": "family", "K": k, "t_example": t, "valid": True}
            elif q == 1:
                lo, hi = SINGULAR_BRACKETS[d]
                try:
                    t = find_singular_t(d, lo, hi)
                except SingularSearchError:
                    cells[(r, n)] = {"kind": "none", "K": None}
                    continue
                fp = build_family(d, t) if t.denominator < 10**6 else None
                exact = fp is not None and exact_rank(fp.C) == d
                cells[(r, n)] = {
                    "kind": "single",
                    "K": k,
                    "t": t,
                    "t_exact": exact,
                    "valid": bool(fp and fp.valid and exact),
                }
            elif q == 2:
                impossible = pair_common_zero_count(d, Fraction(-1), Fraction(1)) == 0
                cells[(r, n)] = {"kind": "none" if impossible else "unknown", "K": None}
    return cells


def cmd_table1(args) -> int:
    cells = _table_cells()
    if args.json:
        out = {
            f"r={r},n={n}": {
                **{k: (str(v) if isinstance(v, Fraction) else v) for k, v in cell.items()},
            }
            for (r, n), cell in cells.items()
        }
        print(json.dumps(out, indent=2))
        return 0
    header = "| K = 4/r | " + " | ".join(f"r = {r}" for r in TABLE_COLUMNS) + " |"
    sep = "| --- | " + " | ".join("---" for _ in TABLE_COLUMNS) + " |"
    lines = [header, sep]
    for n in TABLE_ROWS:
        row = [f"n = {n}, G(2,{n})"]
        for r in TABLE_COLUMNS:
            cell = cells.get((r, n))
            if cell is None:
                row.append("")
            elif cell["kind"] == "family":
                row.append(f"The family (K = {cell['K']})")
            elif cell["kind"] == "single":
                t_note = f"t = {cell['t']}, " if cell.get("t_exact") else ""
                row.append(f"The single one ({t_note}K = {cell['K']})")
            else:
                row.append("No examples")
        lines.append("| " + " | ".join(row) + " |")
    print("\n".join(lines))
    return 0


def cmd_find_singular(args) -> int:
    try:
        t = find_singular_t(args.d, args.lo, args.hi, args.width)
    except SingularSearchError as exc:
        print(f"no singular parameter: {exc}", file=sys.stderr)
        return 1
    fp = build_family(args.d, t) if t.denominator <= 10**6 else None
    if fp is not None and exact_rank(fp.C) < args.d + 1:
        print(f"{t}")
        print(f"exact zero: rank drops to {exact_rank(fp.C)}", file=sys.stderr)
    else:
        print(f"{t}")
        print(f"~ {float(t):.15g} (bracketed to width {args.width})", file=sys.stderr)
    return 0


def cmd_sweep(args) -> int:
    rows = ["t,valid,q,rank,K,S_constant"]
    t = args.lo
    while t <= args.hi:
        try:
            fp = build_family(args.d, t)
        except (DenominatorZeroError, FamilyError):
            t += args.step
            continue
        rank = exact_rank(fp.C)
        q = fp.C.size - rank
        k_str = s_str = ""
        if fp.valid:
            curve = build_curve(fp)
            report = build_report(curve)
            k_str = str(report.K) if report.K is not None else "nonconstant"
            s_str = str(report.S_constant).lower()
        rows.append(f"{t},{str(fp.valid).lower()},{q},{rank},{k_str},{s_str}")
        t += args.step
    text = "\n".join(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="grasphere", description=__doc__)
    ap._negative_number_matcher = _NEGATIVE_RATIONAL
    sub = ap.add_subparsers(dest="command", required=True)

    def add_parser(name: str, **kw):
        p = sub.add_parser(name, **kw)
        p._negative_number_matcher = _NEGATIVE_RATIONAL
        return p

    p = add_parser("verify-family", help="check the defining identities at one parameter")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-t", type=parse_rational, required=True)
    p.add_argument("--sign", type=parse_sign, default=1)
    p.set_defaults(func=cmd_verify_family)

    p = add_parser("gen-curve", help="construct the curve at one parameter as JSON")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-t", type=parse_rational, required=True)
    p.add_argument("--sign", type=parse_sign, default=1)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_gen_curve)

    p = add_parser("check-curve", help="full verification report for a curve file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_curve)

    p = add_parser("table1", help="classification grid over G(2,5..7)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table1)

    p = add_parser("find-singular", help="locate a rank-dropping parameter")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--lo", type=parse_rational, required=True)
    p.add_argument("--hi", type=parse_rational, required=True)
    p.add_argument("--width", type=parse_rational, default=Fraction(1, 10**14))
    p.set_defaults(func=cmd_find_singular)

    p = add_parser("sweep", help="CSV of family data over a parameter grid")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--lo", type=parse_rational, required=True)
    p.add_argument("--hi", type=parse_rational, required=True)
    p.add_argument("--step", type=parse_rational, required=True)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_sweep)

    args = ap.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
