"""Command-line interface.

Exit codes: 0 success, 1 self-test failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .contextuality import (build_scenario, depolarization_threshold, nc_polytope, report_json,
                            saturating_model, saturation_grid, violation_report)
from .convex import ContractViolation, EmptyPolytopeError
from .convex.linsys import fmt
from .orbit import analyse, has_symmetry
from .surd import Surd, exact_json
from .theories import NAMES, OCTAHEDRON, RepVector, make_theory, parse_theory
from .uncertainty import convert_form, parse_axes, ur_boundary

GROUPS = ("a12", "a13")
REPORT_ETA = Fraction(3, 10)


def _num(x) -> str:
    return str(x) if isinstance(x, Surd) else fmt(x)


def _jsonable(obj):
    """Recursively render Fractions as "p/q" and Surds as exact records."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (Fraction, Surd)):
        return exact_json(obj)
    if isinstance(obj, RepVector):
        return obj.to_list()
    return obj


def _dump(doc) -> str:
    return json.dumps(_jsonable(doc), indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# --- boundary ---------------------------------------------------------------

def _overlay_points(axes) -> list[tuple]:
    """Vertices of the noncontextual region: closed diamond (2D) or octahedron (3D)."""
    if len(axes) == 2:
        ring = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 0)]
        return [tuple(Fraction(x) for x in p) for p in ring]
    return [tuple(Fraction(x) for x in v) for v in OCTAHEDRON]


def _table(rows: list[list], header: list[str], fmt_name: str, comment: str = "") -> str:
    buf = io.StringIO()
    if fmt_name == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        if comment:
            buf.write(f"# {comment}\n")
        buf.write("# " + " ".join(header) + "\n")
        for r in rows:
            buf.write(" ".join(str(x) for x in r) + "\n")
    return buf.getvalue()


def cmd_boundary(args) -> int:
    theory = parse_theory(args.theory)
    axes = parse_axes(args.axes)
    pts = ur_boundary(theory, axes, args.n, geometric=args.geometric)
    names = [a.lower() for a in axes]
    overlay = _overlay_points(axes)
    if args.format == "json":
        doc = {
            "theory": theory.label, "axes": "".join(names), "n": args.n,
            "samples": [{"direction": list(p.direction), "support": p.support,
                         "support_float": float(p.support), "point": list(p.point)} for p in pts],
            "max_support": max((p.support for p in pts), key=float),
            "noncontextual_overlay": [list(v) for v in overlay],
        }
        _emit(_dump(doc), args.out)
        return 0
    header = [f"d{w}" for w in names] + ["support", "support_exact"] + names
    rows = []
    for p in pts:
        rows.append([f"{float(d):.12g}" for d in p.direction] + [f"{float(p.support):.12g}", _num(p.support)]
                    + [f"{float(x):.12g}" for x in p.point])
    samples = _table(rows, header, args.format, f"{theory.label} {''.join(names)} support samples")
    orows = [[f"{float(x):.12g}" for x in v] for v in overlay]
    otext = _table(orows, names, args.format, "noncontextual bound vertices")
    if args.out:
        out = Path(args.out)
        out.write_text(samples)
        opath = out.with_name(out.stem + ".overlay" + (out.suffix or ".dat"))
        opath.write_text(otext)
    else:
        sep = "\n\n" if args.format == "gnuplot" else "\n"
        sys.stdout.write(samples + sep + otext)
    return 0


# --- single-shot commands ---------------------------------------------------

def _parse_triple(text: str) -> list[Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ContractViolation(f"expected three comma-separated rationals, got {text!r}")
    try:
        return [Fraction(p) for p in parts]
    except ValueError as exc:
        raise ContractViolation(str(exc)) from exc


def cmd_forms(args) -> int:
    rec = convert_form(*_parse_triple(args.state))
    rec["forms"] = {k: dict(v) for k, v in rec["forms"].items()}
    _emit(_dump(rec), args.out)
    return 0


def cmd_orbit_check(args) -> int:
    theory = parse_theory(args.theory)
    s = RepVector.parse(args.state)
    res = analyse(theory, s, args.group, geometric=args.geometric)
    doc = {"theory": theory.label, "group": args.group, "state": s.to_list()}
    doc.update(res.to_dict())
    _emit(_dump(doc), args.out)
    return 0


def cmd_nc_bound(args) -> int:
    rep = nc_polytope(build_scenario(args.n), args.route)
    doc = {"n": args.n}
    doc.update(rep.to_dict())
    _emit(_dump(doc), args.out)
    return 0


def cmd_violate(args) -> int:
    _emit(_dump(report_json(violation_report(parse_theory(args.theory), args.group))), args.out)
    return 0


def cmd_saturate(args) -> int:
    if args.u is not None:
        u = Fraction(args.u)
        model = saturating_model(u)
        doc = {"u": u, "u_prime": Fraction(1, 2) + 2 * u}
        doc.update(model.to_dict())
        _emit(_dump(doc), args.out)
        return 0
    rows = []
    for u, m in saturation_grid(args.n):
        rows.append([fmt(u), fmt(m.expectation("X")), fmt(m.expectation("Z"))]
                    + [fmt(x) for mu in m.mus for x in mu])
    header = ["u", "X", "Z"] + [f"mu{i}_{l}" for i in range(1, 5) for l in range(4)]
    _emit(_table(rows, header, "gnuplot" if args.format == "gnuplot" else "csv",
                 "saturating models on <X> + <Z> = 1"), args.out)
    return 0


# --- report and selftest ------------------------------------------------------

def _report_theories(factory):
    for name in NAMES:
        yield factory(name, REPORT_ETA) if name == "depolarized" else factory(name)


def report_document(factory=make_theory) -> str:
    rows = []
    for theory in _report_theories(factory):
        for g in GROUPS:
            rep = violation_report(theory, g)
            rows.append({
                "theory": theory.label, "group": g,
                "has_symmetry": has_symmetry(theory, g),
                "region": rep["region"],
                "geometric_only": rep["geometric_only"],
                "max_predictability_sum": rep["max_value"],
                "max_float": round(float(rep["max_value"]), 12),
                "witness_state": rep["witness_state"],
                "verdict": rep["verdict"],
            })
    doc = {
        "rows": rows,
        "depolarization_thresholds": {
            g: {"exact": depolarization_threshold(g), "float": round(float(depolarization_threshold(g)), 12)}
            for g in GROUPS},
    }
    return _dump(doc)


def cmd_report(args, factory=make_theory) -> int:
    _emit(report_document(factory), args.out)
    return 0


def cmd_selftest(args, factory=make_theory) -> int:
    from .acceptance import run_acceptance
    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = run_acceptance(factory, skip_fm=args.skip_fm, only=only)
    for r in results:
        print(r.line)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed"
          + (f"; failed: {', '.join(map(str, failed))}" if failed else ""))
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncur", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add_out(sp):
        sp.add_argument("--out", help="write to this path instead of stdout")

    b = sub.add_parser("boundary", help="support samples of a theory's projected state space")
    b.add_argument("--theory", required=True)
    b.add_argument("--axes", default="xz", choices=("xz", "xyz"))
    b.add_argument("-n", type=int, default=72, help="number of sample directions (>= 4)")
    b.add_argument("--format", default="gnuplot", choices=("json", "csv", "gnuplot"))
    b.add_argument("--geometric", action="store_true", help="allow axes the theory cannot measure")
    add_out(b)

    f = sub.add_parser("forms", help="the four equivalent relation forms at one point")
    f.add_argument("--state", required=True, help='expectation values "tx,ty,tz" as p/q')
    add_out(f)

    o = sub.add_parser("orbit-check", help="orbit realizability of one state")
    o.add_argument("--theory", required=True)
    o.add_argument("--state", required=True, help='"sx,sy,sz" as p/q')
    o.add_argument("--group", default="a12", choices=GROUPS)
    o.add_argument("--geometric", action="store_true")
    add_out(o)

    n = sub.add_parser("nc-bound", help="noncontextual region by LP, FM or the eight inequalities")
    n.add_argument("--n", type=int, default=2, choices=(2, 3))
    n.add_argument("--route", default="lp", choices=("lp", "fm", "appendixb"))
    add_out(n)

    v = sub.add_parser("violate", help="largest predictability sum over orbit-realizable states")
    v.add_argument("--theory", required=True)
    v.add_argument("--group", default="a12", choices=GROUPS)
    add_out(v)

    s = sub.add_parser("saturate", help="saturating ontic models (one u, or a grid as a table)")
    s.add_argument("--u", help="p/q in [-1/4, 1/4]; omit for the full grid")
    s.add_argument("-n", type=int, default=101, help="grid size when --u is omitted")
    s.add_argument("--format", default="csv", choices=("csv", "gnuplot"))
    add_out(s)

    r = sub.add_parser("report", help="summary over all theories and both groups (JSON)")
    add_out(r)

    t = sub.add_parser("selftest", help="run the acceptance suite")
    t.add_argument("--skip-fm", action="store_true", help="skip the Fourier-Motzkin route")
    t.add_argument("--only", help="comma-separated criterion numbers")
    return p


COMMANDS = {
    "boundary": cmd_boundary, "forms": cmd_forms, "orbit-check": cmd_orbit_check,
    "nc-bound": cmd_nc_bound, "violate": cmd_violate, "saturate": cmd_saturate,
}


def main(argv=None, theory_factory=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    factory = theory_factory or make_theory
    try:
        if args.command == "report":
            return cmd_report(args, factory)
        if args.command == "selftest":
            return cmd_selftest(args, factory)
        return COMMANDS[args.command](args)
    except (ContractViolation, EmptyPolytopeError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
