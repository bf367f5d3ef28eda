"""Command line front end.

`bound` dispatches the analytic order bounds, `analyze` reports everything we
can compute about a hypergraph file, `table` regenerates the shipped tables,
and `construct` builds hypergraphs and orthogonal arrays (composable through
pipes: data goes to stdout, the report to stderr).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from fractions import Fraction
from importlib import resources

from . import bounds
from .bounds import BoundResult, LPConditionError, Refinement
from .constructions import (OAValidationError, OrthogonalArray,
                            fixture_names, hypergraph_from_oa, mols_cyclic,
                            named_fixture, oa_from_mols, oa_minus_transversal,
                            oa_validate)
from .hypergraph import (Hypergraph, HypergraphFormatError,
                         NotRegularUniformError, adjacency,
                         check_regular_uniform, diameter,
                         distance_regularity_check, girth, girth_via_trace,
                         is_connected)
from .orthopoly import FPoly, Params
from .spectra import (is_ramanujan, second_eigenvalue,
                      spectrum_correspondence_check, symmetric_eigenvalues)

__all__ = ["main"]


class UsageError(Exception):
    """Bad arguments or unreadable input; maps to exit code 2."""


# ---------------------------------------------------------------------------
# parsing helpers

def parse_theta(token: str):
    """Accepts an integer, a rational (p/q or decimal), or sqrtN for a
    positive integer N.  Rationals stay exact; sqrtN becomes a float."""
    tok = token.strip()
    if tok.startswith("sqrt"):
        try:
            n = int(tok[4:])
        except ValueError:
            raise UsageError(f"cannot parse {token!r}: sqrtN needs an integer N")
        if n <= 0:
            raise UsageError(f"cannot parse {token!r}: sqrtN needs N > 0")
        return math.sqrt(n)
    try:
        value = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise UsageError(
            f"cannot parse {token!r}: use an integer, p/q, a decimal, or sqrtN")
    return int(value) if value.denominator == 1 else value


def load_certificate(path: str, params: Params) -> FPoly:
    """Certificate file: line 1 is "r u s", line 2 holds s+1 rationals
    (coefficients in the F-basis, lowest index first)."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read certificate: {exc}")
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) < 2:
        raise UsageError("certificate file needs a header line and a coefficient line")
    head = lines[0].split()
    if len(head) != 3:
        raise UsageError('certificate header must be "r u s"')
    try:
        r, u, s = (int(tok) for tok in head)
        coeffs = tuple(Fraction(tok) for tok in lines[1].split())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad certificate file: {exc}")
    if (r, u) != (params.r, params.u):
        raise UsageError(
            f"certificate is for ({r},{u}), command asked for ({params.r},{params.u})")
    if len(coeffs) != s + 1:
        raise UsageError(f"expected {s + 1} coefficients, found {len(coeffs)}")
    return FPoly(params, coeffs)


def thread_count() -> int:
    env = os.environ.get("HYPLP_THREADS", "").strip()
    if env:
        try:
            n = int(env)
        except ValueError:
            raise UsageError("HYPLP_THREADS must be an integer")
        if n >= 1:
            return n
    return min(8, os.cpu_count() or 1)


# ---------------------------------------------------------------------------
# rendering

def fmt(x) -> str:
    """Text/csv cell: ints plain, rationals exact as p/q, floats to 5 decimals."""
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        if x.denominator > 10 ** 6:
            return f"{float(x):.5f}"
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        return f"{x:.5f}"
    return str(x)


def fmt_flat(x) -> str:
    if isinstance(x, dict):
        return ", ".join(f"{k}={fmt_flat(v)}" for k, v in x.items())
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(fmt_flat(v) for v in x) + ")"
    return fmt(x)


def jval(x):
    """JSON payload keeps full precision; rationals serialize as p/q strings."""
    if isinstance(x, bool):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {str(k): jval(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jval(v) for v in x]
    return x


def emit_pairs(pairs, how: str, out) -> None:
    if how == "json":
        json.dump({k: jval(v) for k, v in pairs}, out, indent=2)
        out.write("\n")
    elif how == "csv":
        w = csv.writer(out)
        w.writerow(["field", "value"])
        for k, v in pairs:
            w.writerow([k, fmt_flat(v)])
    else:
        for k, v in pairs:
            out.write(f"{k}: {fmt_flat(v)}\n")


def emit_grid(header, rows, provenance, how: str, out, trailer=None) -> None:
    """Tabular output; every column carries its provenance tag."""
    if how == "json":
        payload = {"columns": list(header),
                   "provenance": dict(provenance),
                   "rows": [{k: jval(v) for k, v in zip(header, row)} for row in rows]}
        if trailer:
            payload["summary"] = trailer
        json.dump(payload, out, indent=2)
        out.write("\n")
        return
    cells = [[fmt(v) for v in row] for row in rows]
    if how == "csv":
        w = csv.writer(out)
        w.writerow(header)
        for row in cells:
            w.writerow(row)
        if trailer:
            w.writerow([trailer])
        return
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h)
              for i, h in enumerate(header)]
    out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
    for row in cells:
        out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")
    out.write("columns: " + "; ".join(f"{k}={v}" for k, v in provenance.items()) + "\n")
    if trailer:
        out.write(trailer + "\n")


def bound_pairs(b: BoundResult) -> list:
    pairs = [("theorem", b.theorem), ("value", b.value)]
    for key, val in b.params.items():
        pairs.append((key, val))
    for ref in b.refinements:
        text = f"{fmt(ref.before)} -> {fmt(ref.after)}"
        if ref.note:
            text += f" ({ref.note})"
        pairs.append((f"refinement [{ref.name}]", text))
    for i, note in enumerate(b.notes):
        pairs.append((f"note{i + 1}" if len(b.notes) > 1 else "note", note))
    if b.certificate is not None:
        pairs.append(("certificate_f_basis", list(b.certificate.coeffs)))
    return pairs


# ---------------------------------------------------------------------------
# bound subcommands

def cmd_bound(args) -> int:
    params = Params(args.r, args.u)
    out = sys.stdout
    sub = args.subcommand

    if sub == "closed-form":
        theta = parse_theta(args.theta)
        b = bounds.closed_form_h_bound(params, theta, ztol=args.tol or 1e-9)
        b = bounds.integrality_refinements(b, params)
        emit_pairs(bound_pairs(b), args.format, out)
        return 0

    if sub == "lp":
        theta = parse_theta(args.theta)
        if args.cert:
            f = load_certificate(args.cert, params)
            b = bounds.lp_bound_evaluate(params, f, theta=theta,
                                         tol=args.tol or 1e-9)
        elif args.degree:
            b = bounds.lp_bound_optimize(params, float(theta), args.degree,
                                         tol=args.tol or 1e-8)
        else:
            raise UsageError("bound lp needs --cert FILE or --degree S")
        emit_pairs(bound_pairs(b), args.format, out)
        return 0

    if sub == "dss":
        lam = parse_theta(args.theta)
        check = bounds.dss_gen_bound(params, args.d, args.n, lam)
        pairs = [("passed", check.passed), ("slack", check.slack),
                 ("order_bound", check.order_bound)]
        pairs += list(check.params.items())
        if not check.passed:
            pairs.append(("conclusion",
                          f"no such configuration: an eigenvalue {fmt(lam)} forces "
                          f"order <= {fmt(check.order_bound)} < {args.n}"))
        emit_pairs(pairs, args.format, out)
        return 0

    if sub == "imp2":
        tau2 = parse_theta(args.theta)
        b = bounds.imp2_bound(params, args.d, tau2, ztol=args.tol or 1e-9)
        emit_pairs(bound_pairs(b), args.format, out)
        return 0

    if sub == "diam":
        b = bounds.diameter_order_bound(params, args.ell)
        emit_pairs(bound_pairs(b), args.format, out)
        return 0

    if sub == "ru1":
        b = bounds.ru1_bound(args.r, args.u)
        if b is None:
            emit_pairs([("value", "not applicable"),
                        ("reason", f"needs r >= max(7u-5, u^2-1) = "
                                   f"{max(7 * args.u - 5, args.u ** 2 - 1)}")],
                       args.format, out)
            return 0
        emit_pairs(bound_pairs(b), args.format, out)
        return 0

    if sub == "tau2-lower":
        d, c, lam = bounds.tau2_lower(params, args.n, tol=args.tol or 1e-9)
        emit_pairs([("tau2_lower", lam), ("d", d), ("c", c),
                    ("meaning", f"every connected {args.r}-regular {args.u}-uniform "
                                f"hypergraph on >= {args.n} vertices has tau2 >= "
                                f"{lam:.5f} (up to the stated tolerance)")],
                   args.format, out)
        return 0

    if sub == "defect-region":
        lower, lam_d, upper = bounds.defect_region(params, args.d, args.e)
        emit_pairs([("lower", lower), ("lambda_d", lam_d), ("upper", upper),
                    ("meaning", f"an order within {args.e} of the diameter-{args.d} "
                                f"ceiling forces tau2 in [{lower:.5f}, {upper:.5f}]")],
                   args.format, out)
        return 0

    raise UsageError(f"unknown bound subcommand {sub!r}")


# ---------------------------------------------------------------------------
# analyze

def analyze_pairs(h: Hypergraph) -> list:
    pairs = [("order", h.n), ("edges", h.m)]
    try:
        r, u = check_regular_uniform(h)
        pairs.append(("degrees", f"{r}-regular {u}-uniform"))
    except NotRegularUniformError as exc:
        pairs.append(("degrees", f"irregular: {exc}"))
        r = u = None

    g = girth(h)
    pairs.append(("girth", g))
    if r is not None and r >= 2:
        gt = girth_via_trace(h)
        pairs.append(("girth_by_trace", gt if gt is not None else "> 12"))

    connected = is_connected(h)
    pairs.append(("diameter", diameter(h) if connected else "inf (disconnected)"))

    spectrum = symmetric_eigenvalues(adjacency(h))
    pairs.append(("spectrum",
                  " ".join(f"{v:.5f}x{m}" for v, m in spectrum.clusters)))

    if r is None or not connected or r < 2:
        return pairs

    params = Params(r, u)
    tau2 = second_eigenvalue(h)
    pairs += [("tau2", tau2), ("spectral_gap", params.k - tau2),
              ("ramanujan", is_ramanujan(h))]

    dr = distance_regularity_check(h)
    if dr.valid:
        pairs.append(("distance_regular",
                      {"valid": True, "b": list(dr.b), "c": list(dr.c),
                       "a": list(dr.a)}))
    else:
        pairs.append(("distance_regular",
                      {"valid": False, "witness_pair": list(dr.witness)}))

    corr = spectrum_correspondence_check(h)
    pairs.append(("spectrum_correspondence",
                  "ok" if corr.ok else f"FAIL: {corr.detail}"))

    top = params.u - 2 + 2 * math.sqrt(params.q)
    if tau2 < top - 1e-12:
        hb = bounds.closed_form_h_bound(params, tau2)
        value = float(hb.value)
        if abs(value - h.n) <= 1e-6 * max(1.0, value):
            relation = "met with equality"
        elif h.n <= value + 1e-9:
            relation = f"order {h.n} within bound"
        else:
            relation = f"order {h.n} EXCEEDS bound"
        pairs.append(("order_bound_at_tau2",
                      {"value": hb.value, "d": hb.params["d"], "c": hb.params["c"],
                       "relation": relation}))
    else:
        pairs.append(("order_bound_at_tau2",
                      "none (tau2 at or above the universal-cover spectral top)"))

    d, c, lam = bounds.tau2_lower(params, h.n)
    pairs.append(("tau2_floor_at_order",
                  {"value": lam, "d": d, "c": c,
                   "slack": tau2 - lam}))
    return pairs


def cmd_analyze(args) -> int:
    if args.file == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.file) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(str(exc))
    h = Hypergraph.from_text(text)
    emit_pairs(analyze_pairs(h), args.format, sys.stdout)
    return 0


# ---------------------------------------------------------------------------
# tables

def _data_text(name: str) -> str:
    return resources.files("hyplp.data").joinpath(name).read_text()


def _csv_rows(name: str) -> list[dict]:
    lines = [ln for ln in _data_text(name).splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def cmd_table1(args) -> int:
    rows = _csv_rows("table1.csv")

    def compute(row):
        params = Params(int(row["r"]), int(row["u"]))
        lower, lam, upper = bounds.defect_region(params, int(row["d"]), int(row["e"]))
        return (int(row["r"]), int(row["u"]), int(row["d"]), int(row["v"]),
                int(row["e"]), lower, lam, upper,
                (row["lower"], row["lambda"], row["upper"]))

    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        computed = list(pool.map(compute, rows))

    header = ["r", "u", "d", "v", "e", "lower", "lambda", "upper"]
    provenance = {"r": "input", "u": "input", "d": "input",
                  "v": "census fixture", "e": "census fixture",
                  "lower": "defect-region", "lambda": "defect-region",
                  "upper": "defect-region"}
    grid = [row[:8] for row in computed]

    matches = sum(
        1 for row in computed
        if (f"{row[5]:.5f}", f"{row[6]:.5f}", f"{row[7]:.5f}") == row[8])
    trailer = None
    if args.verify:
        trailer = f"{matches}/{len(computed)} rows match"
    emit_grid(header, grid, provenance, args.format, sys.stdout, trailer=trailer)
    if args.verify and matches != len(computed):
        return 1
    return 0


def _truncate_one_decimal(x) -> str:
    t = math.floor(float(x) * 10) / 10
    return str(int(t)) if t == int(t) else f"{t:.1f}"


def _is_integer(x) -> bool:
    if isinstance(x, Fraction):
        return x.denominator == 1
    if isinstance(x, int):
        return True
    return float(x) == int(float(x))


def catalog_cell(row: dict, degree: int | None):
    """One h-catalog row: closed form, tag-specific refinement, printed value."""
    r, u = int(row["r"]), int(row["u"])
    params = Params(r, u)
    theta = parse_theta(row["theta"])
    b = bounds.closed_form_h_bound(params, theta)
    raw = b.value
    tag = row["tag"]
    if tag == "LP":
        printed = _truncate_one_decimal(raw)
    elif tag == "attained":
        near = round(float(raw))
        printed = str(near) if abs(float(raw) - near) < 1e-6 else fmt(raw)
    else:
        if tag == "noSRG":
            cut = bounds.strictly_below_int(b.value)
            b = replace(b, value=cut, refinements=b.refinements + (
                Refinement("no-attaining-object", raw, cut,
                           row.get("note") or "equality ruled out by census"),))
        b = bounds.integrality_refinements(b, params)
        printed = fmt(b.value)
    lp_opt = None
    if degree:
        lp_opt = bounds.lp_bound_optimize(params, float(theta), degree).value
    return (r, u, row["theta"], tag, raw, printed, row.get("expected", ""),
            lp_opt, row.get("note", ""))


def cmd_h_catalog(args) -> int:
    rows = _csv_rows("h_catalog.csv")
    if args.r is not None:
        rows = [row for row in rows if int(row["r"]) == args.r]
    if args.u is not None:
        rows = [row for row in rows if int(row["u"]) == args.u]
    if args.theta is not None:
        rows = [row for row in rows if row["theta"] == args.theta]
    if not rows:
        if args.r is None or args.u is None or args.theta is None:
            raise UsageError("no catalog cells match the given filters")
        rows = [{"r": str(args.r), "u": str(args.u), "theta": args.theta,
                 "tag": "-", "expected": "", "note": "not a catalog cell"}]

    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        cells = list(pool.map(lambda row: catalog_cell(row, args.degree), rows))

    header = ["r", "u", "theta", "tag", "bound", "printed", "expected", "note"]
    provenance = {"r": "input", "u": "input", "theta": "input",
                  "tag": "catalog fixture", "bound": "closed-form",
                  "printed": "closed-form + tag refinements",
                  "expected": "catalog fixture", "note": "catalog fixture"}
    if args.degree:
        header.insert(6, f"lp_opt(s={args.degree})")
        provenance[f"lp_opt(s={args.degree})"] = "lp-optimizer"

    grid = []
    matches = 0
    comparable = 0
    for cell in cells:
        r, u, theta, tag, raw, printed, expected, lp_opt, note = cell
        line = [r, u, theta, tag, raw, printed]
        if args.degree:
            line.append(lp_opt if lp_opt is not None else "")
        line += [expected, note]
        grid.append(line)
        if expected:
            comparable += 1
            if printed == expected:
                matches += 1

    trailer = f"{matches}/{comparable} cells match" if args.verify else None
    emit_grid(header, grid, provenance, args.format, sys.stdout, trailer=trailer)
    if args.verify and matches != comparable:
        return 1
    return 0


def cmd_table(args) -> int:
    if args.which == "table1":
        return cmd_table1(args)
    return cmd_h_catalog(args)


# ---------------------------------------------------------------------------
# construct

def _read_oa(path: str) -> OrthogonalArray:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(str(exc))
    return OrthogonalArray.from_text(text)


def _write_data(args, payload: str, report_pairs) -> None:
    """Data to -o FILE (report on stdout) or to stdout (report on stderr),
    so construct commands compose through pipes."""
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(payload)
        emit_pairs(report_pairs, "text", sys.stdout)
    else:
        sys.stdout.write(payload)
        emit_pairs(report_pairs, "text", sys.stderr)


def cmd_construct(args) -> int:
    if args.kind == "mols-oa":
        squares = args.rows - 2
        if squares < 1:
            raise UsageError("--rows must be at least 3 "
                             "(two coordinate rows plus at least one square)")
        oa = oa_from_mols(mols_cyclic(args.p, squares))
        ok, witness = oa_validate(oa)
        _write_data(args, oa.to_text(),
                    [("kind", "orthogonal array"), ("rows", oa.rows),
                     ("columns", oa.cols), ("alphabet", oa.alphabet),
                     ("valid", ok if ok else f"no: {witness}")])
        return 0

    if args.kind == "named":
        try:
            h = named_fixture(args.name)
        except KeyError:
            raise UsageError(f"unknown fixture {args.name!r}; "
                             f"available: {', '.join(fixture_names())}")
    elif args.kind == "from-oa":
        h = hypergraph_from_oa(_read_oa(args.file))
    elif args.kind == "oa-minus":
        h = oa_minus_transversal(_read_oa(args.file), args.symbol)
    else:
        raise UsageError(f"unknown construct kind {args.kind!r}")

    _write_data(args, h.to_text(), analyze_pairs(h))
    return 0


# ---------------------------------------------------------------------------
# parser

def _add_format(p) -> None:
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hyplp",
        description="Spectral order bounds for regular uniform hypergraphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="analytic order bounds")
    bsub = b.add_subparsers(dest="subcommand", required=True)

    def bound_sub(name, **flags):
        p = bsub.add_parser(name)
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--u", type=int, required=True)
        if flags.get("theta"):
            p.add_argument("--theta", required=True)
        if flags.get("n"):
            p.add_argument("--n", type=int, required=True)
        if flags.get("ell"):
            p.add_argument("--ell", type=int, required=True)
        if flags.get("d"):
            p.add_argument("--d", type=int, default=flags["d"]
                           if flags["d"] is not True else None,
                           required=flags["d"] is True)
        if flags.get("e"):
            p.add_argument("--e", type=int, required=True)
        if flags.get("degree"):
            p.add_argument("--degree", type=int)
        if flags.get("cert"):
            p.add_argument("--cert")
        p.add_argument("--tol", type=float)
        _add_format(p)
        p.set_defaults(func=cmd_bound)
        return p

    bound_sub("closed-form", theta=True)
    bound_sub("lp", theta=True, degree=True, cert=True)
    bound_sub("dss", theta=True, d=True, n=True)
    bound_sub("imp2", theta=True, d=True)
    bound_sub("diam", ell=True)
    bound_sub("ru1")
    bound_sub("tau2-lower", n=True)
    bound_sub("defect-region", d=2, e=True)

    an = sub.add_parser("analyze", help="report on a hypergraph file")
    an.add_argument("file")
    _add_format(an)
    an.set_defaults(func=cmd_analyze)

    tb = sub.add_parser("table", help="regenerate the shipped tables")
    tb.add_argument("which", choices=("table1", "h-catalog"))
    tb.add_argument("--verify", action="store_true")
    tb.add_argument("--r", type=int)
    tb.add_argument("--u", type=int)
    tb.add_argument("--theta")
    tb.add_argument("--degree", type=int)
    _add_format(tb)
    tb.set_defaults(func=cmd_table)

    co = sub.add_parser("construct", help="build hypergraphs and arrays")
    csub = co.add_subparsers(dest="kind", required=True)
    cn = csub.add_parser("named")
    cn.add_argument("name")
    cf = csub.add_parser("from-oa")
    cf.add_argument("file", nargs="?", default="-")
    cm = csub.add_parser("oa-minus")
    cm.add_argument("file", nargs="?", default="-")
    cm.add_argument("--symbol", type=int, required=True)
    cg = csub.add_parser("mols-oa")
    cg.add_argument("--p", type=int, required=True)
    cg.add_argument("--rows", type=int, required=True)
    for p in (cn, cf, cm, cg):
        p.add_argument("-o", "--output")
        p.set_defaults(func=cmd_construct)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (HypergraphFormatError, OAValidationError, NotRegularUniformError,
            LPConditionError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
