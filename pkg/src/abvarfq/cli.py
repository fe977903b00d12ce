"""Command-line front end.

Subcommands: enumerate, invariants, basechange, twists, primitive, stats,
label, density.  Exit codes: 0 success, 1 usage error, 2 invalid input,
3 internal consistency failure (a dual-method cross-check disagreed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


class UsageError(Exception):
    pass


def _build_parser() -> _Parser:
    p = _Parser(prog="abvarfq",
                description="Enumerate isogeny classes of abelian varieties "
                            "over finite fields and compute their invariants.")
    sub = p.add_subparsers(dest="cmd", required=True)

    e = sub.add_parser("enumerate", help="stream JSONL records for all "
                                         "valid classes of dimension G over F_Q")
    e.add_argument("g", type=int)
    e.add_argument("q", type=int)
    e.add_argument("--simple", action="store_true")
    e.add_argument("--ordinary", action="store_true")
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--out", default=None)
    e.add_argument("--no-angle-rank", action="store_true",
                   help="skip the (slow) numerical angle rank")

    i = sub.add_parser("invariants", help="single-record JSON for one class")
    i.add_argument("label", nargs="?", default=None)
    i.add_argument("--poly", default=None,
                   help="comma-separated coefficients c0,c1,...,c2g")
    i.add_argument("--g", type=int, default=None)
    i.add_argument("--q", type=int, default=None)

    b = sub.add_parser("basechange", help="label and polynomial over F_{q^r}")
    b.add_argument("label")
    b.add_argument("r", type=int)

    t = sub.add_parser("twists", help="partition records into twist classes")
    t.add_argument("--in", dest="infile", required=True)

    pr = sub.add_parser("primitive", help="annotate primitivity from "
                                          "subfield record files")
    pr.add_argument("--in", dest="infile", required=True)
    pr.add_argument("--subfields", nargs="+", required=True)

    s = sub.add_parser("stats", help="CSV and gnuplot outputs")
    s.add_argument("kind", choices=["counts", "newton", "sato-tate",
                                    "extremes", "disc", "fit"])
    s.add_argument("--in", dest="infile", default=None)
    s.add_argument("--csv", dest="csvdir", default=".")

    l = sub.add_parser("label", help="encode or decode a class label")
    lsub = l.add_subparsers(dest="mode", required=True)
    enc = lsub.add_parser("encode")
    enc.add_argument("g", type=int)
    enc.add_argument("q", type=int)
    enc.add_argument("coeffs", help="comma-separated a1..ag")
    dec = lsub.add_parser("decode")
    dec.add_argument("text")

    d = sub.add_parser("density", help="isogeny Sato-Tate density values")
    d.add_argument("g", type=int)
    d.add_argument("--grid", type=int, default=None)
    d.add_argument("--x", type=float, default=None)
    return p


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------

def _cmd_enumerate(ns) -> int:
    from .records import enumerate_records, write_jsonl
    lines = enumerate_records(ns.g, ns.q, jobs=ns.jobs,
                              simple_only=ns.simple,
                              ordinary_only=ns.ordinary,
                              with_angle_rank=not ns.no_angle_rank)
    if ns.out:
        n = write_jsonl(ns.out, lines)
        print(f"wrote {n} records to {ns.out}")
    else:
        for line in lines:
            sys.stdout.write(line + "\n")
    return 0


def _cmd_invariants(ns) -> int:
    from .labels import poly_of
    from .records import build_record
    from .weil import WeilPoly, is_weil_polynomial
    if ns.label:
        P = poly_of(ns.label)
    elif ns.poly:
        coeffs = [int(c) for c in ns.poly.split(",")]
        g = (len(coeffs) - 1) // 2
        q = ns.q if ns.q else round(coeffs[0] ** (1 / g)) if g else 0
        P = WeilPoly(ns.g or g, q, coeffs)
    else:
        raise UsageError("need a label or --poly")
    if not is_weil_polynomial(P.g, P.q, P.coeffs):
        raise ValueError("not a Weil polynomial (roots off |T| = sqrt(q))")
    rec = build_record(P)
    d = json.loads(rec.to_json())
    print(json.dumps(d, sort_keys=True, indent=2))
    return 0


def _cmd_basechange(ns) -> int:
    from .extensions import base_change
    from .labels import label_of, poly_of
    B = base_change(poly_of(ns.label), ns.r)
    print(label_of(B))
    print(",".join(str(c) for c in B.coeffs))
    return 0


def _cmd_twists(ns) -> int:
    from .records import assign_twist_classes, read_jsonl
    recs = assign_twist_classes(read_jsonl(ns.infile))
    for r in recs:
        print(f"{r.label} {r.twist_class}")
    return 0


def _cmd_primitive(ns) -> int:
    from .extensions import is_primitive
    from .labels import label_of
    from .records import read_jsonl
    recs = read_jsonl(ns.infile)
    subfields: dict = {}
    for path in ns.subfields:
        for r in read_jsonl(path):
            subfields.setdefault(r.p and _log_base(r.q, r.p), []).append(r.poly())
    for r in recs:
        prim, models = is_primitive(r.poly(), subfields)
        tags = ",".join(label_of(m) for m in models) or "-"
        print(f"{r.label} {'primitive' if prim else 'imprimitive'} {tags}")
    return 0


def _log_base(q: int, p: int) -> int:
    a = 0
    while q > 1:
        q //= p
        a += 1
    return a


def _cmd_stats(ns) -> int:
    from . import stats
    from .records import read_jsonl

    def outpaths(stem):
        return (os.path.join(ns.csvdir, stem + ".csv"),
                os.path.join(ns.csvdir, stem + ".plt"))

    if ns.kind == "sato-tate":
        g = 3 if ns.infile is None else read_jsonl(ns.infile)[0].g
        model = stats.DensityModel(g)
        csvp, pltp = outpaths(f"sato_tate_g{g}")
        xs = [4 * g * k / 400 - 2 * g for k in range(401)]
        stats.write_csv(csvp, ["x", "density"],
                        [(x, model.value(x)) for x in xs])
        stats.write_plt(pltp, csvp, f"density g={g}", "x", "f(x)", "lines")
        print(csvp)
        return 0

    if ns.infile is None:
        raise UsageError(f"stats {ns.kind} needs --in FILE")
    recs = read_jsonl(ns.infile)
    polys = [r.poly() for r in recs]
    g, q = recs[0].g, recs[0].q

    if ns.kind == "counts":
        hist, ks = stats.empirical_error_distribution(polys)
        csvp, pltp = outpaths(f"error_hist_{g}_{q}")
        stats.write_csv(csvp, ["lo", "hi", "count"], hist)
        stats.write_plt(pltp, csvp, f"error distribution ({g},{q})", "E", "#")
        print(csvp)
        if ks is not None:
            print(f"KS distance to density model: {ks:.4f}")
    elif ns.kind == "newton":
        from .newton import eligible_polygons
        rows = []
        for P0 in eligible_polygons(g):
            rows.append((repr(P0), stats.newton_stratum_ratio(polys, P0)))
        csvp, pltp = outpaths(f"newton_strata_{g}_{q}")
        stats.write_csv(csvp, ["polygon", "log_q_ratio"], rows)
        print(csvp)
    elif ns.kind == "extremes":
        mn, mins, mx, maxs, mirror = stats.extremes(polys)
        from .labels import label_of
        print(f"min {mn} {' '.join(label_of(P) for P in mins)}")
        print(f"max {mx} {' '.join(label_of(P) for P in maxs)}")
        print(f"mirror_pair {str(mirror).lower()}")
    elif ns.kind == "disc":
        hist = stats.disc_histogram(polys)
        csvp, pltp = outpaths(f"disc_hist_{g}_{q}")
        stats.write_csv(csvp, ["lo", "hi", "count"], hist)
        stats.write_plt(pltp, csvp, f"normalized root disc ({g},{q})",
                        "rd", "#")
        print(csvp)
    elif ns.kind == "fit":
        byq: dict = {}
        for r in recs:
            byq[r.q] = byq.get(r.q, 0) + 1
        if len(byq) < 2:
            raise ValueError("fit needs records over at least two fields")
        fit = stats.loglog_fit(sorted(byq.items()))
        print(f"a={fit.a:.6f} b={fit.b:.6f} residual={fit.residual:.6g}")
    return 0


def _cmd_label(ns) -> int:
    from .labels import decode_label, encode_label
    if ns.mode == "encode":
        a = [int(c) for c in ns.coeffs.split(",")]
        print(encode_label(ns.g, ns.q, a))
    else:
        g, q, a = decode_label(ns.text)
        print(f"g={g} q={q} a={a}")
    return 0


def _cmd_density(ns) -> int:
    from .stats import DensityModel
    model = DensityModel(ns.g)
    if ns.x is not None:
        print(f"{model.value(ns.x):.10f}")
    elif ns.grid:
        for k in range(ns.grid + 1):
            x = 4 * ns.g * k / ns.grid - 2 * ns.g
            print(f"{x:.6f} {model.value(x):.10f}")
    else:
        raise UsageError("density needs --grid or --x")
    return 0


_DISPATCH = {
    "enumerate": _cmd_enumerate,
    "invariants": _cmd_invariants,
    "basechange": _cmd_basechange,
    "twists": _cmd_twists,
    "primitive": _cmd_primitive,
    "stats": _cmd_stats,
    "label": _cmd_label,
    "density": _cmd_density,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return _DISPATCH[ns.cmd](ns)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, FileNotFoundError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, ArithmeticError) as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
