"""Command-line front end: ``walkcent analyze|interlace|search|cospectral``.

Vertex labels on the command line and in all output are 1-based.

Exit codes
----------
analyze      0 ok, 2 input/parameter error
interlace    0 interlacing found, 1 none found, 2 error, 3 cospectral pair, 4 ill-conditioned pair
search       0 ok, 2 error (including a resume file written for another search)
cospectral   0 walk regular, 1 not walk regular, 2 error
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import centrality as cen
from .graph import GraphError, is_connected, read_graph
from .interlacing import (DEFAULT_REFINE_TOL, DEFAULT_RESOLUTION, RC_EPS, find_interlacings,
                          mesh_values)
from .plot import curve_csv, curve_svg
from .search import PREDICATES, ResumeError, SearchSpec, scan
from .spectral import SpectralError, spectral_data
from .walks import cospectral_classes, is_walk_regular, walk_table

EXIT_OK, EXIT_NONE, EXIT_ERROR, EXIT_COSPECTRAL, EXIT_ILL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    if v is None:
        return "n/a"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _load(args):
    if bool(args.input) == bool(args.g6):
        raise UsageError("give exactly one of --input PATH or --g6 STRING")
    if args.g6:
        return read_graph(args.g6)
    text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    return read_graph(text)


def _vertex(g, label: int) -> int:
    if not 1 <= label <= g.n:
        raise UsageError(f"vertex {label} out of range 1..{g.n}")
    return label - 1


def _emit_rows(header, rows, fmt, out):
    if fmt == "csv":
        out.write(",".join(header) + "\n")
        for r in rows:
            out.write(",".join(_fmt(v) for v in r) + "\n")
        return
    cells = [header] + [[_fmt(v) for v in r] for r in rows]
    widths = [max(len(c[k]) for c in cells) for k in range(len(header))]
    for c in cells:
        out.write("  ".join(s.rjust(w) for s, w in zip(c, widths)) + "\n")


# analyze -------------------------------------------------------------------------


def cmd_analyze(args, out) -> int:
    g = _load(args)
    if not g.is_undirected:
        raise UsageError("analyze needs an undirected graph")
    sd = spectral_data(g)
    beta = args.beta
    alpha = args.alpha if args.alpha is not None else cen.default_alpha(g, sd)
    cen.check_alpha(alpha, sd.rho)
    deg = g.adjacency.sum(axis=1)
    ev = cen.ec(g, sd) if g.n and is_connected(g) else None
    scp = cen.sc_profile(g, beta, sd)
    rcv = cen.rc(g, alpha, sd=sd)
    kz = cen.katz(g, alpha, sd=sd)
    tcv = cen.tc(g, beta, sd=sd) if beta * sd.mu_max <= cen.RESCALE_THRESHOLD else None
    exact = bool(np.all(g.adjacency == np.round(g.adjacency)))
    classes = cospectral_classes(g, walk_table(g)) if exact else None
    entropy = cen.walk_entropy(g, beta, sd) if g.n else None

    rows = []
    for i in range(g.n):
        rows.append([i + 1, float(deg[i]), None if ev is None else float(ev[i]), float(scp.scores[i]),
                     float(rcv[i]), float(kz[i]), None if tcv is None else float(tcv[i])])
    header = ["vertex", "degree", "EC", f"SC(beta={beta:g})", f"RC(alpha={alpha:.6g})", "Katz", "TC"]
    summary = {
        "n": g.n,
        "kind": g.kind,
        "beta": beta,
        "alpha": alpha,
        "sc_log_scale": scp.log_scale,
        "d": sd.d,
        "mu": [float(m) for m in sd.mu],
        "multiplicities": [int(m) for m in sd.mult],
        "spectral_radius": sd.rho,
        "walk_regular": None if classes is None else len(classes) <= 1,
        "cospectral_classes": None if classes is None else [[v + 1 for v in c] for c in classes],
        "cospectrality": "exact" if exact else "not computed (non-integer weights)",
        "walk_entropy": entropy,
        "grouping_residual": sd.report.residual,
    }
    if args.format == "json":
        summary["vertices"] = [dict(zip(["vertex", "degree", "EC", "SC", "RC", "Katz", "TC"], r)) for r in rows]
        out.write(json.dumps(summary, indent=2) + "\n")
        return EXIT_OK
    _emit_rows(header, rows, args.format, out)
    if args.format == "table":
        out.write("\n")
        if scp.rescaled:
            out.write(f"SC scores rescaled by exp(-{scp.log_scale:.12g})\n")
        out.write(f"spectrum: d = {sd.d}, spectral radius = {_fmt(sd.rho)}\n")
        for m, k in zip(sd.mu, sd.mult):
            out.write(f"  mu = {_fmt(float(m))}  (multiplicity {k})\n")
        if classes is not None:
            out.write("walk regular: " + ("yes" if len(classes) <= 1 else "no") + "\n")
            out.write("cospectral classes: " + " ".join("{" + ",".join(str(v + 1) for v in c) + "}" for c in classes) + "\n")
        if entropy is not None:
            out.write(f"walk entropy (beta={beta:g}): {_fmt(entropy)}  [ln n = {_fmt(math.log(g.n))}]\n")
    return EXIT_OK


# interlace -----------------------------------------------------------------------


def _interval(args, measure, sd):
    if measure in ("sc", "tc"):
        if args.beta_max <= 0:
            raise UsageError("--beta-max must be positive")
        return (0.0, args.beta_max)
    eps = args.alpha_margin
    if not 0 < eps < 0.5:
        raise UsageError("--alpha-margin must be in (0, 0.5)")
    return (eps, (1 - eps) / sd.rho) if sd.rho > 0 else (eps, 1.0)


def cmd_interlace(args, out) -> int:
    g = _load(args)
    if not args.pair:
        raise UsageError("--pair I J is required")
    i, j = (_vertex(g, v) for v in args.pair)
    if i == j:
        raise UsageError("--pair needs two different vertices")
    measure = args.measure
    sd = spectral_data(g) if g.is_undirected else None
    interval = _interval(args, measure, sd) if sd is not None else (0.0, args.beta_max)
    rep = find_interlacings(g, i, j, measure, interval, args.resolution, args.refine_tol, sd=sd)

    if args.plot:
        stem = Path(args.plot)
        stem = stem.with_suffix("") if stem.suffix in (".csv", ".svg") else stem
        x, raw, resc = mesh_values(g, i, j, measure, interval, args.resolution, sd=sd)
        Path(f"{stem}.csv").write_text(curve_csv(x, raw, resc))
        label = measure.upper()
        Path(f"{stem}.svg").write_text(curve_svg(
            x, resc, rep.values, [t.value for t in rep.tangencies],
            title=f"rescaled {label}({i + 1}) - {label}({j + 1})",
            xlabel="alpha" if measure in ("rc", "katz") else "beta"))

    data = {
        "pair": [i + 1, j + 1],
        "measure": measure,
        "interval": list(rep.interval),
        "resolution": rep.resolution,
        "cospectral": rep.cospectral,
        "ill_conditioned": rep.ill_conditioned,
        "exact_cospectrality": rep.exact_verdict,
        "count": rep.count,
        "zeros": [{"value": z.value, "bracket": list(z.bracket), "residual": z.residual} for z in rep.zeros],
        "tangencies": [{"value": t.value, "abs_value": t.abs_value} for t in rep.tangencies],
        "bounds": None if rep.bounds is None else {
            "d_minus_1": rep.bounds.d_minus_1, "sign_change": rep.bounds.sign_change,
            "n_minus_1": rep.bounds.n_minus_1},
    }
    if args.format == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    elif args.format == "csv":
        out.write("kind,value\n")
        for z in rep.zeros:
            out.write(f"crossing,{z.value!r}\n")
        for t in rep.tangencies:
            out.write(f"tangency,{t.value!r}\n")
    else:
        out.write(f"pair ({i + 1}, {j + 1}), measure {measure}, interval "
                  f"[{_fmt(rep.interval[0])}, {_fmt(rep.interval[1])}], resolution {rep.resolution}\n")
        if rep.cospectral:
            out.write("vertices are cospectral: scores agree for every parameter\n")
        elif rep.ill_conditioned:
            out.write("ill-conditioned pair: not cospectral, but the difference is numerically zero\n")
        else:
            out.write(f"interlacing values: {rep.count}\n")
            for z in rep.zeros:
                out.write(f"  {_fmt(z.value)}\n")
            for t in rep.tangencies:
                out.write(f"  tangency (no sign change) near {_fmt(t.value)}, |g| = {t.abs_value:.3g}\n")
            if rep.bounds is not None:
                b = rep.bounds
                extra = f", n-1 = {b.n_minus_1}" if b.n_minus_1 is not None else ""
                out.write(f"bounds: sign changes = {b.sign_change}, d-1 = {b.d_minus_1}{extra}\n")
    if rep.cospectral:
        return EXIT_COSPECTRAL
    if rep.ill_conditioned:
        return EXIT_ILL
    return EXIT_OK if rep.count else EXIT_NONE


# search --------------------------------------------------------------------------


def cmd_search(args, out) -> int:
    if (args.n is None) == (args.input is None):
        raise UsageError("search needs exactly one of --n or --input (graph6 stream, '-' for stdin)")
    n = None
    if args.n is not None:
        n = tuple(args.n) if len(args.n) == 2 else args.n[0]
    source = None
    if args.input is not None:
        source = sys.stdin if args.input == "-" else args.input
    interval = (0.0, args.beta_max) if args.beta_max is not None else None
    spec = SearchSpec(n=n, connected_only=args.connected_only, graph6_source=source,
                      measures=tuple(args.measure), min_count=args.min_count, interval=interval,
                      resolution=args.resolution, refine_tol=args.refine_tol, predicate=args.predicate,
                      workers=args.workers)

    def stream(f):
        if args.format == "tsv":
            for ln in f.tsv_lines():
                out.write("# found " + ln + "\n")
            out.flush()

    result = scan(spec, resume=args.resume, on_finding=stream)
    if args.format == "json":
        out.write(json.dumps({
            "findings": [f.to_dict() for f in result.findings],
            "graphs_scanned": result.graphs_scanned,
            "errors": [{"line": ln, "message": m} for ln, m in result.errors],
            "elapsed_seconds": result.elapsed,
        }, indent=2) + "\n")
    else:
        for f in result.findings:
            for ln in f.tsv_lines():
                out.write(ln + "\n")
        for ln, msg in result.errors:
            out.write(f"# error line {ln}: {msg}\n")
        out.write(f"# {len(result.findings)} findings, {result.graphs_scanned} graphs scanned, "
                  f"{len(result.errors)} errors, {result.elapsed:.1f}s\n")
    return EXIT_OK


# cospectral ----------------------------------------------------------------------


def cmd_cospectral(args, out) -> int:
    g = _load(args)
    table = walk_table(g)
    classes = cospectral_classes(g, table)
    regular = is_walk_regular(g, table)
    if args.format == "json":
        out.write(json.dumps({"walk_regular": regular,
                              "classes": [[v + 1 for v in c] for c in classes]}) + "\n")
    else:
        for c in classes:
            out.write("{" + ",".join(str(v + 1) for v in c) + "}\n")
        out.write("walk regular: " + ("yes" if regular else "no") + "\n")
    return EXIT_OK if regular else EXIT_NONE


# parser --------------------------------------------------------------------------


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("WALKCENT_WORKERS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="walkcent", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def graph_opts(sp):
        sp.add_argument("--input", metavar="PATH", help="edge list or graph6 file ('-' for stdin)")
        sp.add_argument("--g6", metavar="STRING", help="inline graph6 string")

    def fmt(sp, choices=("table", "csv", "json"), default="table"):
        sp.add_argument("--format", choices=choices, default=default)

    a = sub.add_parser("analyze", help="per-vertex centralities, spectrum, cospectral classes")
    graph_opts(a)
    a.add_argument("--beta", type=float, default=1.0)
    a.add_argument("--alpha", type=float, default=None, help="default 1/(2 rho)")
    fmt(a)

    it = sub.add_parser("interlace", help="locate interlacing values for a vertex pair")
    graph_opts(it)
    it.add_argument("--pair", nargs=2, type=int, metavar=("I", "J"))
    it.add_argument("--measure", choices=("sc", "rc", "katz", "tc"), default="sc")
    it.add_argument("--beta-max", type=float, default=50.0)
    it.add_argument("--alpha-margin", type=float, default=RC_EPS)
    it.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    it.add_argument("--refine-tol", type=float, default=DEFAULT_REFINE_TOL)
    it.add_argument("--plot", metavar="PATH", help="write PATH.csv and PATH.svg")
    fmt(it)

    s = sub.add_parser("search", help="scan enumerated graphs or a graph6 stream")
    s.add_argument("--n", type=int, nargs="+", metavar="N", help="vertex count, or two values for a range")
    s.add_argument("--input", metavar="PATH", help="graph6 stream, one graph per line ('-' for stdin)")
    s.add_argument("--connected-only", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--measure", nargs="+", choices=("sc", "rc", "katz", "tc"), default=["sc"])
    s.add_argument("--predicate", choices=PREDICATES, default="k-interlacings")
    s.add_argument("--min-count", type=int, default=1)
    s.add_argument("--beta-max", type=float, default=None)
    s.add_argument("--resolution", type=int, default=2000)
    s.add_argument("--refine-tol", type=float, default=DEFAULT_REFINE_TOL)
    s.add_argument("--workers", type=int, default=_default_workers())
    s.add_argument("--resume", metavar="PATH")
    fmt(s, ("tsv", "json"), "tsv")

    c = sub.add_parser("cospectral", help="cospectral classes in exact arithmetic")
    graph_opts(c)
    fmt(c, ("table", "json"))
    return p


COMMANDS = {"analyze": cmd_analyze, "interlace": cmd_interlace, "search": cmd_search,
            "cospectral": cmd_cospectral}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, GraphError, SpectralError, ResumeError, ValueError, OSError, IndexError) as exc:
        print(f"walkcent {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
