"""Command-line entry point: ``kneser-toughness <subcommand> ...``.

Machine formats (json, csv) are the stable contract; ``text`` is for people.
Only resource caps may come from the environment:

    KNESER_WORKERS          default worker count
    KNESER_PRECISION_CAP    bit cap for the interval threshold
    KNESER_VERTEX_CAP       largest graph that will be materialised
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .combinatorics import kk_neighborhood_bound
from .components import edge_table, table_csv
from .families import Threshold, build_family, diversity, is_intersecting, threshold
from .graphs import (
    DEFAULT_VERTEX_CAP,
    GraphError,
    KneserParams,
    ResourceCapExceeded,
    brute_force_max_independent_set,
    brute_force_toughness,
    build_kneser,
    export_edge_list,
    mask_to_set,
)
from .partitions import GENERAL_FROM, SearchError, searched_instance_f, search_range
from .spectral import (
    brouwer_gu_floor,
    hmp_coefficient,
    hoffman_bound,
    kneser_mohar_bounds,
    kneser_spectrum,
    verify_spectrum_annihilation,
)
from .threshold import PRECISION_CAP, UndecidedComparison, quadratic_threshold
from .verifier import (
    DEFAULT_MAX_N,
    Method,
    UnsupportedInstance,
    VerificationFailed,
    default_routing,
    load_certificate,
    recheck_certificate,
    tk_window,
    verify_toughness,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{name} must be an integer, got {raw!r}")


def _frac(x: Fraction) -> str:
    return str(x)


def _emit(args: argparse.Namespace, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _params(args: argparse.Namespace) -> KneserParams:
    return KneserParams(args.n, args.k)


# -- subcommands ----------------------------------------------------------------------


def cmd_spectrum(args: argparse.Namespace) -> int:
    p = _params(args)
    spec = kneser_spectrum(p)
    lap = spec.laplacian()
    checked = None
    if args.check:
        checked = verify_spectrum_annihilation(build_kneser(p, args.vertex_cap), spec)
    rows = [(str(v), str(m)) for v, m in spec.entries]
    if args.format == "csv":
        out = _csv(["eigenvalue", "multiplicity"], rows)
    elif args.format == "json":
        out = _dump({"params": str(p), "eigenvalues": [{"value": v, "multiplicity": m} for v, m in rows],
                     "mu2": str(lap.algebraic_connectivity), "muMax": str(lap.largest),
                     "traceIdentities": spec.trace_identities_hold(), "annihilation": checked})
    else:
        lines = [f"{p}: degree {spec.degree}, order {spec.order}"]
        lines += [f"  {v:>6} x {m}" for v, m in rows]
        lines.append(f"  mu2 = {lap.algebraic_connectivity}, mu_max = {lap.largest}")
        if checked is not None:
            lines.append(f"  annihilation check: {'ok' if checked else 'FAILED'}")
        out = "\n".join(lines)
    _emit(args, out)
    return EXIT_OK if checked is not False and spec.trace_identities_hold() else EXIT_FAILED


def cmd_bounds(args: argparse.Namespace) -> int:
    p = _params(args)
    record: dict[str, Any] = {
        "params": str(p),
        "hmpCoefficient": _frac(hmp_coefficient(p)),
        "hoffman": str(hoffman_bound(p)),
        "brouwerGuFloor": _frac(brouwer_gu_floor(p)),
        "thresholds": {t.value: str(threshold(t, p)) for t in Threshold if _threshold_ok(t, p)},
    }
    if args.t is not None:
        lo, hi = kneser_mohar_bounds(p, args.t)
        record["mohar"] = {"t": str(args.t), "lower": _frac(lo), "upper": _frac(hi)}
    if args.kk is not None:
        record["kk"] = {"q": str(args.kk), "bound": str(kk_neighborhood_bound(args.kk, p))}
    if args.format == "csv":
        flat = [(k, v) for k, v in record.items() if isinstance(v, str)]
        flat += [(f"threshold.{k}", v) for k, v in record["thresholds"].items()]
        for key in ("mohar", "kk"):
            if key in record:
                flat += [(f"{key}.{k}", v) for k, v in record[key].items()]
        out = _csv(["quantity", "value"], flat)
    elif args.format == "json":
        out = _dump(record)
    else:
        out = "\n".join(f"{k}: {v}" for k, v in record.items())
    _emit(args, out)
    return EXIT_OK


def _threshold_ok(t: Threshold, p: KneserParams) -> bool:
    try:
        threshold(t, p)
    except ValueError:
        return False
    return True


def cmd_window(args: argparse.Namespace) -> int:
    p = _params(args)
    win = tk_window(p)
    rec = {"params": str(p), "cLow": str(win.c_low), "cHigh": str(win.c_high), "empty": win.empty}
    if args.threshold:
        q = quadratic_threshold(p.k, precision_cap=args.precision_cap)
        rec["quadraticThreshold"] = {"lower": _frac(q.lower), "upper": _frac(q.upper),
                                     "minN": str(q.min_n), "chainHolds": q.chain_holds,
                                     "escalations": str(q.escalations)}
    if args.format == "csv":
        out = _csv(["n", "k", "cLow", "cHigh", "empty"], [(p.n, p.k, win.c_low, win.c_high, win.empty)])
    elif args.format == "json":
        out = _dump(rec)
    else:
        out = f"{p}: window [{win.c_low}, {win.c_high}]" + (" (empty)" if win.empty else "")
        if args.threshold:
            out += f"\nquadratic threshold: n >= {rec['quadraticThreshold']['minN']}"
    _emit(args, out)
    return EXIT_OK


def cmd_families(args: argparse.Namespace) -> int:
    p = _params(args)
    fam = build_family(args.kind, p, x=args.x, a=args.a)
    gamma, central = diversity(fam)
    members = sorted(fam.members)
    rec = {"params": str(p), "kind": args.kind, "size": str(len(members)), "diversity": str(gamma),
           "central": [str(c) for c in sorted(central)], "intersecting": is_intersecting(fam),
           "members": [[str(i) for i in mask_to_set(m)] for m in members]}
    if args.format == "csv":
        out = _csv(["member"], [(" ".join(map(str, mask_to_set(m))),) for m in members])
    elif args.format == "json":
        out = _dump(rec)
    else:
        out = f"{args.kind} in {p}: size {len(members)}, diversity {gamma}, central {sorted(central)}"
    _emit(args, out)
    return EXIT_OK if rec["intersecting"] else EXIT_FAILED


def cmd_search(args: argparse.Namespace) -> int:
    p = _params(args)
    if (p.n, p.k) not in GENERAL_FROM:
        raise UnsupportedInstance(f"no edge-floor table for {p}")
    if args.c_low is None or args.c_high is None:
        lo, hi = next((lo, hi) for lo, hi, m in default_routing(p) if m is Method.PARTITION_SEARCH)
        c_range = (args.c_low or lo, args.c_high or hi)
    else:
        c_range = (args.c_low, args.c_high)
    outcomes = search_range(p, c_range, searched_instance_f(p), workers=args.workers)
    survivors = sum(len(o.survivors) for o in outcomes)
    if args.format == "json":
        out = "\n".join(cell.to_json(p) for o in outcomes for cell in o.cells)
    elif args.format == "csv":
        rows = [(cell.c, cell.s, cell.budget, cell.ab_pairs, cell.partitions, len(cell.survivors))
                for o in outcomes for cell in o.cells]
        out = _csv(["c", "s", "U", "abPairs", "partitions", "survivors"], rows)
    else:
        lines = [f"c={o.problem.c}: {o.cells_checked} cells, {len(o.survivors)} survivors" for o in outcomes]
        lines.append(f"total survivors: {survivors}")
        out = "\n".join(lines)
    _emit(args, out)
    return EXIT_OK if survivors == 0 else EXIT_FAILED


def cmd_enumerate(args: argparse.Namespace) -> int:
    rows = edge_table(range(args.min_n, args.max_n + 1), args.max_deg, args.min_girth, degree=args.degree)
    if args.format == "csv":
        out = table_csv(rows)
    elif args.format == "json":
        out = _dump([{"order": str(r.order), "maxEdges": None if r.max_edges is None else str(r.max_edges),
                      "edgeFloor": None if r.edge_floor is None else str(r.edge_floor)} for r in rows])
    else:
        out = "\n".join(f"|C|={r.order:>3}  e(C)<={r.max_edges}" for r in rows)
    _emit(args, out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    p = _params(args)
    if args.recheck:
        with open(args.recheck, encoding="utf-8") as fh:
            cert = load_certificate(fh.read())
        problems = recheck_certificate(cert, deep=args.deep)
        _emit(args, "\n".join(problems) if problems else f"certificate for {cert.params} re-verified")
        return EXIT_OK if not problems else EXIT_FAILED
    cert = verify_toughness(p, workers=args.workers, max_n=args.max_n)
    if args.format == "json":
        out = cert.to_json()
    else:
        lines = [f"t({p}) = {cert.toughness}",
                 f"window [{cert.window.c_low}, {cert.window.c_high}]"]
        for ev in cert.evidence:
            lines.append(f"  {ev.method.value:<17} c in [{ev.c_range[0]}, {ev.c_range[1]}]")
        out = "\n".join(lines)
    _emit(args, out)
    return EXIT_OK


def cmd_bruteforce(args: argparse.Namespace) -> int:
    p = _params(args)
    g = build_kneser(p, args.vertex_cap)
    t, cut = brute_force_toughness(g)
    alpha, _ = brute_force_max_independent_set(g)
    rec = {"params": str(p), "toughness": {"num": str(t.numerator), "den": str(t.denominator)},
           "cut": [str(v) for v in cut], "independenceNumber": str(alpha)}
    if args.format == "json":
        out = _dump(rec)
    elif args.format == "csv":
        out = _csv(["n", "k", "toughness", "cutSize", "alpha"], [(p.n, p.k, t, len(cut), alpha)])
    else:
        out = f"t({p}) = {t}  (cut of size {len(cut)}, alpha = {alpha})"
    _emit(args, out)
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    _emit(args, export_edge_list(build_kneser(_params(args), args.vertex_cap)))
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    workers = _env_int("KNESER_WORKERS", 1)
    vertex_cap = _env_int("KNESER_VERTEX_CAP", DEFAULT_VERTEX_CAP)
    precision_cap = _env_int("KNESER_PRECISION_CAP", PRECISION_CAP)

    parser = argparse.ArgumentParser(prog="kneser-toughness", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"),
                        help="default: json for verify, text otherwise")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--workers", type=int, default=workers)
    common.add_argument("--vertex-cap", type=int, default=vertex_cap)
    common.add_argument("--precision-cap", type=int, default=precision_cap)
    nk = argparse.ArgumentParser(add_help=False)
    nk.add_argument("--n", type=int, required=True)
    nk.add_argument("--k", type=int, required=True)

    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", parents=[common, nk], help="closed-form spectrum")
    s.add_argument("--check", action="store_true", help="verify exactly against the adjacency matrix")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("bounds", parents=[common, nk], help="spectral and extremal constants")
    s.add_argument("--t", type=int, help="component size for the edge-boundary bounds")
    s.add_argument("--kk", type=int, help="family size for the Kruskal-Katona bound")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("window", parents=[common, nk], help="component-count window")
    s.add_argument("--threshold", action="store_true", help="also decide the quadratic threshold for k")
    s.set_defaults(func=cmd_window)

    s = sub.add_parser("families", parents=[common, nk], help="build an intersecting family")
    s.add_argument("--kind", choices=("STAR", "HM", "G2"), default="STAR")
    s.add_argument("--x", type=int)
    s.add_argument("--a", type=int, nargs="+")
    s.set_defaults(func=cmd_families)

    s = sub.add_parser("search", parents=[common, nk], help="partition search over component profiles")
    s.add_argument("--c-low", type=int)
    s.add_argument("--c-high", type=int)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("enumerate", parents=[common], help="max edges of sparse biconnected components")
    s.add_argument("--min-n", type=int, default=6)
    s.add_argument("--max-n", type=int, default=16)
    s.add_argument("--max-deg", type=int, default=5)
    s.add_argument("--min-girth", type=int, default=6)
    s.add_argument("--degree", type=int, help="regular degree for the edge floor (default: --max-deg)")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", parents=[common, nk], help="build a toughness certificate")
    s.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    s.add_argument("--recheck", metavar="CERT", help="re-verify a stored certificate instead")
    s.add_argument("--deep", action="store_true", help="with --recheck, recompute all evidence")
    s.set_defaults(func=cmd_verify, default_format="json")

    s = sub.add_parser("bruteforce", parents=[common, nk], help="exhaustive toughness (small graphs)")
    s.set_defaults(func=cmd_bruteforce)

    s = sub.add_parser("export", parents=[common, nk], help="edge list in co-lex vertex order")
    s.set_defaults(func=cmd_export)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.format is None:
        args.format = getattr(args, "default_format", "text")
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except VerificationFailed as exc:
        print(f"verification failed at c={exc.cell}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except SearchError as exc:
        print(f"search failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (ResourceCapExceeded, UndecidedComparison) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphError, UnsupportedInstance, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
