"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 hypothesis violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .graph import (
    Graph,
    GraphFormatError,
    classify,
    emit_edge_list,
    emit_graph6,
    parse_edge_list,
    parse_graph6,
    resolve_name,
    validate_for_modified_zeta,
)
from . import spectra, verify
from .plot import render_svg
from .spectra import pole_geometry, poles, reciprocal
from .verify import run_verification
from .walks import HypothesisError, IdentityViolation
from .zeta import derivative_identities

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_HYPOTHESIS = 0, 1, 2, 3


class InputError(Exception):
    pass


def _source_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--edges", metavar="FILE", help="edge-list file ('-' for stdin)")
    src.add_argument("--graph6", metavar="STRING", help="graph6-encoded graph")
    src.add_argument("--named", metavar="NAME[:PARAMS]", help="e.g. petersen, k4, k33, cycle:5, cube")
    p.add_argument("--tol", type=float, metavar="EPS", help=f"pole geometry tolerance (default {spectra.GEOMETRY_TOL:g})")
    p.add_argument("-v", "--verbose", action="store_true", help="diagnostics on stderr")
    return p


def _format_options(p: argparse.ArgumentParser, csv=False, svg=False):
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output")
    fmt.add_argument("--text", action="store_true", help="plain text output (default)")
    if csv:
        fmt.add_argument("--csv", nargs="?", const="-", metavar="PATH", help="CSV output ('-' for stdout)")
    if svg:
        p.add_argument("--svg", metavar="PATH", help="write an SVG plot ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groverzeta",
        description="Ihara and modified zeta functions of graphs via Grover-walk positive supports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    source = _source_options()

    p = sub.add_parser("info", parents=[source], help="graph summary and eligibility")
    _format_options(p)

    p = sub.add_parser("zeta", parents=[source], help="zeta reciprocal polynomial")
    p.add_argument("--modified", action="store_true", help="modified zeta function instead of Ihara")
    _format_options(p)

    p = sub.add_parser("poles", parents=[source], help="poles with multiplicities (CSV by default)")
    p.add_argument("--modified", action="store_true")
    _format_options(p, csv=True, svg=True)

    p = sub.add_parser("plot", parents=[source], help="two-panel SVG of Ihara and modified poles")
    p.add_argument("--svg", metavar="PATH", default="-", help="output path ('-' for stdout)")

    p = sub.add_parser("invariants", parents=[source], help="kappa, iota and derivative identities")
    _format_options(p)

    p = sub.add_parser("verify", parents=[source], help="run every applicable identity check")
    _format_options(p)

    p = sub.add_parser("gen", help="emit a named graph")
    p.add_argument("name", help="e.g. petersen, k4, k33, cycle:5, complete_bipartite:3,4")
    p.add_argument("--format", choices=["edges", "graph6"], default="edges")
    return parser


def load_graph(args) -> Graph:
    try:
        if args.edges is not None:
            text = sys.stdin.read() if args.edges == "-" else Path(args.edges).read_text()
            return parse_edge_list(text)
        if args.graph6 is not None:
            return parse_graph6(args.graph6)
        return resolve_name(args.named)
    except GraphFormatError as exc:
        where = args.edges if args.edges is not None else "graph6"
        raise InputError(f"{where}: {exc}") from None
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def cmd_info(args, g: Graph) -> int:
    c = classify(g)
    problems = validate_for_modified_zeta(g)
    info = {
        "n": g.n,
        "m": g.m,
        "min_degree": c.min_degree,
        "max_degree": c.max_degree,
        "regular_degree": c.regular_degree,
        "bipartite": c.bipartite,
        "connected": c.connected,
        "simple": c.simple,
        "modified_zeta_eligible": not problems,
        "violations": problems,
    }
    if args.json:
        _write(None, _dump(info))
        return EXIT_OK
    yn = {True: "yes", False: "no"}
    k = c.regular_degree if c.regular_degree is not None else "-"
    lines = [
        f"n={g.n} m={g.m} k={k} bipartite={yn[c.bipartite]}",
        f"δ={c.min_degree} Δ={c.max_degree} connected={yn[c.connected]} simple={yn[c.simple]}",
        f"modified zeta eligible: {yn[not problems]}" + (f" ({'; '.join(problems)})" if problems else ""),
    ]
    _write(None, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_zeta(args, g: Graph) -> int:
    z = reciprocal(g, "modified" if args.modified else "ihara")
    if args.json:
        _write(None, _dump(z.to_json()))
        return EXIT_OK
    lines = [
        f"kind: {z.kind}",
        f"degree: {z.polynomial.degree}",
        f"reciprocal: {z.polynomial}",
        f"cofactor: {z.cofactor_label}",
        f"core_degree: {z.core.degree}",
        f"core: {z.core}",
    ]
    _write(None, "\n".join(lines) + "\n")
    return EXIT_OK


def _pole_set(g: Graph, kind: str):
    k = classify(g).regular_degree
    if k is not None and k >= 3 and not validate_for_modified_zeta(g):
        return pole_geometry(g, kind)[1]
    return poles(reciprocal(g, kind), None)


def cmd_poles(args, g: Graph) -> int:
    kind = "modified" if args.modified else "ihara"
    ps = _pole_set(g, kind)
    if args.svg:
        _write(args.svg, render_svg([(f"{kind} zeta poles", ps)]))
    if args.json:
        _write(None, _dump(ps.to_json()))
    elif args.csv or not (args.svg or args.text):
        _write(args.csv, ps.to_csv())
    elif args.text:
        for p in ps.poles:
            _write(None, f"{p.value.real:+.12f} {p.value.imag:+.12f}i  x{p.multiplicity}  {ps.label(p)}\n")
    return EXIT_OK


def cmd_plot(args, g: Graph) -> int:
    panels = [
        ("(i) Ihara zeta poles", _pole_set(g, "ihara")),
        ("(ii) modified zeta poles", _pole_set(g, "modified")),
    ]
    _write(args.svg, render_svg(panels))
    return EXIT_OK


def cmd_invariants(args, g: Graph) -> int:
    report = derivative_identities(g)
    if args.json:
        _write(None, _dump(report.to_json()))
    else:
        lines = [f"kappa={report.kappa}"]
        if report.iota is not None:
            lines.append(f"iota={report.iota}")
        if report.iota_bruteforce is not None:
            lines.append(f"iota_bruteforce={report.iota_bruteforce}")
        for c in report.identities:
            lines.append(f"{c.name}={c.to_json()['lhs']} expected={c.to_json()['rhs']} pass={str(c.passed).lower()}")
        lines.extend(f"note: {n}" for n in report.notes)
        lines.append(f"pass={str(report.passed).lower()}")
        _write(None, "\n".join(lines) + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args, g: Graph) -> int:
    report = run_verification(g)
    _write(None, _dump(report.to_json()) if args.json else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_gen(args) -> int:
    try:
        g = resolve_name(args.name)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(None, emit_graph6(g) + "\n" if args.format == "graph6" else emit_edge_list(g, header=False))
    return EXIT_OK


COMMANDS = {
    "info": cmd_info,
    "zeta": cmd_zeta,
    "poles": cmd_poles,
    "plot": cmd_plot,
    "invariants": cmd_invariants,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            return cmd_gen(args)
        if args.tol is not None:
            # one command per process, so a module-level override is safe
            spectra.GEOMETRY_TOL = verify.GEOMETRY_TOL = args.tol
        g = load_graph(args)
        if args.verbose:
            print(f"loaded graph n={g.n} m={g.m}", file=sys.stderr)
        return COMMANDS[args.command](args, g)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HypothesisError as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except IdentityViolation as exc:
        print(f"identity failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
