"""Command-line front end.

Every verb reads JSON (a file path or `-` for stdin) and writes JSON with
sorted keys to stdout.  Exit codes: 0 success, 1 domain error, 2 bad input.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Any, List, Optional

from . import io
from .complexes import Complex
from .errors import ParseError, StellarError
from .group import degree, face_classes, gamma_graph, has_circuit, order_of
from .invariants import (
    classify_flat_quotient,
    h1,
    sphere_workflow,
    structure_report,
)
from .lens import lens_structure
from .manifold import check_manifold
from .moves import collapse_greedy, prism, subdivide, weld
from .quotient import QuotientComplex
from .structure import build_structure


def _read(path: str) -> Any:
    if path == "-":
        return io.loads(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return io.loads(handle.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _emit(data: Any) -> None:
    print(io.dumps(data))


def _parse_simplex_arg(text: str) -> tuple:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from exc
    if not parts:
        raise ParseError("empty simplex argument")
    return parts


def _default_budget() -> int:
    raw = os.environ.get("STELLAR_BUDGET")
    if raw is None:
        return 100_000
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseError(f"STELLAR_BUDGET must be an integer, got {raw!r}") from exc


def _group_json(group) -> dict:
    return {
        "rank": group.rank,
        "torsion": list(group.torsion),
        "group": group.describe(),
    }


def _report_json(report) -> dict:
    out = {
        "flat": report.flat,
        "degree": list(report.degree),
        "h1": _group_json(report.h1),
        "conclusion": report.conclusion,
        "evidence": report.evidence,
    }
    if report.surface is not None:
        out["surface"] = {"kind": report.surface.kind, "chi": report.surface.chi}
    if report.collapsed_to_point is not None:
        out["collapses_to_point"] = report.collapsed_to_point
    if report.prism_cells is not None:
        out["prism_cells"] = {str(d): n for d, n in sorted(report.prism_cells.items())}
    if report.gamma is not None:
        out["gamma"] = {
            "vertices": list(report.gamma.vertices),
            "edges": [list(e) for e in report.gamma.edges],
            "has_circuit": report.gamma_has_circuit,
        }
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stellar",
        description="Simplicial complexes over Z2: moves, structures, invariants.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def with_input(p):
        p.add_argument("input", help="JSON file, or - for stdin")
        return p

    with_input(sub.add_parser("chi", help="Euler characteristic of a complex"))
    with_input(sub.add_parser("boundary", help="mod-2 boundary of a complex"))
    p = with_input(sub.add_parser("subdivide", help="star a simplex at a fresh vertex"))
    p.add_argument("simplex", help="comma-separated vertices, e.g. 1,2")
    p.add_argument("vertex", type=int)
    p = with_input(sub.add_parser("weld", help="inverse subdivision"))
    p.add_argument("simplex", help="comma-separated vertices to restore")
    p.add_argument("vertex", type=int, help="vertex to erase")
    with_input(sub.add_parser("prism", help="prism over a uniform complex"))
    p = with_input(sub.add_parser("check", help="manifold check via vertex links"))
    p.add_argument("--budget", type=int, default=None)
    p = with_input(sub.add_parser("structure", help="build an apex structure"))
    p.add_argument("--budget", type=int, default=None)
    with_input(sub.add_parser("degree", help="degree string of a structure"))
    p = with_input(sub.add_parser("gamma", help="graph of high-order edge classes"))
    p.add_argument("--dot", metavar="FILE", help="also write Graphviz dot")
    p = sub.add_parser("lens", help="lens shell structure")
    p.add_argument("q", type=int)
    p.add_argument("p", type=int)
    with_input(sub.add_parser("h1", help="first homology of a complex or structure"))
    with_input(sub.add_parser("classify", help="surface class of a flat quotient"))
    p = with_input(sub.add_parser("sphere-check", help="full sphere workflow"))
    p.add_argument("--budget", type=int, default=None)
    with_input(sub.add_parser("collapse", help="greedy free-face collapse"))
    return parser


def _dispatch(args: argparse.Namespace) -> None:
    budget = getattr(args, "budget", None)
    if budget is None:
        budget = _default_budget()
    if args.verb == "chi":
        k = io.parse_complex(_read(args.input))
        _emit({"chi": k.euler_characteristic()})
    elif args.verb == "boundary":
        k = io.parse_complex(_read(args.input))
        _emit(io.complex_to_json(k.boundary()))
    elif args.verb == "subdivide":
        k = io.parse_complex(_read(args.input))
        _emit(io.complex_to_json(subdivide(k, _parse_simplex_arg(args.simplex), args.vertex)))
    elif args.verb == "weld":
        k = io.parse_complex(_read(args.input))
        _emit(io.complex_to_json(weld(k, _parse_simplex_arg(args.simplex), args.vertex)))
    elif args.verb == "prism":
        k = io.parse_complex(_read(args.input))
        _emit(io.complex_to_json(prism(k)))
    elif args.verb == "check":
        k = io.parse_complex(_read(args.input))
        report = check_manifold(k, budget=min(budget, 5000))
        _emit(
            {
                "is_manifold": report.is_manifold,
                "closed": report.closed,
                "dimension": report.dimension,
                "bad_vertices": report.bad_vertices,
                "undecided_vertices": report.unknown_vertices,
                "summary": report.describe(),
            }
        )
    elif args.verb == "structure":
        k = io.parse_complex(_read(args.input))
        result = build_structure(k, budget=budget)
        _emit(io.structure_to_json(result.structure))
    elif args.verb == "degree":
        structure = io.parse_structure(_read(args.input))
        _emit({"degree": list(degree(structure))})
    elif args.verb == "gamma":
        structure = io.parse_structure(_read(args.input))
        gamma = gamma_graph(structure)
        if args.dot:
            with open(args.dot, "w", encoding="utf-8") as handle:
                handle.write(gamma.to_dot() + "\n")
        _emit(
            {
                "vertices": list(gamma.vertices),
                "edges": [list(e) for e in gamma.edges],
                "has_circuit": has_circuit(gamma),
            }
        )
    elif args.verb == "lens":
        _emit(io.structure_to_json(lens_structure(args.q, args.p)))
    elif args.verb == "h1":
        data = _read(args.input)
        if isinstance(data, dict) and "sphere" in data:
            group = h1(io.parse_structure(data))
        else:
            group = h1(io.parse_complex(data))
        _emit(_group_json(group))
    elif args.verb == "classify":
        structure = io.parse_structure(_read(args.input))
        surface = classify_flat_quotient(QuotientComplex.from_structure(structure))
        _emit(
            {
                "kind": surface.kind,
                "chi": surface.chi,
                "orientable": surface.orientable,
                "boundary_circles": surface.boundary_circles,
                "detail": surface.detail,
            }
        )
    elif args.verb == "sphere-check":
        data = _read(args.input)
        if isinstance(data, dict) and "sphere" in data:
            report = structure_report(io.parse_structure(data))
        else:
            report = sphere_workflow(io.parse_complex(data), budget=budget)
        _emit(_report_json(report))
    elif args.verb == "collapse":
        k = io.parse_complex(_read(args.input))
        residue = collapse_greedy(k)
        _emit(
            {
                "residue": io.complex_to_json(residue),
                "collapsible": len(residue) == 1 and residue.dimension() == 0,
            }
        )
    else:  # pragma: no cover - argparse enforces the verb set
        raise ParseError(f"unknown verb {args.verb}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _dispatch(args)
    except ParseError as exc:
        print(io.dumps({"error": str(exc), "kind": "parse"}), file=sys.stderr)
        return 2
    except StellarError as exc:
        print(io.dumps({"error": str(exc), "kind": "domain"}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
