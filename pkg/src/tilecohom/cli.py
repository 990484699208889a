"""Command line front end.

Subcommands: atlas, omega, cohomology, render, compare.  Exit codes:
0 on success, 1 when any verdict fails, 2 on parse/validation errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .pipeline import (
    MissingTable,
    RunConfig,
    compare_routes,
    report_to_json,
    run_pipeline,
    _write_atomic,
)
from .tiling import ParseError, RuleViolation, ValidationError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tilecohom",
        description="Cohomology workbench for planar substitution tiling spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("system", help="tiling-system JSON file")
        p.add_argument("--max-level", type=int, default=12,
                       help="maximum substitution level for closures")
        p.add_argument("--json", metavar="PATH", default=None,
                       help="write the report JSON here")

    p_atlas = sub.add_parser("atlas", help="star atlas class counts and orders")
    add_common(p_atlas)

    p_omega = sub.add_parser("omega", help="edge rotation values and winding numbers")
    add_common(p_omega)

    p_coh = sub.add_parser("cohomology", help="run the cohomology route(s)")
    add_common(p_coh)
    p_coh.add_argument("--route", choices=["spectral", "mapping-torus", "both"],
                       default="both")
    p_coh.add_argument("--out", metavar="DIR", default=None,
                       help="output directory for report and figures")
    p_coh.add_argument("--svg", action="store_true",
                       help="emit star-class SVG drawings (requires --out)")
    p_coh.add_argument("--fixture-h0", metavar="JSON", default=None,
                       help='override h0_T0, e.g. \'{"rank": 2, "torsion": [5]}\'')

    p_render = sub.add_parser("render", help="star-class SVG drawings")
    p_render.add_argument("system")
    p_render.add_argument("--max-level", type=int, default=12)
    p_render.add_argument("--out", metavar="DIR", required=True)

    p_cmp = sub.add_parser("compare", help="compare two report files")
    p_cmp.add_argument("report1")
    p_cmp.add_argument("report2")
    return parser


def _emit(report: dict, json_path: str | None):
    text = report_to_json(report)
    if json_path:
        _write_atomic(json_path, text)
    sys.stdout.write(text)


def _atlas_command(args, with_omega: bool) -> int:
    cfg = RunConfig(
        system_path=args.system,
        route="mapping-torus",
        max_level=args.max_level,
    )
    # atlas/omega need no hull computation: run the geometric front half only
    from .atlas import check_isotropy, grow_star_closure
    from .tiling import load_system
    from .approximant import Symbolic1DSystem
    from .winding import assign_rho, dagger_orders, omega_chain

    system = load_system(args.system)
    if isinstance(system, Symbolic1DSystem):
        report = {"system": system.name,
                  "atlas": {"tile_classes": len(system.alphabet)}}
        _emit(report, args.json)
        return 0
    atlas = grow_star_closure(system, max_level=args.max_level)
    counts = atlas.counts()
    report = {
        "system": system.name,
        "atlas": {
            "counts": {
                "tile_classes": counts[0],
                "edge_star_classes": counts[1],
                "vertex_star_classes": counts[2],
            },
            "closure_level": atlas.closure_level,
            "orders": list(dagger_orders(atlas)),
            "isotropy": check_isotropy(atlas)["isotropy"],
        },
    }
    if with_omega:
        rho = assign_rho(atlas)
        omega = omega_chain(atlas, rho)
        report["rho"] = [
            {"edge_class": i, "turns": [rho[i].numerator, rho[i].denominator]}
            for i in range(len(atlas.edge_classes))
        ]
        report["omega"] = [
            {"vertex_class": i, "winding": omega[i]}
            for i in range(len(atlas.vertex_classes))
        ]
    _emit(report, args.json)
    return 0


def _cohomology_command(args) -> int:
    overrides = {}
    if args.fixture_h0:
        overrides["h0_T0"] = json.loads(args.fixture_h0)
    cfg = RunConfig(
        system_path=args.system,
        route=args.route,
        max_level=args.max_level,
        out_dir=args.out,
        emit_svg=args.svg,
        fixture_overrides=overrides,
    )
    report = run_pipeline(cfg)
    _emit(report, args.json)
    return 0 if report["passed"] else 1


def _render_command(args) -> int:
    from .atlas import grow_star_closure
    from .svg import render_star_svg
    from .tiling import load_system
    from .winding import assign_rho, omega_chain

    system = load_system(args.system)
    atlas = grow_star_closure(system, max_level=args.max_level)
    rho = assign_rho(atlas)
    omega = omega_chain(atlas, rho)
    documents = render_star_svg(atlas, rho=rho, omega=omega)
    os.makedirs(args.out, exist_ok=True)
    for name, doc in sorted(documents.items()):
        _write_atomic(os.path.join(args.out, name), doc)
    sys.stdout.write(f"wrote {len(documents)} SVG files to {args.out}\n")
    return 0


def _compare_command(args) -> int:
    reports = []
    for path in (args.report1, args.report2):
        try:
            with open(path) as fh:
                reports.append(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read report {path}: {exc}") from exc
    verdict = compare_routes(reports[0], reports[1])
    sys.stdout.write(json.dumps(verdict, sort_keys=True, indent=1) + "\n")
    return 0 if verdict["passed"] else 1


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "atlas":
            return _atlas_command(args, with_omega=False)
        if args.command == "omega":
            return _atlas_command(args, with_omega=True)
        if args.command == "cohomology":
            return _cohomology_command(args)
        if args.command == "render":
            return _render_command(args)
        if args.command == "compare":
            return _compare_command(args)
        parser.error("unknown command")
    except (ParseError, ValidationError, RuleViolation, MissingTable,
            json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
