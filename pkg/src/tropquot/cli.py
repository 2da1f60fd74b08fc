"""Command line front end.

Exit codes: 0 success, 1 mathematical failure (invalid fan, FAIL verdict),
2 input error.  Output is JSON on stdout and is deterministic.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .errors import TropError
from .extended import make_point
from .io import dumps, fan_to_dict, load_fan, load_point, parse_rational
from .polyhedra import Cone, dual_cone, hilbert_basis, semigroup, validate_fan
from .quotient import verify_quotient
from .serialize import cone_json, fmt, fmt_exp, monomial_point_json, trop_point_json, vector
from .tropicalize import orbit_cone_of, retract, section, skeleton_graph, trop
from .valued import KPoint, MonomialPoint, orbit_basis

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _parse_vectors(text: str, what: str) -> list[list[int]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: not JSON ({exc.msg})") from exc
    if not isinstance(data, list) or not all(
        isinstance(v, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in v) for v in data
    ):
        raise InputError(f"{what}: expected a list of integer vectors such as [[1,0],[1,2]]")
    return data


def _parse_indices(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise InputError(f"cone indices must be comma-separated integers, got {text!r}") from exc


def _cone_arg(args) -> tuple[Cone, object]:
    if args.rays is not None:
        rays = _parse_vectors(args.rays, "--rays")
        if args.rank is None and not rays:
            raise InputError("--rank is required for the zero cone")
        rank = args.rank if args.rank is not None else len(rays[0])
        return Cone(tuple(map(tuple, rays)), rank), None
    if args.fan is None or args.cone is None:
        raise InputError("give either --rays, or --fan together with --cone")
    fan = load_fan(args.fan)
    return fan.cone_from_indices(_parse_indices(args.cone)), fan


def _values(u, sigma, display: str) -> list[dict]:
    out = []
    for s in semigroup(sigma).hilbert_basis:
        v = u(s)
        row = {"character": vector(s), "value": fmt(v)}
        if display == "exp":
            row["abs"] = fmt_exp(v)
        out.append(row)
    return out


def _with_values(payload: dict, u, display: str) -> dict:
    # chart values are only printed on request, so the default output is the bare point
    if display == "exp":
        payload["values"] = _values(u, u.stratum, display)
    return payload


def cmd_validate(args) -> int:
    fan = load_fan(args.fan)
    report = validate_fan(fan)
    print(dumps({"fan": fan_to_dict(fan), "cones": len(fan.cones), **report.to_dict()}), end="")
    return EXIT_OK if report.valid else EXIT_FAIL


def _load_valid_fan(source):
    fan = load_fan(source)
    report = validate_fan(fan)
    if not report.valid:
        raise InputError(f"{source}: not a fan ({report.failures[0]['kind']}); run 'validate' for details")
    return fan


def cmd_dual(args) -> int:
    c, _ = _cone_arg(args)
    d = dual_cone(c)
    print(dumps({"cone": [vector(r) for r in c.rays], "dual": [vector(r) for r in d.rays],
                 "dual_pointed": d.is_pointed}), end="")
    return EXIT_OK


def cmd_hilbert(args) -> int:
    c, fan = _cone_arg(args)
    if fan is not None:
        sg = semigroup(c)
        out = {"cone": cone_json(c, fan), "dual": [vector(r) for r in sg.parent_cone.rays],
               "generators": [vector(s) for s in sg.hilbert_basis]}
    else:
        hb = hilbert_basis(c)
        out = {"cone": [vector(r) for r in c.rays], "hilbert_basis": [vector(s) for s in hb.hilbert_basis]}
    print(dumps(out), end="")
    return EXIT_OK


def cmd_trop(args) -> int:
    fan = _load_valid_fan(args.fan)
    x = load_point(args.point, fan)
    u = trop(x)
    print(dumps(_with_values(trop_point_json(u), u, args.display)), end="")
    return EXIT_OK


def cmd_retract(args) -> int:
    fan = _load_valid_fan(args.fan)
    x = load_point(args.point, fan)
    p = retract(x)
    print(dumps(_with_values(monomial_point_json(p), p.u, args.display)), end="")
    return EXIT_OK


def cmd_section(args) -> int:
    fan = _load_valid_fan(args.fan)
    if args.point is not None:
        x = load_point(args.point, fan)
        if not isinstance(x, MonomialPoint):
            raise InputError("section expects a monomial point file (or --stratum/--rep)")
        u = x.u
    else:
        if args.rep is None:
            raise InputError("give --point, or --rep (with optional --stratum)")
        tau = fan.cone_from_indices(_parse_indices(args.stratum or ""))
        v = [parse_rational(s, "--rep") for s in args.rep.split(",")]
        u = make_point(fan, tau, v)
    p = section(u)
    print(dumps(_with_values(monomial_point_json(p), p.u, args.display)), end="")
    return EXIT_OK


def cmd_orbit(args) -> int:
    fan = _load_valid_fan(args.fan)
    x = load_point(args.point, fan)
    if not isinstance(x, KPoint):
        raise InputError("orbit expects a k-point file")
    tau = orbit_cone_of(x)
    print(dumps({
        "orbit_cone": cone_json(tau, fan),
        "orbit_dim": fan.ambient_rank - tau.dim,
        "basis": [vector(b) for b in orbit_basis(tau)],
    }), end="")
    return EXIT_OK


def cmd_verify(args) -> int:
    fan = _load_valid_fan(args.fan)
    if args.samples < 1:
        raise InputError("--samples must be at least 1")
    report = verify_quotient(fan, args.samples, args.seed, negative_control=args.negative_control)
    print(dumps(report.to_dict(include_points=not args.no_points)), end="")
    if args.figure:
        from .plotting import figure_svg, trop_scatter_figure

        Path(args.figure).write_text(figure_svg(trop_scatter_figure(report, fan)), encoding="utf-8")
    return EXIT_OK if report.passed else EXIT_FAIL


def _graph_json(g) -> dict:
    out = {
        "fan": g.fan.name,
        "vertices": [
            {"id": i, "stratum": g.fan.ray_indices(c), "dim": d}
            for i, (c, d) in enumerate(zip(g.vertices, g.dims()))
        ],
        "edges": [list(e) for e in g.edges],
        "marked": {k: trop_point_json(u) for k, u in g.marked.items()},
    }
    seg = g.segment()
    if seg is not None:
        out["segment"] = seg
    return out


def cmd_skeleton(args) -> int:
    fan = _load_valid_fan(args.fan)
    g = skeleton_graph(fan)
    print(dumps(_graph_json(g)), end="")
    if args.svg:
        from .plotting import write_svg

        write_svg(g, args.svg)
    return EXIT_OK


def cmd_plot(args) -> int:
    from .plotting import write_svg

    fan = _load_valid_fan(args.fan)
    target = skeleton_graph(fan) if args.what == "skeleton" else fan
    write_svg(target, args.output)
    print(dumps({"written": str(args.output), "what": args.what}), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropquot", description="Extended tropicalization of toric varieties.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_fan(sp, required=True):
        sp.add_argument("--fan", required=required, help="fan JSON file or corpus name (A1, A2, P1, P2, F1, SING)")

    def with_display(sp):
        sp.add_argument("--display", choices=["val", "exp"], default="val",
                        help="'exp' also lists chart values with approximate absolute values exp(-val)")

    sp = sub.add_parser("validate", help="check the fan axioms")
    with_fan(sp)
    sp.set_defaults(func=cmd_validate)

    for name, func, helptext in (("dual", cmd_dual, "dual cone"),
                                 ("hilbert", cmd_hilbert, "Hilbert basis of a cone, or generators of S_sigma")):
        sp = sub.add_parser(name, help=helptext)
        with_fan(sp, required=False)
        sp.add_argument("--cone", help="comma-separated ray indices into the fan")
        sp.add_argument("--rays", help="cone generators as JSON, e.g. [[2,-1],[0,1]]")
        sp.add_argument("--rank", type=int, help="lattice rank (needed for the zero cone)")
        sp.set_defaults(func=func)

    for name, func in (("trop", cmd_trop), ("retract", cmd_retract), ("orbit", cmd_orbit)):
        sp = sub.add_parser(name)
        with_fan(sp)
        sp.add_argument("--point", required=True, help="point JSON file")
        with_display(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("section", help="skeleton point of an extended tropical point")
    with_fan(sp)
    sp.add_argument("--point", help="monomial point JSON file")
    sp.add_argument("--stratum", help="comma-separated ray indices of the stratum cone")
    sp.add_argument("--rep", help="comma-separated rationals")
    with_display(sp)
    sp.set_defaults(func=cmd_section)

    sp = sub.add_parser("verify-quotient", help="sampled check that trop fibers are affinoid-torus orbits")
    with_fan(sp)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--negative-control", action="store_true",
                    help="inject one non-unit translation; the verdict must become FAIL")
    sp.add_argument("--no-points", action="store_true", help="omit the sampled points from the report")
    sp.add_argument("--figure", help="also write an SVG scatter of the sampled fibers")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("skeleton", help="strata graph of N_R(fan)")
    with_fan(sp)
    sp.add_argument("--svg", help="also write the skeleton figure to this file")
    sp.set_defaults(func=cmd_skeleton)

    sp = sub.add_parser("plot", help="SVG figure of the fan or its skeleton")
    with_fan(sp)
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--what", choices=["fan", "skeleton"], default="fan")
    sp.set_defaults(func=cmd_plot)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, TropError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
