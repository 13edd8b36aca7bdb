"""Command-line surface: reproducible, machine-readable cone computations.

Every subcommand prints one JSON document (default) or a short text
summary to stdout.  Randomized subcommands take an explicit --seed and
default to 0, never to wall-clock entropy, and the seed is echoed in the
report: identical inputs and flags produce byte-identical JSON.

Exit codes: 0 success or property true; 1 property false or violations
found; 2 usage or parse error; 3 numerical failure (non-convergence,
inconclusive realness).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import amenability as am
from . import cones as cn
from . import faces as fc
from . import fixtures as fx
from .errors import (
    ConvergenceError,
    NotHyperbolicError,
    NumericalInconsistencyError,
)
from .polynomials import (
    MODE_FLOAT,
    MODE_RATIONAL,
    Subspace,
    as_vector,
    format_scalar,
    load_polynomial,
    parse_scalar,
    poly_to_json_dict,
    save_polynomial,
    vector_to_json,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _parse_vector(arg: str, mode: str):
    """Inline comma-separated rationals/floats, or a path to a JSON list."""
    if os.path.exists(arg):
        with open(arg) as fh:
            data = json.load(fh)
        if isinstance(data, dict):
            data = data["coords"]
        return as_vector([parse_scalar(v, mode) for v in data], mode)
    return as_vector([parse_scalar(part.strip(), mode) for part in arg.split(",")], mode)


def _parse_basis(arg: str, mode: str, ambient: int) -> Subspace:
    with open(arg) as fh:
        data = json.load(fh)
    rows = data["basis"] if isinstance(data, dict) else data
    return Subspace.from_rows(
        [[parse_scalar(v, mode) for v in row] for row in rows], mode=mode, ambient_dim=ambient
    )


def _load_poly(path: str, mode_flag: str | None):
    p = load_polynomial(path)
    if mode_flag == "float" and p.mode == MODE_RATIONAL:
        return p.as_float()
    if mode_flag == "exact" and p.mode == MODE_FLOAT:
        raise ValueError("cannot promote a float polynomial file to exact mode")
    return p


def _emit(args, payload: dict, text: str | None = None) -> None:
    payload = {"command": args.command, "seed": getattr(args, "seed", 0), **payload}
    if args.output == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=1))
        sys.stdout.write("\n")
    else:
        sys.stdout.write((text or json.dumps(payload, sort_keys=True)) + "\n")


def _roots_json(roots, mode):
    return {
        "roots": [format_scalar(r, mode) if mode == MODE_RATIONAL else float(r) for r in roots.roots],
        "roots_float": [float(r) for r in roots.roots],
        "multiplicities": list(roots.multiplicities),
    }


def _cone_from_args(args):
    p = _load_poly(args.poly, args.mode)
    e = _parse_vector(args.direction, p.mode)
    return cn.new_cone(p, e, samples=getattr(args, "validate_samples", 0), seed=args.seed)


# -- subcommand bodies -------------------------------------------------------


def _cmd_check(args) -> int:
    p = _load_poly(args.poly, args.mode)
    e = _parse_vector(args.direction, p.mode)
    try:
        cone = cn.new_cone(p, e, samples=args.samples, seed=args.seed)
    except NotHyperbolicError as exc:
        witness = None if exc.witness is None else [float(v) for v in exc.witness]
        _emit(args, {"hyperbolic": False, "reason": str(exc), "witness": witness},
              text=f"not hyperbolic: {exc}")
        return EXIT_FALSE
    _emit(
        args,
        {"hyperbolic": True, "certification": cone.certification.to_json_dict(),
         "degree": cone.degree},
        text=f"hyperbolic ({cone.certification.kind}, N={args.samples})",
    )
    return EXIT_OK


def _cmd_eig(args) -> int:
    cone = _cone_from_args(args)
    roots = cn.eigenvalues(cone, _parse_vector(args.point, cone.mode))
    _emit(args, _roots_json(roots, cone.mode),
          text="eigenvalues: " + ", ".join(f"{float(r):.12g} (x{m})" for r, m in zip(roots.roots, roots.multiplicities)))
    return EXIT_OK


def _cmd_member(args, strict: bool) -> int:
    cone = _cone_from_args(args)
    x = _parse_vector(args.point, cone.mode)
    verdict = (cn.in_interior if strict else cn.member)(cone, x, method=args.method)
    _emit(args, {"member" if not strict else "interior": verdict, "method": args.method},
          text=str(verdict).lower())
    return EXIT_OK if verdict else EXIT_FALSE


def _cmd_mult(args) -> int:
    cone = _cone_from_args(args)
    sig = cn.multiplicity(cone, _parse_vector(args.point, cone.mode))
    _emit(
        args,
        {
            "multiplicity": sig.m,
            "zero_block": [float(v) for v in sig.zero_block],
            "positive_block": [float(v) for v in sig.positive_block],
        },
        text=f"multiplicity {sig.m}",
    )
    return EXIT_OK


def _cmd_derive(args) -> int:
    cone = _cone_from_args(args)
    derived = cn.derivative_cone(cone, args.order)
    save_polynomial(derived.p, args.out)
    _emit(args, {"written": args.out, "degree": derived.p.degree,
                 "terms": len(derived.p.terms)},
          text=f"wrote {args.out}")
    return EXIT_OK


def _cmd_face(args) -> int:
    if args.face_command == "make":
        cone = _cone_from_args(args)
        z = _parse_vector(args.witness, cone.mode)
        span = _parse_basis(args.basis, cone.mode, cone.num_vars)
        face = fc.make_face(cone, z, span, seed=args.seed)
        payload = fc.face_to_json_dict(face)
        if args.out:
            with open(args.out, "w") as fh:
                json.dump(payload, fh, indent=1, sort_keys=True)
                fh.write("\n")
        _emit(args, {"m": face.m, "dim": face.dim, "written": args.out},
              text=f"face: m={face.m}, dim={face.dim}")
        return EXIT_OK
    if args.face_command == "verify":
        with open(args.face) as fh:
            face = fc.face_from_json_dict(json.load(fh))
        report = fc.verify_face_representation(
            face, samples=args.samples, seed=args.seed, m_override=args.override_m
        )
        _emit(args, {"report": report.to_json_dict()},
              text=f"ok={report.ok} violations={len(report.violations)}")
        return EXIT_OK if report.ok else EXIT_FALSE
    if args.face_command == "discover":
        cone = _cone_from_args(args)
        z = _parse_vector(args.witness, cone.mode)
        found = fc.discover_span(cone, z, seed=args.seed)
        _emit(
            args,
            {
                "span": [vector_to_json(row, cone.mode) for row in found.span.basis],
                "dim": found.span.dim,
                "m": found.m,
                "confidence": {
                    "kernel_dim": found.kernel_dim,
                    "hessian_refined": found.hessian_refined,
                    "directions_tested": found.directions_tested,
                    "epsilons": list(found.epsilons),
                    "trivial_interior": found.trivial_interior,
                },
            },
            text=f"span dim {found.span.dim} (m={found.m})",
        )
        return EXIT_OK
    if args.face_command == "as-cone":
        with open(args.face) as fh:
            face = fc.face_from_json_dict(json.load(fh))
        cone = fc.face_as_cone(face, samples=args.samples, seed=args.seed)
        payload = cone.to_json_dict()
        if args.out:
            with open(args.out, "w") as fh:
                json.dump(payload, fh, indent=1, sort_keys=True)
                fh.write("\n")
        _emit(args, {"cone": payload, "written": args.out},
              text=f"face cone of degree {cone.degree} in {cone.num_vars} variables")
        return EXIT_OK
    raise ValueError(f"unknown face subcommand {args.face_command!r}")


def _cmd_intersect(args) -> int:
    p1 = _load_poly(args.poly1, args.mode)
    p2 = _load_poly(args.poly2, args.mode)
    e1 = _parse_vector(args.direction1, p1.mode)
    e2 = _parse_vector(args.direction2, p2.mode)
    k1 = cn.new_cone(p1, e1)
    k2 = cn.new_cone(p2, e2)
    z = _parse_vector(args.witness, p1.mode)
    result = fc.intersect(k1, k2, z, samples=args.samples, seed=args.seed)
    save_polynomial(result.cone.p, args.out)
    _emit(
        args,
        {
            "written": args.out,
            "span": [vector_to_json(r, p1.mode) for r in result.span.basis],
            "z_coords": vector_to_json(result.z_coords, p1.mode),
            "degree": result.cone.degree,
        },
        text=f"intersection cone written to {args.out}",
    )
    return EXIT_OK


def _cmd_amen(args) -> int:
    radii = tuple(float(r) for r in args.radii.split(","))
    if args.face is None and args.fixture is None:
        raise ValueError("amen needs either -f <face.json> or --fixture with --catalog-face")
    if args.face is None and args.catalog_face is None:
        raise ValueError("--fixture also needs --catalog-face (see `fixture emit` output)")
    if args.face:
        with open(args.face) as fh:
            face = fc.face_from_json_dict(json.load(fh))
        kwargs = {}
    else:
        fixture = fx.by_name(args.fixture, args.n, args.m)
        entry = fixture.face(args.catalog_face)
        face = fc.make_face(fixture.cone, entry.z, entry.span())
        kwargs = {
            "parent_projector": fixture.projector,
            "face_projector": entry.face_projector,
            "catalog_rows": entry.span_rows,
            "span_weights": entry.span_weights,
            "weights": fixture.weights,
        }
    est = am.amenability_estimate(
        face, samples=args.samples, seed=args.seed, radius_set=radii, **kwargs
    )
    _emit(args, {"estimate": est.to_json_dict()},
          text=f"kappa_hat = {est.kappa_hat}")
    return EXIT_OK


def _cmd_linreg(args) -> int:
    p = _load_poly(args.poly, args.mode)
    e = _parse_vector(args.direction, p.mode)
    cone = cn.new_cone(p, e)
    subspace = _parse_basis(args.subspace, p.mode, p.num_vars)
    witness = _parse_vector(args.witness, p.mode)
    est = am.linear_regularity_estimate(
        subspace,
        cone,
        witness,
        samples=args.samples,
        seed=args.seed,
        require_interior=not args.allow_boundary_witness,
    )
    _emit(args, {"estimate": est.to_json_dict()}, text=f"kappa_hat = {est.kappa_hat}")
    return EXIT_OK


def _cmd_fixture(args) -> int:
    if args.fixture_command == "list":
        names = fx.list_fixtures()
        _emit(args, {"fixtures": names}, text="\n".join(names))
        return EXIT_OK
    if args.fixture_command == "emit":
        fixture = fx.by_name(args.name, args.n, args.m)
        paths = fx.emit(fixture, args.dir)
        _emit(args, {"written": paths}, text="\n".join(paths))
        return EXIT_OK
    raise ValueError(f"unknown fixture subcommand {args.fixture_command!r}")


# -- parser ------------------------------------------------------------------


def _add_common(sp, point: bool = False):
    sp.add_argument("--mode", choices=["exact", "float"], default=None,
                    help="computation mode override (default: the polynomial file's)")
    sp.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    sp.add_argument("--output", choices=["json", "text"], default="json")
    if point:
        sp.add_argument("-x", "--point", required=True, help="point, inline or JSON file")


def _add_cone_args(sp):
    sp.add_argument("-p", "--poly", required=True, help="polynomial JSON file")
    sp.add_argument("-e", "--direction", required=True, help="hyperbolicity direction")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hypcone",
        description="hyperbolic polynomials and their cones: membership, eigenvalues, "
        "derivative relaxations, faces, intersections, and facial error bounds",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="validate a (polynomial, direction) pair")
    _add_cone_args(sp)
    sp.add_argument("-N", "--samples", type=int, default=1000)
    _add_common(sp)
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("eig", help="hyperbolic eigenvalues of a point")
    _add_cone_args(sp)
    _add_common(sp, point=True)
    sp.set_defaults(func=_cmd_eig)

    for name, strict in (("member", False), ("interior", True)):
        sp = sub.add_parser(name, help=f"{name} oracle for a point")
        _add_cone_args(sp)
        sp.add_argument("--method", choices=["signs", "eigen"], default="signs")
        _add_common(sp, point=True)
        sp.set_defaults(func=lambda a, s=strict: _cmd_member(a, s))

    sp = sub.add_parser("mult", help="multiplicity signature of a point")
    _add_cone_args(sp)
    _add_common(sp, point=True)
    sp.set_defaults(func=_cmd_mult)

    sp = sub.add_parser("derive", help="emit a derivative-relaxation polynomial")
    _add_cone_args(sp)
    sp.add_argument("-m", "--order", type=int, required=True)
    sp.add_argument("-o", "--out", required=True)
    _add_common(sp)
    sp.set_defaults(func=_cmd_derive)

    sp = sub.add_parser("face", help="face operations")
    fsub = sp.add_subparsers(dest="face_command", required=True)
    f1 = fsub.add_parser("make", help="build and verify a face descriptor")
    _add_cone_args(f1)
    f1.add_argument("-z", "--witness", required=True)
    f1.add_argument("-B", "--basis", required=True, help="span basis JSON file")
    f1.add_argument("-o", "--out", default=None, help="face JSON output path")
    _add_common(f1)
    f1.set_defaults(func=_cmd_face)
    f2 = fsub.add_parser("verify", help="sample the face representation")
    f2.add_argument("-f", "--face", required=True, help="face JSON file")
    f2.add_argument("-N", "--samples", type=int, default=10000)
    f2.add_argument("--override-m", type=int, default=None,
                    help="deliberately wrong relaxation order (negative control)")
    _add_common(f2)
    f2.set_defaults(func=_cmd_face)
    f3 = fsub.add_parser("discover", help="recover the span of the face of a point")
    _add_cone_args(f3)
    f3.add_argument("-z", "--witness", required=True)
    _add_common(f3)
    f3.set_defaults(func=_cmd_face)
    f4 = fsub.add_parser("as-cone", help="the face as a cone in span coordinates")
    f4.add_argument("-f", "--face", required=True)
    f4.add_argument("-N", "--samples", type=int, default=1000)
    f4.add_argument("-o", "--out", default=None)
    _add_common(f4)
    f4.set_defaults(func=_cmd_face)

    sp = sub.add_parser("intersect", help="intersection of two cones at a witness")
    sp.add_argument("-p1", "--poly1", required=True)
    sp.add_argument("-e1", "--direction1", required=True)
    sp.add_argument("-p2", "--poly2", required=True)
    sp.add_argument("-e2", "--direction2", required=True)
    sp.add_argument("-z", "--witness", required=True)
    sp.add_argument("-o", "--out", required=True)
    sp.add_argument("-N", "--samples", type=int, default=500)
    _add_common(sp)
    sp.set_defaults(func=_cmd_intersect)

    sp = sub.add_parser("amen", help="empirical face error-bound estimate")
    sp.add_argument("-f", "--face", default=None, help="face JSON file (generic projectors)")
    sp.add_argument("--fixture", default=None, help="fixture family instead of a face file")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--catalog-face", default=None, help="catalog face name within the fixture")
    sp.add_argument("-N", "--samples", type=int, default=1000)
    sp.add_argument("--radii", default="0.1,1,10")
    _add_common(sp)
    sp.set_defaults(func=_cmd_amen)

    sp = sub.add_parser("linreg", help="empirical linear-regularity constant")
    sp.add_argument("-L", "--subspace", required=True, help="basis JSON file")
    _add_cone_args(sp)
    sp.add_argument("-w", "--witness", required=True)
    sp.add_argument("-N", "--samples", type=int, default=200)
    sp.add_argument("--allow-boundary-witness", action="store_true",
                    help="relax the interiority qualification to membership")
    _add_common(sp)
    sp.set_defaults(func=_cmd_linreg)

    sp = sub.add_parser("fixture", help="fixture catalog")
    xsub = sp.add_subparsers(dest="fixture_command", required=True)
    x1 = xsub.add_parser("list")
    _add_common(x1)
    x1.set_defaults(func=_cmd_fixture)
    x2 = xsub.add_parser("emit")
    x2.add_argument("name", help="fixture family: orthant, lorentz, psd, renegar_orthant")
    x2.add_argument("--n", type=int, default=3)
    x2.add_argument("--m", type=int, default=1)
    x2.add_argument("--dir", default=".")
    _add_common(x2)
    x2.set_defaults(func=_cmd_fixture)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NotHyperbolicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except (ConvergenceError, NumericalInconsistencyError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
