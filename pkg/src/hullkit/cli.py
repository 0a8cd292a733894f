"""Command-line front end.

Subcommands: eval, illum, projbody, tcvp, extend, search, selftest.  Check
rows go to stdout as CSV (name,value,tolerance,pass); --json writes the full
run report.  Exit codes: 0 success, 1 usage or input error, 2 check failure.

All output is deterministic given the same inputs, flags and --seed; no
timestamps or unordered containers are involved.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import acceptance
from .bodies import brightness_many, difference_body
from .errors import GeometryError, MissingIntersection
from .extensions import admissible_extension_pairs, extension_homothety_check, kl_extension
from .fileio import (
    CheckRow,
    checks_to_csv,
    fmt,
    load_body,
    save_body,
    write_off,
    write_svg,
)
from .hullfun import convex_hull_function, homothetic_hull_function, point_hull_values, point_hull_volume
from .illumination import HOMOTHETY_TOL, homothety_fit, illumination_body
from .projection import TCVP_TOL, polar_projection_body, projection_body, tcvp_check, translative_volume_constant
from .sampling import direction_set, random_polygon


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_vector(text):
    try:
        coords = [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise _UsageError(f"could not parse vector '{text}'") from exc
    if len(coords) not in (2, 3):
        raise _UsageError("vector must have 2 or 3 components")
    return np.array(coords)


def build_parser():
    parser = _Parser(prog="hullkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def body_command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("body", help="path to a body JSON file")
        p.add_argument("--strict", action="store_true", help="reject non-extreme input points")
        p.add_argument("--json", dest="json_path", help="write the run report / bodies as JSON")
        return p

    p = body_command("eval", "evaluate the hull-volume functions at a point")
    p.add_argument("--t", required=True, help="translation vector x,y[,z]")
    p.add_argument("--lambda", dest="lam", type=float, default=None, help="homothety ratio in [0,1)")

    p = body_command("illum", "construct the illumination body for a given delta")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--svg", help="write an SVG overlay (2D bodies)")
    p.add_argument("--off", help="write an OFF file (3D bodies)")

    p = body_command("projbody", "projection body, polar projection body and difference body")
    p.add_argument("--off", help="OFF path prefix for the 3D outputs")

    p = body_command("tcvp", "touching-translate constant-volume report")
    p.add_argument("--dirs", type=int, default=360)

    p = body_command("extend", "sideline (k,l)-extension with homothety checks")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--svg", help="write an SVG overlay")

    p = sub.add_parser("search", help="probe random bodies for homothetic level sets")
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, choices=(2, 3), default=3)
    p.add_argument("--json", dest="json_path")

    sub.add_parser("selftest", help="run the full acceptance suite")
    return parser


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = build_parser().parse_args(argv)
        args.argv = list(argv)
        return _dispatch(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (GeometryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main():
    raise SystemExit(main())


def _dispatch(args):
    handler = {
        "eval": _cmd_eval,
        "illum": _cmd_illum,
        "projbody": _cmd_projbody,
        "tcvp": _cmd_tcvp,
        "extend": _cmd_extend,
        "search": _cmd_search,
        "selftest": _cmd_selftest,
    }[args.command]
    return handler(args)


def _report(args, rows, artifacts, extra=None):
    sys.stdout.write(checks_to_csv(rows))
    for path in artifacts:
        print(f"wrote {path}", file=sys.stderr)
    if getattr(args, "json_path", None) and args.command != "illum":
        payload = {
            "command": args.argv,
            "checks": [[r.name, r.value, r.tolerance, r.passed] for r in rows],
            "artifacts": list(artifacts),
        }
        if extra:
            payload.update(extra)
        with open(args.json_path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        print(f"wrote {args.json_path}", file=sys.stderr)


def _cmd_eval(args):
    body = load_body(args.body, strict=args.strict)
    t = _parse_vector(args.t)
    if len(t) != body.dim:
        raise _UsageError(f"--t must have {body.dim} components for this body")
    print(f"convex_hull_function {fmt(convex_hull_function(body, t))}")
    if args.lam is not None:
        print(f"homothetic_hull_function {fmt(homothetic_hull_function(body, args.lam, t))}")
    print(f"point_hull_volume {fmt(point_hull_volume(body, t).value)}")
    return 0


def _cmd_illum(args):
    body = load_body(args.body, strict=args.strict)
    level_set = illumination_body(body, args.delta)
    residual = float(
        np.max(np.abs(point_hull_values(body, level_set.body.vertices) - level_set.level))
    ) / level_set.level
    fit = homothety_fit(body, level_set.body)
    rows = [
        CheckRow("illum_vertex_level_residual", residual, 1e-9, residual <= 1e-9),
        CheckRow("illum_homothety_defect", fit.defect, HOMOTHETY_TOL, fit.is_homothet),
        CheckRow("illum_volume", level_set.body.volume, None, None),
    ]
    artifacts = []
    if args.json_path:
        save_body(level_set.body, args.json_path, name=f"illumination_delta_{fmt(args.delta)}")
        artifacts.append(args.json_path)
    if args.svg:
        if body.dim != 2:
            raise _UsageError("--svg is only available for 2D bodies")
        write_svg(args.svg, filled=[body.vertices], curves=[level_set.body.vertices])
        artifacts.append(args.svg)
    if args.off:
        if body.dim != 3:
            raise _UsageError("--off is only available for 3D bodies")
        write_off(level_set.body, args.off)
        artifacts.append(args.off)
    _report(args, rows, artifacts)
    return 0


def _cmd_projbody(args):
    body = load_body(args.body, strict=args.strict)
    named = {
        "projection": projection_body(body),
        "polar_projection": polar_projection_body(body),
        "difference": difference_body(body),
    }
    artifacts = []
    if args.json_path:
        for suffix, out in named.items():
            path = f"{args.json_path}.{suffix}.json"
            save_body(out, path, name=suffix)
            artifacts.append(path)
    if args.off:
        if body.dim != 3:
            raise _UsageError("--off is only available for 3D bodies")
        for suffix, out in named.items():
            path = f"{args.off}.{suffix}.off"
            write_off(out, path)
            artifacts.append(path)
    dirs = direction_set(body.dim, 200)
    rel = np.abs(named["projection"].support_many(dirs) - brightness_many(body, dirs))
    rel = float(np.max(rel / brightness_many(body, dirs)))
    rows = [CheckRow("projection_support_vs_brightness", rel, 1e-9, rel <= 1e-9)]
    sys.stdout.write(checks_to_csv(rows))
    for path in artifacts:
        print(f"wrote {path}", file=sys.stderr)
    return 0


def _cmd_tcvp(args):
    body = load_body(args.body, strict=args.strict)
    report = tcvp_check(body, args.dirs)
    ctr = translative_volume_constant(body, max(args.dirs, 720))
    rows = [
        CheckRow("delta_min", report.delta_min, None, None),
        CheckRow("delta_max", report.delta_max, None, None),
        CheckRow("delta_mean", report.delta_mean, None, None),
        CheckRow("relative_spread", report.relative_spread, TCVP_TOL, report.relative_spread < TCVP_TOL),
        CheckRow(
            "polar_projection_homothety_defect",
            report.polar_projection_homothety.defect,
            HOMOTHETY_TOL,
            report.polar_projection_homothety.is_homothet,
        ),
        CheckRow("tcvp_passes", float(report.passes), None, report.passes),
        CheckRow("translative_volume_constant", ctr, None, None),
    ]
    _report(args, rows, [], extra={"dirs": args.dirs})
    return 0


def _cmd_extend(args):
    body = load_body(args.body, strict=args.strict)
    if body.dim != 2:
        raise _UsageError("extensions are defined for polygons only")
    report, level_residual = extension_homothety_check(body, args.k, args.l)
    curve = kl_extension(body, args.k, args.l)
    rows = [
        CheckRow("extension_homothety_defect", report.defect, HOMOTHETY_TOL, report.is_homothet),
        CheckRow("extension_level_residual", level_residual, 1e-9, level_residual <= 1e-9),
        CheckRow("extension_ratio", report.ratio, None, None),
    ]
    artifacts = []
    if args.json_path:
        payload = {
            "kind": "extension_curve",
            "k": args.k,
            "l": args.l,
            "vertices": [[float(c) for c in v] for v in curve.vertices],
        }
        with open(args.json_path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        artifacts.append(args.json_path)
    if args.svg:
        write_svg(
            args.svg,
            filled=[body.vertices],
            curves=[curve.vertices],
            marked=[curve.vertices],
        )
        artifacts.append(args.svg)
    sys.stdout.write(checks_to_csv(rows))
    for path in artifacts:
        print(f"wrote {path}", file=sys.stderr)
    return 0


def _cmd_search(args):
    if args.dim == 3:
        rows = acceptance.illumination_defect_rows(args.n, seed=args.seed, include_named=False)
        worst = min(r.value for r in rows)
        rows.append(CheckRow("min_defect", worst, 1e-3, worst > 1e-3))
        _report(args, rows, [], extra={"seed": args.seed, "n": args.n, "dim": args.dim})
        return 0 if worst > 1e-3 else 2
    rng = np.random.default_rng(args.seed)
    rows = []
    for i in range(args.n):
        m = int(rng.integers(7, 13))
        body = random_polygon(rng, m)
        defects = []
        for k, l in admissible_extension_pairs(m):
            try:
                defects.append(extension_homothety_check(body, k, l)[0].defect)
            except MissingIntersection:
                continue  # near-parallel sidelines: that pair has no curve
        best = min(defects) if defects else float("nan")
        rows.append(CheckRow(f"extension_defect_{i:03d}_m{m}", best, None, None))
    worst = min((r.value for r in rows if r.value == r.value), default=float("nan"))
    rows.append(CheckRow("min_defect", worst, None, None))
    _report(args, rows, [], extra={"seed": args.seed, "n": args.n, "dim": args.dim})
    return 0


def _cmd_selftest(args):
    failures = 0
    for label, rows, passed in acceptance.run_all():
        sys.stdout.write(checks_to_csv(rows))
        print(f"criterion {label}: {'PASS' if passed else 'FAIL'}")
        failures += not passed
    print(f"selftest: {len(acceptance.CRITERIA) - failures}/{len(acceptance.CRITERIA)} criteria passed")
    return 0 if failures == 0 else 2
