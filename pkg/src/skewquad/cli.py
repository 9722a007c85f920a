"""Command-line front end.

    skewquad verify
    skewquad classify --subspace beta2 --phi pi/3 --a 1
    skewquad table --grid 200 --out table.csv --format csv
    skewquad sample --subspace alpha1 --phi 1.2 --a 1 --n 100 --seed 0 --out pts.csv

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from . import checks
from . import quadrics as q
from .frames import Subspace

SUBSPACES = [s.value for s in Subspace] + ["hyper"]

_PI_RE = re.compile(r"^\s*([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d*\.?\d+))?\s*$")


class UsageError(Exception):
    pass


def parse_angle(text: str) -> float:
    """Radians, or a multiple of pi such as 'pi/3', '2pi/3', '0.5*pi'."""
    m = _PI_RE.match(text)
    if m:
        num = m.group(1)
        coef = float(num) if num not in ("", "+", "-") else (-1.0 if num == "-" else 1.0)
        den = float(m.group(2)) if m.group(2) else 1.0
        return coef * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _require_phi(args):
    if args.phi is None:
        raise UsageError(f"--phi is required for subspace {args.subspace}")
    if not (math.pi / 4 < args.phi < 3 * math.pi / 4):
        raise UsageError(f"phi={args.phi!r} outside (pi/4, 3pi/4)")


def build_form(subspace: str, phi, a: float) -> q.QuadraticForm:
    if subspace == "hyper":
        return q.hyper_sphere_form(a)
    return q.subspace_form(subspace, phi, a)


def classification_record(subspace: str, phi, a: float) -> dict:
    if subspace == Subspace.BETA1.value and abs(2 * math.cos(phi)) <= q.CAUSAL_TOL:
        raise UsageError("form is identically zero: phi != pi/2 required for beta1")
    form = build_form(subspace, phi, a)
    info = q.describe(form)
    return {
        "subspace": subspace,
        "phi": phi,
        "a": a,
        "coefficients": form.matrix.tolist(),
        "class": info["class"],
        "signature": info["signature"],
        "degenerate_geometry": info.get("degenerate_geometry"),
    }


def table_rows(grid: int) -> list:
    rows = []
    for phi in checks.table_phis(grid):
        for a in (-1.0, 0.0, 1.0):
            k2 = q.classify(q.subspace_form(Subspace.BETA2, phi, a))
            k3 = q.classify(q.subspace_form(Subspace.BETA3, phi, a))
            expected = q.table1(phi, a)
            rows.append(
                {
                    "phi": phi,
                    "a": a,
                    "regime": q.phi_regime(phi).value,
                    "class_k2": k2.value,
                    "class_k3": k3.value,
                    "agrees_with_closed_form": k2 == k3 == expected,
                }
            )
    return rows


def render_table(rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["phi", "a", "regime", "class_k2", "class_k3", "agrees_with_closed_form"])
    for r in rows:
        writer.writerow(
            [
                _fmt(r["phi"]),
                _fmt(r["a"]),
                r["regime"],
                r["class_k2"],
                r["class_k3"],
                "true" if r["agrees_with_closed_form"] else "false",
            ]
        )
    return buf.getvalue()


def render_points(points: np.ndarray, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(points.tolist()) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list("xyzt"[: points.shape[1]]))
    for row in points:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _emit(text: str, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_verify(args, metric_factory=None) -> int:
    results = checks.run_all(metric_factory)
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    print("ALL PASS" if ok else "FAILURES")
    return 0 if ok else 1


def cmd_classify(args) -> int:
    if args.subspace != "hyper":
        _require_phi(args)
    print(json.dumps(classification_record(args.subspace, args.phi, args.a), indent=1))
    return 0


def cmd_table(args) -> int:
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    _emit(render_table(table_rows(args.grid), args.format), args.out)
    return 0


def cmd_sample(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.subspace == "hyper":
        if args.unit and args.a != 0:
            raise UsageError("--unit needs --a 0 (the cone meets the unit sphere in a torus)")
    else:
        _require_phi(args)
        if args.unit or args.primed:
            raise UsageError("--unit/--primed only apply to the hyper subspace")
    form = build_form(args.subspace, args.phi, args.a)
    if args.subspace == "hyper" and args.unit:
        pts = q.torus_points(args.n, args.seed)
    else:
        try:
            pts = q.sample_points(form, args.n, args.seed)
        except q.EmptyQuadricError as exc:
            raise UsageError(str(exc)) from None
    if args.primed:
        pts = pts @ q.transform_4d()
    _emit(render_points(pts, args.format), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewquad",
        description="Spheres and circles of the associated metric of a skew-circulant structure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("verify", help="run every invariant suite")

    p = sub.add_parser("classify", help="classify the sphere/circle of a subspace")
    p.add_argument("--subspace", choices=SUBSPACES, required=True)
    p.add_argument("--phi", type=parse_angle)
    p.add_argument("--a", type=float, required=True)

    p = sub.add_parser("table", help="regime-table sweep for the beta2/beta3 circles")
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("sample", help="export points on a sphere/circle")
    p.add_argument("--subspace", choices=SUBSPACES, required=True)
    p.add_argument("--phi", type=parse_angle)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--unit", action="store_true",
                   help="hyper, a=0: restrict to the unit sphere (the isotropic torus)")
    p.add_argument("--primed", action="store_true",
                   help="hyper: write diagonalizing coordinates x', y', z', t'")
    return parser


COMMANDS = {
    "verify": cmd_verify,
    "classify": cmd_classify,
    "table": cmd_table,
    "sample": cmd_sample,
}


def main(argv=None, metric_factory=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args, metric_factory)
        return COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
