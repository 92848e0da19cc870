"""Command-line front end.

Exact values print as integers or "p/q" strings; floats print with 15
significant digits.  Exit codes: 0 success, 1 domain error (or a failed
verification), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import closed_forms as cf
from . import genfuncs as gf
from .kmsw import phi, phi_inverse, rho_on_walks, sigma_on_walks
from .maps import InvalidOrientation, MarkedBipolarOrientation
from .oracle import count_marked, count_walks
from .sampler import (make_rng, sample_excursion_p1, sample_excursion_windowed, sample_halfplane,
                      sample_quadrant)
from .steps import TandemWalk, WeightSpec, trajectory
from .stochastics import StepDistribution, HarmonicFunction, kappa, kappa_bipolar


class UsageError(Exception):
    pass


def fmt_exact(v) -> str:
    q = Fraction(v)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_float(v: float) -> float:
    """Round to 15 significant digits (JSON then prints the shortest form)."""
    return float(f"{float(v):.15g}")


def _point(s: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a,b but got {s!r}") from None
    return a, b


def _rationals(s: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in s.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a comma list of rationals, got {s!r}") from None


def _weights(args) -> tuple[int, list[Fraction]]:
    p = args.p
    z = args.z if args.z is not None else [Fraction(1)] * (p + 1)
    if len(z) != p + 1:
        raise UsageError(f"--z needs {p + 1} entries (levels 0..{p})")
    return p, z


def _distribution(args) -> StepDistribution:
    if args.z is None:
        return StepDistribution.uniform_level(args.p)
    p, z = _weights(args)
    return StepDistribution(p, Fraction(args.z_se), tuple(z))


def _read_json(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return json.loads(text)


def _load_object(path: str):
    data = _read_json(path)
    if "steps" in data:
        return TandemWalk.from_json(data)
    if "edges" in data:
        return MarkedBipolarOrientation.from_json(data)
    raise ValueError("input is neither a walk nor a map")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def walk_svg(w: TandemWalk, start=(0, 0), unit: int = 20) -> str:
    """The embedded walk as one polyline on a unit grid."""
    pts = trajectory(w, start)
    xs = [x for x, _ in pts] + [0]
    ys = [y for _, y in pts] + [0]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    width, height = (x1 - x0 + 2) * unit, (y1 - y0 + 2) * unit

    def px(x, y):
        return (x - x0 + 1) * unit, (y1 - y + 1) * unit

    grid = []
    for x in range(x0, x1 + 1):
        a, b = px(x, y0)
        c, d = px(x, y1)
        grid.append(f'<line x1="{a}" y1="{b}" x2="{c}" y2="{d}" stroke="#ddd"/>')
    for y in range(y0, y1 + 1):
        a, b = px(x0, y)
        c, d = px(x1, y)
        grid.append(f'<line x1="{a}" y1="{b}" x2="{c}" y2="{d}" stroke="#ddd"/>')
    poly = " ".join("%d,%d" % px(x, y) for x, y in pts)
    return "\n".join([
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        *grid,
        f'<polyline points="{poly}" fill="none" stroke="black" stroke-width="2"/>',
        "</svg>",
    ]) + "\n"


def _emit_walk(w: TandemWalk, target: str | None) -> None:
    if target is None:
        print(_dump(w.to_json()))
        return
    if target.endswith(".svg"):
        Path(target).write_text(walk_svg(w))
    elif target.endswith(".dot"):
        Path(target).write_text(phi(w).to_dot())
    elif target.endswith(".json"):
        Path(target).write_text(_dump(w.to_json()) + "\n")
    else:
        raise UsageError("--emit must end in .json, .svg or .dot")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_count(args) -> None:
    p, z = _weights(args)
    spec = WeightSpec(p, tuple(z), Fraction(args.z_se))
    if args.marked:
        if args.to == "any":
            raise UsageError("--marked needs --to c,d")
        a, b = args.from_
        c, d = _point(args.to)
        res = count_marked(spec, (a, b, c, d), args.len, refine=args.refine)
    else:
        end = "any" if args.to == "any" else _point(args.to)
        res = count_walks(spec, args.from_, end, args.len, args.region, refine=args.refine)
    if args.refine:
        for vec in sorted(res):
            print(" ".join(map(str, vec)), fmt_exact(res[vec]))
    else:
        print(fmt_exact(res))


def _series_payload(name: str, series) -> dict:
    coeffs = []
    for k in range(series.min_order, series.N + 1):
        poly = series[k]
        if poly.vars:
            coeffs.append({",".join(map(str, e)): fmt_exact(c) for e, c in sorted(poly.terms.items())})
        else:
            coeffs.append(fmt_exact(poly.constant()))
    return {"series": name, "variables": list(series.vars), "min_order": series.min_order,
            "order": series.N, "coefficients": coeffs}


def cmd_series(args) -> None:
    p, z = _weights(args)
    N = args.order
    kind = args.kind
    if kind == "q0b":
        out = _series_payload("Q0b(x)", gf.q0b_x0(p, z, args.b, N))
    elif kind == "yslice":
        out = _series_payload("Q0b(x;d)", gf.q0b_y_slice(p, z, args.b, args.d, N))
    elif kind == "ct":
        out = _series_payload("Q0b constant term", gf.q0b_constant_term(p, z, args.b, args.c, N))
    elif kind == "q11":
        out = _series_payload("Qab(1,1)", gf.a_i_and_q11(p, z, args.a, args.b, N))
    elif kind == "halfplane":
        out = _series_payload("H(b->a)", gf.halfplane_gf(p, z, args.a, args.b, N))
    elif kind == "y1":
        out = _series_payload("Y1", gf.y1_series(p, z, N, with_x=True))
    elif kind == "w":
        out = _series_payload("W", gf.w_series(p, z, N))
    elif kind == "tri":
        out = {"series": "tri", "coefficients": [fmt_exact(v) for v in gf.tri_series(N)]}
    elif kind == "quad":
        out = {"series": "quad", "coefficients": [fmt_exact(v) for v in gf.quad_series(N)]}
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(kind)
    print(_dump(out))


def cmd_closed_form(args) -> None:
    f = args.family
    if f == "tutte":
        print(cf.tutte_a(args.n))
    elif f == "baxter":
        print(cf.baxter_b(args.n))
    elif f == "dang":
        print(" ".join(map(str, cf.dangulation_sequence(args.p, args.n))))
    elif f in ("lgv", "lgv-tilde"):
        fn = cf.lgv_qnk if f == "lgv" else cf.marked_qnk_tilde
        print(fn(args.n, args.k, *args.sig))
    elif f == "p1-endpoint":
        print(cf.exact_p1_endpoint(args.n, *args.to))


def cmd_bijection(args) -> None:
    obj = _load_object(args.input)
    op = args.op
    if op == "phi":
        if not isinstance(obj, TandemWalk):
            raise ValueError("phi expects a walk")
        out = phi(obj).to_json()
    elif op == "phi-inverse":
        if not isinstance(obj, MarkedBipolarOrientation):
            raise ValueError("phi-inverse expects a map")
        out = phi_inverse(obj).to_json()
    elif op in ("sigma", "rho"):
        if isinstance(obj, TandemWalk):
            out = (sigma_on_walks(obj) if op == "sigma" else rho_on_walks(obj)).to_json()
        else:
            obj.require_valid()
            out = (obj.sigma() if op == "sigma" else obj.rho()).to_json()
    else:  # pragma: no cover
        raise UsageError(op)
    text = _dump(out)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def cmd_validate(args) -> int:
    obj = _load_object(args.input)
    if isinstance(obj, TandemWalk):
        obj = phi(obj)
    rep = obj.validate()
    payload = {"ok": rep.ok, "violation": rep.violation, "detail": rep.detail}
    if rep.ok:
        payload["signature"] = list(obj.signature().as_tuple())
        census, _ = obj.face_census()
        payload["face_degrees"] = {str(k): v for k, v in sorted(census.items())}
    print(_dump(payload))
    return 0 if rep.ok else 1


def cmd_sample(args) -> None:
    rng = make_rng(args.seed)
    if args.kind == "excursion-p1":
        w = sample_excursion_p1(args.n, rng)
    else:
        dist = _distribution(args)
        if args.kind == "halfplane":
            w = sample_halfplane(dist, args.n, rng)
        elif args.kind == "quadrant":
            w = sample_quadrant(dist, args.n, rng)
        else:
            s = sample_excursion_windowed(dist, args.n, rng, with_info=True)
            w = s.walk
            print(_dump({"m": s.m, "retries": s.retries, "rejections": s.rejections,
                         "midpoint": list(s.midpoint)}), file=sys.stderr)
    _emit_walk(w, args.emit)


def cmd_asymptotics(args) -> None:
    if args.omega is not None:
        prof = kappa_bipolar(args.omega, args.b, args.c)
    else:
        if args.weights is None:
            raise UsageError("give --omega or --weights")
        prof = kappa([float(v) for v in args.weights], args.a, args.b, args.c, args.d)
    print(_dump({"iota": prof.iota, "alpha": fmt_float(prof.alpha), "gamma": fmt_float(prof.gamma),
                 "sigma2": fmt_float(prof.sigma2), "kappa": fmt_float(prof.kappa)}))


def cmd_harmonic(args) -> None:
    dist = _distribution(args)
    h = HarmonicFunction(dist)
    v = h(args.a, args.b)
    out = {"rational_part": fmt_exact(v.rational_part) if dist.exact else fmt_float(v.rational_part),
           "sigma": fmt_float(v.sigma), "value": fmt_float(v.value)}
    print(_dump(out))


def cmd_verify(args) -> int:
    from .verify import run_suite
    results = run_suite(args.suite, fast=args.fast)
    if args.json:
        print(json.dumps([r.to_json() for r in results], indent=1))
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return 0 if all(r.passed for r in results) else 1


def cmd_render(args) -> None:
    obj = _load_object(args.input)
    if args.svg:
        if not isinstance(obj, TandemWalk):
            raise ValueError("--svg renders walks")
        text = walk_svg(obj, tuple(args.start))
    else:
        O = phi(obj) if isinstance(obj, TandemWalk) else obj
        text = O.to_dot()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_weights(p: argparse.ArgumentParser, p_default: int | None = None) -> None:
    p.add_argument("--p", type=int, default=p_default, required=p_default is None, help="maximal level")
    p.add_argument("--z", type=_rationals, help="weights z_0..z_p as a comma list")
    p.add_argument("--z-se", type=Fraction, default=None, help="SE weight")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tandemwalks", description="Tandem walks and bipolar orientations.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="exact weighted walk counts")
    _add_weights(c)
    c.add_argument("--from", dest="from_", type=_point, required=True)
    c.add_argument("--to", required=True, help="c,d or 'any'")
    c.add_argument("--len", type=int, required=True)
    c.add_argument("--region", choices=["quadrant", "upper_halfplane", "none"], default="quadrant")
    c.add_argument("--refine", action="store_true", help="split by level-count vector")
    c.add_argument("--marked", action="store_true",
                   help="count marked orientations with signature (from;to) and LEN plain edges")
    c.set_defaults(func=cmd_count)

    s = sub.add_parser("series", help="generating-function coefficients")
    s.add_argument("kind", choices=["q0b", "yslice", "ct", "q11", "halfplane", "y1", "w", "tri", "quad"])
    _add_weights(s, p_default=1)
    for name in ("a", "b", "c", "d"):
        s.add_argument(f"--{name}", type=int, default=0 if name != "c" else None)
    s.add_argument("--order", type=int, default=10)
    s.set_defaults(func=cmd_series)

    f = sub.add_parser("closed-form", help="closed formulas and recurrences")
    f.add_argument("family", choices=["tutte", "baxter", "dang", "lgv", "lgv-tilde", "p1-endpoint"])
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--k", type=int, default=0)
    f.add_argument("--p", type=int, default=1)
    f.add_argument("--sig", type=lambda s: tuple(int(x) for x in s.split(",")), default=(0, 0, 0, 0))
    f.add_argument("--to", type=_point, default=(0, 0))
    f.set_defaults(func=cmd_closed_form)

    b = sub.add_parser("bijection", help="phi, its inverse and the involutions")
    b.add_argument("op", choices=["phi", "phi-inverse", "sigma", "rho"])
    b.add_argument("--in", dest="input", required=True, help="JSON file or '-'")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bijection)

    v = sub.add_parser("validate", help="check a marked bipolar orientation")
    v.add_argument("--in", dest="input", required=True)
    v.set_defaults(func=cmd_validate)

    sa = sub.add_parser("sample", help="random walks and excursions")
    sa.add_argument("kind", choices=["halfplane", "quadrant", "excursion-p1", "excursion-window"])
    _add_weights(sa, p_default=1)
    sa.add_argument("--n", type=int, required=True)
    sa.add_argument("--seed", type=int, default=0)
    sa.add_argument("--emit", help="output file: walk.json, walk.svg or map.dot")
    sa.set_defaults(func=cmd_sample)

    a = sub.add_parser("asymptotics", help="asymptotic constants")
    a.add_argument("--omega", type=lambda s: [int(x) for x in s.split(",")], help="allowed face degrees")
    a.add_argument("--weights", type=_rationals, help="counting weights w_0..w_p")
    for name in ("a", "b", "c", "d"):
        a.add_argument(f"--{name}", type=int, default=0)
    a.set_defaults(func=cmd_asymptotics)

    h = sub.add_parser("harmonic", help="the harmonic function V(a,b)")
    _add_weights(h)
    h.add_argument("--a", type=int, required=True)
    h.add_argument("--b", type=int, required=True)
    h.set_defaults(func=cmd_harmonic)

    ve = sub.add_parser("verify", help="run the acceptance suites")
    ve.add_argument("suite", nargs="?", default="all", choices=["bijection", "series", "asymptotics", "sampler", "all"])
    ve.add_argument("--fast", action="store_true", help="smaller random samples")
    ve.add_argument("--json", action="store_true")
    ve.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="SVG for walks, DOT for orientations")
    r.add_argument("--in", dest="input", required=True)
    g = r.add_mutually_exclusive_group(required=True)
    g.add_argument("--svg", action="store_true")
    g.add_argument("--dot", action="store_true")
    r.add_argument("--start", type=_point, default=(0, 0))
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "z_se", "absent") is None:
        args.z_se = Fraction(1)
    try:
        rc = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, InvalidOrientation, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return int(rc or 0)


if __name__ == "__main__":
    sys.exit(main())
