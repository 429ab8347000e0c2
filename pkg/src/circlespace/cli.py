"""Command line: ``circlespace <verb> [flags]``.

Exit status is 0 when every check of the run passes, 1 when a check fails
or the input is geometrically invalid, and 2 when the command line or an
input file cannot be parsed.  Errors are reported on stderr as a JSON
object.
"""

import argparse
import json
import re
import sys
from pathlib import Path

import numpy as np

from . import tolerances
from .circles import circle_through_points, incidence_value, is_incident, LABELS
from .errors import CircleSpaceError
from .fibration import FibrationCurve, curve_degree, hopf_curve, normalize_curve, validate_fibration
from .foliation import Leaf, integrate_leaves, leaf_is_circle, parse_surface, surface_distribution
from .jsonio import bivector_from_json, bivector_to_json
from .projective import random_s3
from .render import RenderOptions, render_svg
from .suite import run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-1,0,0,0" through as a value rather than an option
        self._negative_number_matcher = re.compile(r"^-\.?\d[\d.,eE+-]*$")

    def error(self, message):
        raise UsageError(message)


def _floats(text, n, what):
    try:
        vals = json.loads(text) if text.lstrip().startswith("[") else [float(t) for t in text.split(",")]
        arr = np.asarray(vals, dtype=float)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"cannot parse {what} {text!r}: {exc}") from None
    if arr.shape != (n,):
        raise UsageError(f"{what} needs {n} numbers, got {text!r}")
    return arr


def _quaternion(text):
    return _floats(text, 4, "quaternion")


def _load_json(text_or_path, what):
    """JSON given inline or as a path to a file."""
    s = text_or_path.strip()
    try:
        if s.startswith("[") or s.startswith("{"):
            return json.loads(s)
        return json.loads(Path(s).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {what}: {exc}") from None


_NUMBER_LIST = re.compile(r"\[\s*([-+\w.,\s]*?)\s*\]")


def _emit(obj):
    text = json.dumps(obj, indent=2)
    # keep innermost lists of numbers on one line
    text = _NUMBER_LIST.sub(lambda m: "[" + ", ".join(t.strip() for t in m.group(1).split(",")) + "]",
                            text)
    print(text)


def _chop(a, rel=1e-14):
    a = np.asarray(a, dtype=complex)
    cut = rel * np.max(np.abs(a))
    return np.where(np.abs(a.real) > cut, a.real, 0.0) + 1j * np.where(np.abs(a.imag) > cut, a.imag, 0.0)


def _artifact(args, name):
    path = Path(name)
    if not path.is_absolute():
        path = Path(args.out_dir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def cmd_verify(args):
    results = run_suite(seed=args.seed, scale=args.scale)
    if args.json:
        _emit([r.to_dict() for r in results])
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status}  {r.name:<{width}}  value={r.value:.3e}  "
                  f"threshold={r.threshold:.1e}  {r.seconds:6.2f}s")
    return 0 if all(r.passed for r in results) else 1


def cmd_circle(args):
    k, kr = circle_through_points(*args.points)
    _emit({"labels": list(LABELS), "circle": bivector_to_json(_chop(k)),
           "reversed": bivector_to_json(_chop(kr))})
    return 0


def cmd_incidence(args):
    try:
        k = bivector_from_json(_load_json(args.circle, "circle"))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    value = float(incidence_value(args.point, k))
    ok = bool(is_incident(args.point, k))
    _emit({"G": value, "incident": ok, "tolerance": tolerances.current().incidence})
    return 0 if ok else 1


def cmd_fibration(args):
    if args.hopf:
        curve = hopf_curve()
    else:
        try:
            curve = FibrationCurve.from_json(_load_json(args.curve, "curve"))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    out = {"degree": curve_degree(curve)}
    report = validate_fibration(curve, samples=args.samples, seed=args.seed)
    out["report"] = report.to_dict()
    ok = report.passed
    if args.normalize:
        try:
            out["normalization"] = normalize_curve(curve).to_dict()
        except CircleSpaceError as exc:
            out["normalization"] = {"error": type(exc).__name__, "message": str(exc)}
            ok = False
    _emit(out)
    return 0 if ok else 1


def _thin(leaf, every):
    if every <= 1:
        return leaf
    idx = np.arange(0, len(leaf.samples), every)
    if idx[-1] != len(leaf.samples) - 1:
        idx = np.append(idx, len(leaf.samples) - 1)
    return Leaf(leaf.samples[idx], leaf.closed, leaf.closure_error, leaf.period, leaf.seed)


def cmd_foliate(args):
    try:
        surface = parse_surface(args.surface)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    seeds = random_s3(np.random.default_rng(args.seed), args.seeds)
    leaves = integrate_leaves(surface_distribution(surface), seeds, step=args.step,
                              max_t=args.max_t, tol_close=tolerances.current().close)
    devs = [leaf_is_circle(leaf)[1] if leaf.closed else None for leaf in leaves]
    closed = sum(leaf.closed for leaf in leaves)
    path = _artifact(args, args.out)
    doc = {"surface": args.surface, "seed": args.seed, "step": args.step,
           "leaves": [_thin(leaf, args.keep_every).to_json() | {"circle_deviation": d}
                      for leaf, d in zip(leaves, devs)]}
    path.write_text(json.dumps(doc))
    finite = [d for d in devs if d is not None]
    _emit({"leaves": len(leaves), "closed": int(closed),
           "max_closure_error": max((leaf.closure_error for leaf in leaves if leaf.closed), default=None),
           "max_circle_deviation": max(finite, default=None),
           "circles": int(sum(d < tolerances.current().close for d in finite)),
           "output": str(path)})
    return 0 if closed == len(leaves) else 1


def cmd_render(args):
    doc = _load_json(args.leaves, "leaves")
    items = doc["leaves"] if isinstance(doc, dict) else doc
    try:
        leaves = [Leaf.from_json(d) for d in items]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed leaves file: {exc}") from None
    opts = RenderOptions(view=tuple(args.view), size=args.size, extent=args.extent)
    path = _artifact(args, args.out)
    path.write_text(render_svg(leaves, opts))
    _emit({"paths_from": len(leaves), "output": str(path)})
    return 0


def build_parser():
    p = _Parser(prog="circlespace", description="Circle geometry of the 3-sphere.")
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--out-dir", default=".", help="directory for written artifacts")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    v.add_argument("--scale", type=float, default=1.0, help="multiply sample counts")
    v.add_argument("--json", action="store_true", help="print results as JSON")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("circle", parents=[common], help="oriented circles through three points")
    c.add_argument("--points", nargs=3, type=_quaternion, required=True, metavar="W,X,Y,Z")
    c.set_defaults(func=cmd_circle)

    i = sub.add_parser("incidence", parents=[common], help="does a point lie on a circle")
    i.add_argument("--point", type=_quaternion, required=True, metavar="W,X,Y,Z")
    i.add_argument("--circle", required=True, help="six [re, im] pairs, inline JSON or a file")
    i.set_defaults(func=cmd_incidence)

    f = sub.add_parser("fibration", parents=[common], help="validate and normalize a fibration curve")
    src = f.add_mutually_exclusive_group(required=True)
    src.add_argument("--curve", help="curve JSON file (or inline JSON)")
    src.add_argument("--hopf", action="store_true", help="use the standard Hopf curve")
    f.add_argument("--normalize", action="store_true")
    f.add_argument("--samples", type=int, default=1000)
    f.set_defaults(func=cmd_fibration)

    fo = sub.add_parser("foliate", parents=[common], help="integrate leaves of a surface foliation")
    fo.add_argument("--surface", required=True, help='homogeneous polynomial, e.g. "z1^2*z4 - z2*z3^2"')
    fo.add_argument("--seeds", type=int, default=16, help="number of random seed points")
    fo.add_argument("--step", type=float, default=1e-3)
    fo.add_argument("--max-t", type=float, default=8 * np.pi)
    fo.add_argument("--keep-every", type=int, default=10, help="store every n-th sample")
    fo.add_argument("--out", default="leaves.json")
    fo.set_defaults(func=cmd_foliate)

    r = sub.add_parser("render", parents=[common], help="draw leaves as an SVG figure")
    r.add_argument("--leaves", required=True)
    r.add_argument("--out", default="leaves.svg")
    r.add_argument("--view", type=lambda s: _floats(s, 3, "view axis"), default=(1.0, 0.6, 0.35))
    r.add_argument("--size", type=int, default=640)
    r.add_argument("--extent", type=float, default=None)
    r.set_defaults(func=cmd_render)
    return p


def _fail(code, kind, message):
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code}) + "\n")
    return code


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
        tolerances.current()
    except UsageError as exc:
        return _fail(2, "UsageError", str(exc))
    except ValueError as exc:
        return _fail(2, "ToleranceError", str(exc))
    try:
        return args.func(args)
    except UsageError as exc:
        return _fail(2, "UsageError", str(exc))
    except CircleSpaceError as exc:
        return _fail(1, type(exc).__name__, str(exc))


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
