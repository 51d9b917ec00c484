"""Command-line front end.

Every subcommand reads spaces and tables as JSON (``"inf"`` for infinity)
and writes JSON to standard output.  Exit status is 0 on success, 1 when
the data is rejected (the error class name goes to standard error) and 2
on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings

import numpy as np

from . import acceptance
from . import cocomplete as cc
from . import extnn, isbell, oracle
from . import space as sp
from . import tightspan as ts
from .errors import IsbellError, ShapeMismatch
from .extnn import EPS
from .functionals import Functional, Role, presheaf_dist, opcopresheaf_dist
from .region import RegionDescription, export_region  # noqa: F401

__all__ = ["main", "run", "export_region", "RegionDescription"]


# -- input helpers -----------------------------------------------------------

def load_space(arg: str) -> sp.Space:
    """A file path, or a built-in name such as ``N_3_2`` (``.json`` ignored)."""
    if os.path.exists(arg):
        return sp.load(arg)
    stem = os.path.basename(arg)
    for ext in (".json", ".csv"):
        if stem.endswith(ext):
            stem = stem[:-len(ext)]
    try:
        return sp.named(stem)
    except ShapeMismatch:
        raise ShapeMismatch(f"no such file or built-in space: {arg!r}") from None


def _json_arg(text: str):
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(text)


def load_values(text: str, X: sp.Space, role=Role.RAW) -> Functional:
    data = _json_arg(text)
    if isinstance(data, dict):
        data = data.get("values", data.get("f"))
    return Functional(X, extnn.ext_array(data), role)


def _point(text: str, X: sp.Space, eps: float) -> isbell.IsbellPoint:
    """A completion point from its f-half, or ``{"f": .., "g": ..}``."""
    data = _json_arg(text)
    if isinstance(data, dict) and "g" in data and "f" not in data:
        return isbell.completion_from_copresheaf(
            Functional(X, extnn.ext_array(data["g"])), eps)
    if isinstance(data, dict):
        data = data["f"]
    return isbell.completion_from_presheaf(
        Functional(X, extnn.ext_array(data)), eps)


def _grid(args, X) -> oracle.Grid:
    return oracle.default_grid(X, args.step, args.bound)


def _emit(obj):
    print(json.dumps(obj))


# -- subcommands -------------------------------------------------------------

def cmd_validate(args):
    X = load_space(args.space)
    _emit({"valid": True, "points": list(X.labels),
           "skeletal": sp.is_skeletal(X, args.tolerance),
           "symmetric": sp.is_symmetric(X, args.tolerance),
           "classical": sp.is_classical(X, args.tolerance)})


def cmd_conjugate(args):
    X = load_space(args.space)
    v = load_values(args.values, X)
    out = isbell.conjugate_L(v) if args.which == "L" else isbell.conjugate_R(v)
    _emit(extnn.to_json(out.values))


def cmd_project(args):
    X = load_space(args.space)
    v = load_values(args.values, X)
    out = isbell.project_RL(v) if args.which == "RL" else isbell.project_LR(v)
    _emit(extnn.to_json(out.values))


def cmd_embed(args):
    X = load_space(args.space)
    points = [args.point] if args.point else list(X.labels)
    out = {x: isbell.embed(X, x).to_dict() for x in points}
    _emit(out[args.point] if args.point else out)


def cmd_dist(args):
    X = load_space(args.space)
    eps = args.tolerance
    if args.kind == "isbell":
        value = isbell.isbell_dist(_point(args.p, X, eps), _point(args.q, X, eps),
                                   eps)
    elif args.kind == "presheaf":
        value = presheaf_dist(load_values(args.p, X), load_values(args.q, X))
    elif args.kind == "opcopresheaf":
        value = opcopresheaf_dist(load_values(args.p, X), load_values(args.q, X))
    else:
        value = ts.tightspan_dist(load_values(args.p, X), load_values(args.q, X),
                                  eps)
    _emit(extnn.to_json(value))


def cmd_tightspan(args):
    X = load_space(args.space)
    eps = args.tolerance
    if args.action == "classify":
        if args.values is None:
            raise ShapeMismatch("classify needs --f")
        f = load_values(args.values, X)
        aim = ts.in_aim(f, eps)
        step = args.step or ts.default_step(X)
        _emit({"in_aim": aim, "tight": ts.is_tight(f, eps),
               "minimal": aim and ts.is_minimal_in_aim(f, step, eps)})
    else:
        pts = ts.sample_tight_span(X, _grid(args, X), eps)
        _emit({"points": [extnn.to_json(p) for p in pts]})


def cmd_hk(args):
    X = load_space(args.space)
    eps = args.tolerance
    if args.action == "check":
        if args.values is None or args.g is None:
            raise ShapeMismatch("hk check needs --f and --g")
        f, g = load_values(args.values, X), load_values(args.g, X)
        _emit({"triangular": ts.is_triangular(f, g, eps),
               "minimal": ts.is_minimal_pair(f, g, eps),
               "minimal_by_perturbation":
                   ts.is_minimal_pair_perturbation(f, g, args.step, eps)})
    else:
        pairs = oracle.brute_minimal_pairs(X, _grid(args, X), args.budget)
        _emit({"pairs": [p.to_dict() for p in pairs]})


def _read_diagram(path: str, kind: str):
    data = _json_arg(path)
    D = sp.from_dict(data["shape"])
    role = Role.PRESHEAF if kind == "colimit" else Role.COPRESHEAF
    W = Functional(D, extnn.ext_array(data["W"]) if data["W"] else [], role)
    X = sp.from_dict(data["space"])
    J = data["J"]
    if all(isinstance(j, str) for j in J):
        return cc.WeightedDiagram(D, tuple(J), W, X).check(kind), X
    half = "f" if kind == "colimit" else "g"
    pts = []
    for j in J:
        if isinstance(j, dict):
            j = j[half]
        v = Functional(X, extnn.ext_array(j))
        pts.append(isbell.completion_from_presheaf(v) if half == "f"
                   else isbell.completion_from_copresheaf(v))
    return cc.WeightedDiagram(D, tuple(pts), W).check(kind), X


def _probes(X, args):
    probes = [isbell.embed(X, x) for x in X.labels]
    try:
        probes += [isbell.completion_from_presheaf(f) for f in
                   oracle.brute_fixed_set(X, _grid(args, X), args.budget)]
    except IsbellError:
        pass
    return probes


def cmd_colimit(args):
    WD, X = _read_diagram(args.diagram, "colimit")
    E = cc.embedded_diagram(WD) if WD.target is not None else WD
    out = {}
    if WD.target is not None:
        out["in_space"] = cc.colimit_search(X, WD, args.tolerance)
    out["presheaf"] = extnn.to_json(cc.colim_presheaf(E, X).values)
    c = cc.colim_fixRL(E, X)
    out["completion"] = c.to_dict()
    probes = _probes(X, args)
    gaps = cc.colimit_universal_gaps(c, E, probes)
    out["verification"] = {"probes": len(probes),
                           "max_gap": extnn.to_json(float(gaps.max(initial=0))),
                           "passed": bool(np.all(gaps <= args.tolerance))}
    _emit(out)
    return 0 if out["verification"]["passed"] else 1


def cmd_limit(args):
    WD, X = _read_diagram(args.diagram, "limit")
    E = cc.embedded_diagram(WD) if WD.target is not None else WD
    out = {}
    if WD.target is not None:
        out["in_space"] = cc.limit_search(X, WD, args.tolerance)
    out["opcopresheaf"] = extnn.to_json(cc.lim_opcopresheaf(E, X).values)
    l = cc.lim_fixLR(E, X)  # noqa: E741
    out["completion"] = l.to_dict()
    probes = _probes(X, args)
    gaps = cc.limit_universal_gaps(l, E, probes)
    out["verification"] = {"probes": len(probes),
                           "max_gap": extnn.to_json(float(gaps.max(initial=0))),
                           "passed": bool(np.all(gaps <= args.tolerance))}
    _emit(out)
    return 0 if out["verification"]["passed"] else 1


def cmd_module(args):
    X = load_space(args.space)
    eps = args.tolerance
    p = _point(args.p, X, eps)
    if args.op in ("oplus", "boxplus"):
        if args.q is None:
            raise ShapeMismatch(f"{args.op} needs --q")
        q = _point(args.q, X, eps)
        out = cc.oplus(p, q) if args.op == "oplus" else cc.boxplus(p, q)
    else:
        if args.tau is None:
            raise ShapeMismatch(f"{args.op} needs --tau")
        tau = extnn.ext(args.tau)
        out = cc.odot(tau, p) if args.op == "odot" else cc.boxdot(tau, p)
    _emit(out.to_dict())


def cmd_export_region(args):
    X = load_space(args.space)
    grid = None
    if args.step is not None or args.bound is not None:
        grid = _grid(args, X)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        region = export_region(X, grid, args.tolerance, debug=args.debug,
                               budget=args.budget)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _emit(region.to_dict())


def cmd_verify(args):
    X = load_space(args.space)
    grid = _grid(args, X) if (args.step or args.bound) else None
    rep = oracle.verify_theorem(args.theorem, X, grid=grid, trials=args.trials,
                                seed=args.seed, budget=args.budget,
                                eps=args.tolerance)
    _emit(dict(rep))
    return 0 if rep.passed else 1


def cmd_random_space(args):
    rng = np.random.default_rng(args.seed)
    X = sp.random_space(args.n, rng, max_dist=args.max_dist, step=args.grid_step,
                        p_inf=args.p_inf, p_zero=args.p_zero,
                        symmetric=args.symmetric)
    _emit(X.to_dict())


def cmd_acceptance(args):
    results = acceptance.run_all(args.seed, out=print)
    return 0 if all(r.passed for r in results) else 1


# -- parser ------------------------------------------------------------------

def _global(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--tolerance", type=float, default=d(EPS),
                        help="comparison tolerance (default 1e-9)")
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--budget", type=int, default=d(oracle.DEFAULT_BUDGET),
                        help="maximum number of grid candidates")


def _grid_flags(p):
    p.add_argument("--step", type=float, help="grid step h")
    p.add_argument("--bound", type=float, help="grid bound B")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isbellkit",
        description="Isbell completions of finite generalized metric spaces")
    _global(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=fn)
        return p

    p = add("validate", cmd_validate, help="check a space")
    p.add_argument("--space", required=True)

    p = add("conjugate", cmd_conjugate, help="apply L or R")
    p.add_argument("which", choices=["L", "R"])
    p.add_argument("--space", required=True)
    p.add_argument("--f", "--g", "--values", dest="values", required=True)

    p = add("project", cmd_project, help="apply RL or LR")
    p.add_argument("which", choices=["RL", "LR"])
    p.add_argument("--space", required=True)
    p.add_argument("--f", "--g", "--values", dest="values", required=True)

    p = add("embed", cmd_embed, help="image of a point in the completion")
    p.add_argument("--space", required=True)
    p.add_argument("--point")

    p = add("dist", cmd_dist, help="distance between two tables or points")
    p.add_argument("--space", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--kind", default="isbell",
                   choices=["isbell", "presheaf", "opcopresheaf", "tightspan"])

    p = add("tightspan", cmd_tightspan, help="classical tight span")
    p.add_argument("action", choices=["classify", "sample"])
    p.add_argument("--space", required=True)
    p.add_argument("--f", "--values", dest="values")
    _grid_flags(p)

    p = add("hk", cmd_hk, help="triangular pairs")
    p.add_argument("action", choices=["check", "enumerate"])
    p.add_argument("--space", required=True)
    p.add_argument("--f", dest="values")
    p.add_argument("--g")
    _grid_flags(p)

    for name, fn in (("colimit", cmd_colimit), ("limit", cmd_limit)):
        p = add(name, fn, help=f"weighted {name} of a diagram")
        p.add_argument("--diagram", required=True,
                       help='JSON {"space", "shape", "J", "W"}')
        _grid_flags(p)

    p = add("module", cmd_module, help="module operations on points")
    p.add_argument("op", choices=["oplus", "odot", "boxplus", "boxdot"])
    p.add_argument("--space", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--q")
    p.add_argument("--tau")

    p = add("export-region", cmd_export_region, help="region data for plots")
    p.add_argument("--space", required=True)
    p.add_argument("--debug", action="store_true")
    _grid_flags(p)

    p = add("verify", cmd_verify, help="run a brute-force theorem check")
    p.add_argument("--theorem", required=True,
                   help="one of: " + ", ".join(oracle.THEOREMS))
    p.add_argument("--space", required=True)
    p.add_argument("--trials", type=int)
    _grid_flags(p)

    p = add("random-space", cmd_random_space, help="emit a random space")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--max-dist", type=float, default=4.0)
    p.add_argument("--grid-step", type=float, default=0.5)
    p.add_argument("--p-inf", type=float, default=0.0)
    p.add_argument("--p-zero", type=float, default=0.0)
    p.add_argument("--symmetric", action="store_true")

    add("acceptance", cmd_acceptance, help="run the acceptance suite")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status = args.func(args)
    except (IsbellError, OSError, json.JSONDecodeError, KeyError,
            ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0 if status is None else status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
