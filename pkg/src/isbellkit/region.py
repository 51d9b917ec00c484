"""Closed-form descriptions of small completions, for external plotting.

Two points give a square (symmetric case) or a rectangle; three points
with a classical metric give a complex of four planar pieces in the
coordinates ``(alpha, beta, gamma) = (f(a), f(b), f(c))`` after the points
are relabelled so that ``r = d(b, c) >= s = d(c, a) >= t = d(a, b)``.
Anything else is sampled on a grid.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import extnn
from .errors import InternalInconsistency, UnsupportedShape
from .extnn import EPS
from .oracle import Grid, brute_fixed_set, default_grid, enumerate_tables
from .space import Space, is_classical, is_symmetric

KINDS = ("rectangle", "square", "three-point-complex", "grid-sample")


@dataclass
class RegionDescription:
    kind: str
    parameters: dict
    points: list | None = None
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown region kind {self.kind!r}")

    def contains(self, values, eps: float = EPS) -> bool:
        p = {k: float(v) for k, v in self.parameters.items()}
        v = [float(x) for x in values]
        if self.kind == "square":
            return all(-eps <= x <= p["r"] + eps for x in v)
        if self.kind == "rectangle":
            return (-eps <= v[0] <= p["r"] + eps
                    and -eps <= v[1] <= p["s"] + eps)
        if self.kind == "three-point-complex":
            perm = self.extras["permutation"]
            order = [self.extras["labels"].index(perm[k]) for k in "abc"]
            return in_three_point_complex(*(v[i] for i in order),
                                          p["r"], p["s"], p["t"], eps)
        return any(extnn.allclose(v, q, eps) for q in self.points or [])

    def to_dict(self) -> dict:
        out = {"kind": self.kind,
               "parameters": {k: extnn.to_json(v)
                              for k, v in self.parameters.items()}}
        if self.points is not None:
            out["points"] = [extnn.to_json(q) for q in self.points]
        for k, v in self.extras.items():
            if k != "labels":
                out[k] = v
        return out


def _le(a, b, eps):
    return a <= b + eps


def _eq(a, b, eps):
    return abs(a - b) <= eps


def in_three_point_complex(alpha, beta, gamma, r, s, t, eps: float = EPS,
                           cap_gamma: bool = True):
    """Membership in the four-branch description (needs r >= s >= t).

    The clause with ``alpha + r = beta + s`` also needs ``gamma <= r``
    (every fixed table has ``gamma + t <= r + t``).  Without that cap the
    clause admits non-fixed points as soon as ``s > t``; pass
    ``cap_gamma=False`` to get the uncapped set.
    """
    A, B, C = alpha + r, beta + s, gamma + t
    if min(alpha, beta, gamma) < -eps:
        return False
    cap = _le(C, r + t, eps) if cap_gamma else True
    return bool(
        (_le(A, B, eps) and _eq(B, C, eps) and _le(B, s + t, eps))
        or (_le(C, A, eps) and _eq(A, B, eps) and _le(A, r + s, eps) and cap)
        or (_le(B, C, eps) and _eq(C, A, eps) and _le(C, r + t, eps))
        or (_eq(alpha, 0, eps) and _le(beta, r - s, eps)
            and _le(gamma, r - t, eps)))


def in_tripod(alpha, beta, gamma, r, s, t, eps: float = EPS) -> bool:
    """Membership in the tight span: three segments from the leaves
    ``(0,t,s)``, ``(t,0,r)``, ``(s,r,0)`` to the common centre."""
    u, v, w = (s + t - r) / 2, (r + t - s) / 2, (r + s - t) / 2
    return bool(
        (-eps <= alpha <= u + eps and _eq(beta, t - alpha, eps)
         and _eq(gamma, s - alpha, eps))
        or (-eps <= beta <= v + eps and _eq(alpha, t - beta, eps)
            and _eq(gamma, r - beta, eps))
        or (-eps <= gamma <= w + eps and _eq(alpha, s - gamma, eps)
            and _eq(beta, r - gamma, eps)))


def sort_three_point(X: Space):
    """Relabel so the largest edge is opposite ``a``.

    Returns ``(order, (r, s, t))`` where ``order[k]`` is the index in X of
    the point playing role ``"abc"[k]``.  Ties keep the original order.
    """
    opposite_edge = [X.d[1, 2], X.d[2, 0], X.d[0, 1]]
    order = sorted(range(3), key=lambda i: (-opposite_edge[i], i))
    return order, tuple(float(opposite_edge[i]) for i in order)


def three_point_vertices(r, s, t) -> dict:
    return {
        "top": [s, r, r],
        "bottom": [0.0, 0.0, 0.0],
        "a": [0.0, t, s],
        "b": [t, 0.0, r],
        "c": [s, r, 0.0],
        "centre": [(s + t - r) / 2, (r + t - s) / 2, (r + s - t) / 2],
    }


def _closed_form(X: Space, eps):
    n = len(X)
    finite = bool(np.isfinite(X.d).all())
    if n == 2 and finite:
        r, s = float(X.d[0, 1]), float(X.d[1, 0])
        if is_symmetric(X, eps) and r > 0:
            return RegionDescription(
                "square", {"r": r},
                extras={"tight_span": [[0, extnn.to_json(r)],
                                       [extnn.to_json(r), 0]]})
        return RegionDescription("rectangle", {"r": r, "s": s})
    if n == 3 and is_classical(X, eps):
        order, (r, s, t) = sort_three_point(X)
        perm = {k: X.labels[i] for k, i in zip("abc", order)}
        verts = {k: extnn.to_json(v)
                 for k, v in three_point_vertices(r, s, t).items()}
        return RegionDescription(
            "three-point-complex", {"r": r, "s": s, "t": t},
            extras={"permutation": perm, "vertices": verts,
                    "labels": list(X.labels)})
    raise UnsupportedShape(f"no closed form for {X!r}")


def export_region(X: Space, sample: Grid | None = None, eps: float = EPS,
                  debug: bool = False, cross_check: bool = True,
                  budget: int = 10**6) -> RegionDescription:
    """Describe the completion of X, falling back to grid samples.

    Closed forms are checked against the brute-force fixed set on the
    sampling grid; a disagreement raises :class:`InternalInconsistency`.
    """
    grid = sample
    if grid is None:
        base = default_grid(X)
        grid = Grid(base.step, base.bound + base.step)
    try:
        region = _closed_form(X, eps)
    except UnsupportedShape as exc:
        if len(X) <= 3:
            warnings.warn(f"{exc}; sampling on a grid", stacklevel=2)
        pts = [f.values for f in brute_fixed_set(X, grid, budget)]
        return RegionDescription(
            "grid-sample", {"step": grid.step, "bound": grid.bound}, pts)
    if cross_check:
        fixed = {tuple(f.values) for f in brute_fixed_set(X, grid, budget)}
        for row in enumerate_tables(X, grid, budget):
            if region.contains(row, eps) != (tuple(row) in fixed):
                raise InternalInconsistency(
                    f"closed form and brute force disagree at "
                    f"{extnn.to_json(row)}")
    if debug and region.kind == "three-point-complex":
        p = region.parameters
        region.extras["debug"] = {
            "change_of_variables": "A = alpha + r, B = beta + s, C = gamma + t",
            "vertices_ABC": {
                k: extnn.to_json([v[0] + p["r"], v[1] + p["s"], v[2] + p["t"]])
                for k, v in three_point_vertices(p["r"], p["s"], p["t"]).items()},
        }
    return region
