"""Weighted colimits and limits, Kan extensions of weightings, and the two
semi-tropical module structures on the completion.

A colimit of a diagram ``J: D -> X`` weighted by ``W`` is a point c with

    d(c, x) = sup_d d(J(d), x) ⊖ W(d)        for every x,

and a limit is a point l with ``d(x, l) = sup_d d(x, J(d)) ⊖ W(d)``.
Colimit weights are presheaves on D, limit weights are copresheaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Sequence

import numpy as np

from . import extnn, isbell
from .errors import (BaseMismatch, LengthMismatch, NotShort, RoleViolation,
                     ShapeMismatch)
from .extnn import EPS, INF
from .functionals import (Functional, Role, is_copresheaf, is_presheaf,
                          opcopresheaf_dist, presheaf_dist, same_base)
from .isbell import IsbellPoint, isbell_dist
from .space import ShortMap, Space, discretize


# -- the interval [0, inf] ---------------------------------------------------

def _pair(W, J):
    W = extnn.ext_array(list(W)) if len(W) else np.zeros(0)
    J = extnn.ext_array(list(J)) if len(J) else np.zeros(0)
    if W.shape != J.shape:
        raise LengthMismatch(f"{len(W)} weights for {len(J)} diagram values")
    return W, J


def colim_interval(W: Sequence, J: Sequence) -> float:
    """``inf_d W(d) + J(d)``; the empty colimit is inf."""
    W, J = _pair(W, J)
    return float(np.min(W + J, initial=INF))


def lim_interval(W: Sequence, J: Sequence) -> float:
    """``sup_d J(d) ⊖ W(d)``; the empty limit is 0."""
    W, J = _pair(W, J)
    return float(np.max(extnn.monus(J, W), initial=0.0))


# -- diagrams ----------------------------------------------------------------

@dataclass(frozen=True)
class WeightedDiagram:
    """A shape D, images ``J`` (one per point of D) and a weight on D.

    The images are point labels of ``target`` when a target space is
    given, otherwise :class:`Functional` or :class:`IsbellPoint` values.
    """

    shape: Space
    J: tuple
    W: Functional
    target: Space | None = None

    def __post_init__(self):
        object.__setattr__(self, "J", tuple(self.J))
        if len(self.J) != len(self.shape):
            raise LengthMismatch(
                f"{len(self.J)} images for a shape with {len(self.shape)} points")
        if self.W.base != self.shape:
            raise BaseMismatch("weight must live on the shape")

    def image_distances(self) -> np.ndarray:
        """``d(J(d), J(d'))`` in whatever space the images live in."""
        m = len(self.J)
        out = np.zeros((m, m))
        if self.target is not None:
            idx = [self.target.index(j) for j in self.J]
            return self.target.d[np.ix_(idx, idx)].copy()
        for i, a in enumerate(self.J):
            for k, b in enumerate(self.J):
                out[i, k] = _image_dist(a, b)
        return out

    def check(self, kind: str = "colimit", eps: float = EPS):
        """Raise unless J is short and W has the right role."""
        bad = ~((self.shape.d >= self.image_distances())
                | extnn.close(self.shape.d, self.image_distances(), eps))
        if bad.any():
            i, k = map(int, np.argwhere(bad)[0])
            raise NotShort(f"diagram expands ({self.shape.labels[i]},"
                           f"{self.shape.labels[k]})")
        ok = is_presheaf if kind == "colimit" else is_copresheaf
        if not ok(self.W, eps):
            raise RoleViolation(f"{kind} weight has the wrong variance")
        return self

    def to_dict(self) -> dict:
        def enc(j):
            if isinstance(j, IsbellPoint):
                return j.to_dict()
            if isinstance(j, Functional):
                return extnn.to_json(j.values)
            return j
        out = {"shape": self.shape.to_dict(), "J": [enc(j) for j in self.J],
               "W": extnn.to_json(self.W.values)}
        if self.target is not None:
            out["space"] = self.target.to_dict()
        return out


def _image_dist(a, b) -> float:
    if isinstance(a, IsbellPoint):
        return isbell_dist(a, b)
    if a.role is Role.COPRESHEAF:
        return opcopresheaf_dist(a, b)
    return presheaf_dist(a, b)


def diagram(shape: Space, J, W, target: Space | None = None,
            role=Role.PRESHEAF) -> WeightedDiagram:
    if not isinstance(W, Functional):
        W = Functional(shape, W, role)
    return WeightedDiagram(shape, tuple(J), W, target)


def _common_base(WD: WeightedDiagram, X: Space | None = None) -> Space:
    bases = [j.base for j in WD.J]
    if X is not None:
        bases.append(X)
    if not bases:
        raise BaseMismatch("cannot infer the base space of an empty diagram")
    for b in bases[1:]:
        if b != bases[0]:
            raise BaseMismatch("diagram values live on different spaces")
    return bases[0]


def _halves(WD, which):
    rows = []
    for j in WD.J:
        if isinstance(j, IsbellPoint):
            rows.append((j.f if which == "f" else j.g).values)
        else:
            rows.append(j.values)
    return np.array(rows)


def _pointwise_inf(W, tables, n):
    if len(W) == 0:
        return np.full(n, INF)
    return np.min(W[:, None] + tables, axis=0)


# -- colimits and limits of functionals --------------------------------------

def colim_presheaf(WD: WeightedDiagram, X: Space | None = None) -> Functional:
    """Pointwise colimit in presheaf space: ``x -> inf_d W(d) + J(d)(x)``.

    ``X`` names the base for an empty diagram.
    """
    X = _common_base(WD, X)
    values = _pointwise_inf(WD.W.values, _halves(WD, "f"), len(X))
    return Functional(X, values, Role.PRESHEAF)


def colim_fixRL(WD: WeightedDiagram, X: Space | None = None) -> IsbellPoint:
    """Colimit in the completion: RL of the pointwise presheaf colimit."""
    X = _common_base(WD, X)
    values = _pointwise_inf(WD.W.values, _halves(WD, "f"), len(X))
    return isbell.project_point(Functional(X, values))


def lim_opcopresheaf(WD: WeightedDiagram, X: Space | None = None) -> Functional:
    """Pointwise limit in the opposite copresheaf space."""
    X = _common_base(WD, X)
    values = _pointwise_inf(WD.W.values, _halves(WD, "g"), len(X))
    return Functional(X, values, Role.COPRESHEAF)


def lim_fixLR(WD: WeightedDiagram, X: Space | None = None) -> IsbellPoint:
    """Limit in the completion: LR of the pointwise limit on g-halves."""
    X = _common_base(WD, X)
    values = _pointwise_inf(WD.W.values, _halves(WD, "g"), len(X))
    return isbell.project_point_from_g(Functional(X, values))


# -- colimits inside a finite space ------------------------------------------

def _indices(WD: WeightedDiagram, X: Space):
    if WD.target is not None and WD.target != X:
        raise BaseMismatch("diagram targets a different space")
    return [X.index(j) for j in WD.J]


def colimit_profile(X: Space, WD: WeightedDiagram) -> np.ndarray:
    """``x -> sup_d d(J(d), x) ⊖ W(d)``: what ``d(c, -)`` must equal."""
    idx = _indices(WD, X)
    if not idx:
        return np.zeros(len(X))
    terms = extnn.monus(X.d[idx, :], WD.W.values[:, None])
    return np.max(terms, axis=0)


def limit_profile(X: Space, WD: WeightedDiagram) -> np.ndarray:
    """``x -> sup_d d(x, J(d)) ⊖ W(d)``: what ``d(-, l)`` must equal."""
    idx = _indices(WD, X)
    if not idx:
        return np.zeros(len(X))
    terms = extnn.monus(X.d[:, idx], WD.W.values[None, :])
    return np.max(terms, axis=1)


def colimit_search(X: Space, WD: WeightedDiagram, eps: float = EPS) -> list:
    """Every point of X satisfying the colimit equation (possibly none)."""
    want = colimit_profile(X, WD)
    ok = np.all(extnn.close(X.d, want[None, :], eps), axis=1)
    return [X.labels[i] for i in np.flatnonzero(ok)]


def limit_search(X: Space, WD: WeightedDiagram, eps: float = EPS) -> list:
    want = limit_profile(X, WD)
    ok = np.all(extnn.close(X.d, want[:, None], eps), axis=0)
    return [X.labels[i] for i in np.flatnonzero(ok)]


def embedded_diagram(WD: WeightedDiagram) -> WeightedDiagram:
    """Push a diagram into X through the embedding into the completion."""
    X = WD.target
    return WeightedDiagram(WD.shape, tuple(isbell.embed(X, j) for j in WD.J),
                           WD.W)


def discretize_diagram(WD: WeightedDiagram) -> WeightedDiagram:
    """Pull a diagram back along the identity-on-points map from the
    discretized shape."""
    D = discretize(WD.shape)
    return WeightedDiagram(D, WD.J, Functional(D, WD.W.values, WD.W.role),
                           WD.target)


def colimit_universal_gaps(c: IsbellPoint, WD: WeightedDiagram,
                           probes: Sequence[IsbellPoint]) -> np.ndarray:
    """``d(c, P) - sup_d d(J(d), P) ⊖ W(d)`` for each probe P.

    All entries are zero exactly when c satisfies the colimit equation
    against the probes.
    """
    out = []
    for P in probes:
        want = extnn.sup(extnn.monus(isbell_dist(j, P), w)
                         for j, w in zip(WD.J, WD.W.values))
        out.append(extnn.max_deviation(isbell_dist(c, P), want))
    return np.array(out)


def limit_universal_gaps(l: IsbellPoint, WD: WeightedDiagram,
                         probes: Sequence[IsbellPoint]) -> np.ndarray:
    out = []
    for P in probes:
        want = extnn.sup(extnn.monus(isbell_dist(P, j), w)
                         for j, w in zip(WD.J, WD.W.values))
        out.append(extnn.max_deviation(isbell_dist(P, l), want))
    return np.array(out)


# -- Kan extensions of weightings --------------------------------------------

def kan_pullback(G: ShortMap, V: Functional) -> Functional:
    """``G*V = V ∘ G``."""
    if V.base != G.target:
        raise BaseMismatch("V must live on the target of G")
    return Functional(G.source, V.values[list(G.indices)])


def _on_source(G: ShortMap, W: Functional):
    if W.base != G.source:
        raise BaseMismatch("W must live on the source of G")
    return W.values, list(G.indices)


def kan_left(G: ShortMap, W: Functional) -> Functional:
    """``G_!W(z) = inf_y W(y) + d(G(y), z)``."""
    w, idx = _on_source(G, W)
    Z = G.target
    if not idx:
        return Functional(Z, np.full(len(Z), INF))
    return Functional(Z, np.min(w[:, None] + Z.d[idx, :], axis=0))


def kan_right(G: ShortMap, W: Functional) -> Functional:
    """``G_*W(z) = sup_y W(y) ⊖ d(z, G(y))``."""
    w, idx = _on_source(G, W)
    Z = G.target
    if not idx:
        return Functional(Z, np.zeros(len(Z)))
    return Functional(Z, np.max(extnn.monus(w[None, :], Z.d[:, idx]), axis=1))


def pushforward_colimit_check(WD: WeightedDiagram, J: ShortMap, G: ShortMap,
                              eps: float = EPS) -> bool:
    """Pushing the weight forward along J does not change the colimit.

    Compares, in presheaf space over the target of G, the colimit of
    ``y -> G(x)`` weighted by the pushed-forward weight with the colimit of
    ``G ∘ J`` weighted by W.  Presheaf weights push forward along the
    opposite map.
    """
    if J.source != WD.shape or G.source != J.target:
        raise ShapeMismatch("maps do not match the diagram")
    Y = G.target
    Jop = J.opposite()
    pushed = kan_left(Jop, Functional(Jop.source, WD.W.values))
    lhs = _pointwise_inf(pushed.values, Y.d[:, list(G.indices)].T, len(Y))
    GJ = [G.indices[i] for i in J.indices]
    rhs = _pointwise_inf(WD.W.values, Y.d[:, GJ].T, len(Y))
    return extnn.allclose(lhs, rhs, eps)


# -- module structures -------------------------------------------------------

def _scalar(tau) -> float:
    return extnn.ext(tau)


def oplus(p: IsbellPoint, q: IsbellPoint) -> IsbellPoint:
    """Co-metric sum: RL of the pointwise min of the f-halves."""
    X = same_base(p.f, q.f)
    return isbell.project_point(
        Functional(X, np.minimum(p.f.values, q.f.values)))


def odot(tau, p: IsbellPoint) -> IsbellPoint:
    """Co-metric action: RL of the f-half shifted up by tau."""
    return isbell.project_point(
        Functional(p.base, _scalar(tau) + p.f.values))


def boxplus(p: IsbellPoint, q: IsbellPoint) -> IsbellPoint:
    """Metric sum: LR of the pointwise min of the g-halves."""
    X = same_base(p.g, q.g)
    return isbell.project_point_from_g(
        Functional(X, np.minimum(p.g.values, q.g.values)))


def boxdot(tau, p: IsbellPoint) -> IsbellPoint:
    return isbell.project_point_from_g(
        Functional(p.base, _scalar(tau) + p.g.values))


def fold_oplus(points: Sequence[IsbellPoint], X: Space) -> IsbellPoint:
    """Sum in index order, starting from the unit ⊤."""
    return reduce(oplus, points, isbell.top(X))


def fold_boxplus(points: Sequence[IsbellPoint], X: Space) -> IsbellPoint:
    return reduce(boxplus, points, isbell.bottom(X))


class Structure(str, Enum):
    COMETRIC = "cometric"
    METRIC = "metric"


@dataclass(frozen=True)
class ModuleElement:
    """A completion point viewed in one of the two module structures.

    ``m + n`` is the sum and ``tau * m`` the action.
    """

    point: IsbellPoint
    structure: Structure = Structure.COMETRIC

    def _plus(self):
        return oplus if self.structure is Structure.COMETRIC else boxplus

    def _act(self):
        return odot if self.structure is Structure.COMETRIC else boxdot

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        if other.structure is not self.structure:
            raise ShapeMismatch("cannot mix module structures")
        return ModuleElement(self._plus()(self.point, other.point),
                             self.structure)

    def __rmul__(self, tau) -> "ModuleElement":
        return ModuleElement(self._act()(tau, self.point), self.structure)

    def unit(self) -> "ModuleElement":
        X = self.point.base
        u = isbell.top(X) if self.structure is Structure.COMETRIC \
            else isbell.bottom(X)
        return ModuleElement(u, self.structure)

    def close_to(self, other: "ModuleElement", eps: float = EPS) -> bool:
        return self.point.close_to(other.point, eps)
