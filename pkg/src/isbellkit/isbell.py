"""Isbell conjugation and the Isbell completion.

The two conjugation operators are

    L(f)(y) = sup_x d(x, y) ⊖ f(x)        presheaf   -> op-copresheaf
    R(g)(x) = sup_y d(x, y) ⊖ g(y)        op-copresheaf -> presheaf

A point of the completion is a pair (f, g) with L(f) = g and R(g) = f;
f(x) is read as the distance from x to the point and g(x) as the distance
from the point to x.

The ``*_table`` functions act on plain float arrays whose last axis is
indexed by the points of the space, so a whole batch of tables can be
pushed through in one call.  L and R are total formulas and accept any
table, presheaf or not.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import extnn
from .errors import (BaseMismatch, InternalInconsistency, NotFixed,
                     NoWitness)
from .extnn import EPS
from .functionals import (Functional, Role, coyoneda, opcopresheaf_dist,
                          presheaf_dist, same_base, yoneda)
from .space import Space


def _check_last_axis(X: Space, values) -> np.ndarray:
    values = np.asarray(values, dtype=np.float64)
    if values.shape[-1:] != (len(X),):
        raise BaseMismatch(
            f"table length {values.shape[-1:]} does not match {len(X)} points")
    return values


def conjugate_L_table(X: Space, f) -> np.ndarray:
    f = _check_last_axis(X, f)
    if len(X) == 0:
        return f.copy()
    # terms[..., x, y] = d(x, y) ⊖ f(x)
    terms = extnn.monus(X.d, f[..., :, None])
    return np.max(terms, axis=-2)


def conjugate_R_table(X: Space, g) -> np.ndarray:
    g = _check_last_axis(X, g)
    if len(X) == 0:
        return g.copy()
    # terms[..., x, y] = d(x, y) ⊖ g(y)
    terms = extnn.monus(X.d, g[..., None, :])
    return np.max(terms, axis=-1)


def project_RL_table(X: Space, f) -> np.ndarray:
    return conjugate_R_table(X, conjugate_L_table(X, f))


def project_LR_table(X: Space, g) -> np.ndarray:
    return conjugate_L_table(X, conjugate_R_table(X, g))


def presheaf_dist_table(f, f2) -> np.ndarray:
    """Batched ``sup_x f2(x) ⊖ f(x)``."""
    terms = extnn.monus(np.asarray(f2), np.asarray(f))
    return np.max(terms, axis=-1, initial=0.0)


def opcopresheaf_dist_table(g, g2) -> np.ndarray:
    """Batched ``sup_x g(x) ⊖ g2(x)``."""
    terms = extnn.monus(np.asarray(g), np.asarray(g2))
    return np.max(terms, axis=-1, initial=0.0)


def conjugate_L(f: Functional) -> Functional:
    return Functional(f.base, conjugate_L_table(f.base, f.values),
                      Role.COPRESHEAF)


def conjugate_R(g: Functional) -> Functional:
    return Functional(g.base, conjugate_R_table(g.base, g.values),
                      Role.PRESHEAF)


def project_RL(f: Functional) -> Functional:
    return conjugate_R(conjugate_L(f))


def project_LR(g: Functional) -> Functional:
    return conjugate_L(conjugate_R(g))


@dataclass(frozen=True, eq=False)
class IsbellPoint:
    """A point of the Isbell completion, stored as both halves.

    Either half determines the other; keeping both lets
    :func:`isbell_dist` cross-check the two distance formulas.
    """

    f: Functional
    g: Functional

    @property
    def base(self) -> Space:
        return self.f.base

    @classmethod
    def from_f(cls, f: Functional, eps: float = EPS) -> "IsbellPoint":
        return completion_from_presheaf(f, eps)

    @classmethod
    def from_g(cls, g: Functional, eps: float = EPS) -> "IsbellPoint":
        return completion_from_copresheaf(g, eps)

    def __eq__(self, other):
        if not isinstance(other, IsbellPoint):
            return NotImplemented
        return self.f == other.f and self.g == other.g

    def __hash__(self):
        return hash(self.f)

    def close_to(self, other: "IsbellPoint", eps: float = EPS) -> bool:
        return self.f.close_to(other.f, eps) and self.g.close_to(other.g, eps)

    def __repr__(self):
        return (f"IsbellPoint(f={extnn.to_json(self.f.values)}, "
                f"g={extnn.to_json(self.g.values)})")

    def to_dict(self) -> dict:
        return {"f": extnn.to_json(self.f.values),
                "g": extnn.to_json(self.g.values)}


def _isbell_point(X: Space, f_values, g_values) -> IsbellPoint:
    return IsbellPoint(Functional(X, f_values, Role.PRESHEAF),
                       Functional(X, g_values, Role.COPRESHEAF))


def project_point(f: Functional) -> IsbellPoint:
    """The completion point RL(f), packaged with its g-half L(f)."""
    X = f.base
    g = conjugate_L_table(X, f.values)
    return _isbell_point(X, conjugate_R_table(X, g), g)


def project_point_from_g(g: Functional) -> IsbellPoint:
    """The completion point LR(g), packaged with its f-half R(g)."""
    X = g.base
    f = conjugate_R_table(X, g.values)
    return _isbell_point(X, f, conjugate_L_table(X, f))


def _first_deviation(X, a, b):
    with np.errstate(invalid="ignore"):
        dev = np.abs(np.where(a == b, 0.0, a - b))
    i = int(np.argmax(dev))
    return X.labels[i], float(dev[i])


def is_fixed_RL(f: Functional, eps: float = EPS) -> bool:
    return extnn.allclose(project_RL_table(f.base, f.values), f.values, eps)


def is_fixed_LR(g: Functional, eps: float = EPS) -> bool:
    return extnn.allclose(project_LR_table(g.base, g.values), g.values, eps)


def is_isbell_point(f: Functional, g: Functional, eps: float = EPS) -> bool:
    X = same_base(f, g)
    return (extnn.allclose(conjugate_L_table(X, f.values), g.values, eps)
            and extnn.allclose(conjugate_R_table(X, g.values), f.values, eps))


def completion_from_presheaf(f: Functional, eps: float = EPS) -> IsbellPoint:
    """Package a fixed point of RL as ``(f, L(f))``.

    Raises :class:`NotFixed` naming the worst coordinate otherwise.
    """
    X = f.base
    g = conjugate_L_table(X, f.values)
    back = conjugate_R_table(X, g)
    if not extnn.allclose(back, f.values, eps):
        raise NotFixed(*_first_deviation(X, back, f.values))
    return _isbell_point(X, f.values, g)


def completion_from_copresheaf(g: Functional,
                               eps: float = EPS) -> IsbellPoint:
    X = g.base
    f = conjugate_R_table(X, g.values)
    back = conjugate_L_table(X, f)
    if not extnn.allclose(back, g.values, eps):
        raise NotFixed(*_first_deviation(X, back, g.values))
    return _isbell_point(X, f, g.values)


def isbell_dist(p: IsbellPoint, q: IsbellPoint, eps: float = EPS) -> float:
    """Distance in the completion, computed from the f-halves.

    The g-half formula is evaluated too and must agree.
    """
    same_base(p.f, q.f)
    via_f = presheaf_dist(p.f, q.f)
    via_g = opcopresheaf_dist(p.g, q.g)
    if not extnn.close(via_f, via_g, eps):
        raise InternalInconsistency(
            f"distance via f is {via_f} but via g is {via_g}")
    return via_f


def embed(X: Space, x) -> IsbellPoint:
    return IsbellPoint(yoneda(X, x), coyoneda(X, x))


def top(X: Space) -> IsbellPoint:
    """The initial point: distance 0 to every point of the completion."""
    return project_point(Functional(X, np.full(len(X), np.inf)))


def bottom(X: Space) -> IsbellPoint:
    """The terminal point: distance 0 from every point of the completion."""
    return project_point_from_g(Functional(X, np.full(len(X), np.inf)))


def geodesic_witness(P: IsbellPoint, z, eps: float):
    """Points x, y nearly on geodesics through P from x to z and z to y.

    Returns ``(x, y)`` with ``d(x,P) + d(P,z) <= d(x,z) + eps`` and
    ``d(z,P) + d(P,y) <= d(z,y) + eps``, choosing the smallest slack (ties
    to the lowest index).
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    X = P.base
    k = X.index(z)
    f, g = P.f.values, P.g.values
    # slack for x: (f(x) + g(z)) ⊖ d(x, z); for y: (f(z) + g(y)) ⊖ d(z, y)
    slack_x = extnn.monus(f + g[k], X.d[:, k])
    slack_y = extnn.monus(f[k] + g, X.d[k, :])
    i, j = int(np.argmin(slack_x)), int(np.argmin(slack_y))
    if slack_x[i] > eps or slack_y[j] > eps:
        raise NoWitness(
            f"no witness within {eps}: slacks {slack_x[i]}, {slack_y[j]}")
    return X.labels[i], X.labels[j]
