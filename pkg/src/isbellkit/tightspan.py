"""Classical tight spans and the directed tight span of triangular pairs.

For a classical space three descriptions of the tight span are available
here and cross-checked in the tests:

* pointwise-minimal members of the aim ``f(x) + f(y) >= d(x, y)``;
* presheaves with ``f(x) = sup_y d(x, y) ⊖ f(y)``;
* completion points whose two halves coincide.

For arbitrary generalized metric spaces the minimal triangular pairs
``f(x) + g(y) >= d(x, y)`` are exactly the completion points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import extnn, isbell
from .errors import NotClassical, NotInAim, NotTight
from .extnn import EPS
from .functionals import Functional, presheaf_dist, same_base
from .isbell import IsbellPoint
from .space import Space, is_classical


def _require_classical(X: Space, eps=EPS):
    if not is_classical(X, eps):
        raise NotClassical(f"{X!r} is not a classical metric space")


def _geq(a, b, eps):
    return (a >= b) | extnn.close(a, b, eps)


def default_step(X: Space) -> float:
    """A quarter of the smallest positive distance (1.0 if there is none)."""
    pos = X.d[(X.d > 0) & np.isfinite(X.d)]
    return float(pos.min()) / 4 if pos.size else 1.0


def in_aim(f: Functional, eps: float = EPS) -> bool:
    _require_classical(f.base, eps)
    v = f.values
    return bool(np.all(_geq(v[:, None] + v[None, :], f.base.d, eps)))


def is_tight(f: Functional, eps: float = EPS) -> bool:
    """The self-duality condition ``f(x) = sup_y d(x, y) ⊖ f(y)``."""
    _require_classical(f.base, eps)
    rhs = isbell.conjugate_R_table(f.base, f.values)
    return extnn.allclose(f.values, rhs, eps)


def _lowered(v, i, delta):
    out = v.copy()
    out[i] = max(out[i] - delta, 0.0) if np.isfinite(out[i]) else out[i]
    return out


def is_minimal_in_aim(f: Functional, step: float | None = None,
                      eps: float = EPS) -> bool:
    """Perturbation test for pointwise minimality.

    The aim is closed upwards, so f is minimal iff lowering any single
    coordinate by a small amount leaves it.  Both ``10*eps`` and ``step``
    are tried.  A coordinate already at 0 cannot be lowered.
    """
    if not in_aim(f, eps):
        raise NotInAim(f"{f!r} is not in the aim")
    X = f.base
    step = default_step(X) if step is None else step
    for i in range(len(X)):
        if f.values[i] <= eps:
            continue
        for delta in [dl for dl in (10 * eps, step) if dl > 0]:
            g = Functional(X, _lowered(f.values, i, delta))
            if in_aim(g, eps):
                return False
    return True


def tightspan_dist(f: Functional, g: Functional, eps: float = EPS) -> float:
    """``sup_x |f(x) - g(x)|``, checked against both presheaf distances."""
    same_base(f, g)
    for h in (f, g):
        if not is_tight(h, eps):
            raise NotTight(f"{h!r} is not tight")
    with np.errstate(invalid="ignore"):
        diff = np.where(f.values == g.values, 0.0,
                        np.abs(f.values - g.values))
    out = float(np.max(diff, initial=0.0))
    forward, backward = presheaf_dist(f, g), presheaf_dist(g, f)
    assert extnn.close(out, forward, eps) and extnn.close(out, backward, eps)
    return out


def maximal_classical_subspace_check(P: IsbellPoint,
                                     eps: float = EPS) -> bool:
    """True iff P lies in the tight span, i.e. its two halves agree."""
    _require_classical(P.base, eps)
    return P.f.close_to(P.g, eps)


# -- triangular pairs --------------------------------------------------------

@dataclass(frozen=True)
class TriangularPair:
    f: Functional
    g: Functional

    @property
    def base(self) -> Space:
        return self.f.base

    def to_dict(self):
        return {"f": extnn.to_json(self.f.values),
                "g": extnn.to_json(self.g.values)}


def _triangular_values(d, f, g, eps):
    return bool(np.all(_geq(f[:, None] + g[None, :], d, eps)))


def is_triangular(f: Functional, g: Functional, eps: float = EPS) -> bool:
    X = same_base(f, g)
    return _triangular_values(X.d, f.values, g.values, eps)


def is_minimal_pair(f: Functional, g: Functional, eps: float = EPS) -> bool:
    """Minimal triangular pairs are exactly the completion points."""
    return is_triangular(f, g, eps) and isbell.is_isbell_point(f, g, eps)


def is_minimal_pair_perturbation(f: Functional, g: Functional,
                                 step: float | None = None,
                                 eps: float = EPS) -> bool:
    """Independent check: no single value can be lowered.

    Lowering an infinite value means replacing it by a finite value larger
    than every finite quantity in sight.
    """
    X = same_base(f, g)
    if not is_triangular(f, g, eps):
        return False
    step = default_step(X) if step is None else step
    fv, gv = f.values, g.values
    finite = np.concatenate([fv, gv, X.d.ravel()])
    finite = finite[np.isfinite(finite)]
    big = 2 * float(finite.max(initial=0.0)) + 1.0
    n = len(X)
    for which in (0, 1):
        for i in range(n):
            v = (fv, gv)[which]
            if np.isinf(v[i]):
                trials = [big]
            elif v[i] <= eps:
                continue
            else:
                trials = [max(v[i] - dl, 0.0) for dl in (10 * eps, step)
                          if dl > 0]
            for val in trials:
                w = v.copy()
                w[i] = val
                pair = (w, gv) if which == 0 else (fv, w)
                if _triangular_values(X.d, *pair, eps):
                    return False
    return True


def hk_dist(p: TriangularPair, q: TriangularPair) -> float:
    """Product distance on pairs: ``sup_x max(f'(x) ⊖ f(x), g(x) ⊖ g'(x))``.

    The g-term runs from q back to p, matching the opposite-copresheaf
    metric, so on completion points this is the completion distance.
    """
    same_base(p.f, q.f, p.g, q.g)
    terms = np.maximum(extnn.monus(q.f.values, p.f.values),
                       extnn.monus(p.g.values, q.g.values))
    return float(np.max(terms, initial=0.0))


def sample_tight_span(X: Space, grid, eps: float = EPS) -> list:
    """Grid points (as value lists) that satisfy the tightness condition."""
    from .oracle import enumerate_tables

    _require_classical(X, eps)
    tables = enumerate_tables(X, grid)
    if tables.size == 0:
        return []
    keep = np.all(extnn.close(isbell.conjugate_R_table(X, tables), tables,
                              eps), axis=-1)
    return [row for row in tables[keep]]
