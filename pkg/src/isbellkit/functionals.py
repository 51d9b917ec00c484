"""Presheaves, copresheaves and the Yoneda embeddings.

A presheaf on X is a table f with ``d(x, x') >= f(x) ⊖ f(x')``: think of
f(x) as the distance from x to some virtual point.  A copresheaf g has
``d(x, x') >= g(x') ⊖ g(x)``: distances from a virtual point to x.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import extnn
from .errors import BaseMismatch, RoleViolation
from .extnn import EPS
from .space import Space


class Role(str, Enum):
    RAW = "raw"
    PRESHEAF = "presheaf"
    COPRESHEAF = "copresheaf"


@dataclass(frozen=True, eq=False)
class Functional:
    """A table ``X -> [0, inf]`` tied to a space and tagged with a role.

    The role is a label, not a checked invariant; use :meth:`checked` or
    :func:`classify` to enforce it.
    """

    base: Space
    values: np.ndarray
    role: Role = Role.RAW

    def __post_init__(self):
        vals = extnn.ext_array(self.values, shape=(len(self.base),))
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "role", Role(self.role))

    def __getitem__(self, point) -> float:
        return float(self.values[self.base.index(point)])

    def __eq__(self, other):
        if not isinstance(other, Functional):
            return NotImplemented
        return self.base == other.base and np.array_equal(
            self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())

    def __repr__(self):
        return f"Functional({extnn.to_json(self.values)}, {self.role.value})"

    def with_role(self, role) -> "Functional":
        return Functional(self.base, self.values, role)

    def checked(self, eps: float = EPS) -> "Functional":
        """Raise :class:`RoleViolation` unless the table matches its role."""
        if self.role is Role.PRESHEAF and not is_presheaf(self, eps):
            raise RoleViolation(f"{self!r} is not a presheaf")
        if self.role is Role.COPRESHEAF and not is_copresheaf(self, eps):
            raise RoleViolation(f"{self!r} is not a copresheaf")
        return self

    def close_to(self, other: "Functional", eps: float = EPS) -> bool:
        same_base(self, other)
        return extnn.allclose(self.values, other.values, eps)

    def to_dict(self, include_space=False) -> dict:
        out = {"values": extnn.to_json(self.values), "role": self.role.value}
        if include_space:
            out["space"] = self.base.to_dict()
        return out


def functional(X: Space, values, role=Role.RAW) -> Functional:
    return Functional(X, np.asarray(extnn.ext_array(values)), role)


def from_dict(data, X: Space | None = None) -> Functional:
    """Read ``{"space": ..., "values": [...]}``; ``X`` overrides the space."""
    from . import space as space_mod

    if isinstance(data, list):
        data = {"values": data}
    if X is None:
        X = space_mod.from_dict(data["space"])
    return Functional(X, extnn.ext_array(data["values"]),
                      data.get("role", "raw"))


def from_json(text: str, X: Space | None = None) -> Functional:
    return from_dict(json.loads(text), X)


def same_base(*fs: Functional) -> Space:
    base = fs[0].base
    for f in fs[1:]:
        if f.base is not base and f.base != base:
            raise BaseMismatch("functionals live on different spaces")
    return base


def presheaf_dist(f: Functional, g: Functional) -> float:
    """``sup_x g(x) ⊖ f(x)``; zero exactly when f >= g pointwise."""
    same_base(f, g)
    return extnn.sup(extnn.monus(g.values, f.values).tolist())


def opcopresheaf_dist(g: Functional, g2: Functional) -> float:
    """Distance in the opposite of the copresheaf space: ``sup g ⊖ g2``."""
    same_base(g, g2)
    return extnn.sup(extnn.monus(g.values, g2.values).tolist())


def yoneda(X: Space, x) -> Functional:
    """``d(-, x)``: distances into ``x``."""
    return Functional(X, X.d[:, X.index(x)].copy(), Role.PRESHEAF)


def coyoneda(X: Space, x) -> Functional:
    """``d(x, -)``: distances out of ``x``."""
    return Functional(X, X.d[X.index(x), :].copy(), Role.COPRESHEAF)


def _slack_ok(d, lhs, eps):
    return bool(np.all((d >= lhs) | extnn.close(d, lhs, eps)))


def is_presheaf(f: Functional, eps: float = EPS) -> bool:
    v = f.values
    return _slack_ok(f.base.d, extnn.monus(v[:, None], v[None, :]), eps)


def is_copresheaf(f: Functional, eps: float = EPS) -> bool:
    v = f.values
    return _slack_ok(f.base.d, extnn.monus(v[None, :], v[:, None]), eps)


def classify(f: Functional, eps: float = EPS) -> set:
    """The roles the table satisfies; ``{Role.RAW}`` if neither."""
    roles = set()
    if is_presheaf(f, eps):
        roles.add(Role.PRESHEAF)
    if is_copresheaf(f, eps):
        roles.add(Role.COPRESHEAF)
    return roles or {Role.RAW}


def presheaf_closure(X: Space, values) -> np.ndarray:
    """Largest presheaf below a table: ``min_x' v(x') + d(x, x')``."""
    v = np.asarray(values, dtype=np.float64)
    return np.min(X.d + v[None, :], axis=1, initial=np.inf)


def copresheaf_closure(X: Space, values) -> np.ndarray:
    """Largest copresheaf below a table: ``min_x v(x) + d(x, y)``."""
    v = np.asarray(values, dtype=np.float64)
    return np.min(X.d + v[:, None], axis=0, initial=np.inf)
