"""Finite generalized metric spaces and short maps between them."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import extnn
from .errors import (Expansive, ShapeMismatch, TriangleViolation,
                     UnknownPoint, ZeroDiagonalViolation)
from .extnn import EPS, INF


@dataclass(frozen=True, eq=False)
class Space:
    """A finite set of labelled points with a distance table.

    ``d[i, j]`` is the distance *from* point ``i`` *to* point ``j``.  No
    symmetry is assumed.  Build instances with :func:`validate`; the
    constructor itself does not check the axioms.
    """

    labels: tuple
    d: np.ndarray

    def __post_init__(self):
        self.d.setflags(write=False)

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, Space):
            return NotImplemented
        return (self.labels == other.labels
                and np.array_equal(self.d, other.d))

    def __hash__(self):
        return hash((self.labels, self.d.tobytes()))

    def __repr__(self):
        return f"Space({list(self.labels)!r})"

    def index(self, point) -> int:
        try:
            return self.labels.index(point)
        except ValueError:
            raise UnknownPoint(point) from None

    def dist(self, x, y) -> float:
        return float(self.d[self.index(x), self.index(y)])

    def to_dict(self) -> dict:
        return {"points": list(self.labels), "d": extnn.to_json(self.d)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def validate(labels: Sequence, table, eps: float = EPS) -> Space:
    """Check the axioms and return a :class:`Space`.

    Raises the first violation found, scanning the diagonal first and then
    triples ``(x, y, z)`` in index order.
    """
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ShapeMismatch("point labels must be distinct")
    n = len(labels)
    try:
        d = extnn.ext_array(table)
    except ValueError as exc:
        if isinstance(exc, extnn.InvalidValue):
            raise
        raise ShapeMismatch(str(exc)) from None
    if d.shape != (n, n):
        if n == 0 and d.size == 0:
            d = np.zeros((0, 0))
        else:
            raise ShapeMismatch(
                f"{n} labels but distance table has shape {d.shape}")
    for i in range(n):
        if d[i, i] > eps:
            raise ZeroDiagonalViolation(labels[i], float(d[i, i]))
    d = d.copy()
    np.fill_diagonal(d, 0.0)
    # lhs[i, j, k] = d(i, j) + d(j, k) must dominate d(i, k)
    lhs = d[:, :, None] + d[None, :, :]
    rhs = np.broadcast_to(d[:, None, :], lhs.shape)
    bad = ~((lhs >= rhs) | extnn.close(lhs, rhs, eps))
    if bad.any():
        i, j, k = map(int, np.argwhere(bad)[0])
        raise TriangleViolation(labels[i], labels[j], labels[k],
                                float(lhs[i, j, k]), float(rhs[i, j, k]))
    return Space(labels, d)


def from_dict(data: Mapping) -> Space:
    try:
        labels = data["points"]
        table = data["d"]
    except (KeyError, TypeError):
        raise ShapeMismatch(
            'space JSON needs "points" and "d" keys') from None
    return validate(labels, table)


def from_json(text: str) -> Space:
    return from_dict(json.loads(text))


def from_csv(text: str) -> Space:
    """Square matrix with a header row of labels."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows:
        raise ShapeMismatch("empty CSV")
    header = [h.strip() for h in rows[0]]
    body = [[c.strip() for c in r] for r in rows[1:]]
    # tolerate a leading label column
    if body and len(body[0]) == len(header) + 1:
        body = [r[1:] for r in body]
    elif header and header[0] == "" and body and len(body[0]) == len(header):
        header = header[1:]
        body = [r[1:] for r in body]
    return validate(header, body)


def to_csv(X: Space) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(X.labels)
    for row in X.d:
        w.writerow(extnn.to_json(row))
    return buf.getvalue()


def load(path: str) -> Space:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".csv"):
        return from_csv(text)
    return from_json(text)


# -- named examples ----------------------------------------------------------

def two_point(r, s) -> Space:
    """``N_{r,s}``: d(a, b) = r and d(b, a) = s."""
    return validate(("a", "b"), [[0, r], [s, 0]])


def symmetric_two_point(r) -> Space:
    """``A_r``: two points at mutual distance r."""
    return two_point(r, r)


def three_point(r, s, t) -> Space:
    """``A_{r,s,t}``: r = d(b, c), s = d(c, a), t = d(a, b), symmetric."""
    return validate(("a", "b", "c"),
                    [[0, t, s],
                     [t, 0, r],
                     [s, r, 0]])


def one_point() -> Space:
    return validate(("a",), [[0]])


def named(name: str) -> Space:
    """Parse names like ``A_2``, ``N_3_2``, ``A_3_2_2``, ``point``."""
    if name in ("point", "one_point"):
        return one_point()
    parts = name.split("_")
    try:
        params = [extnn.ext(p.replace("p", ".")) for p in parts[1:]]
    except ValueError:
        raise ShapeMismatch(f"unknown named space {name!r}") from None
    if parts[0] == "A" and len(params) == 1:
        return symmetric_two_point(*params)
    if parts[0] == "N" and len(params) == 2:
        return two_point(*params)
    if parts[0] == "A" and len(params) == 3:
        return three_point(*params)
    raise ShapeMismatch(f"unknown named space {name!r}")


# -- basic constructions -----------------------------------------------------

def opposite(X: Space) -> Space:
    return Space(X.labels, X.d.T.copy())


def is_skeletal(X: Space, eps: float = EPS) -> bool:
    n = len(X)
    zero = extnn.close(X.d, 0.0, eps) & extnn.close(X.d.T, 0.0, eps)
    return not bool((zero & ~np.eye(n, dtype=bool)).any())


def is_symmetric(X: Space, eps: float = EPS) -> bool:
    return extnn.allclose(X.d, X.d.T, eps)


def is_classical(X: Space, eps: float = EPS) -> bool:
    return (is_symmetric(X, eps) and is_skeletal(X, eps)
            and bool(np.isfinite(X.d).all()))


def is_discrete(X: Space) -> bool:
    n = len(X)
    return bool(np.all(np.isinf(X.d) | np.eye(n, dtype=bool)))


def discretize(D: Space) -> Space:
    """Same points, every distinct pair infinitely far apart."""
    n = len(D)
    d = np.full((n, n), INF)
    np.fill_diagonal(d, 0.0)
    return Space(D.labels, d)


def skeletalize(X: Space, eps: float = EPS):
    """Quotient by the relation d(x, y) = 0 = d(y, x).

    Each class is represented by its lowest-index member.  Returns the
    quotient space together with the map ``label -> representative``.
    """
    n = len(X)
    rep = list(range(n))
    for i in range(n):
        for j in range(i):
            if rep[j] == j and extnn.close(X.d[i, j], 0, eps) \
                    and extnn.close(X.d[j, i], 0, eps):
                rep[i] = j
                break
    keep = [i for i in range(n) if rep[i] == i]
    Q = Space(tuple(X.labels[i] for i in keep), X.d[np.ix_(keep, keep)].copy())
    return Q, {X.labels[i]: X.labels[rep[i]] for i in range(n)}


def subspace(X: Space, points: Sequence) -> Space:
    idx = [X.index(p) for p in points]
    return Space(tuple(points), X.d[np.ix_(idx, idx)].copy())


def metric_closure(d) -> np.ndarray:
    """Shortest-path closure of a nonnegative weight table (diagonal 0).

    The result always satisfies the triangle inequality.
    """
    d = np.array(d, dtype=np.float64)
    np.fill_diagonal(d, 0.0)
    for k in range(d.shape[0]):
        d = np.minimum(d, d[:, k:k + 1] + d[k:k + 1, :])
    return d


def random_space(n: int, rng: np.random.Generator, *, max_dist=4.0,
                 step=0.5, p_inf=0.0, p_zero=0.0, symmetric=False,
                 labels=None) -> Space:
    """A random generalized metric space with distances on a dyadic grid.

    Raw weights are drawn from ``{step, 2*step, ..., max_dist}`` (or 0 / inf
    with the given probabilities) and then closed under shortest paths.
    For a classical space pass ``symmetric=True`` with ``p_zero=p_inf=0``.
    """
    k = int(round(max_dist / step))
    w = rng.integers(1, k + 1, size=(n, n)) * step
    w = w.astype(np.float64)
    if p_zero:
        w[rng.random((n, n)) < p_zero] = 0.0
    if p_inf:
        w[rng.random((n, n)) < p_inf] = INF
    if symmetric:
        w = np.triu(w, 1)
        w = w + w.T
    d = metric_closure(w)
    if labels is None:
        labels = [f"x{i}" for i in range(n)]
    return Space(tuple(labels), d)


# -- short maps --------------------------------------------------------------

@dataclass(frozen=True)
class ShortMap:
    """A distance non-increasing map, stored as target indices."""

    source: Space
    target: Space
    indices: tuple

    def __call__(self, x):
        return self.target.labels[self.indices[self.source.index(x)]]

    @property
    def assignment(self) -> dict:
        return {x: self.target.labels[j]
                for x, j in zip(self.source.labels, self.indices)}

    def compose(self, after: "ShortMap") -> "ShortMap":
        """``after ∘ self``."""
        if after.source != self.target:
            raise ShapeMismatch("maps are not composable")
        return ShortMap(self.source, after.target,
                        tuple(after.indices[j] for j in self.indices))

    def opposite(self) -> "ShortMap":
        return ShortMap(opposite(self.source), opposite(self.target),
                        self.indices)

    def pulled_back_table(self) -> np.ndarray:
        """``d_target(F(x), F(x'))`` indexed by source pairs."""
        idx = list(self.indices)
        return self.target.d[np.ix_(idx, idx)]


def check_short_map(assignment, X: Space, Y: Space,
                    eps: float = EPS) -> ShortMap:
    """Validate a map ``X -> Y`` given as a mapping or a sequence of labels."""
    if isinstance(assignment, Mapping):
        missing = [x for x in X.labels if x not in assignment]
        if missing:
            raise UnknownPoint(missing[0])
        images = [assignment[x] for x in X.labels]
    else:
        images = list(assignment)
        if len(images) != len(X):
            raise ShapeMismatch("assignment must cover every source point")
    indices = tuple(Y.index(y) for y in images)
    F = ShortMap(X, Y, indices)
    after = F.pulled_back_table()
    bad = ~((X.d >= after) | extnn.close(X.d, after, eps))
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        raise Expansive(X.labels[i], X.labels[j],
                        float(X.d[i, j]), float(after[i, j]))
    return F


def identity_map(X: Space) -> ShortMap:
    return ShortMap(X, X, tuple(range(len(X))))


def discretization_map(D: Space) -> ShortMap:
    """The identity-on-points short map from the discretization to ``D``."""
    return ShortMap(discretize(D), D, tuple(range(len(D))))


def random_short_map(X: Space, Y: Space, rng: np.random.Generator,
                     eps: float = EPS):
    """Random assignment X -> Y, with X's metric enlarged until it is short.

    Returns ``(X', F)`` where ``X'`` has the labels of ``X`` and distances
    ``max(d_X, d_Y∘F)``; the pointwise max of two metrics is a metric.
    """
    indices = tuple(int(i) for i in rng.integers(0, len(Y), size=len(X)))
    pulled = Y.d[np.ix_(indices, indices)]
    Xs = Space(X.labels, np.maximum(X.d, pulled))
    return Xs, check_short_map([Y.labels[i] for i in indices], Xs, Y, eps)


def is_isometry(F: ShortMap, eps: float = EPS) -> bool:
    return extnn.allclose(F.source.d, F.pulled_back_table(), eps)

