"""Brute-force verification engine.

Functionals are enumerated on a quantized grid ``{0, h, 2h, ..., B}`` and
the closed-form results elsewhere in the package are compared against
exhaustive search.  The fixed-set oracle evaluates RL with its own plain
Python loops so it shares no code with the vectorized kernels.

When h divides every finite distance, min, max, + and ⊖ of grid values
stay on the grid and equality tests are exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterator

import numpy as np

from . import cocomplete as cc
from . import extnn, isbell
from . import space as sp
from .errors import BudgetExceeded, UnknownTheorem
from .extnn import EPS, INF
from .functionals import (Functional, Role, copresheaf_closure, is_copresheaf,
                          is_presheaf, presheaf_closure, presheaf_dist,
                          opcopresheaf_dist)
from .isbell import IsbellPoint, isbell_dist
from .space import Space

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class Grid:
    step: float
    bound: float
    include_infinity: bool = False

    def __post_init__(self):
        if not self.step > 0 or not math.isfinite(self.bound) or self.bound < 0:
            raise ValueError("grid needs a positive step and a finite bound")

    def values(self) -> np.ndarray:
        k = int(math.floor(self.bound / self.step + 1e-9))
        vals = np.arange(k + 1) * self.step
        if self.include_infinity:
            vals = np.append(vals, INF)
        return vals

    def count(self, n: int) -> int:
        return len(self.values()) ** n


def default_step(X: Space, max_denominator: int = 2**20) -> float:
    """Largest h dividing every finite positive distance, if there is a
    reasonable one; otherwise a quarter of the smallest positive distance."""
    pos = [float(v) for v in X.d.ravel() if 0 < v < INF]
    if not pos:
        return 1.0
    fracs = [Fraction(v) for v in pos]
    den = reduce(lambda a, b: a * b // math.gcd(a, b),
                 (f.denominator for f in fracs))
    if den <= max_denominator:
        num = reduce(math.gcd, (int(f * den) for f in fracs))
        h = num / den
        if h >= min(pos) / 64:
            return h
    return min(pos) / 4


def default_grid(X: Space, step: float | None = None,
                 bound: float | None = None) -> Grid:
    h = default_step(X) if step is None else step
    finite = X.d[np.isfinite(X.d)]
    B = float(finite.max(initial=0.0)) if bound is None else bound
    return Grid(h, max(B, 0.0))


def _check_budget(count: int, budget: int):
    if count > budget:
        raise BudgetExceeded(f"{count} candidates exceeds budget {budget}")


def enumerate_tables(X: Space, grid: Grid,
                     budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """All grid tables as rows, lexicographic with point 0 most significant."""
    vals = grid.values()
    n = len(X)
    _check_budget(len(vals) ** n, budget)
    if n == 0:
        return np.zeros((1, 0))
    mesh = np.meshgrid(*([vals] * n), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def enumerate_functionals(X: Space, grid: Grid, role=Role.RAW,
                          budget: int = DEFAULT_BUDGET) -> Iterator[Functional]:
    """Every grid table satisfying ``role``, in lexicographic order."""
    role = Role(role)
    vals = grid.values().tolist()
    _check_budget(len(vals) ** len(X), budget)
    check = {Role.RAW: None, Role.PRESHEAF: is_presheaf,
             Role.COPRESHEAF: is_copresheaf}[role]
    for combo in itertools.product(vals, repeat=len(X)):
        f = Functional(X, np.array(combo, dtype=np.float64), role)
        if check is None or check(f):
            yield f


# -- independent reference evaluation ----------------------------------------

def _monus(b, a):
    return b - a if b > a else 0.0


def reference_L(d, f):
    n = len(f)
    return [max([_monus(d[x][y], f[x]) for x in range(n)], default=0.0)
            for y in range(n)]


def reference_R(d, g):
    n = len(g)
    return [max([_monus(d[x][y], g[y]) for y in range(n)], default=0.0)
            for x in range(n)]


def reference_RL(d, f):
    return reference_R(d, reference_L(d, f))


def brute_fixed_set(X: Space, grid: Grid | None = None,
                    budget: int = DEFAULT_BUDGET) -> list:
    """Grid tables with RL(f) = f exactly, by plain enumeration."""
    grid = default_grid(X) if grid is None else grid
    d = X.d.tolist()
    vals = grid.values().tolist()
    _check_budget(len(vals) ** len(X), budget)
    out = []
    for combo in itertools.product(vals, repeat=len(X)):
        if reference_RL(d, list(combo)) == list(combo):
            out.append(Functional(X, np.array(combo), Role.PRESHEAF))
    return out


def _dominated(cands: np.ndarray, pool: np.ndarray, chunk_cells=4e7):
    """For each candidate row: is some other pool row pointwise below it?"""
    out = np.zeros(len(cands), dtype=bool)
    if len(pool) == 0 or len(cands) == 0:
        return out
    k = max(1, int(chunk_cells // (len(pool) * cands.shape[1])))
    for start in range(0, len(cands), k):
        c = cands[start:start + k]
        le = np.all(pool[None, :, :] <= c[:, None, :], axis=2)
        eq = np.all(pool[None, :, :] == c[:, None, :], axis=2)
        out[start:start + k] = np.any(le & ~eq, axis=1)
    return out


def brute_minimal_pairs(X: Space, grid: Grid | None = None,
                        budget: int = DEFAULT_BUDGET) -> list:
    """Grid triangular pairs not dominated by any other grid triangular pair."""
    from .tightspan import TriangularPair

    grid = default_grid(X) if grid is None else grid
    n = len(X)
    vals = grid.values()
    _check_budget(len(vals) ** (2 * n), budget)
    tables = enumerate_tables(X, grid, budget)
    # tri[i, j]: f = tables[i], g = tables[j] is triangular
    sums = tables[:, None, :, None] + tables[None, :, None, :]
    tri = np.all((sums >= X.d) | extnn.close(sums, X.d), axis=(2, 3))
    fi, gi = np.nonzero(tri)
    pairs = np.concatenate([tables[fi], tables[gi]], axis=1)
    keep = ~_dominated(pairs, pairs)
    return [TriangularPair(Functional(X, row[:n], Role.PRESHEAF),
                           Functional(X, row[n:], Role.COPRESHEAF))
            for row in pairs[keep]]


# -- random generation -------------------------------------------------------

def random_table(n: int, rng: np.random.Generator, bound=4.0, step=0.25,
                 p_inf=0.0, size=None) -> np.ndarray:
    shape = (n,) if size is None else (size, n)
    k = int(round(bound / step))
    out = rng.integers(0, k + 1, size=shape) * step
    out = out.astype(np.float64)
    if p_inf:
        out[rng.random(shape) < p_inf] = INF
    return out


def random_fixed_points(X: Space, rng: np.random.Generator, count: int,
                        step=0.25) -> np.ndarray:
    """f-halves of random completion points: RL applied to random tables."""
    finite = X.d[np.isfinite(X.d)]
    bound = float(finite.max(initial=1.0)) + 1.0
    return isbell.project_RL_table(
        X, random_table(len(X), rng, bound, step, size=count))


def random_points(X: Space, rng: np.random.Generator, count: int,
                  step=0.25) -> list:
    return [isbell.project_point(Functional(X, f))
            for f in random_fixed_points(X, rng, count, step)]


def random_presheaf(X: Space, rng: np.random.Generator, bound=4.0,
                    step=0.25) -> np.ndarray:
    return presheaf_closure(X, random_table(len(X), rng, bound, step))


def random_copresheaf(X: Space, rng: np.random.Generator, bound=4.0,
                      step=0.25) -> np.ndarray:
    return copresheaf_closure(X, random_table(len(X), rng, bound, step))


def random_diagram(X: Space, rng: np.random.Generator, m: int | None = None,
                   kind: str = "colimit", step=0.5) -> cc.WeightedDiagram:
    """A random short diagram into X with a weight of the right variance."""
    m = int(rng.integers(0, 4)) if m is None else m
    D0 = sp.random_space(m, rng, max_dist=4.0, step=step, p_inf=0.2,
                         labels=[f"d{i}" for i in range(m)])
    D, J = sp.random_short_map(D0, X, rng)
    closure = presheaf_closure if kind == "colimit" else copresheaf_closure
    w = closure(D, random_table(m, rng, 4.0, step))
    W = Functional(D, w, Role.PRESHEAF if kind == "colimit"
                   else Role.COPRESHEAF)
    return cc.WeightedDiagram(D, tuple(J.assignment[x] for x in D.labels), W,
                              X)


def random_point_diagram(X: Space, rng: np.random.Generator, m: int,
                         kind: str = "colimit") -> cc.WeightedDiagram:
    """A random short diagram into the completion of X."""
    pts = random_points(X, rng, m)
    dist = np.array([[isbell_dist(p, q) for q in pts] for p in pts]) \
        if m else np.zeros((0, 0))
    extra = sp.random_space(m, rng, max_dist=4.0, step=0.5, p_inf=0.2).d
    D = Space(tuple(f"d{i}" for i in range(m)), np.maximum(dist, extra))
    closure = presheaf_closure if kind == "colimit" else copresheaf_closure
    w = closure(D, random_table(m, rng, 4.0, 0.5)) if m else np.zeros(0)
    role = Role.PRESHEAF if kind == "colimit" else Role.COPRESHEAF
    return cc.WeightedDiagram(D, tuple(pts), Functional(D, w, role))


# -- theorem checks ----------------------------------------------------------

class Report(dict):
    """``{"theorem", "passed", "checks", "counterexample"}``."""

    def __init__(self, theorem: str):
        super().__init__(theorem=theorem, passed=True, checks=0,
                         counterexample=None)

    def check(self, ok: bool, witness=None):
        self["checks"] += 1
        if not ok and self["passed"]:
            self["passed"] = False
            self["counterexample"] = witness
        return ok

    @property
    def passed(self) -> bool:
        return self["passed"]


def _tables_json(*tables):
    return [extnn.to_json(np.asarray(t)) for t in tables]


def _grid_points(X, grid, budget):
    return [isbell.completion_from_presheaf(f)
            for f in brute_fixed_set(X, grid, budget)]


def check_isbell_adjunction(X, rng, trials=100, eps=EPS, **_):
    """Adjunction identity and idempotence on raw tables."""
    rep = Report("isbell-adjunction")
    f = random_table(len(X), rng, 6.0, 0.25, size=trials)
    g = random_table(len(X), rng, 6.0, 0.25, size=trials)
    lhs = isbell.opcopresheaf_dist_table(isbell.conjugate_L_table(X, f), g)
    rhs = isbell.presheaf_dist_table(f, isbell.conjugate_R_table(X, g))
    bad = np.flatnonzero(~extnn.close(lhs, rhs, eps))
    rep.check(bad.size == 0, bad.size and _tables_json(f[bad[0]], g[bad[0]]))
    rl = isbell.project_RL_table(X, f)
    bad = np.flatnonzero(~np.all(extnn.close(
        isbell.project_RL_table(X, rl), rl, eps), axis=-1))
    rep.check(bad.size == 0, bad.size and _tables_json(f[bad[0]]))
    lr = isbell.project_LR_table(X, g)
    bad = np.flatnonzero(~np.all(extnn.close(
        isbell.project_LR_table(X, lr), lr, eps), axis=-1))
    rep.check(bad.size == 0, bad.size and _tables_json(g[bad[0]]))
    for x in X.labels:
        e = isbell.embed(X, x)
        rep.check(isbell.conjugate_L(e.f).close_to(e.g, eps), x)
        rep.check(isbell.conjugate_R(e.g).close_to(e.f, eps), x)
    return rep


def check_completion_metric(X, rng, grid=None, budget=DEFAULT_BUDGET,
                            eps=EPS, **_):
    """Both distance formulas agree on all grid points, and embedded points
    see every point through its halves."""
    rep = Report("completion-metric")
    pts = _grid_points(X, grid or default_grid(X), budget)
    F = np.array([p.f.values for p in pts])
    G = np.array([p.g.values for p in pts])
    via_f = isbell.presheaf_dist_table(F[:, None, :], F[None, :, :])
    via_g = isbell.opcopresheaf_dist_table(G[:, None, :], G[None, :, :])
    bad = np.argwhere(~extnn.close(via_f, via_g, eps))
    rep.check(bad.size == 0,
              bad.size and [pts[bad[0][0]].to_dict(), pts[bad[0][1]].to_dict()])
    for x in X.labels:
        e = isbell.embed(X, x)
        for P in pts:
            i = X.index(x)
            rep.check(extnn.close(isbell_dist(e, P), P.f.values[i], eps)
                      and extnn.close(isbell_dist(P, e), P.g.values[i], eps),
                      [x, P.to_dict()])
    return rep


def check_tight_span_in_completion(X, rng, grid=None, budget=DEFAULT_BUDGET,
                                   eps=EPS, **_):
    """For classical X: tight grid tables are exactly the completion points
    with equal halves, and tightness matches minimality in the aim."""
    from . import tightspan as ts

    rep = Report("tight-span-in-completion")
    grid = grid or default_grid(X)
    fixed = {tuple(f.values) for f in brute_fixed_set(X, grid, budget)}
    for f in enumerate_functionals(X, grid, budget=budget):
        tight = ts.is_tight(f, eps)
        key = tuple(f.values)
        P = isbell.project_point(f) if key in fixed else None
        in_T = P is not None and ts.maximal_classical_subspace_check(P, eps)
        rep.check(tight == in_T, extnn.to_json(f.values))
        if ts.in_aim(f, eps):
            minimal = ts.is_minimal_in_aim(f, grid.step, eps)
            rep.check(minimal == tight, extnn.to_json(f.values))
    return rep


def check_hirai_koichi(X, rng, grid=None, budget=DEFAULT_BUDGET, eps=EPS,
                       **_):
    """Minimal triangular grid pairs are exactly the grid completion points."""
    from . import tightspan as ts

    rep = Report("hirai-koichi")
    grid = grid or default_grid(X)
    minimal = {(tuple(p.f.values), tuple(p.g.values))
               for p in brute_minimal_pairs(X, grid, budget)}
    vals = set(grid.values().tolist())
    points = set()
    for f in brute_fixed_set(X, grid, budget):
        g = isbell.conjugate_L_table(X, f.values)
        if all(v in vals for v in g.tolist()):
            points.add((tuple(f.values), tuple(g)))
    rep.check(minimal == points,
              {"only_minimal": [list(map(extnn.to_json, p))
                                for p in sorted(minimal - points)][:3],
               "only_points": [list(map(extnn.to_json, p))
                               for p in sorted(points - minimal)][:3]})
    for fv, gv in sorted(minimal)[:50]:
        f, g = Functional(X, fv), Functional(X, gv)
        rep.check(ts.is_minimal_pair(f, g, eps)
                  and ts.is_minimal_pair_perturbation(f, g, grid.step, eps),
                  _tables_json(fv, gv))
    pairs = [ts.TriangularPair(Functional(X, f), Functional(X, g))
             for f, g in sorted(minimal)[:30]]
    for p in pairs:
        for q in pairs:
            P = IsbellPoint(p.f, p.g)
            Q = IsbellPoint(q.f, q.g)
            rep.check(extnn.close(ts.hk_dist(p, q), isbell_dist(P, Q), eps),
                      [p.to_dict(), q.to_dict()])
    return rep


def check_discretization(X, rng, trials=50, eps=EPS, **_):
    """Colimits do not see the metric of the shape."""
    rep = Report("discretization")
    for _ in range(trials):
        WD = random_diagram(X, rng)
        WDd = cc.discretize_diagram(WD)
        rep.check(cc.colimit_search(X, WD, eps) == cc.colimit_search(X, WDd, eps),
                  WD.to_dict())
        E, Ed = cc.embedded_diagram(WD), cc.embedded_diagram(WDd)
        rep.check(cc.colim_presheaf(E, X).close_to(cc.colim_presheaf(Ed, X), eps),
                  WD.to_dict())
        rep.check(cc.colim_fixRL(E, X).close_to(cc.colim_fixRL(Ed, X), eps),
                  WD.to_dict())
    return rep


def check_fat_out_coproduct(X, rng, trials=50, eps=EPS, **_):
    """Colimits in the completion are sums of scaled points."""
    rep = Report("fat-out-coproduct")
    for _ in range(trials):
        WD = random_point_diagram(X, rng, int(rng.integers(0, 4)))
        c = cc.colim_fixRL(WD, X)
        fold = cc.fold_oplus([cc.odot(w, p) for w, p in zip(WD.W.values, WD.J)],
                             X)
        rep.check(c.close_to(fold, eps), WD.to_dict())
    for x in X.labels:
        for tau in (0.0, 0.5, 1.0, 2.5, INF):
            e = isbell.embed(X, x)
            fat = cc.odot(tau, e)
            for y in X.labels:
                rep.check(extnn.close(isbell_dist(fat, isbell.embed(X, y)),
                                      extnn.monus(X.dist(x, y), tau), eps),
                          [x, y, tau])
    return rep


def _basic_colimits(X, grid_taus):
    """Empty colimit, binary coproducts and fat out points in X."""
    one = sp.one_point()
    E = Space((), np.zeros((0, 0)))
    D2 = sp.discretize(sp.validate(("d0", "d1"), [[0, 0], [0, 0]]))
    yield cc.WeightedDiagram(E, (), Functional(E, []), X)
    for x, y in itertools.combinations_with_replacement(X.labels, 2):
        yield cc.WeightedDiagram(D2, (x, y), Functional(D2, [0, 0]), X)
    for x in X.labels:
        for tau in grid_taus:
            yield cc.WeightedDiagram(one, (x,), Functional(one, [tau]), X)


def check_cocomplete_module(X, rng, trials=50, eps=EPS, grid=None,
                            budget=DEFAULT_BUDGET, **_):
    """X has all weighted colimits iff it has the basic ones; the completion
    always has them and satisfies the co-metric module law."""
    rep = Report("cocomplete-module")
    grid = grid or default_grid(X)
    taus = grid.values()
    basic = all(cc.colimit_search(X, WD, eps)
                for WD in _basic_colimits(X, taus))
    for _ in range(trials):
        # diagrams on the grid so weights are among the tested fat out radii
        WD = random_diagram(X, rng, step=grid.step)
        if np.all(np.isin(WD.W.values, taus) | np.isinf(WD.W.values)):
            found = cc.colimit_search(X, WD, eps)
            rep.check(bool(found) or not basic, WD.to_dict())
    pts = _grid_points(X, grid, budget)
    for _ in range(min(trials, 20)):
        WD = random_point_diagram(X, rng, int(rng.integers(0, 3)))
        gaps = cc.colimit_universal_gaps(cc.colim_fixRL(WD, X), WD, pts)
        rep.check(bool(np.all(gaps <= eps)), WD.to_dict())
    return rep


def check_pushforward_colimit(X, rng, trials=100, eps=EPS, **_):
    rep = Report("pushforward-colimit")
    for _ in range(trials):
        m = int(rng.integers(0, 5))
        Y = sp.random_space(int(rng.integers(1, 5)), rng, p_inf=0.1)
        X2, G = sp.random_short_map(X, Y, rng)
        D0 = sp.random_space(m, rng, p_inf=0.2)
        D, J = sp.random_short_map(D0, X2, rng)
        W = Functional(D, presheaf_closure(D, random_table(m, rng)))
        WD = cc.WeightedDiagram(D, tuple(J.assignment[x] for x in D.labels),
                                W, X2)
        rep.check(cc.pushforward_colimit_check(WD, J, G, eps), WD.to_dict())
    return rep


def check_presheaf_colimits(X, rng, trials=30, grid=None,
                            budget=DEFAULT_BUDGET, eps=EPS, **_):
    """Pointwise colimits satisfy the universal property in presheaf space."""
    rep = Report("presheaf-colimits")
    grid = grid or default_grid(X)
    probes = [f.values for f in
              enumerate_functionals(X, grid, Role.PRESHEAF, budget)]
    probes += [random_presheaf(X, rng) for _ in range(20)]
    P = np.array(probes)
    for _ in range(trials):
        m = int(rng.integers(0, 4))
        J = [Functional(X, random_presheaf(X, rng), Role.PRESHEAF)
             for _ in range(m)]
        dist = np.array([[presheaf_dist(a, b) for b in J] for a in J]) \
            if m else np.zeros((0, 0))
        D = Space(tuple(f"d{i}" for i in range(m)), dist)
        W = Functional(D, presheaf_closure(D, random_table(m, rng)))
        WD = cc.WeightedDiagram(D, tuple(J), W)
        c = cc.colim_presheaf(WD, X)
        rep.check(is_presheaf(c, eps), WD.to_dict())
        got = isbell.presheaf_dist_table(c.values, P)
        want = np.zeros(len(P))
        for j, w in zip(J, W.values):
            want = np.maximum(want, extnn.monus(
                isbell.presheaf_dist_table(j.values, P), w))
        bad = np.flatnonzero(~extnn.close(got, want, eps))
        rep.check(bad.size == 0,
                  bad.size and [WD.to_dict(), extnn.to_json(P[bad[0]])])
    return rep


def check_projection_adjunction(X, rng, trials=200, eps=EPS, **_):
    """``d(RL f, k) = d(f, k)`` for presheaves f and fixed tables k."""
    rep = Report("projection-adjunction")
    F = np.array([random_presheaf(X, rng) for _ in range(trials)])
    K = random_fixed_points(X, rng, trials)
    lhs = isbell.presheaf_dist_table(isbell.project_RL_table(X, F), K)
    rhs = isbell.presheaf_dist_table(F, K)
    bad = np.flatnonzero(~extnn.close(lhs, rhs, eps))
    rep.check(bad.size == 0, bad.size and _tables_json(F[bad[0]], K[bad[0]]))
    return rep


def _fixed_probes(X, rng, grid, budget):
    probes = [isbell.embed(X, x) for x in X.labels]
    try:
        probes += _grid_points(X, grid or default_grid(X), budget)
    except BudgetExceeded:
        pass
    return probes + random_points(X, rng, 20)


def check_fixrl_colimits(X, rng, trials=30, grid=None, budget=DEFAULT_BUDGET,
                         eps=EPS, **_):
    rep = Report("fixrl-colimits")
    probes = _fixed_probes(X, rng, grid, budget)
    for _ in range(trials):
        WD = random_point_diagram(X, rng, int(rng.integers(0, 4)))
        gaps = cc.colimit_universal_gaps(cc.colim_fixRL(WD, X), WD, probes)
        rep.check(bool(np.all(gaps <= eps)), WD.to_dict())
    return rep


def check_fixlr_limits(X, rng, trials=30, grid=None, budget=DEFAULT_BUDGET,
                       eps=EPS, **_):
    rep = Report("fixlr-limits")
    probes = _fixed_probes(X, rng, grid, budget)
    for _ in range(trials):
        WD = random_point_diagram(X, rng, int(rng.integers(0, 4)), "limit")
        gaps = cc.limit_universal_gaps(cc.lim_fixLR(WD, X), WD, probes)
        rep.check(bool(np.all(gaps <= eps)), WD.to_dict())
    return rep


def small_diagrams(X: Space, taus=(0.0, 0.5, 1.0, 2.0, INF), kind="colimit"):
    """Empty, singleton and discrete two-point diagrams into X."""
    role = Role.PRESHEAF if kind == "colimit" else Role.COPRESHEAF
    E = Space((), np.zeros((0, 0)))
    one = sp.one_point()
    D2 = sp.discretize(sp.validate(("d0", "d1"), [[0, 0], [0, 0]]))
    yield cc.WeightedDiagram(E, (), Functional(E, [], role), X)
    for x in X.labels:
        for tau in taus:
            yield cc.WeightedDiagram(one, (x,), Functional(one, [tau], role), X)
    for x, y in itertools.product(X.labels, repeat=2):
        for a, b in itertools.product(taus[:3], repeat=2):
            yield cc.WeightedDiagram(D2, (x, y), Functional(D2, [a, b], role),
                                     X)


def check_bicontinuity(X, rng, trials=30, eps=EPS, **_):
    """Colimits and limits that exist in X are preserved by the embedding."""
    rep = Report("bicontinuity")
    diags = [(WD, "colimit") for WD in small_diagrams(X)]
    diags += [(WD, "limit") for WD in small_diagrams(X, kind="limit")]
    diags += [(random_diagram(X, rng), "colimit") for _ in range(trials)]
    diags += [(random_diagram(X, rng, kind="limit"), "limit")
              for _ in range(trials)]
    for WD, kind in diags:
        E = cc.embedded_diagram(WD)
        if kind == "colimit":
            found, image = cc.colimit_search(X, WD, eps), cc.colim_fixRL(E, X)
        else:
            found, image = cc.limit_search(X, WD, eps), cc.lim_fixLR(E, X)
        for c in found:
            rep.check(isbell.embed(X, c).close_to(image, eps),
                      [kind, WD.to_dict(), c])
    return rep


def _batched_points(X, rng, count):
    F = random_fixed_points(X, rng, count)
    return F, isbell.conjugate_L_table(X, F)


def check_module_structures(X, rng, trials=500, eps=EPS, **_):
    """Module laws for both structures, batched over random points."""
    rep = Report("module-structures")
    RL = lambda f: isbell.project_RL_table(X, f)  # noqa: E731
    LR = lambda g: isbell.project_LR_table(X, g)  # noqa: E731
    n = len(X)
    top_f = isbell.top(X).f.values
    bot_g = isbell.bottom(X).g.values
    taus = random_table(1, rng, 3.0, 0.25, size=trials)
    sigmas = random_table(1, rng, 3.0, 0.25, size=trials)

    def same(a, b, name):
        bad = np.flatnonzero(~np.all(extnn.close(a, b, eps), axis=-1))
        rep.check(bad.size == 0, bad.size and {"law": name,
                                               "index": int(bad[0])})

    for half, P, one, zero in (("f", RL, top_f, None), ("g", LR, bot_g, None)):
        A = random_fixed_points(X, rng, trials)
        B = random_fixed_points(X, rng, trials)
        C = random_fixed_points(X, rng, trials)
        if half == "g":
            A, B, C = (isbell.conjugate_L_table(X, T) for T in (A, B, C))
        plus = lambda a, b: P(np.minimum(a, b))  # noqa: E731
        act = lambda t, a: P(t + a)  # noqa: E731
        same(plus(plus(A, B), C), plus(A, plus(B, C)), half + " associative")
        same(plus(A, B), plus(B, A), half + " commutative")
        same(plus(np.broadcast_to(one, A.shape), A), A, half + " unit")
        same(plus(A, A), A, half + " idempotent")
        same(act(taus + sigmas, A), act(taus, act(sigmas, A)), half + " action")
        same(act(np.zeros((trials, 1)), A), A, half + " zero action")
        same(act(np.full((trials, 1), INF), A), np.broadcast_to(one, A.shape),
             half + " infinite action")
        same(act(taus, plus(A, B)), plus(act(taus, A), act(taus, B)),
             half + " distributive over sum")
        same(act(np.minimum(taus, sigmas), A),
             plus(act(taus, A), act(sigmas, A)), half + " distributive over min")
    # morphism laws at embedded points
    Mf, Mg = _batched_points(X, rng, trials)
    Nf, Ng = _batched_points(X, rng, trials)
    sf = RL(np.minimum(RL(taus + Mf), RL(sigmas + Nf)))
    sg = LR(np.minimum(LR(taus + Mg), LR(sigmas + Ng)))
    for i in range(n):
        yf = X.d[:, i]
        yg = X.d[i, :]
        lhs = isbell.presheaf_dist_table(sf, yf)
        rhs = np.maximum(extnn.monus(isbell.presheaf_dist_table(Mf, yf), taus[:, 0]),
                         extnn.monus(isbell.presheaf_dist_table(Nf, yf), sigmas[:, 0]))
        same(lhs[:, None], rhs[:, None], "co-metric morphism")
        lhs = isbell.opcopresheaf_dist_table(yg, sg)
        rhs = np.maximum(extnn.monus(isbell.opcopresheaf_dist_table(yg, Mg), taus[:, 0]),
                         extnn.monus(isbell.opcopresheaf_dist_table(yg, Ng), sigmas[:, 0]))
        same(lhs[:, None], rhs[:, None], "metric morphism")
    return rep


def check_kan_adjunctions(X, rng, trials=100, eps=EPS, **_):
    """Pull-back is adjoint on both sides to the two push-forwards.

    V ranges over copresheaves on the target, W over raw tables.
    """
    rep = Report("kan-adjunctions")
    for _ in range(trials):
        Y = sp.random_space(int(rng.integers(0, 5)), rng, p_inf=0.2)
        Xs, G = sp.random_short_map(Y, X, rng) if len(Y) else \
            (Y, sp.ShortMap(Y, X, ()))
        W = Functional(Xs, random_table(len(Xs), rng))
        V = Functional(X, random_copresheaf(X, rng))
        pull = cc.kan_pullback(G, V)
        rep.check(extnn.close(presheaf_dist(cc.kan_left(G, W), V),
                              presheaf_dist(W, pull), eps),
                  _tables_json(W.values, V.values))
        rep.check(extnn.close(presheaf_dist(pull, W),
                              presheaf_dist(V, cc.kan_right(G, W)), eps),
                  _tables_json(W.values, V.values))
    return rep


THEOREMS: dict[str, Callable] = {
    "isbell-adjunction": check_isbell_adjunction,
    "completion-metric": check_completion_metric,
    "tight-span-in-completion": check_tight_span_in_completion,
    "hirai-koichi": check_hirai_koichi,
    "discretization": check_discretization,
    "fat-out-coproduct": check_fat_out_coproduct,
    "cocomplete-module": check_cocomplete_module,
    "pushforward-colimit": check_pushforward_colimit,
    "presheaf-colimits": check_presheaf_colimits,
    "projection-adjunction": check_projection_adjunction,
    "fixrl-colimits": check_fixrl_colimits,
    "fixlr-limits": check_fixlr_limits,
    "bicontinuity": check_bicontinuity,
    "module-structures": check_module_structures,
    "kan-adjunctions": check_kan_adjunctions,
}


def verify_theorem(name: str, X: Space, *, grid: Grid | None = None,
                   trials: int | None = None, seed: int = 0,
                   budget: int = DEFAULT_BUDGET, eps: float = EPS) -> Report:
    """Run one registered check and return its report."""
    try:
        fn = THEOREMS[name]
    except KeyError:
        raise UnknownTheorem(name) from None
    kwargs = dict(grid=grid, budget=budget, eps=eps)
    if trials is not None:
        kwargs["trials"] = trials
    return fn(X, np.random.default_rng(seed), **kwargs)
