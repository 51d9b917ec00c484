"""The acceptance suite: ten end-to-end checks with runtime limits.

Each criterion returns a :class:`Result`; ``run_all`` prints one PASS/FAIL
line per criterion.  Inputs are dyadic, so the "exact" criteria compare
with tolerance 0.
"""

from __future__ import annotations

import functools
import time
from dataclasses import dataclass

import numpy as np

from . import cocomplete as cc
from . import isbell, oracle
from . import space as sp
from . import tightspan as ts
from .extnn import EPS, INF
from .functionals import Functional, is_presheaf, yoneda
from .oracle import Grid
from .region import in_three_point_complex, in_tripod, sort_three_point


@dataclass
class Result:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.number:2d}. {self.title} "
                f"({self.seconds:.2f}s / {self.limit:.0f}s) {self.detail}")


def _timed(number, title, limit):
    def wrap(fn):
        @functools.wraps(fn)
        def run(seed: int = 0) -> Result:
            t0 = time.perf_counter()
            ok, detail = fn(np.random.default_rng(seed))
            dt = time.perf_counter() - t0
            if ok and dt > limit:
                ok, detail = False, f"too slow; {detail}"
            return Result(number, title, bool(ok), detail, dt, limit)
        run.number = number
        run.title = title
        return run
    return wrap


def _grid_tables(X, grid):
    return oracle.enumerate_tables(X, grid)


@_timed(1, "two-point symmetric square", 1)
def criterion_square(rng):
    for r in (1.0, 2.0, 3.0, 4.5):
        X = sp.symmetric_two_point(r)
        h = r / 8
        grid = Grid(h, r + 2 * h)
        tables = _grid_tables(X, grid)
        fixed = np.all(isbell.project_RL_table(X, tables) == tables, axis=1)
        brute = {tuple(f.values) for f in oracle.brute_fixed_set(X, grid)}
        square = np.all(tables <= r, axis=1)
        if not np.array_equal(fixed, square):
            return False, f"fixed set of A_{r} is not the square"
        if brute != {tuple(t) for t in tables[square]}:
            return False, f"brute fixed set of A_{r} is not the square"
        tight = np.array([ts.is_tight(Functional(X, t), 0) for t in tables])
        diag = tables.sum(axis=1) == r
        if not np.array_equal(tight, diag):
            return False, f"tight span of A_{r} is not the anti-diagonal"
    return True, "r in {1, 2, 3, 4.5}"


@_timed(2, "two-point asymmetric rectangle and clamp", 1)
def criterion_rectangle(rng):
    for r, s in ((3, 2), (1, 5), (2, 2)):
        X = sp.two_point(r, s)
        grid = Grid(0.5, max(r, s) + 1.0)
        tables = _grid_tables(X, grid)
        rect = (tables[:, 0] <= r) & (tables[:, 1] <= s)
        brute = {tuple(f.values) for f in oracle.brute_fixed_set(X, grid)}
        if brute != {tuple(t) for t in tables[rect]}:
            return False, f"fixed set of N_{r},{s} is not the rectangle"
        pre = np.array([is_presheaf(Functional(X, t), 0) for t in tables])
        rl = isbell.project_RL_table(X, tables[pre])
        clamp = np.minimum(tables[pre], [r, s])
        if not np.array_equal(rl, clamp):
            return False, f"RL is not the clamp on N_{r},{s}"
    return True, "(3,2), (1,5), (2,2)"


def random_triples(rng, count, top=6):
    """Distinct integer triples r >= s >= t > 0 with s + t >= r."""
    out = []
    while len(out) < count:
        r, s, t = sorted(rng.integers(1, top + 1, size=3).tolist(),
                         reverse=True)
        if s + t >= r and (r, s, t) not in out:
            out.append((r, s, t))
    return out


@_timed(3, "three-point classical complex and tripod", 30)
def criterion_three_point(rng):
    for r, s, t in random_triples(rng, 20):
        X = sp.three_point(r, s, t)
        grid = Grid(0.5, r + 1.0)
        brute = {tuple(f.values) for f in oracle.brute_fixed_set(X, grid)}
        tables = _grid_tables(X, grid)
        branch = {tuple(v) for v in tables
                  if in_three_point_complex(*v, r, s, t, 0)}
        if brute != branch:
            return False, f"A_{r},{s},{t}: {len(brute ^ branch)} mismatches"
        tight = {tuple(v) for v in tables
                 if ts.is_tight(Functional(X, v), 0)}
        tripod = {tuple(v) for v in tables if in_tripod(*v, r, s, t, 0)}
        if tight != tripod or not tight <= brute:
            return False, f"A_{r},{s},{t}: tight span is not the tripod"
        centre = [(s + t - r) / 2, (r + t - s) / 2, (r + s - t) / 2]
        leaves = [yoneda(X, x).values for x in X.labels]
        for v in leaves + [centre]:
            f = Functional(X, v)
            if not (ts.is_tight(f, 0) and isbell.is_fixed_RL(f, 0)):
                return False, f"A_{r},{s},{t}: {v} is not tight"
        if sort_three_point(X)[1] != (r, s, t):
            return False, "sorting changed the distances"
    return True, "20 triples"


@_timed(4, "adjunction and idempotence on raw tables", 10)
def criterion_adjunction(rng):
    for k in range(200):
        X = sp.random_space(int(rng.integers(1, 7)), rng, p_inf=0.1,
                            p_zero=0.1)
        f = oracle.random_table(len(X), rng, 6.0, 0.25, 0.05, size=1000)
        g = oracle.random_table(len(X), rng, 6.0, 0.25, 0.05, size=1000)
        lhs = isbell.opcopresheaf_dist_table(isbell.conjugate_L_table(X, f), g)
        rhs = isbell.presheaf_dist_table(f, isbell.conjugate_R_table(X, g))
        if not np.array_equal(lhs, rhs):
            return False, f"adjunction fails on space {k}"
        rl = isbell.project_RL_table(X, f)
        lr = isbell.project_LR_table(X, g)
        if not (np.array_equal(isbell.project_RL_table(X, rl), rl)
                and np.array_equal(isbell.project_LR_table(X, lr), lr)):
            return False, f"idempotence fails on space {k}"
    return True, "200 spaces x 1000 tables"


def integer_space(rng, n, top=3):
    w = rng.integers(0, top + 1, size=(n, n)).astype(float)
    return sp.Space(tuple(f"x{i}" for i in range(n)), sp.metric_closure(w))


@_timed(5, "minimal triangular pairs equal completion points", 60)
def criterion_hirai_koichi(rng):
    total = 0
    for k in range(10):
        X = integer_space(rng, 2 + k % 2)
        B = float(X.d.max())
        grid = Grid(1.0, max(B, 1.0))
        rep = oracle.verify_theorem("hirai-koichi", X, grid=grid, eps=0)
        if not rep.passed:
            return False, f"space {k}: {rep['counterexample']}"
        total += rep["checks"]
    return True, f"10 spaces, {total} checks"


@_timed(6, "both completion distance formulas agree", 5)
def criterion_metric(rng):
    spaces = [sp.two_point(3, 2), sp.three_point(3, 2, 2),
              sp.two_point(0, 2)]
    spaces += [integer_space(rng, 3, 4) for _ in range(5)]
    pairs = 0
    for X in spaces:
        grid = Grid(0.5, float(X.d.max()) + 0.5)
        pts = [isbell.completion_from_presheaf(f, 0)
               for f in oracle.brute_fixed_set(X, grid)]
        F = np.array([p.f.values for p in pts])
        G = np.array([p.g.values for p in pts])
        via_f = isbell.presheaf_dist_table(F[:, None], F[None, :])
        via_g = isbell.opcopresheaf_dist_table(G[:, None], G[None, :])
        if not np.array_equal(via_f, via_g):
            return False, f"formulas disagree on {X!r}"
        pairs += via_f.size
    return True, f"{pairs} pairs"


@_timed(7, "module laws for both structures", 20)
def criterion_modules(rng):
    for k in range(20):
        X = sp.random_space(int(rng.integers(1, 6)), rng, p_inf=0.1,
                            p_zero=0.1)
        rep = oracle.check_module_structures(X, rng, trials=500, eps=EPS)
        if not rep.passed:
            return False, f"space {k}: {rep['counterexample']}"
    return True, "20 spaces x 500 triples"


def n0s_example(s=2.0) -> tuple[bool, str]:
    """The two-point space with d(a,b) = 0, d(b,a) = s."""
    X = sp.two_point(0, s)
    E = sp.Space((), np.zeros((0, 0)))
    D2 = sp.discretize(sp.validate(("d0", "d1"), [[0, 0], [0, 0]]))
    empty = cc.WeightedDiagram(E, (), Functional(E, []), X)
    copro = cc.WeightedDiagram(D2, ("a", "b"), Functional(D2, [0, 0]), X)
    checks = {
        "initial point is a": cc.colimit_search(X, empty, 0) == ["a"],
        "coproduct is b": cc.colimit_search(X, copro, 0) == ["b"],
    }
    pre_empty = cc.colim_presheaf(cc.embedded_diagram(empty), X)
    checks["presheaf initial is (inf, inf)"] = \
        list(pre_empty.values) == [INF, INF]
    checks["initial not preserved into presheaves"] = \
        pre_empty != yoneda(X, "a")
    pre_copro = cc.colim_presheaf(cc.embedded_diagram(copro), X)
    checks["coproduct preserved into presheaves"] = \
        list(pre_copro.values) == [0, 0] and pre_copro == yoneda(X, "b")
    fix_empty = cc.colim_fixRL(cc.embedded_diagram(empty), X)
    checks["initial preserved into completion"] = \
        fix_empty.close_to(isbell.embed(X, "a"), 0)
    fix_copro = cc.colim_fixRL(cc.embedded_diagram(copro), X)
    checks["coproduct preserved into completion"] = \
        fix_copro.close_to(isbell.embed(X, "b"), 0)
    bad = [k for k, v in checks.items() if not v]
    return not bad, ", ".join(bad) or "all hold"


@_timed(8, "colimit theorems", 20)
def criterion_colimits(rng):
    names = ("discretization", "presheaf-colimits", "pushforward-colimit",
             "fixrl-colimits", "fixlr-limits", "fat-out-coproduct")
    spaces = [sp.two_point(3, 2), sp.two_point(0, 2), sp.three_point(3, 2, 2)]
    spaces += [sp.random_space(int(rng.integers(1, 5)), rng, p_inf=0.1,
                               p_zero=0.2) for _ in range(5)]
    for X in spaces:
        for name in names:
            rep = oracle.verify_theorem(name, X, seed=int(rng.integers(1e9)),
                                        trials=20, eps=0)
            if not rep.passed:
                return False, f"{name} on {X!r}: {rep['counterexample']}"
    ok, detail = n0s_example()
    if not ok:
        return False, detail
    return True, f"{len(names)} checks x {len(spaces)} spaces + N_0,s example"


@_timed(9, "embedding preserves colimits and limits", 20)
def criterion_bicontinuity(rng):
    found = 0
    for k in range(50):
        X = sp.random_space(int(rng.integers(1, 5)), rng, p_zero=0.3,
                            p_inf=0.1)
        rep = oracle.check_bicontinuity(X, rng, trials=10, eps=0)
        if not rep.passed:
            return False, f"space {k}: {rep['counterexample']}"
        found += rep["checks"]
    if found == 0:
        return False, "no colimits found to test"
    return True, f"{found} (co)limits checked"


@_timed(10, "Kan extension adjunctions", 10)
def criterion_kan(rng):
    for k in range(50):
        X = sp.random_space(int(rng.integers(1, 6)), rng, p_inf=0.1,
                            p_zero=0.1)
        rep = oracle.check_kan_adjunctions(X, rng, trials=10, eps=0)
        if not rep.passed:
            return False, f"trial block {k}: {rep['counterexample']}"
    return True, "500 trials"


CRITERIA = (criterion_square, criterion_rectangle, criterion_three_point,
            criterion_adjunction, criterion_hirai_koichi, criterion_metric,
            criterion_modules, criterion_colimits, criterion_bicontinuity,
            criterion_kan)


def run_all(seed: int = 0, out=print) -> list:
    results = []
    for crit in CRITERIA:
        res = crit(seed)
        out(res.line())
        results.append(res)
    return results
