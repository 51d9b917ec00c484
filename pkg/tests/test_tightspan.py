import itertools

import numpy as np
import pytest
from hypothesis import given

from isbellkit import space as sp
from isbellkit.errors import NotClassical, NotInAim, NotTight
from isbellkit.functionals import Functional, coyoneda, presheaf_dist, yoneda
from isbellkit.isbell import (completion_from_presheaf, conjugate_L_table,
                              embed, is_fixed_RL, isbell_dist, project_point)
from isbellkit.oracle import Grid, brute_minimal_pairs, enumerate_tables
from isbellkit.tightspan import (TriangularPair, hk_dist, in_aim, is_minimal_in_aim,
                                 is_minimal_pair, is_minimal_pair_perturbation,
                                 is_tight, is_triangular,
                                 maximal_classical_subspace_check,
                                 sample_tight_span, tightspan_dist)

from strategies import classical_spaces, spaces, tables

A2 = sp.symmetric_two_point(2)
N32 = sp.two_point(3, 2)
A322 = sp.three_point(3, 2, 2)


def F(X, v):
    return Functional(X, v)


def test_in_aim_examples():
    assert in_aim(F(A2, [0.5, 1.5]))
    assert not in_aim(F(A2, [0.5, 1.0]))
    for x in A322.labels:
        assert in_aim(yoneda(A322, x))
    with pytest.raises(NotClassical):
        in_aim(F(N32, [1, 1]))


def test_is_tight_examples():
    assert is_tight(F(A2, [0.5, 1.5]))
    assert not is_tight(F(A2, [1, 2]))
    assert is_tight(yoneda(A2, "a"))
    assert is_tight(F(A322, [0.5, 1.5, 1.5]))


def test_is_minimal_in_aim_examples():
    assert is_minimal_in_aim(F(A2, [0.5, 1.5]))
    assert not is_minimal_in_aim(F(A2, [1, 2]))
    for r in (0.5, 1, 2):
        X = sp.symmetric_two_point(r)
        assert not is_minimal_in_aim(F(X, [r, r]))
    assert is_minimal_in_aim(F(A322, [0.5, 1.5, 1.5]))
    with pytest.raises(NotInAim):
        is_minimal_in_aim(F(A2, [0.5, 1.0]))


def test_tightspan_dist_examples():
    assert tightspan_dist(yoneda(A2, "a"), yoneda(A2, "b")) == 2
    assert tightspan_dist(F(A2, [0.5, 1.5]), F(A2, [1.5, 0.5])) == 1
    f = F(A2, [0.5, 1.5])
    assert tightspan_dist(f, f) == 0
    with pytest.raises(NotTight):
        tightspan_dist(f, F(A2, [1, 2]))


def test_minimal_pair_examples():
    for x in N32.labels:
        assert is_triangular(yoneda(N32, x), coyoneda(N32, x))
        assert is_minimal_pair(yoneda(N32, x), coyoneda(N32, x))
    f, g = F(N32, [1, 1]), F(N32, [1, 2])
    assert is_minimal_pair(f, g)
    assert is_minimal_pair_perturbation(f, g)
    for r in (1, 2):
        X = sp.symmetric_two_point(r)
        rr = F(X, [r, r])
        assert is_triangular(rr, rr)
        assert not is_minimal_pair(rr, rr)
        assert not is_minimal_pair_perturbation(rr, rr)


def test_hk_dist_examples():
    p = TriangularPair(F(N32, [1, 1]), F(N32, [1, 2]))
    assert hk_dist(p, p) == 0
    q_pt = completion_from_presheaf(F(N32, [2, 0.5]))
    # g-half recomputed from the sup formula
    assert q_pt.g.values.tolist() == [1.5, 1]
    q = TriangularPair(q_pt.f, q_pt.g)
    p_pt = completion_from_presheaf(p.f)
    assert hk_dist(p, q) == isbell_dist(p_pt, q_pt) == 1


def test_hk_literal_orientation_disagrees_on_asymmetric_space():
    # Comparing both halves in the same direction overshoots d(b, a) = 2.
    p, q = embed(N32, "b"), embed(N32, "a")
    literal = max(np.max(np.maximum(q.f.values - p.f.values, 0)),
                  np.max(np.maximum(q.g.values - p.g.values, 0)))
    assert literal == 3
    assert hk_dist(TriangularPair(p.f, p.g), TriangularPair(q.f, q.g)) == 2
    assert isbell_dist(p, q) == N32.dist("b", "a") == 2


@given(classical_spaces(max_n=5))
def test_hk_dist_on_embedded_points(X):
    for x, y in itertools.product(X.labels, repeat=2):
        p, q = embed(X, x), embed(X, y)
        assert hk_dist(TriangularPair(p.f, p.g),
                       TriangularPair(q.f, q.g)) == X.dist(x, y)


def test_maximal_classical_subspace_examples():
    for x in A2.labels:
        assert maximal_classical_subspace_check(embed(A2, x))
    bottom = completion_from_presheaf(F(A2, [0, 0]))
    assert bottom.g.values.tolist() == [2, 2]
    assert not maximal_classical_subspace_check(bottom)
    assert maximal_classical_subspace_check(
        completion_from_presheaf(F(A2, [0.5, 1.5])))


@pytest.mark.parametrize("X", [A2, sp.symmetric_two_point(1.5), A322,
                               sp.three_point(2, 2, 2), sp.three_point(4, 3, 2)],
                         ids=repr)
def test_tight_iff_minimal_in_aim_exhaustively(X):
    grid = Grid(0.5, max(X.d.max(), 1.0) + 0.5)
    for row in enumerate_tables(X, grid):
        f = F(X, row)
        tight = is_tight(f)
        aim = in_aim(f)
        assert tight == (aim and is_minimal_in_aim(f, step=0.5))
        if tight:
            assert is_fixed_RL(f)
            assert np.array_equal(conjugate_L_table(X, row), row)


@given(classical_spaces(max_n=6))
def test_random_projections_of_tight_points(X):
    rng = np.random.default_rng(len(X))
    for _ in range(10):
        v = rng.integers(0, 17, size=len(X)) / 2
        # pull an arbitrary table into the tight span via R(L(max))
        f = F(X, v)
        if in_aim(f):
            assert is_tight(f) == is_minimal_in_aim(f)


@pytest.mark.parametrize("X", [N32, sp.two_point(0, 2), sp.two_point(1, 3),
                               A322, sp.validate("abc", [[0, 1, 2],
                                                         [2, 0, 1],
                                                         [1, 2, 0]])],
                         ids=repr)
def test_minimal_pairs_are_completion_points_exhaustively(X):
    step = 0.5 if len(X) == 2 else 1.0
    grid = Grid(step, float(X.d.max()) + step)
    pairs = {(tuple(p.f.values), tuple(p.g.values))
             for p in brute_minimal_pairs(X, grid)}
    points = set()
    for row in enumerate_tables(X, grid):
        P = project_point(F(X, row))
        if np.array_equal(P.f.values, row) and np.all(
                np.isin(P.g.values, grid.values())):
            points.add((tuple(P.f.values), tuple(P.g.values)))
    assert pairs == points
    for f, g in pairs:
        assert is_minimal_pair_perturbation(F(X, f), F(X, g), step=step)


@given(classical_spaces(max_n=4))
def test_tight_span_symmetric_and_fixed(X):
    grid = Grid(0.5, float(X.d.max()))
    pts = sample_tight_span(X, grid)
    for a in pts[:6]:
        for b in pts[:6]:
            assert presheaf_dist(F(X, a), F(X, b)) == \
                presheaf_dist(F(X, b), F(X, a))
        assert is_fixed_RL(F(X, a))
        assert maximal_classical_subspace_check(
            completion_from_presheaf(F(X, a)))


@given(spaces(max_n=4).flatmap(
    lambda X: tables(len(X)).map(lambda f: (X, f))))
def test_completion_points_pass_perturbation(args):
    X, f = args
    P = project_point(F(X, f))
    assert is_minimal_pair(P.f, P.g)
    assert is_minimal_pair_perturbation(P.f, P.g)
