import numpy as np
import pytest
from hypothesis import given

from isbellkit import space as sp
from isbellkit.errors import (InternalInconsistency, NoWitness, NotFixed)
from isbellkit.functionals import (Functional, classify, coyoneda,
                                   is_copresheaf, is_presheaf,
                                   opcopresheaf_dist, presheaf_dist, yoneda,
                                   Role)
from isbellkit.isbell import (IsbellPoint, bottom, completion_from_presheaf,
                              conjugate_L, conjugate_L_table, conjugate_R,
                              conjugate_R_table, embed, geodesic_witness,
                              is_isbell_point, isbell_dist, project_LR_table,
                              project_point, project_RL, project_RL_table,
                              top)
from isbellkit.oracle import (Grid, brute_fixed_set, reference_L, reference_R,
                              reference_RL)

from strategies import spaces, tables

INF = float("inf")
N32 = sp.two_point(3, 2)
A2 = sp.symmetric_two_point(2)


def F(X, v):
    return Functional(X, v)


def test_conjugate_examples():
    assert conjugate_L(F(N32, [1, 1])).values.tolist() == [1, 2]
    assert conjugate_R(F(N32, [1, 2])).values.tolist() == [1, 1]
    assert conjugate_L(F(N32, [INF, INF])).values.tolist() == [0, 0]
    assert conjugate_R(F(N32, [0, 0])).values.tolist() == [3, 2]
    assert conjugate_R(coyoneda(N32, "b")) == \
        Functional(N32, yoneda(N32, "b").values, Role.PRESHEAF)
    # the frozen values agree with the pure-Python reference
    assert reference_L(N32.d, [1, 1]) == [1, 2]
    assert reference_R(N32.d, [1, 2]) == [1, 1]


def test_project_examples():
    assert project_RL(F(N32, [5, 4])).values.tolist() == [3, 2]
    for x in N32.labels:
        assert project_RL(yoneda(N32, x)).values.tolist() == \
            yoneda(N32, x).values.tolist()


def test_completion_examples():
    P = completion_from_presheaf(F(N32, [1, 1]))
    assert P.to_dict() == {"f": [1, 1], "g": [1, 2]}
    Q = completion_from_presheaf(F(A2, [0.5, 0.5]))
    assert Q.to_dict() == {"f": [0.5, 0.5], "g": [1.5, 1.5]}
    for x in N32.labels:
        e = embed(N32, x)
        assert is_isbell_point(e.f, e.g)


def test_not_fixed_reports_deviation():
    # (5, 1) projects to (3, 1) on N_{3,2}
    with pytest.raises(NotFixed) as exc:
        completion_from_presheaf(F(N32, [5, 1]))
    assert exc.value.point == "a" and exc.value.deviation == 2


def test_isbell_dist_examples():
    p = completion_from_presheaf(F(N32, [1, 1]))
    q = completion_from_presheaf(F(N32, [2, 0.5]))
    assert isbell_dist(p, q) == 1
    assert isbell_dist(p, p) == 0
    for x in N32.labels:
        for y in N32.labels:
            assert isbell_dist(embed(N32, x), embed(N32, y)) == N32.dist(x, y)


def test_corrupted_point_is_detected():
    bad = IsbellPoint(F(N32, [1, 1]), F(N32, [0, 0]))
    good = completion_from_presheaf(F(N32, [1, 1]))
    with pytest.raises(InternalInconsistency):
        isbell_dist(good, bad)


def test_embed_identities_on_grid():
    for P in map(completion_from_presheaf,
                 brute_fixed_set(N32, Grid(0.5, 4))):
        for i, x in enumerate(N32.labels):
            assert isbell_dist(embed(N32, x), P) == P.f.values[i]
            assert isbell_dist(P, embed(N32, x)) == P.g.values[i]


def test_embed_examples():
    assert embed(N32, "a").to_dict() == {"f": [0, 2], "g": [0, 3]}
    assert embed(sp.one_point(), "a").to_dict() == {"f": [0], "g": [0]}
    X = sp.three_point(3, 2, 2)
    for x in X.labels:
        e = embed(X, x)
        assert e.f.values.tolist() == e.g.values.tolist()


def test_top_and_bottom():
    assert top(N32).to_dict()["f"] == [3, 2]
    assert bottom(N32).to_dict()["f"] == [0, 0]


def test_geodesic_witness_examples():
    for z in N32.labels:
        x, y = geodesic_witness(embed(N32, z), z, 1e-6)
        i = N32.index(z)
        P = embed(N32, z)
        assert P.f.values[i] + P.g.values[i] == 0
        assert x in N32.labels and y in N32.labels
    P = completion_from_presheaf(F(A2, [1, 1]))
    assert geodesic_witness(P, "b", 1e-9)[0] == "a"
    T = top(N32)
    for eps in (1e-12, 1e-6, 1.0):
        x, y = geodesic_witness(T, "a", eps)
        i, j, k = N32.index(x), N32.index(y), N32.index("a")
        assert T.f.values[i] + T.g.values[k] <= N32.d[i, k] + eps
        assert T.f.values[k] + T.g.values[j] <= N32.d[k, j] + eps


def test_geodesic_witness_errors():
    with pytest.raises(ValueError):
        geodesic_witness(embed(N32, "a"), "a", 0)
    bad = IsbellPoint(F(N32, [3, 2]), F(N32, [3, 3]))
    with pytest.raises(NoWitness):
        geodesic_witness(bad, "a", 1e-6)


@given(spaces(max_n=6).flatmap(
    lambda X: tables(len(X)).flatmap(
        lambda f: tables(len(X)).map(lambda g: (X, f, g)))))
def test_adjunction_on_raw_tables(args):
    X, f, g = args
    lhs = opcopresheaf_dist(conjugate_L(F(X, f)), F(X, g))
    rhs = presheaf_dist(F(X, f), conjugate_R(F(X, g)))
    assert lhs == rhs


@given(spaces(max_n=6).flatmap(
    lambda X: tables(len(X)).map(lambda f: (X, f))))
def test_projections_idempotent_exactly(args):
    X, f = args
    rl = project_RL_table(X, f)
    assert np.array_equal(project_RL_table(X, rl), rl)
    lr = project_LR_table(X, f)
    assert np.array_equal(project_LR_table(X, lr), lr)
    assert rl.tolist() == reference_RL(X.d, f)


@given(spaces(max_n=6).flatmap(
    lambda X: tables(len(X)).flatmap(
        lambda f: tables(len(X)).map(lambda h: (X, f, np.maximum(f, h))))))
def test_conjugates_antitone(args):
    X, f, f2 = args
    assert np.all(conjugate_L_table(X, f) >= conjugate_L_table(X, f2))
    assert np.all(conjugate_R_table(X, f) >= conjugate_R_table(X, f2))


@given(spaces(max_n=5).flatmap(
    lambda X: tables(len(X)).map(lambda f: (X, f))))
def test_conjugates_land_in_right_roles(args):
    X, f = args
    assert is_copresheaf(conjugate_L(F(X, f)))
    assert is_presheaf(conjugate_R(F(X, f)))


@given(spaces(max_n=5).flatmap(
    lambda X: tables(len(X)).map(lambda f: (X, f))))
def test_fixed_set_bijection(args):
    X, f = args
    P = project_point(F(X, f))
    again = completion_from_presheaf(P.f)
    assert again == P
    assert is_isbell_point(P.f, P.g)


@given(spaces(max_n=5).flatmap(
    lambda X: tables(len(X)).flatmap(
        lambda f: tables(len(X)).map(lambda k: (X, f, k)))))
def test_projection_left_adjoint_to_inclusion(args):
    X, f, k = args
    from isbellkit.functionals import presheaf_closure
    f = F(X, presheaf_closure(X, f))
    K = project_point(F(X, k)).f
    assert presheaf_dist(project_RL(f), K) == presheaf_dist(f, K)


@given(spaces(max_n=5).flatmap(
    lambda X: tables(len(X)).flatmap(
        lambda f: tables(len(X)).map(lambda h: (X, f, h)))))
def test_completion_distance_formulas_agree(args):
    X, f, h = args
    p, q = project_point(F(X, f)), project_point(F(X, h))
    assert presheaf_dist(p.f, q.f) == opcopresheaf_dist(p.g, q.g)


def test_classical_yoneda_in_both_roles():
    X = sp.three_point(3, 2, 2)
    assert len(classify(yoneda(X, "a"))) == 2
