import numpy as np
import pytest
from hypothesis import given

from isbellkit import space as sp
from isbellkit.errors import (Expansive, ShapeMismatch, TriangleViolation,
                              UnknownPoint, ZeroDiagonalViolation)

from strategies import spaces

INF = float("inf")


def test_two_point_space_validates():
    X = sp.validate(["a", "b"], [[0, 3], [2, 0]])
    assert X.dist("a", "b") == 3 and X.dist("b", "a") == 2
    assert X == sp.two_point(3, 2)


def test_zero_diagonal_violation_names_point():
    with pytest.raises(ZeroDiagonalViolation) as exc:
        sp.validate(["a", "b"], [[0, 1], [1, 0.1]])
    assert exc.value.point == "b"


def test_triangle_violation_names_triple():
    with pytest.raises(TriangleViolation) as exc:
        sp.validate(["a", "b", "c"], [[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    assert (exc.value.x, exc.value.y, exc.value.z) == ("a", "b", "c")


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        sp.validate(["a", "b"], [[0, 1, 2], [1, 0, 1]])
    with pytest.raises(ShapeMismatch):
        sp.validate(["a", "a"], [[0, 1], [1, 0]])


def test_infinite_distances_participate_in_triangle():
    X = sp.validate(["a", "b", "c"], [[0, "inf", 1], [0, 0, 1], [INF, INF, 0]])
    assert X.dist("a", "b") == INF
    with pytest.raises(TriangleViolation):
        sp.validate(["a", "b", "c"], [[0, 1, INF], [1, 0, 1], [1, 1, 0]])


def test_opposite_examples():
    assert sp.opposite(sp.two_point(3, 2)) == sp.two_point(2, 3)
    A = sp.three_point(3, 2, 2)
    assert sp.opposite(A) == A
    assert sp.opposite(sp.symmetric_two_point(2)) == sp.symmetric_two_point(2)


def test_skeletal_and_classical_examples():
    A = sp.three_point(3, 2, 2)
    assert sp.is_skeletal(A) and sp.is_classical(A)
    Z = sp.two_point(0, 0)
    assert not sp.is_skeletal(Z)
    N = sp.two_point(0, 2)
    assert sp.is_skeletal(N) and not sp.is_classical(N)
    assert not sp.is_classical(sp.two_point(INF, INF))


def test_discretize_examples():
    D = sp.discretize(sp.symmetric_two_point(2))
    assert D.d.tolist() == [[0, INF], [INF, 0]]
    P = sp.one_point()
    assert sp.discretize(P) == P
    X = sp.three_point(3, 2, 2)
    delta = sp.discretization_map(X)
    sp.check_short_map(list(X.labels), delta.source, X)


def test_short_map_examples(rng):
    X = sp.two_point(3, 2)
    Y = sp.three_point(3, 2, 2)
    for y in Y.labels:
        sp.check_short_map({"a": y, "b": y}, X, Y)
    sp.check_short_map({"a": "a", "b": "b"}, X, X)
    with pytest.raises(Expansive) as exc:
        sp.check_short_map({"a": "a", "b": "b"}, sp.two_point(1, 1),
                           sp.two_point(3, 3))
    assert (exc.value.x, exc.value.x2) == ("a", "b")
    with pytest.raises(UnknownPoint):
        sp.check_short_map({"a": "a"}, X, X)


def test_skeletalize_picks_lowest_index():
    X = sp.validate(["p", "q", "r"], [[0, 0, 1], [0, 0, 1], [1, 1, 0]])
    Q, rep = sp.skeletalize(X)
    assert Q.labels == ("p", "r")
    assert rep == {"p": "p", "q": "p", "r": "r"}
    assert sp.is_skeletal(Q)


def test_named_spaces():
    assert sp.named("N_3_2") == sp.two_point(3, 2)
    assert sp.named("A_1p5") == sp.symmetric_two_point(1.5)
    assert sp.named("A_3_2_2") == sp.three_point(3, 2, 2)
    with pytest.raises(ShapeMismatch):
        sp.named("Q_1")


def test_csv_reader_accepts_label_column():
    text = ",a,b\na,0,3\nb,2,0\n"
    assert sp.from_csv(text) == sp.two_point(3, 2)


@given(spaces())
def test_random_spaces_validate_and_round_trip(X):
    again = sp.validate(X.labels, X.d)
    assert again == X
    assert sp.from_json(X.to_json()) == X
    assert sp.from_csv(sp.to_csv(X)) == X
    assert sp.opposite(sp.opposite(X)) == X


@given(spaces())
def test_discretize_idempotent(X):
    D = sp.discretize(X)
    assert sp.discretize(D) == D
    assert sp.is_discrete(D)


@given(spaces(), spaces(), spaces())
def test_composite_of_short_maps_is_short(X, Y, Z):
    rng = np.random.default_rng(len(X) * 31 + len(Y))
    Y2, G = sp.random_short_map(Y, Z, rng)
    X2, F = sp.random_short_map(X, Y2, rng)
    H = F.compose(G)
    sp.check_short_map([Z.labels[i] for i in H.indices], X2, Z)


@given(spaces())
def test_maps_out_of_discrete_spaces_are_short(X):
    D = sp.discretize(X)
    rng = np.random.default_rng(len(X))
    images = [X.labels[i] for i in rng.integers(0, len(X), size=len(X))]
    sp.check_short_map(images, D, X)
