import itertools
import json
import warnings

import numpy as np
import pytest

from isbellkit import space as sp
from isbellkit.cli import RegionDescription, export_region
from isbellkit.isbell import bottom, embed, top
from isbellkit.oracle import Grid, brute_fixed_set, enumerate_tables
from isbellkit.region import (in_three_point_complex, in_tripod,
                              sort_three_point, three_point_vertices)
from isbellkit.tightspan import is_tight
from isbellkit.functionals import Functional


def test_rectangle():
    reg = export_region(sp.two_point(3, 2))
    assert reg.to_dict() == {"kind": "rectangle",
                             "parameters": {"r": 3, "s": 2}}
    assert reg.contains([3, 2]) and not reg.contains([3, 2.5])


def test_square_with_tight_span_diagonal():
    reg = export_region(sp.symmetric_two_point(2))
    d = reg.to_dict()
    assert d["kind"] == "square" and d["parameters"] == {"r": 2}
    assert d["tight_span"] == [[0, 2], [2, 0]]


def test_three_point_complex_vertices():
    X = sp.three_point(3, 2, 2)
    reg = export_region(X)
    assert reg.kind == "three-point-complex"
    assert reg.parameters == {"r": 3, "s": 2, "t": 2}
    verts = reg.to_dict()["vertices"]
    for x in X.labels:
        assert verts[x] == embed(X, x).f.values.tolist()
    assert verts["top"] == top(X).f.values.tolist()
    assert verts["bottom"] == bottom(X).f.values.tolist()


def test_debug_output_exposes_change_of_variables():
    reg = export_region(sp.three_point(3, 2, 2), debug=True)
    dbg = reg.extras["debug"]
    assert dbg["vertices_ABC"]["bottom"] == [3, 2, 2]
    assert "alpha + r" in dbg["change_of_variables"]


def test_fallback_to_grid_sample():
    X = sp.random_space(4, np.random.default_rng(1), max_dist=2, step=1)
    reg = export_region(X, sample=Grid(1, 3))
    assert reg.kind == "grid-sample"
    expect = [f.values.tolist() for f in brute_fixed_set(X, Grid(1, 3))]
    assert [p.tolist() for p in reg.points] == expect
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        export_region(sp.two_point(0, 2).__class__(
            ("a", "b", "c"), sp.metric_closure([[0, 1, 1], [2, 0, 1],
                                                [1, 1, 0]])))
    assert any("sampling" in str(m.message) for m in w)


@pytest.mark.parametrize("perm", list(itertools.permutations([4, 3, 2])))
def test_permuted_triples_are_sorted_and_checked(perm):
    X = sp.three_point(*perm)
    order, (r, s, t) = sort_three_point(X)
    assert (r, s, t) == (4, 3, 2)
    reg = export_region(X)
    p = reg.to_dict()["permutation"]
    assert [X.labels.index(p[k]) for k in "abc"] == order


def test_uncapped_clause_admits_non_fixed_points():
    r, s, t = 4, 3, 2
    X = sp.three_point(r, s, t)
    grid = Grid(0.5, 5)
    fixed = {tuple(f.values) for f in brute_fixed_set(X, grid)}
    extra = [tuple(row) for row in enumerate_tables(X, grid)
             if in_three_point_complex(*row, r, s, t, cap_gamma=False)
             and tuple(row) not in fixed]
    assert (2.5, 3.5, 4.5) in extra
    assert all(row[2] > r for row in extra)
    capped = {tuple(row) for row in enumerate_tables(X, grid)
              if in_three_point_complex(*row, r, s, t)}
    assert capped == fixed


def test_uncapped_clause_is_exact_when_two_edges_tie():
    r, s, t = 3, 2, 2
    X = sp.three_point(r, s, t)
    grid = Grid(0.5, 4)
    fixed = {tuple(f.values) for f in brute_fixed_set(X, grid)}
    loose = {tuple(row) for row in enumerate_tables(X, grid)
             if in_three_point_complex(*row, r, s, t, cap_gamma=False)}
    assert loose == fixed


def test_tripod_is_tight_span():
    r, s, t = 4, 3, 2
    X = sp.three_point(r, s, t)
    for row in enumerate_tables(X, Grid(0.5, 5)):
        assert in_tripod(*row, r, s, t) == is_tight(Functional(X, row))
    v = three_point_vertices(r, s, t)
    assert in_tripod(*v["centre"], r, s, t)


def test_region_description_json():
    reg = export_region(sp.three_point(3, 2, 2))
    text = json.dumps(reg.to_dict())
    assert "labels" not in json.loads(text)
    with pytest.raises(ValueError):
        RegionDescription("circle", {})
