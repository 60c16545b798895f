import math

import numpy as np
import pytest
from hypothesis import given, settings

from amcone.horoball import HoroballVertex
from amcone.markings import (AugmentedMarking, BallGraph, Caps, ball, base_marking,
                             elementary_neighbors, marking_with_base, project_augmented,
                             twist_powers, validate)
from amcone.surface import S04, S05, S11, Annulus, NonAnnular

from conftest import s05_curves


@pytest.mark.parametrize("s", [S11, S04, S05])
def test_base_marking_valid(s):
    assert validate(base_marking(s)) == []


def test_not_clean_detected():
    m = base_marking(S05)
    (b0, t0, _), (b1, t1, _) = m.pairs
    bad = AugmentedMarking.make(S05, [(b0, b1 if False else t1, 0), (b1, t1, 0)])
    assert "not clean" in validate(bad) or "transversal not at distance one" in validate(bad)


def test_negative_depth_detected():
    m = base_marking(S04)
    (b, t, _), = m.pairs
    assert "negative depth" in validate(AugmentedMarking.make(S04, [(b, t, -1)]))


def test_twist_powers():
    assert list(twist_powers(0, 8)) == [1]
    assert list(twist_powers(2, 20)) == list(range(1, math.ceil(math.e ** 2)))
    assert list(twist_powers(2, 20))[-1] == 7
    assert list(twist_powers(5, 8)) == list(range(1, 9))


@pytest.mark.parametrize("s", [S11, S04, S05])
def test_vertical_neighbor_count(s):
    m = base_marking(s)
    for depths in ([0] * len(m.pairs), [1] * len(m.pairs), [2] + [0] * (len(m.pairs) - 1)):
        x = m.with_depths(tuple(depths))
        vert = [n for n in elementary_neighbors(x) if n[0][0] == "vertical"]
        assert len(vert) == 2 * len(m.pairs) - sum(d == 0 for d in depths)


def test_base_twists_are_single():
    m = base_marking(S05)
    tw = [mv for mv, _ in elementary_neighbors(m) if mv[0] == "twist"]
    assert sorted(abs(mv[2]) for mv in tw) == [1, 1, 1, 1]


@pytest.mark.parametrize("s", [S04, S05])
def test_edge_symmetry_and_validity(s):
    B = ball(base_marking(s), 2)
    for u in B.vertices[:60]:
        for _, v in elementary_neighbors(u):
            assert validate(v) == []
            assert u in {w for _, w in elementary_neighbors(v)}


@pytest.mark.parametrize("s", [S04, S05])
def test_no_flip_at_positive_depth(s):
    B = ball(base_marking(s), 4)
    for i, j in B.edges:
        u, v = B.vertices[i], B.vertices[j]
        if set(u.base) != set(v.base):
            assert all(d == 0 for d in u.depths) and all(d == 0 for d in v.depths)


def test_ball_small_radii():
    m = base_marking(S05)
    assert len(ball(m, 0).vertices) == 1
    assert len(ball(m, 1).vertices) == 1 + len(elementary_neighbors(m))


def test_ball_json_roundtrip(tmp_path):
    B = ball(base_marking(S04), 3)
    p = tmp_path / "b.json"
    B.save(p)
    import json
    C = BallGraph.from_json(json.loads(p.read_text()))
    assert C.vertices == B.vertices
    assert np.array_equal(C.edges, B.edges)
    assert np.array_equal(C.distances_from([0])[0], B.distances_from([0])[0])


def test_ball_distances_realized():
    B = ball(base_marking(S05), 3)
    c = B.index[B.center]
    assert np.array_equal(B.distances_from([c])[0], B.dist)


def test_ball_budget():
    from amcone.markings import BudgetExceeded
    with pytest.raises(BudgetExceeded):
        ball(base_marking(S05), 4, budget=100)


def test_zero_depth_sublevel_is_marking_ball():
    B = ball(base_marking(S04), 5)
    flat = [v for v in B.vertices if all(d == 0 for d in v.depths)]
    C = ball(base_marking(S04), 5, Caps(1))
    only = {v for v in C.vertices if all(d == 0 for d in v.depths)}
    assert set(flat) >= {v for v in only if C.dist[C.index[v]] <= 2}


def test_annular_projection_of_base_curve():
    m = base_marking(S04).with_depths((3,))
    (b, t, _), = m.pairs
    h = project_augmented(m, Annulus(b, S04))
    assert h == HoroballVertex(0, 3)


def test_unique_marking_on_complement():
    m = base_marking(S05)
    for a in m.base:
        p = project_augmented(m, NonAnnular((a,)))
        assert p.surface == S04 and validate(p) == []


def test_projection_lipschitz_along_edges():
    from amcone import baselines
    from amcone.experiments import marking_lipschitz
    r = marking_lipschitz(3)
    assert 0 < r["max_jump"] <= baselines.get("lipschitz.max_jump")


@settings(max_examples=20)
@given(s05_curves())
def test_marking_with_base_contains_curve(c):
    m = marking_with_base([c])
    assert c in m.base and validate(m) == []


def test_marking_with_disjoint_pair():
    from amcone.curves import engine
    e = engine(5)
    a = e.half_twist(e.seeds[0], e.seeds[1], 3)
    b = e.half_twist(e.seeds[2], e.seeds[1], 3)
    assert e.intersection(a, b) == 0
    m = marking_with_base([a, b], [4, 1])
    assert set(m.base) == {a, b} and m.D(a) == 4 and m.D(b) == 1
    with pytest.raises(ValueError):
        marking_with_base([a, e.seeds[1]])


def test_json_roundtrip():
    for s in (S11, S04, S05):
        m = base_marking(s).with_depths(tuple(range(1, len(base_marking(s).pairs) + 1)))
        assert AugmentedMarking.from_json(m.to_json()) == m
