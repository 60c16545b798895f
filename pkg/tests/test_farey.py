import math
import random

import pytest
from hypothesis import given, strategies as st

from amcone import farey
from amcone.farey import INF, Slope
from amcone.markings import reference


@st.composite
def slopes(draw, den=60):
    q = draw(st.integers(0, den))
    p = draw(st.integers(-3 * den, 3 * den))
    if q == 0:
        return INF
    g = math.gcd(p, q)
    return Slope(p // g, q // g) if p else Slope(0, 1)


unimodular = st.lists(st.sampled_from([((1, 1), (0, 1)), ((1, -1), (0, 1)), ((1, 0), (1, 1)),
                                       ((1, 0), (-1, 1)), ((0, -1), (1, 0))]), min_size=1, max_size=12)


def _prod(ms):
    M = ((1, 0), (0, 1))
    for x in ms:
        M = farey.mat_mul(x, M)
    return M


def test_slope_normalizes():
    assert Slope(2, -4) == Slope(-1, 2)
    assert Slope(-1, 0) == INF
    with pytest.raises(ValueError):
        Slope(0, 0)


def test_is_edge_examples():
    assert farey.is_edge(Slope(0, 1), INF)
    assert farey.is_edge(Slope(0, 1), Slope(1, 1))
    assert farey.is_edge(Slope(1, 2), Slope(1, 3))
    assert not farey.is_edge(Slope(0, 1), Slope(2, 5))
    with pytest.raises(ValueError):
        farey.is_edge(INF, INF)


@given(slopes(), slopes())
def test_cc_dist_edge_iff_one(a, b):
    if a == b:
        assert farey.cc_dist(a, b) == 0
    else:
        assert (farey.cc_dist(a, b) == 1) == farey.is_edge(a, b)
        assert farey.cc_dist(a, b) == farey.cc_dist(b, a)


@given(slopes(), slopes(), slopes())
def test_cc_dist_triangle(a, b, c):
    assert farey.cc_dist(a, c) <= farey.cc_dist(a, b) + farey.cc_dist(b, c)


@given(slopes(), slopes(), unimodular)
def test_mapping_class_invariance(a, b, word):
    M = _prod(word)
    assert farey.cc_dist(farey.act(M, a), farey.act(M, b)) == farey.cc_dist(a, b)


@given(slopes(), slopes())
def test_geodesic_is_a_path(a, b):
    g = farey.geodesic(a, b)
    assert g[0] == a and g[-1] == b
    assert len(g) - 1 == farey.cc_dist(a, b)
    for x, y in zip(g, g[1:]):
        assert farey.is_edge(x, y)


def test_pivot_matches_bfs_oracle():
    rng = random.Random(3)
    N = 60
    for _ in range(200):
        def r():
            while True:
                q, p = rng.randint(1, N), rng.randint(-N, N)
                if math.gcd(p, q) == 1:
                    return Slope(p, q)
        a, b = r(), r()
        assert farey.cc_dist(a, b) == farey.bfs_dist_oracle(a, b, N)


def test_twist_coordinate_aligned():
    for n in range(-5, 6):
        assert farey.twist_coordinate(INF, Slope(n, 1), Slope(0, 1)) == n
    with pytest.raises(ValueError):
        farey.twist_coordinate(INF, INF, Slope(0, 1))


@given(slopes(), slopes(), st.integers(-50, 50))
def test_twist_shifts_coordinate(alpha, gamma, k):
    if alpha == gamma:
        return
    ref = reference(alpha)
    g2 = farey.act(farey.twist_matrix(alpha, k), gamma)
    assert farey.twist_coordinate(alpha, g2, ref) - farey.twist_coordinate(alpha, gamma, ref) == k


@given(slopes(), slopes(), slopes(), slopes(), slopes())
def test_reference_change_is_a_constant_shift(alpha, g1, g2, b1, b2):
    if alpha in (g1, g2, b1, b2):
        return
    shift = lambda g: farey.twist_coordinate(alpha, g, b1) - farey.twist_coordinate(alpha, g, b2)
    assert shift(g1) == shift(g2)


@given(slopes(), slopes(), slopes())
def test_cover_distance_within_two(alpha, g, h):
    if len({alpha, g, h}) < 3:
        return
    ref = reference(alpha)
    dphi = abs(farey.twist_coordinate(alpha, g, ref) - farey.twist_coordinate(alpha, h, ref))
    assert abs(farey.annular_cover_dist(alpha, g, h) - dphi) <= 2


def test_intersection_doubles_on_sphere():
    a, b = Slope(1, 2), Slope(3, 1)
    assert farey.intersection(a, b) == 5
    assert farey.intersection(a, b, punctured_sphere=True) == 10
