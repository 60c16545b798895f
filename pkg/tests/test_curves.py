import pytest
from hypothesis import given, settings, strategies as st

from amcone.surface import Annulus, NonAnnular

from conftest import apply_word, s05_curves, words


def test_seed_pants_are_disjoint(eng):
    c = eng.seeds
    for j in range(5):
        assert eng.intersection(c[j], c[(j + 2) % 5]) == 0
        assert eng.intersection(c[j], c[j]) == 0


def test_seed_neighbours_meet_twice(eng):
    c = eng.seeds
    for j in range(5):
        assert eng.intersection(c[j], c[(j + 1) % 5]) == 2
        assert eng.intersection_oracle(c[j], c[(j + 1) % 5]) == 2


def test_non_normal_input_rejected(eng):
    assert not eng.is_curve((1,) + (0,) * (eng.zeta - 1))
    assert not eng.is_curve((0,) * eng.zeta)


@given(s05_curves(), s05_curves())
def test_tracing_matches_oracle(a, b):
    from amcone.curves import engine
    e = engine(5)
    assert e.intersection(a, b) == e.intersection_oracle(a, b)
    assert e.intersection(a, b) == e.intersection(b, a)


@given(s05_curves(), s05_curves(), words)
def test_intersection_invariant(a, b, w):
    from amcone.curves import engine
    e = engine(5)
    assert e.intersection(apply_word(e, a, w), apply_word(e, b, w)) == e.intersection(a, b)


@settings(max_examples=15)
@given(s05_curves(), st.integers(0, 4))
def test_twist_growth(a, k):
    from amcone.curves import engine
    e = engine(5)
    b = e.seeds[k]
    n = e.intersection(a, b)
    assert e.dehn_twist(a, b, 0) == a
    for j in range(-5, 6):
        t = e.dehn_twist(a, b, j)
        assert e.intersection(t, b) == n
        assert e.intersection_oracle(t, a) == abs(j) * n * n


@given(s05_curves(), st.integers(0, 4))
def test_half_twist_shifts_reading_by_one(g, k):
    from amcone.curves import engine
    e = engine(5)
    a = e.seeds[k]
    if e.intersection(a, g) == 0:
        assert e.twist(a, g) is None
        return
    h = e.half_twist(g, a, 1)
    assert e.twist_reading(a, h) == pytest.approx(e.twist_reading(a, g) + 1)
    assert e.twist(a, h) == e.twist(a, g) + 1
    assert abs(e.twist(a, g) - e.twist_oracle(a, g)) <= 2


def test_project_disjoint_and_inside(eng):
    c = eng.seeds
    # c2 lies in the four-holed side of c0; c0 misses its own complement
    assert eng.project(c[2], NonAnnular((c[0],))) == frozenset([c[2]])
    assert eng.project(c[2], Annulus(c[0])) is None


@given(s05_curves(), st.integers(0, 4))
def test_projection_curves_live_in_the_piece(g, k):
    from amcone.curves import engine
    e = engine(5)
    a = e.seeds[k]
    p = e.project(g, NonAnnular((a,)))
    if g == a:
        assert p is None
        return
    assert p
    sl = e.slopes(a, g)
    for s, c in sl.items():
        assert e.is_curve(c)
        assert e.intersection(c, a) == 0 and c != a
        assert e.small_side(c) != e.small_side(a) or c == a
    # surgery slopes span at most an edge
    from amcone.farey import is_edge
    ss = list(sl)
    assert all(is_edge(x, y) for i, x in enumerate(ss) for y in ss[i + 1:])


@given(s05_curves(), st.integers(0, 4), st.sampled_from([1, -1]))
def test_projection_ignores_twists_off_the_piece(g, k, s):
    from amcone.curves import engine
    e = engine(5)
    a = e.seeds[k]
    y = NonAnnular((a,))
    assert e.project(e.half_twist(g, a, s), y) == e.project(g, y)


@given(s05_curves(), s05_curves())
def test_fill_matches_oracle(a, b):
    from amcone.curves import engine
    e = engine(5)
    if a == b:
        return
    assert e.fill(a, b) == e.promoted(a).fills_with(e.promoted(b))
