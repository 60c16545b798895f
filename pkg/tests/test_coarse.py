import pytest
from hypothesis import given, strategies as st

from amcone import baselines, farey
from amcone.coarse import (Geometry, ThresholdSum, active_segment, behrstock_min, bgit_check,
                           check_two_sided, distance_formula, endpoint_monotonicity, fit_two_sided,
                           harvest_domains, threshold)
from amcone.farey import INF, Slope
from amcone.markings import AugmentedMarking, ball, base_marking, moves_for
from amcone.surface import S04, S05, Annulus, NonAnnular


def test_threshold():
    assert threshold(3, 2) == 3 and threshold(2, 2) == 0
    t = ThresholdSum(2)
    for v in (1, 2, 3, 5):
        t.add("y", v)
    assert t.total == 8 and all(v > 2 for _, v in t.contributions)


@pytest.mark.parametrize("s", [S04, S05])
def test_formula_identity_is_zero(s):
    m = base_marking(s).with_depths(tuple(2 for _ in base_marking(s).pairs))
    r = distance_formula(m, m, 1)
    assert r["am"].total == 0 and r["m"].total == 0


def test_formula_rejects_small_threshold():
    m = base_marking(S04)
    with pytest.raises(ValueError):
        distance_formula(m, m, 0, kprime=0)


@given(st.lists(st.integers(0, 30), min_size=2, max_size=2), st.integers(1, 6))
def test_vertical_only_sum(ds, K):
    m = base_marking(S05)
    a, b = m.with_depths((ds[0], 0)), m.with_depths((ds[1], 0))
    r = distance_formula(a, b, K)
    gap = abs(ds[0] - ds[1])
    assert r["am"].total == threshold(gap, K)


def test_formula_monotone_in_K():
    B = ball(base_marking(S05), 3)
    m1 = B.center
    for m2 in B.vertices[::25]:
        tot = [distance_formula(m1, m2, K)["am"].total for K in range(1, 7)]
        assert all(x >= y for x, y in zip(tot, tot[1:]))


@pytest.mark.parametrize("k", [-50, -7, -1, 0, 1, 3, 50])
def test_twist_projection_distance(k):
    m = base_marking(S04)
    (b, t, _), = m.pairs
    m2 = AugmentedMarking.make(S04, [(b, farey.act(farey.twist_matrix(b, k), t), 0)])
    d = Geometry(S04).proj_dist(m, m2, Annulus(b, S04), augmented=False)
    assert abs(d - abs(k)) <= 2


def test_empty_projection_error():
    c = moves_for(S05).eng.seeds
    with pytest.raises(ValueError):
        Geometry(S05).curve_dist(base_marking(S05), c[0], NonAnnular((c[0],)))


def test_harvest_constant_path():
    m = base_marking(S05)
    ys = harvest_domains([m])
    assert len([y for y in ys if isinstance(y, Annulus)]) == 2
    assert len([y for y in ys if isinstance(y, NonAnnular) and not y.whole]) == 2
    with pytest.raises(ValueError):
        harvest_domains([])


def test_harvest_twisting_path():
    m = base_marking(S04)
    (b, t, _), = m.pairs
    path = [AugmentedMarking.make(S04, [(b, farey.act(farey.twist_matrix(b, k), t), 0)]) for k in range(5)]
    assert Annulus(b, S04) in harvest_domains(path)


def test_bgit_length_one_and_star():
    a = INF
    g = [Slope(1, 2), Slope(2, 3)]
    assert bgit_check(g, a) <= baselines.get("bgit.M0")
    with pytest.raises(ValueError):
        bgit_check([Slope(0, 1), Slope(1, 2)], a)
    with pytest.raises(ValueError):
        bgit_check([Slope(1, 2), Slope(1, 3), Slope(1, 2)], Slope(5, 1))


def test_behrstock_symmetric_and_errors():
    eng = moves_for(S05).eng
    c = eng.seeds
    m = base_marking(S05)
    y, z = Annulus(c[0]), Annulus(c[1])
    assert behrstock_min(m, y, z) == behrstock_min(m, z, y)
    assert behrstock_min(m, y, z) <= baselines.get("behrstock.M1")
    with pytest.raises(ValueError):
        behrstock_min(m, Annulus(c[0]), Annulus(c[2]))


def test_active_segments():
    m = base_marking(S05)
    b = m.base[0]
    vert = [m.with_depths((k, 0) if m.base[0] == b else (0, k)) for k in range(4)]
    assert active_segment(vert, Annulus(b)) == ([0, 1, 2, 3], True)
    other = moves_for(S05).eng.seeds
    missing = next(x for x in other if x not in m.base)
    assert active_segment(vert, Annulus(missing)) == ([], True)


def test_segments_of_crossing_boundaries_are_disjoint():
    from amcone.experiments import geodesic_path
    B = ball(base_marking(S05), 3)
    eng = moves_for(S05).eng
    ys = harvest_domains(B.vertices)
    ann = [y for y in ys if isinstance(y, Annulus)]
    for j in range(0, len(B.vertices), 17):
        path = geodesic_path(B, 0, j)
        for i, y in enumerate(ann):
            for z in ann[i + 1:]:
                if eng.intersection(y.core, z.core):
                    a, _ = active_segment(path, y)
                    b, _ = active_segment(path, z)
                    assert not set(a) & set(b)


def test_endpoint_monotonicity():
    m = base_marking(S04)
    (b, t, _), = m.pairs
    assert endpoint_monotonicity([m, m, m], Annulus(b, S04))[0] == 0
    path = [AugmentedMarking.make(S04, [(b, farey.act(farey.twist_matrix(b, k), t), 0)]) for k in range(6)]
    gap, ds = endpoint_monotonicity(path, Annulus(b, S04))
    assert gap <= 2
    assert all(y >= x - 2 for x, y in zip(ds, ds[1:]))


def test_fit_two_sided():
    pairs = [(0, 0), (1, 2), (2, 2), (3, 5)]
    f = fit_two_sided(pairs)
    assert check_two_sided(pairs, f["K_qi"], f["C_qi"]) <= 1e-9


def test_large_link_threshold_frozen():
    from amcone.experiments import large_links
    assert large_links(20, 3)["K1"] <= baselines.get("large_links.K1")
