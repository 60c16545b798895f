from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from amcone import baselines
from amcone.fixtures import load_sequence, scaling
from amcone.horoball import HoroballVertex
from amcone.markings import AugmentedMarking, ball, base_marking, moves_for
from amcone.regions import (classify_sequence, in_Q, orthant_point, rho_dist,
                            sublinear_profile, theta, theta_dist, thickness_chain, witness_lower_bound,
                            witness_ray)
from amcone.surface import S04, S05, Annulus


@pytest.fixture(scope="module")
def base():
    return base_marking(S05)


def test_in_Q(base):
    assert in_Q(base, list(base.base))
    assert not in_Q(base, [base.transversal(base.base[0])])
    with pytest.raises(ValueError):
        in_Q(base, [base.base[0], base.transversal(base.base[0])])


def test_Q_intersection_identity():
    B = ball(base_marking(S05), 3)
    eng = moves_for(S05).eng
    curves = sorted({c for v in B.vertices for c in v.base})
    for m in B.vertices:
        for i, a in enumerate(curves):
            for b in curves[i + 1:]:
                if eng.intersection(a, b) == 0:
                    assert (in_Q(m, [a]) and in_Q(m, [b])) == in_Q(m, [a, b])


def test_network_cover():
    B = ball(base_marking(S05), 3)
    assert all(any(in_Q(m, [c]) for c in m.base) for m in B.vertices)


def test_theta_shapes(base):
    t = theta(base, list(base.base))
    assert len(t) == 2 and all(isinstance(x, HoroballVertex) for x in t)
    t1 = theta(base, [base.base[0]])
    assert isinstance(t1[0], HoroballVertex) and t1[1].surface == S04
    with pytest.raises(ValueError):
        theta(base, [moves_for(S05).eng.seeds[1]])


def test_theta_dist_vertical(base):
    a = base.with_depths((3, 1))
    assert theta_dist(base, a, list(base.base)) == 4


def test_rho_zero_in_region(base):
    K = baselines.get("regions.cross_term") + 1
    for c in base.base:
        assert rho_dist(base, [c], K).total == 0
    with pytest.raises(ValueError):
        rho_dist(base, [], K)
    with pytest.raises(ValueError):
        rho_dist(base, [base.base[0]], 0)


def test_rho_grows_affinely_with_twisting(base):
    eng = moves_for(S05).eng
    a = eng.seeds[1]  # crosses the base curve c0
    delta = [eng.seeds[0]]
    vals = []
    for n in range(4, 12):
        twisted = AugmentedMarking.make(S05, [(eng.half_twist(b, a, n), eng.half_twist(t, a, n), d)
                                              for b, t, d in base.pairs])
        vals.append(rho_dist(twisted, delta, 2, domains=[Annulus(a)]).total)
    steps = {y - x for x, y in zip(vals, vals[1:])}
    assert len(steps) == 1 and steps.pop() > 0


def test_orthant_point(base):
    assert orthant_point(base, (0, 0)) == base
    assert orthant_point(base, (2, 3)).depths == (2, 3)
    with pytest.raises(ValueError):
        orthant_point(base, (-1, 0))
    with pytest.raises(ValueError):
        orthant_point(base.with_depths((1, 0)), (0, 0))


@given(st.tuples(st.integers(0, 40), st.integers(0, 40)), st.tuples(st.integers(0, 40), st.integers(0, 40)),
       st.integers(1, 5))
def test_orthant_formula_total(d1, d2, K):
    from amcone.coarse import distance_formula, threshold
    b = base_marking(S05)
    x, y = orthant_point(b, d1), orthant_point(b, d2)
    want = sum(threshold(abs(p - q), K) for p, q in zip(d1, d2))
    assert distance_formula(x, y, K)["am"].total == want


def test_thickness_trivial_and_disjoint():
    eng = moves_for(S05).eng
    c = eng.seeds
    path, links = thickness_chain(c[0], c[0], 20)
    assert path == [c[0]] and witness_lower_bound(links[0], 20) == 20
    path, links = thickness_chain(c[0], c[2], 20)
    assert path == [c[0], c[2]]
    assert all(in_Q(m, [c[0], c[2]]) for m in witness_ray(links[0], 20))


def test_thickness_fixture_pair():
    from amcone.fixtures import load_curve
    _, a = load_curve("s05_alpha")
    _, b = load_curve("s05_beta")
    path, links = thickness_chain(a, b, 20)
    eng = moves_for(S05).eng
    assert path[0] == a and path[-1] == b
    assert all(eng.intersection(x, y) == 0 for x, y in zip(path, path[1:]))
    assert all(witness_lower_bound(l, 20) >= 20 for l in links)


def test_classifier_fixtures():
    ms, _ = load_sequence("seq_constant")
    assert classify_sequence(ms, scaling("lin", len(ms)))["verdict"] == "thick"
    ms, _ = load_sequence("seq_quadratic")
    r = classify_sequence(ms, scaling("lin", len(ms)))
    assert r["A"] == 1 and r["verdict"] == "thin"
    assert len(r["components"]["pieces"]) == 1 and len(r["components"]["tracks"]) == 1
    ms, _ = load_sequence("seq_two_tracks")
    s = scaling("lin", len(ms))
    assert classify_sequence(ms, s, Fraction(1, 2))["A"] == 2
    assert classify_sequence(ms, s, Fraction(2))["verdict"] == "thick"


def test_classifier_locality():
    ms, _ = load_sequence("seq_quadratic")
    s = scaling("lin", len(ms))
    n = len(ms)
    tail = n - max(1, n // 3)
    s2 = [Fraction(k, 100) + k for k in range(1, tail + 1)] + s[tail:]
    assert classify_sequence(ms, s)["A"] == classify_sequence(ms, s2)["A"]


def test_classifier_errors(base):
    with pytest.raises(ValueError):
        classify_sequence([base], [1, 2])
    with pytest.raises(ValueError):
        classify_sequence([base, base], [1, 2], 0)


def test_sublinear_profile():
    b = base_marking(S05)
    n = 6
    xs = [b] * n
    s = scaling("lin", n)
    assert max(sublinear_profile(xs, xs, s)) <= baselines.get("lipschitz.max_jump")
    eng = moves_for(S05).eng
    a = b.base[0]
    mus = [AugmentedMarking.make(S05, [(x, eng.half_twist(t, a, 2 * k) if x == a else t, d)
                                      for x, t, d in b.pairs]) for k in range(1, n + 1)]
    prof = sublinear_profile(xs, mus, s)
    assert min(prof) >= 1
