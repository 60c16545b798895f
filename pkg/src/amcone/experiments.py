"""Seeded sweeps behind the frozen constants and the acceptance checks.

Every function returns plain data (dicts of numbers) so the CLI can emit
it and `baselines.regression` can compare it with the frozen file.
"""
import math
import time
from dataclasses import dataclass

import numpy as np

from . import farey, horoball
from .coarse import (BallFormula, Geometry, ball_pairs, behrstock_min, bgit_check,
                     fit_two_sided, harvest_domains)
from .markings import Caps, ball, base_marking, moves_for, validate
from .regions import in_Q, orthant_point, thickness_chain, witness_lower_bound
from .surface import S04, S05, S11, Annulus, NonAnnular, interlocks


@dataclass
class BallSpec:
    surface: object
    radius: int
    twist_cap: int = 8

    def build(self, budget=200_000):
        return ball(base_marking(self.surface), self.radius, Caps(self.twist_cap), budget)


FORMULA_BALLS = {"0,4": BallSpec(S04, 8), "1,1": BallSpec(S11, 8), "0,5": BallSpec(S05, 6)}
SAMPLE_BALL = BallSpec(S05, 5)

_BALLS = {}


def cached_ball(spec):
    key = (str(spec.surface), spec.radius, spec.twist_cap)
    if key not in _BALLS:
        _BALLS[key] = spec.build()
    return _BALLS[key]


# ------------------------------------------------------------------ horoball

def horoball_edges(max_x=256, max_m=8):
    """Generated adjacency against the edge rule, every vertex of a window."""
    xs = np.arange(-max_x, max_x + 1)
    X, M = np.meshgrid(xs, np.arange(max_m + 1))
    X, M = X.ravel(), M.ravel()
    bad = 0
    for x, m in zip(X.tolist(), M.tolist()):
        same = (M == m) & (X != x) & (np.abs(X - x) <= 2 ** m)
        vert = (X == x) & (np.abs(M - m) == 1)
        want = {(int(a), int(b)) for a, b in zip(X[same | vert], M[same | vert])}
        got = {u for u in horoball.neighbors((x, m), (-max_x, max_x)) if u[1] <= max_m}
        bad += want != got
    return {"vertices": int(X.size), "mismatches": bad}


def horoball_estimate(max_x=1024, max_m=10):
    lo, hi = None, None
    for _, _, _, ex, est in horoball.sweep(max_x, max_m):
        g = est - ex
        lo = g if lo is None else min(lo, g)
        hi = g if hi is None else max(hi, g)
    return {"min_gap": lo, "C_est": hi}


def horoball_pairs(n, seed, max_x=1024, max_m=10):
    rng = np.random.default_rng(seed)
    x = rng.integers(-max_x // 2, max_x // 2 + 1, size=(n, 2))
    m = rng.integers(0, max_m + 1, size=(n, 2))
    return [((int(a), int(c)), (int(b), int(d))) for (a, b), (c, d) in zip(x, m)]


def horodisk_fit(n=10_000, seed=0):
    f1 = horoball.hyp_compare(horoball_pairs(n, seed))
    f2 = horoball.hyp_compare(horoball_pairs(2 * n, seed + 1))
    return {"K": f1["K_mult"], "C": f1["C_add"], "K_doubled": f2["K_mult"], "C_doubled": f2["C_add"]}


# ------------------------------------------------------------------ farey

def random_slope(rng, max_den):
    while True:
        q = int(rng.integers(1, max_den + 1))
        p = int(rng.integers(-3 * max_den, 3 * max_den + 1))
        if math.gcd(p, q) == 1:
            return farey.Slope(p, q)


def farey_twist(n=1000, seed=0, max_den=1000):
    """|twist difference| against the annular-cover distance."""
    from .markings import reference
    rng = np.random.default_rng(seed)
    worst, done = 0, 0
    while done < n:
        a, g, h = (random_slope(rng, max_den) for _ in range(3))
        if len({a, g, h}) < 3:
            continue
        ref = reference(a)
        dphi = abs(farey.twist_coordinate(a, g, ref) - farey.twist_coordinate(a, h, ref))
        worst = max(worst, abs(farey.annular_cover_dist(a, g, h) - dphi))
        done += 1
    return {"pairs": done, "worst_gap": worst}


# ------------------------------------------------------------------ formula

def formula_fit(surface_key, K):
    B = cached_ball(FORMULA_BALLS[surface_key])
    F = BallFormula(B)
    pairs = ball_pairs(B, F, K)
    fit = fit_two_sided(list(pairs))
    return {"vertices": len(B.vertices), "K": K, **fit,
            "max_bfs": max(d for d, _ in pairs), "max_total": max(f for _, f in pairs),
            "pairs": pairs}


def threshold_scan(surface_key, ks=(1, 2, 3)):
    """Fits per threshold; a fit pinned at the top of the slope grid is
    degenerate."""
    out = {}
    for K in ks:
        r = formula_fit(surface_key, K)
        out[K] = {"K_qi": r["K_qi"], "C_qi": r["C_qi"], "degenerate": r["K_qi"] >= 6.0}
    return out


# ------------------------------------------------------------------ behrstock

def _interlocking(domains, inter):
    ys = [y for y in domains if isinstance(y, Annulus) or not y.whole]
    return [(y, z) for i, y in enumerate(ys) for z in ys[i + 1:] if interlocks(y, z, inter)]


def behrstock_sweep(n=10_000, seed=0, spec=SAMPLE_BALL):
    B = cached_ball(spec)
    pool = sorted({b for v in B.vertices for b in v.base})
    geo = Geometry(spec.surface, pool)
    pairs = _interlocking(harvest_domains(B.vertices, geo), geo.mv.inter)
    rng = np.random.default_rng(seed)
    iv = rng.integers(0, len(B.vertices), size=n)
    ip = rng.integers(0, len(pairs), size=n)
    rows = []
    for i, j in zip(iv.tolist(), ip.tolist()):
        y, z = pairs[j]
        rows.append((i, j, behrstock_min(B.vertices[i], y, z, geo)))
    return {"n": n, "max": max(r[2] for r in rows), "rows": rows}


def behrstock_stability(n=1000, seed=0):
    small = behrstock_sweep(n, seed)["max"]
    big = behrstock_sweep(10 * n, seed + 1)["max"]
    return {"M1_small": small, "M1": big}


# ------------------------------------------------------------------ bgit

def bgit_sweep(n=1000, seed=0, max_den=200):
    """Farey geodesics avoiding the star of a random core slope."""
    rng = np.random.default_rng(seed)
    worst = worst_h = 0
    lengths = []
    done = 0
    while done < n:
        a, u, v = (random_slope(rng, max_den) for _ in range(3))
        if len({a, u, v}) < 3:
            continue
        g = farey.geodesic(u, v)
        if any(x == a or farey.is_edge(x, a) for x in g):
            continue
        worst = max(worst, bgit_check(g, a))
        worst_h = max(worst_h, bgit_check(g, a, horoball=True))
        lengths.append(len(g) - 1)
        done += 1
    return {"n": done, "M0": worst, "M0_horoball": worst_h, "max_length": max(lengths)}


# ------------------------------------------------------------------ regions

def _region_sums(B, idx, delta):
    """Component-sum matrix over the markings idx of Q(delta)."""
    from .coarse import horo_table
    from .regions import marking_dist, pieces, theta
    comps = [theta(B.vertices[i], delta) for i in idx]
    total = np.zeros((len(idx), len(idx)), dtype=np.int64)
    for k, y in enumerate(pieces(B.vertices[idx[0]].surface, list(delta))):
        col = [c[k] for c in comps]
        if isinstance(y, Annulus):
            total += horo_table(np.array([h.x for h in col]), np.array([h.m for h in col]))
            continue
        keys = {}
        gid = np.array([keys.setdefault(c, len(keys)) for c in col])
        ks = list(keys)
        T = np.array([[marking_dist(p, q) for q in ks] for p in ks], dtype=np.int64)
        total += T[gid][:, gid]
    return total


def product_regions(spec=SAMPLE_BALL, s04=BallSpec(S04, 8)):
    """Component-sum against BFS distance for every in-region pair, and
    the largest cross term d_Y(m, delta) over harvested Y cutting delta.

    Cross terms are measured on S_{0,5}: with a one-curve base the
    projection is a single point and the term vanishes."""
    from scipy.sparse.csgraph import shortest_path
    pairs = set()
    for sp in (s04, spec):
        B = cached_ball(sp)
        A = B.adjacency()
        regions = {}
        for i, v in enumerate(B.vertices):
            for c in v.base:
                regions.setdefault((c,), []).append(i)
            if len(v.base) > 1:
                regions.setdefault(tuple(v.base), []).append(i)
        for delta, idx in regions.items():
            if len(idx) < 2:
                continue
            d = shortest_path(A, unweighted=True, indices=idx, directed=False)[:, idx].astype(np.int64)
            f = _region_sums(B, idx, delta)
            iu = np.triu_indices(len(idx), 1)
            pairs.update(zip(d[iu].tolist(), f[iu].tolist()))
    B = cached_ball(spec)
    geo = Geometry(spec.surface, sorted({b for v in B.vertices for b in v.base}))
    domains = [y for y in harvest_domains(B.vertices, geo) if isinstance(y, Annulus) or not y.whole]
    inter = geo.mv.inter
    cross = 0
    for v in B.vertices:
        for c in v.base:
            for y in domains:
                core = y.core if isinstance(y, Annulus) else y.boundary[0]
                if inter(core, c) > 0:
                    cross = max(cross, geo.curve_dist(v, c, y))
    fit = fit_two_sided(sorted(pairs))
    return {**fit, "distinct_pairs": len(pairs), "cross_term": cross, "pairs": sorted(pairs)}


def orthant_law(max_depth=3, twist_cap=8):
    """BFS distance between orthant points against the l1 distance of
    their depth vectors; one exhaustive ball per source point."""
    base = base_marking(S05)
    pts = [(i, j) for i in range(max_depth + 1) for j in range(max_depth + 1)]
    bad, checked = [], 0
    for p in pts:
        r = max(abs(p[0] - q[0]) + abs(p[1] - q[1]) for q in pts)
        B = ball(orthant_point(base, p), r, Caps(twist_cap))
        for q in pts:
            want = abs(p[0] - q[0]) + abs(p[1] - q[1])
            m = orthant_point(base, q)
            got = int(B.dist[B.index[m]]) if m in B.index else None
            checked += 1
            if got != want:
                bad.append((p, q, got, want))
    return {"checked": checked, "violations": bad}


def random_curve(rng, eng, lo=3, hi=15):
    c = eng.seeds[int(rng.integers(0, 5))]
    for _ in range(int(rng.integers(lo, hi + 1))):
        k = int(rng.integers(0, 5))
        c = eng.half_twist(c, eng.seeds[k], 1 if rng.integers(0, 2) else -1)
    return c


def thickness_sweep(n=100, seed=0, R=50):
    eng = moves_for(S05).eng
    rng = np.random.default_rng(seed)
    worst, lengths, bad_q, checked = None, [], 0, 0
    for _ in range(n):
        a, b = random_curve(rng, eng), random_curve(rng, eng)
        path, links = thickness_chain(a, b, R)
        lengths.append(len(path))
        for link in links:
            if validate(link.marking):
                raise AssertionError("invalid link marking")
            lb = witness_lower_bound(link, R)
            worst = lb if worst is None else min(worst, lb)
            # Q(x) and Q(y) against Q(x u y) on every ray marking
            from .regions import witness_ray
            for m in witness_ray(link, R):
                curves = list(m.base) + list(link.curves)
                for i, x in enumerate(curves):
                    for y in curves[i + 1:]:
                        if x == y or eng.intersection(x, y):
                            continue
                        checked += 1
                        bad_q += (in_Q(m, [x]) and in_Q(m, [y])) != in_Q(m, [x, y])
    return {"pairs": n, "min_witness": worst, "max_chain": max(lengths),
            "q_checks": checked, "q_failures": bad_q}


def projection_lipschitz(n=300, seed=0):
    """Largest diam of project(a) u project(b) in the Farey graph of the
    four-holed side of a seed curve, over disjoint a, b cutting it."""
    eng = moves_for(S05).eng
    rng = np.random.default_rng(seed)
    worst, done = 0, 0
    while done < n:
        k = int(rng.integers(0, 5))
        # a disjoint partner: a seed pants curve moved along with a
        word = [(int(rng.integers(0, 5)), 1 if rng.integers(0, 2) else -1) for _ in range(int(rng.integers(0, 8)))]
        a, b = eng.seeds[k], eng.seeds[(k + 2) % 5]
        for j, s in word:
            a = eng.half_twist(a, eng.seeds[j], s)
            b = eng.half_twist(b, eng.seeds[j], s)
        y = eng.seeds[int(rng.integers(0, 5))]
        if y in (a, b) or not eng.intersection(a, y) or not eng.intersection(b, y):
            continue
        pts = set(eng.slopes(y, a)) | set(eng.slopes(y, b))
        worst = max(worst, max(farey.cc_dist(p, q) for p in pts for q in pts))
        done += 1
    return {"n": done, "max_diameter": worst}


def marking_lipschitz(radius=3):
    """Largest AM(Y) jump of project_augmented across one edge of a ball,
    over the annuli and four-holed pieces of the seed curves."""
    from .horoball import dist_estimate
    from .markings import project_augmented
    from .regions import marking_dist
    B = ball(base_marking(S05), radius)
    eng = moves_for(S05).eng
    ys = [Annulus(c) for c in eng.seeds] + [NonAnnular((c,)) for c in eng.seeds]
    worst = 0
    for i, j in B.edges.tolist():
        u, v = B.vertices[i], B.vertices[j]
        for y in ys:
            pu, pv = project_augmented(u, y), project_augmented(v, y)
            worst = max(worst, dist_estimate(pu, pv) if isinstance(y, Annulus) else marking_dist(pu, pv))
    return {"radius": radius, "edges": int(len(B.edges)), "max_jump": worst}


def geodesic_path(B, i, j):
    from scipy.sparse.csgraph import shortest_path
    _, pred = shortest_path(B.adjacency(), unweighted=True, indices=[i], directed=False,
                            return_predecessors=True)
    path = [j]
    while path[-1] != i:
        path.append(int(pred[0, path[-1]]))
    return [B.vertices[k] for k in reversed(path)]


def large_links(n=100, seed=0, spec=BallSpec(S05, 4)):
    """Largest projection distance over domains missed by the harvest of a
    BFS geodesic, scanning every domain met anywhere in the ball."""
    B = cached_ball(spec)
    geo = Geometry(spec.surface, sorted({b for v in B.vertices for b in v.base}))
    universe = harvest_domains(B.vertices, geo)
    rng = np.random.default_rng(seed)
    worst = 0
    for _ in range(n):
        i, j = (int(x) for x in rng.integers(0, len(B.vertices), size=2))
        path = geodesic_path(B, i, j)
        got = set(harvest_domains(path, geo))
        for y in universe:
            if y not in got:
                worst = max(worst, geo.proj_dist(path[0], path[-1], y))
    return {"n": n, "K1": worst, "domains": len(universe)}


def ball_counts(radius=6):
    B = ball(base_marking(S04), radius)
    return {"radius": radius, "vertices": len(B.vertices), "edges": int(len(B.edges))}


def timed(fn, *a, **k):
    t = time.perf_counter()
    out = fn(*a, **k)
    return out, time.perf_counter() - t
