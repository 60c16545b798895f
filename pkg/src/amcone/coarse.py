"""Projection distances, threshold sums and the coarse-geometry checks."""
from dataclasses import dataclass, field

import numpy as np

from . import farey
from .horoball import HoroballVertex, dist_estimate
from .markings import curve_proj, moves_for, project_augmented, twist_of
from .surface import S05, Annulus, NonAnnular, interlocks


def threshold(x, K):
    return x if x > K else 0


@dataclass
class ThresholdSum:
    K: int
    contributions: list = field(default_factory=list)

    @property
    def total(self):
        return sum(v for _, v in self.contributions)

    def add(self, y, v):
        if v > self.K:
            self.contributions.append((y, v))


# ------------------------------------------------------------------ C(S)

class CurveGraph:
    """Distances in the curve graph of S_{0,5} among a finite pool.

    0, 1 and 2 are exact (equal, disjoint, not filling); filling pairs are
    at least 3 and are given the larger of 3 and the pool distance."""

    def __init__(self, eng, pool=()):
        self.eng = eng
        self.pool = list(dict.fromkeys(pool))
        self._d = {}
        self._pool_dist = None

    def _pool(self):
        if self._pool_dist is None:
            from scipy.sparse import csr_matrix
            from scipy.sparse.csgraph import shortest_path
            n = len(self.pool)
            rows, cols = [], []
            for i in range(n):
                for j in range(i + 1, n):
                    if self.eng.intersection(self.pool[i], self.pool[j]) == 0:
                        rows.append(i)
                        cols.append(j)
            A = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
            self._pool_dist = shortest_path(A, unweighted=True, directed=False)
            self._where = {c: i for i, c in enumerate(self.pool)}
        return self._pool_dist

    def dist(self, a, b):
        if a == b:
            return 0
        key = (a, b) if a < b else (b, a)
        if key in self._d:
            return self._d[key]
        eng = self.eng
        if eng.intersection(a, b) == 0:
            d = 1
        elif not eng.fill(a, b):
            d = 2
        else:
            d = 3
            if a in self.pool and b in self.pool:
                pd = self._pool()[self._where[a], self._where[b]]
                if np.isfinite(pd):
                    d = max(3, int(pd))
        self._d[key] = d
        return d


def _diam(points, dist):
    pts = list(points)
    return max((dist(p, q) for i, p in enumerate(pts) for q in pts[i + 1:]), default=0)


# ------------------------------------------------------------------ d_Y

class Geometry:
    """Projection distances for markings of one surface."""

    def __init__(self, surface, pool=()):
        self.surface = surface
        self.mv = moves_for(surface)
        self.cg = CurveGraph(self.mv.eng, pool) if surface == S05 else None

    def whole_dist(self, a, b):
        return self.cg.dist(a, b) if self.cg else farey.cc_dist(a, b)

    def domains_of(self, m):
        ys = [NonAnnular((), 0, self.surface)]
        for b in m.base:
            ys.append(Annulus(b, self.surface))
            if self.surface == S05:
                ys.append(NonAnnular((b,), 0, self.surface))
        return ys

    def proj_dist(self, m1, m2, y, augmented=True):
        if isinstance(y, Annulus) and augmented:
            return dist_estimate(project_augmented(m1, y), project_augmented(m2, y))
        p1, p2 = curve_proj(m1, y), curve_proj(m2, y)
        if not p1 or not p2:
            raise ValueError("empty projection")
        if isinstance(y, Annulus):
            pts = p1 | p2
            return max(pts) - min(pts)
        if y.whole:
            return _diam(p1 | p2, self.whole_dist)
        return _diam(p1 | p2, farey.cc_dist)

    def curve_dist(self, m, c, y):
        """d_Y between base(m) and a single curve c cutting y."""
        p = curve_proj(m, y)
        if isinstance(y, Annulus):
            x = twist_of(y.core, c, self.surface)
            pts = set(p) | {x}
            return max(pts) - min(pts)
        (a,) = y.boundary
        q = set(self.mv.eng.slopes(a, c))
        if not q:
            raise ValueError("curve misses the subsurface")
        return _diam(set(p) | q, farey.cc_dist)


def harvest_domains(path, geo=None):
    """Annuli about base curves met along a path and the non-pants pieces
    cut off by them; the whole surface first."""
    if not path:
        raise ValueError("empty path")
    geo = geo or Geometry(path[0].surface)
    seen = {}
    for m in path:
        for y in geo.domains_of(m):
            seen.setdefault(y, None)
    return list(seen)


def distance_formula(m1, m2, K, domains=None, geo=None, kprime=0):
    """Threshold sums with horoball terms (am) and twist terms (m)."""
    if K <= kprime:
        raise ValueError("threshold below the minimal one")
    geo = geo or Geometry(m1.surface)
    if domains is None:
        domains = harvest_domains([m1, m2], geo)
    am, mk = ThresholdSum(K), ThresholdSum(K)
    for y in domains:
        d = geo.proj_dist(m1, m2, y, augmented=True)
        am.add(y, d)
        mk.add(y, geo.proj_dist(m1, m2, y, augmented=False) if isinstance(y, Annulus) else d)
    return {"am": am, "m": mk}


# ------------------------------------------------------------------ balls

class BallFormula:
    """All-pairs formula totals over a generated ball.

    Vertices are grouped per domain by their projection; each domain
    contributes a small group-by-group table."""

    def __init__(self, B, geo=None):
        self.B = B
        vs = B.vertices
        if geo is None:
            pool = sorted({b for v in vs for b in v.base})
            geo = Geometry(vs[0].surface, pool)
        self.geo = geo
        self.domains = harvest_domains(vs, geo)
        self.parts = []
        for y in self.domains:
            self.parts.append((y,) + self._tables(y))

    def _tables(self, y):
        geo = self.geo
        keys, gid = {}, []
        for v in self.B.vertices:
            if isinstance(y, Annulus):
                k = (project_augmented(v, y), curve_proj(v, y))
            else:
                k = curve_proj(v, y)
            gid.append(keys.setdefault(k, len(keys)))
        ks = list(keys)
        if isinstance(y, Annulus):
            x = np.array([h.x for h, _ in ks])
            m = np.array([h.m for h, _ in ks])
            am = horo_table(x, m)
            lo = np.array([min(t) for _, t in ks])
            hi = np.array([max(t) for _, t in ks])
            mk = np.maximum(hi[:, None], hi[None, :]) - np.minimum(lo[:, None], lo[None, :])
        else:
            dist = geo.whole_dist if y.whole else farey.cc_dist
            n = len(ks)
            am = np.zeros((n, n), dtype=np.int32)
            for i in range(n):
                am[i, i] = _diam(ks[i], dist)
                for j in range(i + 1, n):
                    am[i, j] = am[j, i] = _diam(ks[i] | ks[j], dist)
            mk = am
        return np.array(gid, dtype=np.int64), am.astype(np.int32), mk.astype(np.int32)

    def totals(self, rows, K, variant="am"):
        rows = np.asarray(rows)
        out = np.zeros((len(rows), len(self.B.vertices)), dtype=np.int16)
        for y, gid, am, mk in self.parts:
            T = am if variant == "am" else mk
            T = np.where(T > K, T, 0).astype(np.int16)
            live = T.max(axis=1) > 0
            if not live.any():
                continue
            r = np.flatnonzero(live[gid[rows]])
            if r.size == 0:
                continue
            out[r] += T[gid[rows[r]]][:, gid]
        return out


def horo_table(x, m):
    """dist_estimate between all pairs of horoball points (vectorized)."""
    dx = np.abs(x[:, None] - x[None, :])
    lo = np.maximum(m[:, None], m[None, :])
    top = int(lo.max()) + int(np.ceil(np.log2(max(1, int(dx.max()))))) + 2
    best = None
    for k in range(top + 1):
        c = (2 * k - m[:, None] - m[None, :]) + -(-dx // (2 ** k))
        c = np.where(k >= lo, c, np.iinfo(np.int64).max)
        best = c if best is None else np.minimum(best, c)
    return best


def fit_two_sided(pairs, kgrid=None):
    """Smallest (K_qi, C_qi) with d <= K f + C and f <= K d + C for all
    (d, f) pairs; minimizes K + C on a grid."""
    if kgrid is None:
        kgrid = np.round(np.arange(1.0, 6.0001, 0.05), 2)
    p = np.asarray(list(pairs), dtype=np.float64).reshape(-1, 2)
    d, f = p[:, 0], p[:, 1]
    best = None
    for k in kgrid:
        c = max(0.0, float(np.max(d - k * f)), float(np.max(f - k * d)))
        if best is None or k + c < best[0] + best[1] - 1e-12:
            best = (float(k), c)
    return {"K_qi": best[0], "C_qi": best[1]}


def check_two_sided(pairs, K_qi, C_qi):
    """Largest violation of the two-sided bound (<= 0 means it holds)."""
    p = np.asarray(list(pairs), dtype=np.float64).reshape(-1, 2)
    d, f = p[:, 0], p[:, 1]
    return float(max(np.max(d - K_qi * f - C_qi), np.max(f - K_qi * d - C_qi)))


def ball_pairs(B, formula, K, chunk=512, variant="am"):
    """Distinct (BFS distance, formula total) pairs over all vertex pairs
    of a ball, with multiplicities."""
    from collections import Counter
    from scipy.sparse.csgraph import shortest_path
    n = len(B.vertices)
    A = B.adjacency()
    seen = Counter()
    for s in range(0, n, chunk):
        rows = np.arange(s, min(n, s + chunk))
        d = shortest_path(A, unweighted=True, indices=rows, directed=False).astype(np.int64)
        f = formula.totals(rows, K, variant).astype(np.int64)
        code = d.ravel() * 100_000 + f.ravel()
        u, c = np.unique(code, return_counts=True)
        for a, b in zip(u.tolist(), c.tolist()):
            seen[(a // 100_000, a % 100_000)] += b
    return seen


# ------------------------------------------------------------------ checks

def behrstock_min(m, y, z, geo=None):
    geo = geo or Geometry(m.surface)
    inter = geo.mv.inter
    if not interlocks(y, z, inter):
        raise ValueError("subsurfaces do not interlock")
    bz = z.core if isinstance(z, Annulus) else z.boundary[0]
    by = y.core if isinstance(y, Annulus) else y.boundary[0]
    return min(geo.curve_dist(m, bz, y), geo.curve_dist(m, by, z))


def bgit_check(geodesic, alpha, horoball=False):
    """Diameter of the annular projection of a Farey geodesic avoiding the
    star of alpha (twist coordinates, or horoball points at depth 0)."""
    g = list(geodesic)
    for a, b in zip(g, g[1:]):
        if not farey.is_edge(a, b):
            raise ValueError("not a path")
    if farey.cc_dist(g[0], g[-1]) != len(g) - 1:
        raise ValueError("not a geodesic")
    if any(v == alpha or farey.is_edge(v, alpha) for v in g):
        raise ValueError("geodesic meets the star of the core")
    ref = farey.act(farey.mat_inv(farey.to_infinity(alpha)), farey.Slope(0, 1))
    xs = [farey.twist_coordinate(alpha, v, ref) for v in g]
    if horoball:
        return dist_estimate(HoroballVertex(min(xs), 0), HoroballVertex(max(xs), 0))
    return max(xs) - min(xs)


def boundary_of(y):
    return (y.core,) if isinstance(y, Annulus) else tuple(y.boundary)


def active_segment(path, y):
    """Indices whose base contains the boundary of y, and connectivity."""
    idx = [i for i, m in enumerate(path) if set(boundary_of(y)) <= set(m.base)]
    connected = not idx or idx[-1] - idx[0] + 1 == len(idx)
    return idx, connected


def endpoint_monotonicity(path, y, geo=None):
    """max_z d_Y(x, z) - d_Y(x, end) along a path from x."""
    geo = geo or Geometry(path[0].surface)
    x, end = path[0], path[-1]
    ds = [geo.proj_dist(x, z, y) for z in path]
    return max(ds) - geo.proj_dist(x, end, y), ds
