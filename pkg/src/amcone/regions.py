"""Product regions, distance to regions, orthants, thickness chains and
finite-scale thick/thin diagnostics."""
from dataclasses import dataclass
from fractions import Fraction

from .coarse import Geometry, ThresholdSum, harvest_domains
from .markings import (AugmentedMarking, elementary_neighbors, marking_with_base, moves_for,
                       project_augmented)
from .surface import S05, Annulus, NonAnnular


def _check_simplex(delta, inter):
    delta = list(delta)
    if len(set(delta)) != len(delta):
        raise ValueError("repeated curve")
    for i, a in enumerate(delta):
        for b in delta[i + 1:]:
            if inter(a, b):
                raise ValueError("not a simplex")
    return delta


def in_Q(m, delta):
    """Every curve of delta is a base curve of m."""
    delta = _check_simplex(delta, moves_for(m.surface).inter)
    return set(delta) <= set(m.base)


def pieces(surface, delta):
    """sigma(delta): annuli of delta and the non-pants complementary pieces."""
    out = [Annulus(a, surface) for a in delta]
    if surface == S05 and len(delta) == 1:
        out.append(NonAnnular((delta[0],), 0, surface))
    return out


def theta(m, delta):
    if not in_Q(m, delta):
        raise ValueError("marking not in the region")
    return tuple(project_augmented(m, y) for y in pieces(m.surface, list(delta)))


def theta_dist(m1, m2, delta, geo=None):
    """Sum over sigma(delta) of the component distances: horoball
    estimates for annuli, exact marking-graph distance on the four-holed
    piece."""
    from .horoball import dist_estimate
    total = 0
    for y, a, b in zip(pieces(m1.surface, list(delta)), theta(m1, delta), theta(m2, delta)):
        total += dist_estimate(a, b) if isinstance(y, Annulus) else marking_dist(a, b)
    return total


_MD = {}


def _normalize(a, b):
    """Move a to the standard base pair; the move graph is equivariant."""
    from . import farey
    (sb, st, _), = a.pairs
    M = farey.to_infinity(sb)
    k = farey.act(M, st).p
    M = farey.mat_mul(((1, -k), (0, 1)), M)
    move = lambda m: AugmentedMarking.make(m.surface, [(farey.act(M, x), farey.act(M, y), d)
                                                       for x, y, d in m.pairs])
    return move(a), move(b)


_NEAR = {}
NEAR_RADIUS = 8


def _near_ball(a):
    from .markings import ball
    if a not in _NEAR:
        _NEAR[a] = ball(a, NEAR_RADIUS)
    return _NEAR[a]


def marking_dist(a, b, limit=40):
    """Exact distance in the move graph of a complexity-one surface, by
    bidirectional search."""
    if a == b:
        return 0
    a, b = _normalize(a, b)
    key = (a, b)
    if key in _MD:
        return _MD[key]
    near = _near_ball(a)
    if b in near.index:
        _MD[key] = int(near.dist[near.index[b]])
        return _MD[key]
    fronts = [{a: 0}, {b: 0}]
    layers = [[a], [b]]
    for step in range(limit):
        side = 0 if len(layers[0]) <= len(layers[1]) else 1
        nxt = []
        for u in layers[side]:
            for _, v in elementary_neighbors(u):
                if v in fronts[side]:
                    continue
                fronts[side][v] = fronts[side][u] + 1
                if v in fronts[1 - side]:
                    d = fronts[side][v] + fronts[1 - side][v]
                    _MD[key] = d
                    return d
                nxt.append(v)
        layers[side] = nxt
    raise RuntimeError("markings too far apart")


def crosses(y, delta, inter):
    core = y.core if isinstance(y, Annulus) else (y.boundary[0] if y.boundary else None)
    if core is None:
        return []
    return [d for d in delta if inter(core, d) > 0]


def rho_dist(m, delta, K, domains=None, geo=None, kprime=0):
    """Threshold sum of d_Y(m, delta) over domains cut by delta."""
    delta = list(delta)
    if not delta:
        raise ValueError("empty multicurve")
    if K <= kprime:
        raise ValueError("threshold below the minimal one")
    geo = geo or Geometry(m.surface)
    inter = geo.mv.inter
    _check_simplex(delta, inter)
    if domains is None:
        domains = harvest_domains([m], geo)
    out = ThresholdSum(K)
    for y in domains:
        cut = crosses(y, delta, inter)
        if cut:
            out.add(y, max(geo.curve_dist(m, d, y) for d in cut))
    return out


def orthant_point(base, depths):
    if any(d != 0 for d in base.depths):
        raise ValueError("base must have zero depths")
    if len(depths) != len(base.pairs):
        raise ValueError("one depth per base curve")
    if any(d < 0 for d in depths):
        raise ValueError("negative depth")
    return base.with_depths(tuple(depths))


# ------------------------------------------------------------------ thickness

def curve_path(alpha, beta, limit=50):
    """A path of pairwise-disjoint consecutive curves from alpha to beta,
    built by repeated arc surgery of beta along the current curve."""
    eng = moves_for(S05).eng
    path = [alpha]
    while path[-1] != beta:
        g = path[-1]
        if eng.intersection(g, beta) == 0:
            path.append(beta)
            break
        if len(path) > limit:
            raise RuntimeError("no path within budget")
        cands = eng.slopes(g, beta).values()
        path.append(min(cands, key=lambda c: (eng.intersection(c, beta), c)))
    return path


@dataclass
class Link:
    curves: tuple
    marking: AugmentedMarking
    diameter: int


def thickness_chain(alpha, beta, R):
    """Curves alpha = g_1, ..., g_k = beta with, per consecutive pair, a
    vertical ray of length R inside Q(g_i) and Q(g_i+1) (diameter R by the
    l1 law for depths)."""
    if R < 0:
        raise ValueError("negative diameter")
    path = curve_path(alpha, beta)
    links = []
    if len(path) == 1:
        m = marking_with_base([alpha])
        links.append(Link((alpha,), m, R))
        return path, links
    for a, b in zip(path, path[1:]):
        m = marking_with_base([a, b])
        links.append(Link((a, b), m, R))
    return path, links


def witness_ray(link, R):
    m = link.marking
    j = m.base.index(link.curves[0])
    return [m.with_depths(tuple(k if i == j else 0 for i in range(len(m.pairs)))) for k in range(R + 1)]


def witness_lower_bound(link, R):
    """Certified distance between the ends of the witness ray.

    Depth at a fixed curve moves by at most one per elementary move (a
    flip needs every depth zero and creates depth zero), so the depth gap
    bounds distance from below; the ray itself bounds it from above."""
    ray = witness_ray(link, R)
    for u, v in zip(ray, ray[1:]):
        if v not in {x for _, x in elementary_neighbors(u)}:
            raise AssertionError("ray step is not a move")
    for m in ray:
        if not all(in_Q(m, [c]) for c in link.curves):
            raise AssertionError("ray leaves the region")
    c = link.curves[0]
    lower = abs(ray[-1].D(c) - ray[0].D(c))
    if lower != len(ray) - 1:
        raise AssertionError("bounds do not meet")
    return lower


# ------------------------------------------------------------------ cones

def classify_sequence(ms, s, tau=Fraction(1)):
    """Finite-scale thick/thin verdict.

    A base-curve track escapes when D/s_n >= tau on the final third of the
    indices and the ratio never drops there."""
    if len(ms) != len(s):
        raise ValueError("length mismatch")
    if tau <= 0:
        raise ValueError("tau must be positive")
    if any(b <= a for a, b in zip(s, s[1:])) or min(s) <= 0:
        raise ValueError("scaling must be positive and increasing")
    n = len(ms)
    tail = range(n - max(1, n // 3), n)
    escaping = []
    for c in dict.fromkeys(c for i in tail for c in ms[i].base):
        if not all(c in ms[i].base for i in tail):
            continue
        r = [Fraction(ms[i].D(c), s[i]) for i in tail]
        if min(r) >= tau and all(y >= x for x, y in zip(r, r[1:])):
            escaping.append(c)
    A = len(escaping)
    comps = {
        "delta": escaping,
        "pieces": [y for y in pieces(ms[0].surface, escaping) if not isinstance(y, Annulus)],
        "tracks": [(c, [ms[i].D(c) for i in range(n)]) for c in escaping],
    }
    return {"A": A, "verdict": "thick" if A == 0 else "thin", "components": comps}


def sublinear_profile(xs, mus, s, geo=None):
    """max over harvested proper domains of d_Y(x_n, mu_n) / s_n."""
    if not (len(xs) == len(mus) == len(s)):
        raise ValueError("length mismatch")
    geo = geo or Geometry(xs[0].surface)
    out = []
    for x, m, sn in zip(xs, mus, s):
        ys = [y for y in harvest_domains([x, m], geo) if isinstance(y, Annulus) or not y.whole]
        out.append(max((geo.proj_dist(x, m, y) for y in ys), default=0) / sn)
    return out
