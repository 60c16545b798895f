"""Curves on punctured spheres in normal coordinates.

A curve system is a tuple of nonnegative integers, one per edge of the
bundled triangulation. Lamination arithmetic (applying mapping classes,
shortening) is delegated to curver; intersection numbers, projections
and twist readings are computed here from dual paths (see `tracing` and
`spine`), with curver's own routines kept as oracles.
"""
import math
from functools import lru_cache

import curver

from . import tracing
from .spine import SpineChart, weights_of
from .surface import S04, S05, Annulus


class Chart:
    """Everything needed to measure relative to one curve alpha."""

    def __init__(self, eng, alpha):
        short, conj = eng.promoted(alpha).shorten()
        Tp = conj.target_triangulation
        vl = Tp.vertex_lookup
        f = next(e for e in range(Tp.zeta)
                 if vl[e] != vl[~e] and tuple(Tp.edge_curve(e)) == tuple(short))
        tri = tracing.Triangulation([t.labels for t in Tp])
        # a cut edge folded into one triangle: flip the loop beside it
        while tri.home[f][0] == tri.home[~f][0]:
            x = next(l for l in Tp.triangles[tri.home[f][0]].labels if l not in (f, ~f))
            flip = Tp.encode_flip(x)
            conj = flip * conj
            Tp = flip.target_triangulation
            tri = tracing.Triangulation([t.labels for t in Tp])
        self.alpha = alpha
        self.conj = conj
        self.unconj = conj.inverse()
        self.tri = tri
        arc = Tp.edge_arc(f)
        self.half = {s: (self.unconj * arc.encode_halftwist(s) * conj) for s in (1, -1)}
        self.spine = SpineChart(tri, f) if eng.n == 5 else None
        self.Tp = Tp

    def path(self, eng, gamma):
        comps = self.tri.trace(list(self.conj(eng.lam(gamma))))
        if len(comps) != 1:
            raise ValueError("not a connected curve")
        return comps[0]


class Engine:
    """Curve arithmetic on the bundled triangulation of S_{0,n}."""

    def __init__(self, n=5):
        if n not in (4, 5):
            raise ValueError("only S_{0,4} and S_{0,5} are bundled")
        self.n = n
        self.surface = S05 if n == 5 else S04
        self.S = curver.load(0, n)
        self.T = self.S.triangulation
        self.tri = tracing.Triangulation([t.labels for t in self.T])
        self.zeta = self.T.zeta
        self.seeds = [tuple(self.S.arcs[f"s_{k}"].boundary()) for k in range(n)]
        self._lam = {}
        self._chart = {}
        self._memo = {}
        self._vertex_tree()

    # ------------------------------------------------------------ basics
    def lam(self, c):
        x = self._lam.get(c)
        if x is None:
            x = self._lam[c] = self.T.lamination(list(c), promote=False)
        return x

    def promoted(self, c):
        """The lamination with its curve-specific methods."""
        k = ("c", c)
        if k not in self._memo:
            self._memo[k] = self.T.lamination(list(c))
        return self._memo[k]

    def key(self, lam):
        return tuple(lam)

    def chart(self, alpha):
        ch = self._chart.get(alpha)
        if ch is None:
            ch = self._chart[alpha] = Chart(self, alpha)
        return ch

    def is_curve(self, c):
        if not self.tri.check_normal(c) or not any(c):
            return False
        lam = self.promoted(c)
        return isinstance(lam, curver.kernel.Curve) and lam.is_non_peripheral()

    def _cached(self, tag, a, b, fn):
        k = (tag, a, b)
        if k not in self._memo:
            self._memo[k] = fn(a, b)
        return self._memo[k]

    def intersection(self, a, b):
        """Geometric intersection number by strand tracing."""
        if b < a:
            a, b = b, a
        return self._cached("i", a, b, self.intersection_traced)

    def intersection_traced(self, a, b):
        return tracing.intersection(self.tri, list(a), list(b))

    def intersection_oracle(self, a, b):
        """curver's count, kept as an independent check."""
        return self.promoted(a).intersection(self.lam(b))

    # ------------------------------------------------------------ twists
    def half_twist(self, gamma, about, k):
        """H_about^k (gamma); `about` must cut off two punctures."""
        if k == 0:
            return gamma
        h = self.chart(about).half[1 if k > 0 else -1]
        x = self.lam(gamma)
        for _ in range(abs(k)):
            x = h(x)
        out = tuple(x)
        self._lam.setdefault(out, x)
        return out

    def dehn_twist(self, gamma, about, k):
        return self.half_twist(gamma, about, 2 * k)

    # ------------------------------------------------------------ sides
    def _vertex_tree(self):
        vl = self.T.vertex_lookup
        names = sorted({vl[e] for e in range(self.zeta)} | {vl[~e] for e in range(self.zeta)},
                       key=lambda v: min(v))
        self.punctures = {v: i for i, v in enumerate(names)}
        # spanning tree: path of edges from each puncture to puncture 0
        route = {names[0]: []}
        changed = True
        while changed:
            changed = False
            for e in range(self.zeta):
                a, b = vl[e], vl[~e]
                for u, v in ((a, b), (b, a)):
                    if u in route and v not in route:
                        route[v] = route[u] + [e]
                        changed = True
        self.route = {self.punctures[v]: r for v, r in route.items()}

    def side(self, c):
        """Punctures on the side of c not containing puncture 0."""
        return frozenset(p for p, r in self.route.items() if sum(c[e] for e in r) % 2)

    def small_side(self, c):
        s = self.side(c)
        return s if 2 * len(s) < self.n else frozenset(range(self.n)) - s

    # ------------------------------------------------------------ projection
    def slopes(self, alpha, gamma):
        """Farey slopes of the surgered arcs of gamma in the four-holed side
        of alpha, as a dict slope -> curve. Empty when disjoint."""
        return dict(self._cached("p", alpha, gamma, self._slopes))

    def _slopes(self, alpha, gamma):
        if self.n != 5:
            raise ValueError("subsurface projection needs S_{0,5}")
        if gamma == alpha:
            return {}
        ch = self.chart(alpha)
        P = ch.path(self, gamma)
        sp = ch.spine
        if not any(x in sp.removed for x in P):
            # disjoint from alpha, hence a curve of the four-holed side
            return {sp.slope(P): gamma}
        out = {}
        for s, p in sp.project(P).items():
            w = weights_of(p, self.zeta)
            out[s] = tuple(ch.unconj(ch.Tp.lamination(list(w), promote=False)))
        return out

    def fill(self, a, b):
        """Whether two curves of S_{0,5} fill: no curve misses both.

        A curve missing both is the surgery of b along a, so it suffices
        to test the surgery curves."""
        if a == b or self.intersection(a, b) == 0:
            return False
        return all(self.intersection(g, b) for g in self.slopes(a, b).values())

    def twist_reading(self, alpha, gamma):
        """Signed fellow-travel of gamma along alpha, in half-twist units.

        Shifts by one per half twist about alpha; None when disjoint."""
        ch = self.chart(alpha)
        if ch.spine is None:
            raise ValueError("twist reading needs S_{0,5}")
        P = ch.path(self, gamma)
        cr = ch.spine.crossings(P)
        if not cr:
            return None
        tot = sum(-k if s else k for k, _, s in cr)
        return tot / len(cr) / (len(ch.spine.loop) / 2)

    def twist(self, alpha, gamma):
        r = self._cached("t", alpha, gamma, self.twist_reading)
        return None if r is None else math.floor(r)

    def twist_oracle(self, alpha, gamma):
        """curver's slope of gamma about alpha, in half-twist units."""
        return 2 * self.promoted(alpha).slope(self.lam(gamma))

    def project(self, gamma, y):
        """Projection to a subsurface: set of curves, a twist integer or None."""
        if isinstance(y, Annulus):
            if self.intersection(gamma, y.core) == 0:
                return None
            return self.twist(y.core, gamma)
        if y.whole:
            return frozenset([gamma])
        (alpha,) = y.boundary
        sl = self.slopes(alpha, gamma)
        return frozenset(sl.values()) or None


@lru_cache(maxsize=None)
def engine(n=5):
    return Engine(n)
