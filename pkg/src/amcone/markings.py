"""Clean augmented markings, elementary moves and generated balls.

A marking is stored as a sorted tuple of (base, transversal, depth)
triples. On the complexity-one surfaces curves are Farey slopes; on
S_{0,5} they are normal-coordinate tuples handled by `curves.Engine`.
"""
import json
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import farey
from .farey import Slope
from .horoball import HoroballVertex
from .surface import S04, S05, Annulus, parse_surface


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Caps:
    twist: int = 8


@dataclass(frozen=True, order=True)
class AugmentedMarking:
    surface: object
    pairs: tuple

    @classmethod
    def make(cls, surface, pairs):
        return cls(surface, tuple(sorted((b, t, int(d)) for b, t, d in pairs)))

    @property
    def base(self):
        return tuple(b for b, _, _ in self.pairs)

    def transversal(self, b):
        return next(t for bb, t, _ in self.pairs if bb == b)

    def D(self, c):
        for b, _, d in self.pairs:
            if b == c:
                return d
        return 0

    @property
    def depths(self):
        return tuple(d for _, _, d in self.pairs)

    def with_depths(self, depths):
        return AugmentedMarking(self.surface, tuple((b, t, d) for (b, t, _), d in zip(self.pairs, depths)))

    def to_json(self):
        return {"surface": str(self.surface), "pairs": [
            [_enc(b), _enc(t), d] for b, t, d in self.pairs]}

    @classmethod
    def from_json(cls, obj):
        s = parse_surface(obj["surface"])
        return cls.make(s, [(_dec(b), _dec(t), d) for b, t, d in obj["pairs"]])


def _enc(c):
    return [c.p, c.q] if isinstance(c, Slope) else list(c)


def _dec(x):
    return Slope(*x) if len(x) == 2 else tuple(x)


def twist_powers(depth, cap):
    top = max(1, math.ceil(math.exp(depth)) - 1)
    return range(1, min(cap, top) + 1)


# ------------------------------------------------------------------ surfaces

class FareyMoves:
    """Moves on markings of S_{1,1} or S_{0,4}: one pair (slope, slope)."""

    def __init__(self, surface):
        self.surface = surface

    def base_marking(self):
        return AugmentedMarking.make(self.surface, [(farey.INF, Slope(0, 1), 0)])

    def inter(self, a, b):
        return farey.intersection(a, b, self.surface == S04)

    def twist(self, t, b, k):
        return farey.act(farey.twist_matrix(b, k), t)

    def validate(self, m):
        out = []
        if len(m.pairs) != 1:
            out.append("base is not a pants decomposition")
            return out
        (b, t, d), = m.pairs
        if b == t or not farey.is_edge(b, t):
            out.append("transversal not at distance one")
        if d < 0:
            out.append("negative depth")
        return out

    def flips(self, m):
        (b, t, d), = m.pairs
        return [AugmentedMarking.make(m.surface, [(t, b, 0)])]


class SphereMoves:
    """Moves on markings of S_{0,5}: two disjoint base curves."""

    def __init__(self, eng=None):
        from .curves import engine
        self.eng = eng or engine(5)
        self.surface = S05
        self._orbit = {}

    def base_marking(self):
        c = self.eng.seeds
        return AugmentedMarking.make(S05, [(c[0], c[1], 0), (c[3], c[2], 0)])

    def inter(self, a, b):
        return self.eng.intersection(a, b)

    def twist(self, t, b, k):
        """H_b^k(t) with memoised orbits."""
        if k == 0:
            return t
        s = 1 if k > 0 else -1
        orb = self._orbit.setdefault((t, b, s), [t])
        while len(orb) <= abs(k):
            orb.append(self.eng.half_twist(orb[-1], b, s))
        return orb[abs(k)]

    def validate(self, m):
        out = []
        if len(m.pairs) != 2:
            return ["base is not a pants decomposition"]
        (b0, t0, d0), (b1, t1, d1) = m.pairs
        for c in (b0, t0, b1, t1):
            if not self.eng.is_curve(c):
                out.append("not an essential curve")
        if out:
            return out
        if b0 == b1 or self.inter(b0, b1):
            out.append("base curves not disjoint")
        if self.inter(t0, b0) != 2 or self.inter(t1, b1) != 2:
            out.append("transversal not at distance one")
        if self.inter(t0, b1) or self.inter(t1, b0):
            out.append("not clean")
        if min(d0, d1) < 0:
            out.append("negative depth")
        return out

    def flips(self, m):
        """Flip each pair, then clean the other transversal.

        The replacement transversal for the untouched base curve b is
        H_b^-1 H_t^-1 H_a (s) for the flipped pair (a, s) and old pair
        (b, t): a curve meeting b twice and missing s, chosen so that the
        rule commutes with the mapping class group and with twisting."""
        out = []
        for j in (0, 1):
            a, s, _ = m.pairs[j]
            b, t, _ = m.pairs[1 - j]
            x = self.twist(s, a, 1)
            x = self.twist(x, t, -1)
            x = self.twist(x, b, -1)
            out.append(AugmentedMarking.make(S05, [(s, a, 0), (b, x, 0)]))
        return out


_MOVES = {}


def moves_for(surface):
    if surface not in _MOVES:
        _MOVES[surface] = SphereMoves() if surface == S05 else FareyMoves(surface)
    return _MOVES[surface]


def base_marking(surface):
    return moves_for(surface).base_marking()


def validate(m):
    """List of violated invariants (empty when clean)."""
    return moves_for(m.surface).validate(m)


def elementary_neighbors(m, caps=Caps()):
    """[(move, marking)] for every flip, twist and vertical move.

    A flip needs every depth to vanish."""
    mv = moves_for(m.surface)
    out = []
    if all(d == 0 for d in m.depths):
        out += [(("flip", j), x) for j, x in enumerate(mv.flips(m))]
    for j, (b, t, d) in enumerate(m.pairs):
        rest = [p for i, p in enumerate(m.pairs) if i != j]
        for n in twist_powers(d, caps.twist):
            for s in (1, -1):
                t2 = mv.twist(t, b, s * n)
                out.append((("twist", j, s * n), AugmentedMarking.make(m.surface, rest + [(b, t2, d)])))
        for s in (1, -1):
            if d + s >= 0:
                out.append((("vertical", j, s), AugmentedMarking.make(m.surface, rest + [(b, t, d + s)])))
    return out


@dataclass
class BallGraph:
    center: AugmentedMarking
    radius: int
    vertices: list
    index: dict
    edges: np.ndarray
    dist: np.ndarray
    caps: Caps = field(default_factory=Caps)

    def adjacency(self):
        from scipy.sparse import csr_matrix
        n = len(self.vertices)
        e = self.edges
        A = csr_matrix((np.ones(len(e), dtype=np.int8), (e[:, 0], e[:, 1])), shape=(n, n))
        return ((A + A.T) > 0).astype(np.int8).tocsr()

    def distances_from(self, sources):
        from scipy.sparse.csgraph import shortest_path
        d = shortest_path(self.adjacency(), unweighted=True, indices=sources, directed=False)
        return d.astype(np.int32)

    def to_json(self):
        return {"schema": 1, "radius": self.radius, "caps": {"twist": self.caps.twist},
                "center": self.center.to_json(),
                "vertices": [v.to_json() for v in self.vertices],
                "edges": self.edges.tolist(), "dist": self.dist.tolist()}

    @classmethod
    def from_json(cls, obj):
        vs = [AugmentedMarking.from_json(v) for v in obj["vertices"]]
        return cls(AugmentedMarking.from_json(obj["center"]), obj["radius"], vs,
                   {v: i for i, v in enumerate(vs)}, np.array(obj["edges"], dtype=np.int64).reshape(-1, 2),
                   np.array(obj["dist"], dtype=np.int64), Caps(**obj.get("caps", {})))

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)


def ball(m, radius, caps=Caps(), budget=200_000):
    """Exhaustive ball in the move graph, vertices in canonical order."""
    seen = {m: 0}
    q = deque([m])
    edges = set()
    while q:
        u = q.popleft()
        d = seen[u]
        if d == radius:
            continue
        for _, v in elementary_neighbors(u, caps):
            if v not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded(f"ball exceeds {budget} vertices")
                seen[v] = d + 1
                q.append(v)
            edges.add((u, v))
    order = sorted(seen, key=_sort_key)
    index = {v: i for i, v in enumerate(order)}
    e = {tuple(sorted((index[u], index[v]))) for u, v in edges if u in index and v in index}
    e = np.array(sorted(e), dtype=np.int64).reshape(-1, 2)
    return BallGraph(m, radius, order, index, e, np.array([seen[v] for v in order]), caps)


def _sort_key(m):
    return json.dumps(m.to_json()["pairs"])


# ------------------------------------------------------------------ projection

def reference(alpha):
    """Stored reference slope for twist coordinates about a slope."""
    return farey.act(farey.mat_inv(farey.to_infinity(alpha)), Slope(0, 1))


def twist_of(alpha, gamma, surface):
    if isinstance(alpha, Slope):
        return farey.twist_coordinate(alpha, gamma, reference(alpha))
    return moves_for(surface).eng.twist(alpha, gamma)


def curve_proj(m, y):
    """Projection of base(m) to y: a frozenset of curves (or slopes in the
    four-holed side for S_{0,5}), or an integer set for an annulus."""
    mv = moves_for(m.surface)
    if isinstance(y, Annulus):
        a = y.core
        if a in m.base:
            return frozenset([twist_of(a, m.transversal(a), m.surface)])
        xs = [twist_of(a, b, m.surface) for b in m.base if mv.inter(a, b)]
        return frozenset(xs)
    if y.whole:
        return frozenset(m.base)
    (a,) = y.boundary
    out = set()
    for b in m.base:
        if b != a:
            out.update(mv.eng.slopes(a, b))
    return frozenset(out)


def project_augmented(m, y):
    """Image in AM(y): a horoball vertex for annuli, a marking otherwise."""
    mv = moves_for(m.surface)
    if isinstance(y, Annulus):
        a = y.core
        if a in m.base:
            return HoroballVertex(twist_of(a, m.transversal(a), m.surface), m.D(a))
        xs = [twist_of(a, c, m.surface) for c in m.base if mv.inter(a, c)]
        if not xs:
            xs = [twist_of(a, c, m.surface) for c in (m.transversal(b) for b in m.base)
                  if mv.inter(a, c)]
        if not xs:
            raise ValueError("empty projection")
        return HoroballVertex(min(xs), 0)
    if y.whole:
        return m
    if m.surface != S05:
        raise ValueError("no proper non-annular subsurfaces")
    (a,) = y.boundary
    eng = mv.eng
    if a in m.base:
        # the other pair lies in y: a unique marking there
        b = next(c for c in m.base if c != a)
        (sb,) = eng.slopes(a, b)
        (st,) = eng.slopes(a, m.transversal(b))
        return AugmentedMarking.make(S04, [(sb, st, m.D(b))])
    # greedy: smallest projected base slope, then a neighbour from the
    # transversals, else the standard neighbour
    cands = []
    for b in m.base:
        for s in eng.slopes(a, b):
            cands.append((_height(s), s, b))
    if not cands:
        raise ValueError("empty projection")
    _, sb, b = min(cands)
    d = m.D(b) if eng.intersection(a, b) == 0 else 0
    nbrs = []
    for c in list(m.base) + [m.transversal(x) for x in m.base]:
        for s in eng.slopes(a, c):
            if s != sb and farey.is_edge(s, sb):
                nbrs.append((_height(s), s))
    st = min(nbrs)[1] if nbrs else reference(sb)
    return AugmentedMarking.make(S04, [(sb, st, d)])


def _height(s):
    return (abs(s.p) + abs(s.q), s)


# ------------------------------------------------------------------ completion

class _Reducer:
    """Pull curves on S_{0,5} back to seed position by seed half twists."""

    def __init__(self, mv):
        self.mv = mv
        eng = mv.eng
        self.gens = {(k, s): eng.S.arcs[f"s_{k}"].encode_halftwist(s) for k in range(5) for s in (1, -1)}

    def apply(self, g, c):
        eng = self.mv.eng
        out = tuple(self.gens[g](eng.lam(c)))
        return out

    def reduce(self, curves, done, limit=400):
        """Greedy weight descent with two-step lookahead; returns the word
        applied (first letter first) and the final curves."""
        word = []
        cur = list(curves)
        weight = lambda cs: sum(sum(c) for c in cs)
        while not done(cur):
            if len(word) > limit:
                raise RuntimeError("reduction did not reach seed position")
            w0 = weight(cur)
            step = min((weight([self.apply(g, c) for c in cur]), g) for g in self.gens)
            if step[0] < w0:
                word.append(step[1])
                cur = [self.apply(step[1], c) for c in cur]
                continue
            best = None
            for g1 in self.gens:
                c1 = [self.apply(g1, c) for c in cur]
                for g2 in self.gens:
                    w = weight([self.apply(g2, c) for c in c1])
                    if best is None or w < best[0]:
                        best = (w, g1, g2)
            if best[0] >= w0:
                raise RuntimeError("reduction stuck")
            word += [best[1], best[2]]
            cur = [self.apply(best[2], self.apply(best[1], c)) for c in cur]
        return word, cur

    def pull_back(self, word, c):
        for k, s in reversed(word):
            c = self.apply((k, -s), c)
        return c


def _standard(mv, k):
    c = mv.eng.seeds
    return [(c[k % 5], c[(k + 1) % 5]), (c[(k + 3) % 5], c[(k + 2) % 5])]


def marking_with_base(curves, depths=None):
    """A clean marking of S_{0,5} whose base contains the given curve or
    disjoint pair."""
    mv = moves_for(S05)
    red = getattr(mv, "_reducer", None) or _Reducer(mv)
    mv._reducer = red
    seeds = mv.eng.seeds
    curves = list(curves)
    if len(curves) == 1:
        word, cur = red.reduce(curves, lambda cs: cs[0] in seeds)
        k = seeds.index(cur[0])
    elif len(curves) == 2:
        if curves[0] == curves[1] or mv.inter(*curves):
            raise ValueError("base curves must be distinct and disjoint")
        pairs = {frozenset((seeds[j], seeds[(j + 2) % 5])): (j + 2) % 5 for j in range(5)}
        word, cur = red.reduce(curves, lambda cs: frozenset(cs) in pairs)
        k = pairs[frozenset(cur)]
    else:
        raise ValueError("a base has at most two curves")
    pairs = [(red.pull_back(word, b), red.pull_back(word, t)) for b, t in _standard(mv, k)]
    d = dict(zip(curves, depths or [0] * len(curves)))
    return AugmentedMarking.make(S05, [(b, t, d.get(b, 0)) for b, t in pairs])
