"""Farey graph: curve complex of the once-punctured torus and the
four-punctured sphere, plus annular twist coordinates."""
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True, order=True)
class Slope:
    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a slope")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        g = math.gcd(p, q)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)

    def __str__(self):
        return f"{self.p}/{self.q}"

    def value(self):
        return math.inf if self.q == 0 else self.p / self.q


INF = Slope(1, 0)


def parse_slope(text):
    if text in ("inf", "oo", "1/0"):
        return INF
    if "/" in text:
        p, q = text.split("/")
        return Slope(int(p), int(q))
    return Slope(int(text), 1)


def det(a, b):
    return a.p * b.q - a.q * b.p


def is_edge(a, b):
    if a == b:
        raise ValueError("loop query")
    return abs(det(a, b)) == 1


def intersection(a, b, punctured_sphere=False):
    """Geometric intersection number: |det| on S_{1,1}, twice that on S_{0,4}."""
    d = abs(det(a, b))
    return 2 * d if punctured_sphere else d


def act(M, s):
    (a, b), (c, d) = M
    return Slope(a * s.p + b * s.q, c * s.p + d * s.q)


def mat_mul(A, B):
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat_inv(M):
    (a, b), (c, d) = M
    dt = a * d - b * c
    if abs(dt) != 1:
        raise ValueError("not unimodular")
    return ((d * dt, -b * dt), (-c * dt, a * dt))


def to_infinity(a):
    """A matrix in SL(2,Z) sending slope a to 1/0."""
    p, q = a.p, a.q
    # find r, s with p*s - q*r = 1
    if q == 0:
        return ((1, 0), (0, 1))
    g, x, y = _egcd(p, q)
    # p*x + q*y = 1  ->  s = x, r = -y
    s, r = x, -y
    return ((s, -r), (-q, p))


def _egcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def cf(p, q):
    """Regular continued fraction of p/q with q > 0."""
    out = []
    while q:
        a = p // q
        out.append(a)
        p, q = q, p - a * q
    return out


def _ladder(p, q):
    """Convergents of p/q (q > 0) preceded by 1/0, and the ladder graph
    joining consecutive convergents plus the shortcuts k-1 -- k+1 when the
    partial quotient a_{k+1} equals 1."""
    a = cf(p, q)
    conv = [(1, 0)]
    h0, k0, h1, k1 = 1, 0, a[0], 1
    conv.append((h1, k1))
    for ai in a[1:]:
        h0, k0, h1, k1 = h1, k1, ai * h1 + h0, ai * k1 + k0
        conv.append((h1, k1))
    n = len(conv)
    adj = [[] for _ in range(n)]
    for i in range(n - 1):
        adj[i].append(i + 1)
        adj[i + 1].append(i)
    for j in range(1, len(a)):
        # conv index j+1 = a_j * conv j + conv j-1
        if a[j] == 1:
            adj[j - 1].append(j + 1)
            adj[j + 1].append(j - 1)
    return conv, adj


def _ladder_bfs(conv, adj):
    n = len(conv)
    prev = [-1] * n
    dist = [-1] * n
    dist[0] = 0
    q = deque([0])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                prev[w] = u
                q.append(w)
    return dist, prev


def cc_dist(a, b):
    if a == b:
        return 0
    M = to_infinity(a)
    c = act(M, b)
    if c.q == 1:
        return 1
    conv, adj = _ladder(c.p, c.q)
    dist, _ = _ladder_bfs(conv, adj)
    return dist[-1]


def geodesic(a, b):
    """A Farey geodesic from a to b as a list of slopes."""
    if a == b:
        return [a]
    M = to_infinity(a)
    Mi = mat_inv(M)
    c = act(M, b)
    if c.q == 1:
        return [a, b]
    conv, adj = _ladder(c.p, c.q)
    dist, prev = _ladder_bfs(conv, adj)
    path = []
    i = len(conv) - 1
    while i >= 0:
        path.append(act(Mi, Slope(*conv[i])))
        i = prev[i]
    return path[::-1]


@lru_cache(maxsize=1 << 16)
def twist_matrix(alpha, k):
    """k-fold Dehn twist about alpha acting on slopes (half twist on S_{0,4})."""
    M = to_infinity(alpha)
    return mat_mul(mat_inv(M), mat_mul(((1, k), (0, 1)), M))


def twist_coordinate(alpha, gamma, beta):
    if gamma == alpha or beta == alpha:
        raise ValueError("slope equals the core")
    M = to_infinity(alpha)
    g, b = act(M, gamma), act(M, beta)
    return g.p // g.q - b.p // b.q


def annular_model_dist(x1, x2):
    """Model metric on the annular complex from twist coordinates.

    Equal coordinates are at distance 0; otherwise one plus the number of
    integers strictly between them.
    """
    if x1 == x2:
        return 0
    return abs(x1 - x2)


def annular_cover_dist(alpha, g1, g2):
    """Arc distance in the annular cover of alpha, from real positions.

    After sending alpha to 1/0 each slope lifts to a line ending at its
    real value; two arcs differ by one plus the lifts of alpha they must
    cross, i.e. the integers strictly between the two values.
    """
    from fractions import Fraction
    if alpha in (g1, g2):
        raise ValueError("slope equals the core")
    M = to_infinity(alpha)
    a, b = sorted(Fraction(s.p, s.q) for s in (act(M, g1), act(M, g2)))
    if a == b:
        return 0
    between = math.ceil(b) - math.floor(a) - 1
    return 1 + between


# ---------------------------------------------------------------- oracle

@lru_cache(maxsize=4)
def box_graph(N):
    """Farey graph on all slopes with |p|, q <= N, as CSR arrays.

    Every slope with q >= 2 has exactly two neighbours of smaller
    denominator (its Farey parents); integers join their successors and 1/0.
    """
    import numpy as np
    from scipy.sparse import csr_matrix

    index = {(1, 0): 0}
    for q in range(1, N + 1):
        for p in range(-N, N + 1):
            if math.gcd(p, q) == 1:
                index[(p, q)] = len(index)
    rows, cols = [], []
    for (p, q), i in index.items():
        if q == 0:
            continue
        if q == 1:
            rows.append(i)
            cols.append(0)
            if (p + 1, 1) in index:
                rows.append(i)
                cols.append(index[(p + 1, 1)])
            continue
        # parent r/s with p*s - q*r = 1, 0 < s < q
        s = pow(p % q, -1, q)
        r = (p * s - 1) // q
        for par in ((r, s), (p - r, q - s)):
            j = index.get(par)
            if j is not None:
                rows.append(i)
                cols.append(j)
    n = len(index)
    A = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    return index, (A + A.T).tocsr()


def bfs_dist_oracle(a, b, N):
    from scipy.sparse.csgraph import breadth_first_order

    index, A = box_graph(N)
    _, pred = breadth_first_order(A, index[(a.p, a.q)], directed=False)
    i, src, d = index[(b.p, b.q)], index[(a.p, a.q)], 0
    while i != src:
        i = pred[i]
        d += 1
    return d
