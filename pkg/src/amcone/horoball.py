"""The combinatorial horoball over the integers.

Vertices are pairs (x, m) with m >= 0. Level m carries horizontal edges
between x and y whenever 0 < |x - y| <= 2**m; vertical edges join
(x, m) and (x, m + 1).
"""
import math
from collections import deque
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, order=True)
class HoroballVertex:
    x: int
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("depth must be nonnegative")

    def __iter__(self):
        return iter((self.x, self.m))

    def __getitem__(self, i):
        return (self.x, self.m)[i]


def neighbors(v, window=None):
    x, m = v
    lo, hi = window if window is not None else (x - 2**m, x + 2**m)
    if lo > hi:
        raise ValueError("empty window")
    out = set()
    w = 2**m
    for y in range(max(lo, x - w), min(hi, x + w) + 1):
        if y != x:
            out.add((y, m))
    if lo <= x <= hi:
        out.add((x, m + 1))
        if m > 0:
            out.add((x, m - 1))
    return out


def bfs_naive(src, xlo, xhi, mmax):
    """Plain BFS inside a window, used as the reference oracle."""
    dist = {tuple(src): 0}
    q = deque([tuple(src)])
    while q:
        v = q.popleft()
        for u in neighbors(v, (xlo, xhi)):
            if u[1] <= mmax and u not in dist:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


def bfs_levels(src, xlo, xhi, mmax):
    """Vectorized BFS; returns an (mmax+1, width) array of distances.

    Each round dilates the frontier horizontally by 2**m on level m
    (a difference-array interval union) and moves it one level up or down.
    """
    width = xhi - xlo + 1
    sx, sm = src
    dist = np.full((mmax + 1, width), -1, dtype=np.int64)
    front = np.zeros((mmax + 1, width), dtype=bool)
    front[sm, sx - xlo] = True
    dist[sm, sx - xlo] = 0
    d = 0
    while front.any():
        d += 1
        reach = np.zeros_like(front)
        reach[1:] |= front[:-1]
        reach[:-1] |= front[1:]
        for m in range(mmax + 1):
            idx = np.flatnonzero(front[m])
            if idx.size == 0:
                continue
            w = 2**m
            diff = np.zeros(width + 1, dtype=np.int64)
            np.add.at(diff, np.clip(idx - w, 0, width), 1)
            np.add.at(diff, np.clip(idx + w + 1, 0, width), -1)
            reach[m] |= np.cumsum(diff[:-1]) > 0
        front = reach & (dist < 0)
        dist[front] = d
    return dist


def window_for(u, v):
    span = abs(u[0] - v[0])
    top = max(u[1], v[1], math.ceil(math.log2(span)) if span > 0 else 0) + 2
    lo, hi = min(u[0], v[0]), max(u[0], v[0])
    return lo - 2 * span - 1, hi + 2 * span + 1, top


def dist_exact(u, v, budget=10**7):
    xlo, xhi, top = window_for(u, v)
    if (xhi - xlo + 1) * (top + 1) > budget:
        raise MemoryError("horoball window exceeds budget")
    table = bfs_levels(u, xlo, xhi, top)
    return int(table[v[1], v[0] - xlo])


def dist_estimate(u, v):
    """Up-across-down length minimized over the peak level."""
    dx = abs(u[0] - v[0])
    low = max(u[1], v[1])
    high = max(low, (math.ceil(math.log2(dx)) + 1) if dx > 0 else low)
    best = None
    for m in range(low, high + 1):
        c = (m - u[1]) + (m - v[1]) + -(-dx // 2**m)
        best = c if best is None else min(best, c)
    return best


def hyp_dist(u, v):
    y1, y2 = 2.0 ** u[1], 2.0 ** v[1]
    dx = u[0] - v[0]
    return math.acosh(1 + (dx * dx + (y1 - y2) ** 2) / (2 * y1 * y2))


def fit_qi(model, truth, kgrid=None):
    """Smallest (K, C) with model/K - C <= truth <= K*model + C.

    Scans K on a grid and keeps the pair minimizing K + C.
    """
    model = np.asarray(model, float)
    truth = np.asarray(truth, float)
    if kgrid is None:
        kgrid = np.round(np.arange(1.0, 6.0001, 0.01), 2)
    best = None
    for k in kgrid:
        c = max(0.0, float(np.max(model / k - truth)), float(np.max(truth - k * model)))
        if best is None or k + c < best[0] + best[1] - 1e-12:
            best = (float(k), c)
    return {"K_mult": best[0], "C_add": best[1]}


def exact_many(pairs):
    """dist_exact for many pairs, sharing one BFS per source level.

    Distances depend only on |dx| and the two levels, and any window
    containing each pair's own sufficient window gives the same answer.
    """
    out = [None] * len(pairs)
    groups = {}
    for i, (u, v) in enumerate(pairs):
        if u[1] > v[1]:
            u, v = v, u
        groups.setdefault(u[1], []).append((i, abs(v[0] - u[0]), v[1]))
    for m1, items in groups.items():
        span = max(1, max(dx for _, dx, _ in items))
        top = max(m1, max(m for _, _, m in items), math.ceil(math.log2(span))) + 2
        xlo, xhi = -2 * span - 1, 3 * span + 1
        table = bfs_levels((0, m1), xlo, xhi, top)
        for i, dx, m2 in items:
            out[i] = int(table[m2, dx - xlo])
    return out


def hyp_compare(pairs):
    if not pairs:
        raise ValueError("empty sample")
    exact = [d * math.log(2) for d in exact_many(pairs)]
    hyp = [hyp_dist(u, v) for u, v in pairs]
    return fit_qi(hyp, exact)


def sweep(max_x, max_m):
    """Exact and estimated distances from (0, m1) to (dx, m2) for all
    0 <= dx <= max_x and m1, m2 <= max_m. Yields (m1, m2, dx, exact, est)."""
    for m1 in range(max_m + 1):
        far = (max_x, max_m)
        xlo, xhi, top = window_for((0, m1), far)
        xlo = min(xlo, -2 * max_x - 1)
        table = bfs_levels((0, m1), xlo, xhi, top)
        for m2 in range(max_m + 1):
            for dx in range(max_x + 1):
                ex = int(table[m2, dx - xlo])
                yield m1, m2, dx, ex, dist_estimate((0, m1), (dx, m2))
