"""Projections read off a ribbon-graph spine.

Given an ideal triangulation and an edge f joining two distinct
punctures, the curve alpha = boundary of a neighbourhood of f cuts off a
twice-punctured disk. Deleting the dual edge of f from the dual graph
leaves a spine of the other side Y (with alpha collapsed to a puncture P).

* Arcs of a curve in Y are the stretches of its dual path between
  crossings of f; arc surgery is concatenation with a walk around P.
* Y is a four-punctured sphere. Its curves lift to the torus double
  cover branched over the four punctures, and the homology class of a lift
  is the Farey slope (up to a fixed change of basis).
* Twisting about alpha is read from how far a path fellow-travels the
  loop around P.
"""
from itertools import product

import numpy as np

from .farey import Slope


def free_reduce(path):
    """Cyclically cancel backtracks (x followed by ~x)."""
    out = []
    for x in path:
        if out and out[-1] == ~x:
            out.pop()
        else:
            out.append(x)
    while len(out) >= 2 and out[0] == ~out[-1]:
        out = out[1:-1]
    return out


def weights_of(path, zeta):
    w = [0] * zeta
    for x in path:
        w[x if x >= 0 else ~x] += 1
    return tuple(w)


class SpineChart:
    def __init__(self, tri, f):
        self.T = tri
        self.f = f
        self.removed = {f, ~f}
        if tri.home[f][0] == tri.home[~f][0]:
            raise ValueError("both sides of the cut edge lie in one triangle")
        self.labels = [x for x in tri.home if x not in self.removed]
        self.faces = self._faces()
        self.face_of = {x: i for i, c in enumerate(self.faces) for x in c}
        gap = next(x for x in self.labels if tri.nxt(~x) in self.removed)
        self.P = self.face_of[gap]
        self.loop = self.faces[self.P]
        self.eps = self._parity()
        self._basis()

    # ribbon structure with f deleted
    def nxt1(self, s):
        n = self.T.nxt(s)
        return self.T.nxt(n) if n in self.removed else n

    def prv1(self, s):
        n = self.T.prv(s)
        return self.T.prv(n) if n in self.removed else n

    def _faces(self):
        seen, faces = set(), []
        for x in self.labels:
            if x in seen:
                continue
            cyc, y = [], x
            while y not in seen:
                seen.add(y)
                cyc.append(y)
                y = self.nxt1(~y)
            faces.append(cyc)
        return faces

    def _parity(self):
        edges = sorted({x if x >= 0 else ~x for x in self.labels})
        for bits in product((0, 1), repeat=len(edges)):
            eps = dict(zip(edges, bits))
            if all(sum(eps[x if x >= 0 else ~x] for x in c) % 2 == 1 for c in self.faces):
                return eps
        raise RuntimeError("no branched double cover")

    def parity(self, path):
        return sum(self.eps[x if x >= 0 else ~x] for x in path) % 2

    def lift(self, path):
        """Signed edge counts of the lift to the double cover, starting on
        sheet 0; a path of odd parity is lifted twice."""
        reps = 1 if self.parity(path) == 0 else 2
        vec = {}
        s = 0
        for x in path * reps:
            e = x if x >= 0 else ~x
            if x >= 0:
                vec[(e, s)] = vec.get((e, s), 0) + 1
                s ^= self.eps[e]
            else:
                s ^= self.eps[e]
                vec[(e, s)] = vec.get((e, s), 0) - 1
        return np.array([vec.get(k, 0) for k in self.cols], dtype=np.int64)

    def _basis(self):
        edges = sorted(self.eps)
        self.cols = [(e, s) for e in edges for s in (0, 1)]
        col = {k: i for i, k in enumerate(self.cols)}
        # spanning tree of the cover graph to find fundamental cycles
        verts = {}
        adj = []
        for e in edges:
            for s in (0, 1):
                t = self.T.home[e][0], s
                h = self.T.home[~e][0], s ^ self.eps[e]
                adj.append((t, h, col[(e, s)]))
        parent = {}
        root = (adj[0][0])
        parent[root] = None
        tree = set()
        changed = True
        while changed:
            changed = False
            for t, h, c in adj:
                if (t in parent) != (h in parent):
                    parent[h if t in parent else t] = c
                    tree.add(c)
                    changed = True
        self.nontree = [c for c in range(len(self.cols)) if c not in tree]
        assert len(self.nontree) == 5
        faces = [self.lift(c)[self.nontree] for c in self.faces]
        faces = [v for v in faces]
        units = np.eye(5, dtype=np.int64)
        for (i, j) in [(i, j) for i in range(5) for j in range(i + 1, 5)]:
            for fs in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]:
                M = np.array([units[i], units[j]] + [faces[k] for k in fs]).T
                if round(abs(np.linalg.det(M))) == 1:
                    self.Minv = np.linalg.inv(M)
                    return
        raise RuntimeError("no unimodular completion")

    def homology(self, path):
        v = self.lift(path)[self.nontree]
        c = self.Minv @ v
        r = np.rint(c)
        assert np.allclose(c, r, atol=1e-6), c
        return int(r[0]), int(r[1])

    def slope(self, path):
        """Farey slope of an even closed path, None if inessential."""
        if self.parity(path):
            return None
        a, b = self.homology(path)
        if a == 0 and b == 0:
            return None
        return Slope(a, b)

    # ------------------------------------------------------------ surgery
    def _walk(self, g_end, g_start, direction):
        T = self.T
        out = []
        x = T.nxt(g_end) if direction > 0 else T.prv(g_end)
        for _ in range(4 * len(self.labels) + 4):
            out.append(x)
            s = ~x
            if (T.nxt(s) if direction > 0 else T.prv(s)) == g_start:
                return out
            x = self.nxt1(s) if direction > 0 else self.prv1(s)
        raise RuntimeError("walk around the cut puncture did not close")

    def arcs(self, path):
        """Stretches of a closed path between crossings of the cut edge,
        as (segment, entry gap, exit gap)."""
        idx = [i for i, x in enumerate(path) if x in self.removed]
        out = []
        for a, b in zip(idx, idx[1:] + [idx[0] + len(path)]):
            seg = [path[i % len(path)] for i in range(a + 1, b)]
            out.append((seg, ~path[a], path[b % len(path)]))
        return out

    def project(self, path):
        """{slope: reduced surgery path} for the arcs of a closed path."""
        if not any(x in self.removed for x in path):
            s = self.slope(path)
            return {} if s is None else {s: free_reduce(path)}
        out = {}
        for seg, g_start, g_end in self.arcs(path):
            cands = [seg + self._walk(g_end, g_start, 1), seg + self._walk(g_end, g_start, -1)]
            if g_end == g_start:
                cands.append(seg)
            found = {}
            for c in cands:
                s = self.slope(c)
                if s is None:
                    continue
                c = free_reduce(c)
                # the wrong push-off winds once more around P
                if s not in found or len(c) < len(found[s]):
                    found[s] = c
            if len(found) > 1:
                raise RuntimeError("ambiguous surgery")
            for s, c in found.items():
                if s not in out or len(c) < len(out[s]):
                    out[s] = c
        return out

    # ------------------------------------------------------------ twisting
    def crossings(self, path):
        """Fellow-travel data of a path against the loop around P.

        Returns (shared length, orientation, entry side) per crossing."""
        T = self.T
        res = []
        A = path
        n = len(A)
        for sign, B in ((1, self.loop), (-1, [~x for x in reversed(self.loop)])):
            m = len(B)
            where = {}
            for j, b in enumerate(B):
                where.setdefault(b, []).append(j)
            for i, a in enumerate(A):
                for j in where.get(a, ()):
                    if A[i - 1] == B[j - 1]:
                        continue
                    k = 0
                    while k < n and A[(i + k + 1) % n] == B[(j + k + 1) % m]:
                        k += 1
                    if k >= n:
                        continue
                    s = ~A[i - 1] == T.nxt(a)
                    last = ~A[(i + k) % n]
                    e = A[(i + k + 1) % n] == T.nxt(last)
                    if s == e:
                        res.append((k + 1, sign, s))
        return res
