"""Strand tracing through an ideal triangulation.

A normal curve is laid out strand by strand; its combinatorial type is
the cyclic word of oriented edges it exits through, i.e. a closed,
reduced path in the dual trivalent ribbon graph. Intersection numbers of
two such paths are counted from the linking of their common segments.
Self-contained: no lamination library is involved.
"""


def inv(label):
    return ~label


class Triangulation:
    """Triangles as cyclically ordered triples of oriented edge labels.

    Label e >= 0 is an edge, ~e is the same edge with the opposite
    orientation. All triangles are listed with the same orientation.
    """

    def __init__(self, triangles, sig=""):
        self.triangles = [tuple(t) for t in triangles]
        self.sig = sig
        self.zeta = len(self.triangles) * 3 // 2
        self.home = {}
        for ti, t in enumerate(self.triangles):
            for k, lab in enumerate(t):
                self.home[lab] = (ti, k)
        assert len(self.home) == 2 * self.zeta

    def nxt(self, lab):
        ti, k = self.home[lab]
        return self.triangles[ti][(k + 1) % 3]

    def prv(self, lab):
        ti, k = self.home[lab]
        return self.triangles[ti][(k - 1) % 3]

    def weight(self, w, lab):
        return w[lab if lab >= 0 else ~lab]

    def check_normal(self, w):
        for a, b, c in self.triangles:
            x, y, z = (self.weight(w, l) for l in (a, b, c))
            if min(x, y, z) < 0 or (x + y + z) % 2 or x > y + z or y > x + z or z > x + y:
                return False
        return True

    def step(self, w, lab, k):
        """Enter the triangle of `lab` at position k along `lab`; return
        the exit side and the position along it."""
        wa = self.weight(w, lab)
        c = self.prv(lab)
        b = self.nxt(lab)
        wb, wc = self.weight(w, b), self.weight(w, c)
        c_ca = (wc + wa - wb) // 2
        if k < c_ca:
            return c, wc - 1 - k
        return b, wa - 1 - k

    def trace(self, w):
        """Components of the multicurve as cyclic lists of exit labels."""
        if not self.check_normal(w):
            raise ValueError("non-normal coordinates")
        seen = set()
        comps = []
        for e in range(self.zeta):
            for k in range(w[e]):
                if (e, k) in seen:
                    continue
                path = []
                lab, pos = e, k
                while True:
                    # exiting through `lab` at `pos`
                    key = (lab, pos) if lab >= 0 else (~lab, w[~lab] - 1 - pos)
                    if key in seen:
                        break
                    seen.add(key)
                    path.append(lab)
                    ent = ~lab
                    lab, pos = self.step(w, ent, self.weight(w, ent) - 1 - pos)
                comps.append(path)
        return comps


def reverse(path):
    return [~x for x in reversed(path)]


def _linked(T, A, B):
    n, m = len(A), len(B)
    where = {}
    for j, b in enumerate(B):
        where.setdefault(b, []).append(j)
    count = 0
    for i, a in enumerate(A):
        for j in where.get(a, ()):
            if A[i - 1] == B[j - 1]:
                continue
            k = 0
            # a common stretch may wind around the shorter word many times
            while k < n + m and A[(i + k + 1) % n] == B[(j + k + 1) % m]:
                k += 1
            if k >= n + m:
                continue  # same cyclic word: no divergence
            s = ~A[i - 1] == T.nxt(a)
            last = ~A[(i + k) % n]
            e = A[(i + k + 1) % n] == T.nxt(last)
            if s == e:
                count += 1
    return count


def path_intersection(T, A, B):
    return _linked(T, A, B) + _linked(T, A, reverse(B))


def intersection(T, wa, wb):
    total = 0
    for A in T.trace(wa):
        for B in T.trace(wb):
            total += path_intersection(T, A, B)
    return total
