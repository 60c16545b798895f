"""Surfaces, subsurfaces and the interlocking relation."""
from dataclasses import dataclass


@dataclass(frozen=True)
class SurfaceKind:
    genus: int
    punctures: int

    def __str__(self):
        return f"{self.genus},{self.punctures}"


S11 = SurfaceKind(1, 1)
S04 = SurfaceKind(0, 4)
S05 = SurfaceKind(0, 5)
ALLOWLIST = (S11, S04, S05)


def complexity(s):
    return 3 * s.genus - 3 + s.punctures


def parse_surface(text, allow=ALLOWLIST):
    g, n = (int(t) for t in text.split(","))
    s = SurfaceKind(g, n)
    if s not in allow:
        raise ValueError(f"unsupported surface {text}")
    return s


@dataclass(frozen=True)
class Annulus:
    core: tuple
    surface: SurfaceKind = S05


@dataclass(frozen=True)
class NonAnnular:
    """Component `component` of the complement of `boundary`.

    Empty boundary means the whole surface. For S_{0,5} a single curve
    has one non-pants complementary piece, always indexed 0.
    """
    boundary: tuple = ()
    component: int = 0
    surface: SurfaceKind = S05

    @property
    def whole(self):
        return not self.boundary


def is_pants(y):
    if isinstance(y, Annulus):
        return False
    if y.whole:
        return False
    # on S_{0,5} and the r=1 surfaces every complementary piece of a
    # pants decomposition is a pair of pants
    return len(y.boundary) >= complexity(y.surface)


def interlocks(y, z, inter):
    """Overlap without nesting, decided from intersection numbers.

    `inter(a, b)` returns the geometric intersection number of two curves.
    Only complementary pieces of single curves are handled; those are the
    only non-pants proper subsurfaces on the supported surfaces.
    """
    if y.surface != z.surface:
        raise ValueError("mismatched ambient surface")
    if y == z:
        return False
    ya, za = isinstance(y, Annulus), isinstance(z, Annulus)
    if not ya and y.whole or not za and z.whole:
        return False
    for w in (y, z):
        if not isinstance(w, Annulus) and (is_pants(w) or len(w.boundary) != 1):
            raise ValueError("pants are not projection targets")
    if ya and za:
        return inter(y.core, z.core) > 0
    if ya or za:
        a, w = (y, z) if ya else (z, y)
        return inter(a.core, w.boundary[0]) > 0
    # two four-holed spheres cut off by distinct curves of S_{0,5}
    return y.boundary[0] != z.boundary[0]


def complement_kinds(surface, sides):
    """Kinds of the pieces of the surface cut along a planar multicurve.

    `sides` lists, for each curve of a multicurve on a punctured sphere,
    the frozenset of punctures on its smaller side. Returns a list of
    (genus, punctures + boundary components) pairs.
    """
    n = surface.punctures
    everything = frozenset(range(n))
    # each curve splits the sphere; normalize to the side away from 0
    cuts = []
    for s in sides:
        cuts.append(s if 0 not in s else everything - s)
    cuts.sort(key=len)
    pieces = []
    for i, c in enumerate(cuts):
        inner = [d for d in cuts[:i] if d < c]
        maximal = [d for d in inner if not any(d < e for e in inner)]
        loose = c - frozenset().union(*maximal) if maximal else c
        pieces.append((0, len(loose) + len(maximal) + 1))
    maximal = [d for d in cuts if not any(d < e for e in cuts)]
    loose = everything - frozenset().union(*maximal) if maximal else everything
    pieces.append((0, len(loose) + len(maximal)))
    return pieces
