"""JSON records for curves, markings and marking sequences.

A curve record is {surface, triangulation, coords}; coords is a slope
[p, q] on the complexity-one surfaces and a normal-coordinate vector on
S_{0,5}, whose triangulation id must match the bundled one.
"""
import json
import os
from pathlib import Path

from .farey import Slope
from .markings import AugmentedMarking
from .surface import S05, parse_surface

ENV = "AMCONE_FIXTURES"


def fixture_dir():
    return Path(os.environ.get(ENV) or Path(__file__).parent / "data" / "fixtures")


def resolve(name):
    p = Path(name)
    if p.exists():
        return p
    for cand in (fixture_dir() / name, fixture_dir() / f"{name}.json"):
        if cand.exists():
            return cand
    raise FileNotFoundError(f"fixture not found: {name}")


def read(name):
    with open(resolve(name)) as fh:
        return json.load(fh)


def triangulation_id(surface):
    if surface != S05:
        return "farey"
    from .curves import engine
    return str(engine(5).T)


def _check_tri(obj, surface):
    tid = obj.get("triangulation", triangulation_id(surface))
    if tid != triangulation_id(surface):
        raise ValueError(f"fixture triangulation {tid} does not match {triangulation_id(surface)}")


def curve_record(surface, c):
    coords = [c.p, c.q] if isinstance(c, Slope) else list(c)
    return {"surface": str(surface), "triangulation": triangulation_id(surface), "coords": coords}


def curve_from(obj):
    s = parse_surface(obj["surface"])
    _check_tri(obj, s)
    c = obj["coords"]
    if s != S05:
        return s, Slope(*c)
    from .curves import engine
    c = tuple(int(x) for x in c)
    if not engine(5).is_curve(c):
        raise ValueError("coordinates are not an essential curve")
    return s, c


def load_curve(name):
    """A curve from a fixture name, a path, or inline JSON."""
    obj = json.loads(name) if name.lstrip().startswith("{") else read(name)
    return curve_from(obj)


def marking_record(m):
    out = m.to_json()
    out["triangulation"] = triangulation_id(m.surface)
    return out


def marking_from(obj):
    s = parse_surface(obj["surface"])
    _check_tri(obj, s)
    return AugmentedMarking.from_json(obj)


def load_marking(name):
    if name.startswith("base:"):
        from .markings import base_marking
        return base_marking(parse_surface(name[5:]))
    return marking_from(read(name))


def sequence_record(ms, scale=None):
    return {"surface": str(ms[0].surface), "triangulation": triangulation_id(ms[0].surface),
            "scale": scale, "markings": [m.to_json() for m in ms]}


def load_sequence(name):
    obj = read(name)
    s = parse_surface(obj["surface"])
    _check_tri(obj, s)
    ms = [AugmentedMarking.from_json({**m, "surface": obj["surface"]}) for m in obj["markings"]]
    return ms, obj.get("scale")


def scaling(kind, n):
    """Positive increasing scales s_1..s_n."""
    if kind == "lin":
        return list(range(1, n + 1))
    if kind == "quad":
        return [k * k for k in range(1, n + 1)]
    if isinstance(kind, list):
        return list(kind)
    raise ValueError(f"unknown scale {kind!r}")


def write_json(obj, path):
    """Whole-file atomic write."""
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)
