"""Frozen measured constants and the regression checks that recompute them."""
import json
from pathlib import Path

from . import experiments as ex

PATH = Path(__file__).parent / "data" / "baselines.json"
SCHEMA = 1


def load(path=None):
    p = Path(path or PATH)
    if not p.exists():
        raise FileNotFoundError(f"missing baseline file {p}")
    with open(p) as fh:
        obj = json.load(fh)
    if obj.get("schema") != SCHEMA:
        raise ValueError("unsupported baseline schema")
    return obj


def _split(name):
    head, _, rest = name.partition(".")
    if head == "formula" and rest:
        s, _, key = rest.rpartition(".")
        return [head, s, key] if s else [head, rest]
    return name.split(".")


# Each check: (measure(frozen section) -> dict, [(key, mode, tol)]).
# mode "eq" exact, "le" measured <= frozen, "ge" measured >= frozen,
# "rel" |measured - frozen| <= tol * |frozen|, "abs" within tol.

def _formula(s):
    def run(sec):
        r = ex.formula_fit(s, sec["K"])
        return {"K_qi": r["K_qi"], "C_qi": r["C_qi"], "vertices": r["vertices"]}
    return run, [("K_qi", "abs", 1e-9), ("C_qi", "abs", 1e-9), ("vertices", "eq", 0)]


CHECKS = {
    "horoball.edges": (lambda sec: {"mismatches": ex.horoball_edges()["mismatches"]},
                       [("mismatches", "eq", 0)]),
    "horoball.estimate": (lambda sec: ex.horoball_estimate(),
                          [("C_est", "eq", 0), ("min_gap", "ge", 0)]),
    "horoball.qi": (lambda sec: ex.horodisk_fit(seed=sec["seed"]),
                    [("K", "rel", 0.10), ("C", "abs", 1e-6)]),
    "farey.twist": (lambda sec: {"worst_gap": ex.farey_twist(seed=sec["seed"])["worst_gap"]},
                    [("worst_gap", "le", 0)]),
    "formula.0,4": _formula("0,4"),
    "formula.1,1": _formula("1,1"),
    "formula.0,5": _formula("0,5"),
    "behrstock": (lambda sec: {"M1": ex.behrstock_sweep(sec["n"], sec["seed"])["max"]},
                  [("M1", "le", 0)]),
    "bgit": (lambda sec: {k: v for k, v in ex.bgit_sweep(seed=sec["seed"]).items() if k.startswith("M0")},
             [("M0", "le", 0), ("M0_horoball", "le", 0)]),
    "regions": (lambda sec: {k: v for k, v in ex.product_regions().items() if k != "pairs"},
                [("K_qi", "abs", 1e-9), ("C_qi", "abs", 1e-9), ("cross_term", "le", 0)]),
    "lipschitz": (lambda sec: {"max_diameter": ex.projection_lipschitz(sec["n"], sec["seed"])["max_diameter"],
                               "max_jump": ex.marking_lipschitz(sec["jump_radius"])["max_jump"]},
                  [("max_diameter", "le", 0), ("max_jump", "le", 0)]),
    "balls": (lambda sec: ex.ball_counts(sec["radius"]), [("vertices", "eq", 0), ("edges", "eq", 0)]),
    "large_links": (lambda sec: {"K1": ex.large_links(sec["n"], sec["seed"])["K1"]}, [("K1", "le", 0)]),
    "orthant": (lambda sec: {"violations": len(ex.orthant_law(sec["max_depth"])["violations"])},
                [("violations", "eq", 0)]),
    "thick": (lambda sec: {"min_witness": ex.thickness_sweep(sec["n"], sec["seed"], sec["R"])["min_witness"]},
              [("min_witness", "ge", 0)]),
}


def get(name, path=None):
    """Dotted lookup, e.g. get('formula.0,5.K_qi')."""
    node = load(path)["constants"]
    for part in _split(name):
        node = node[part]
    return node


def compare(measured, frozen, rules):
    fails = []
    for key, mode, tol in rules:
        m, f = measured[key], frozen[key]
        ok = {"eq": m == f, "le": m <= f + tol, "ge": m >= f - tol,
              "abs": abs(m - f) <= tol, "rel": abs(m - f) <= tol * abs(f)}[mode]
        if not ok:
            fails.append(f"{key}: measured {m} vs frozen {f} ({mode})")
    return fails


def regression(check, path=None, measured=None):
    """Recompute one frozen constant; returns {check, pass, failures, measured}."""
    if check not in CHECKS:
        raise KeyError(f"unknown check {check!r}; known: {', '.join(CHECKS)}")
    frozen = get(check, path)
    fn, rules = CHECKS[check]
    if measured is None:
        measured = fn(frozen)
    fails = compare(measured, frozen, rules)
    return {"check": check, "pass": not fails, "failures": fails, "measured": measured}
