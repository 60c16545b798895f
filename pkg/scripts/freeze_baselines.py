"""Run the certified sweeps and freeze the measured constants.

    python scripts/freeze_baselines.py            # everything
    python scripts/freeze_baselines.py bgit orthant
"""
import json
import sys
import time

from amcone import __version__, baselines
from amcone import experiments as ex
from amcone.fixtures import write_json

SEEDS = {"qi": 0, "farey": 0, "behrstock": 7, "bgit": 0, "thick": 0, "lipschitz": 0}


def formula_section(s):
    scan = {}
    for K in (1, 2, 3):
        r = ex.formula_fit(s, K)
        scan[str(K)] = {"K_qi": r["K_qi"], "C_qi": r["C_qi"], "max_bfs": r["max_bfs"],
                        "max_total": r["max_total"], "degenerate": r["K_qi"] >= 6.0}
        print(s, K, scan[str(K)], flush=True)
    # minimal threshold: the largest K whose fit is pinned at the grid top
    kprime = max([0] + [int(k) for k, v in scan.items() if v["degenerate"]])
    K = kprime + 1
    r = scan[str(K)]
    spec = ex.FORMULA_BALLS[s]
    return {"K": K, "K_prime": kprime, "K_qi": r["K_qi"], "C_qi": r["C_qi"],
            "vertices": len(ex.cached_ball(spec).vertices),
            "radius": spec.radius, "twist_cap": spec.twist_cap, "scan": scan}


def horoball():
    return {"edges": {"mismatches": ex.horoball_edges()["mismatches"]},
            "estimate": ex.horoball_estimate(),
            "qi": {**ex.horodisk_fit(seed=SEEDS["qi"]), "seed": SEEDS["qi"], "n": 10_000}}


def behrstock():
    st = ex.behrstock_sweep(10_000, SEEDS["behrstock"])["max"]
    big = ex.behrstock_sweep(100_000, SEEDS["behrstock"] + 1)["max"]
    return {"M1": max(st, big), "M1_1e4": st, "M1_1e5": big, "n": 10_000, "seed": SEEDS["behrstock"]}


def regions():
    return {k: v for k, v in ex.product_regions().items() if k != "pairs"}


def orthant():
    ol = ex.orthant_law(3)
    return {"violations": len(ol["violations"]), "checked": ol["checked"], "max_depth": 3}


def thick():
    th = ex.thickness_sweep(100, SEEDS["thick"], 50)
    return {**th, "min_witness": 50, "seed": SEEDS["thick"], "n": 100, "R": 50}


SECTIONS = {
    "horoball": horoball,
    "farey": lambda: {"twist": {**ex.farey_twist(seed=SEEDS["farey"]), "seed": SEEDS["farey"]}},
    "formula": lambda: {s: formula_section(s) for s in ex.FORMULA_BALLS},
    "behrstock": behrstock,
    "bgit": lambda: {**ex.bgit_sweep(seed=SEEDS["bgit"]), "seed": SEEDS["bgit"]},
    "regions": regions,
    "orthant": orthant,
    "thick": thick,
    "lipschitz": lambda: {**ex.projection_lipschitz(seed=SEEDS["lipschitz"]), "seed": SEEDS["lipschitz"],
                          "max_jump": ex.marking_lipschitz(4)["max_jump"], "jump_radius": 4},
    "balls": ex.ball_counts,
    "large_links": lambda: {**ex.large_links(100, 0), "seed": 0},
}


def main(names):
    t = time.time()
    try:
        obj = baselines.load()
    except FileNotFoundError:
        obj = {"constants": {}}
    for name in names or SECTIONS:
        obj["constants"][name] = SECTIONS[name]()
        print(name, "done", round(time.time() - t, 1), flush=True)
    c = obj["constants"]
    if "regions" in c and "bgit" in c and "lipschitz" in c:
        c["projection_diameter"] = {"cross_term": c["regions"]["cross_term"],
                                    "farey_geodesic": c["bgit"]["M0"],
                                    "lipschitz": c["lipschitz"]["max_diameter"]}
    obj.update({"schema": baselines.SCHEMA, "version": __version__,
                "tolerances": {n: [list(r) for r in rules] for n, (_, rules) in baselines.CHECKS.items()}})
    write_json(obj, baselines.PATH)
    print(json.dumps({"seconds": round(time.time() - t, 1)}))


if __name__ == "__main__":
    main(sys.argv[1:])
