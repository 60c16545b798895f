"""Command-line runner: `amcone <group> <command> [options]`.

Outputs are JSON (or CSV for sweeps) and always carry the config that
produced them. With --assert, a command that has a frozen baseline exits
nonzero when its measurement disagrees.
"""
import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__, baselines, experiments as ex, farey, horoball
from .fixtures import (curve_record, load_curve, load_marking, load_sequence, marking_record,
                       scaling, write_json)


class CheckFailed(SystemExit):
    pass


def _pair(text):
    a, b = text.split(",")
    return int(a), int(b)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, farey.Slope):
        return str(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    if hasattr(x, "item"):
        return x.item()
    if hasattr(x, "__dataclass_fields__"):
        return {k: _jsonable(getattr(x, k)) for k in x.__dataclass_fields__}
    return x


def _config(args):
    skip = {"func"}
    return {"version": __version__,
            **{k: v for k, v in vars(args).items() if k not in skip}}


def emit(args, result):
    obj = {"config": _config(args), "result": _jsonable(result)}
    if args.out:
        write_json(obj, args.out)
    else:
        json.dump(obj, sys.stdout, indent=1, sort_keys=True)
        sys.stdout.write("\n")
    return obj


def emit_csv(args, header, rows):
    buf = io.StringIO()
    buf.write("# " + json.dumps(_config(args), sort_keys=True) + "\n")
    w = csv.writer(buf)
    w.writerow(header)
    w.writerows(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def check(args, name, measured):
    if not args.assert_:
        return
    r = baselines.regression(name, measured=measured)
    if not r["pass"]:
        for f in r["failures"]:
            print(f"FAIL {name}: {f}", file=sys.stderr)
        raise CheckFailed(1)


def _need_seed(args):
    if args.seed is None:
        raise SystemExit("--seed is required for sampling commands")


# ------------------------------------------------------------------ horoball

def horoball_dist(args):
    u, v = _pair(args.from_), _pair(args.to)
    emit(args, {"exact": horoball.dist_exact(u, v, budget=args.budget_vertices),
                "estimate": horoball.dist_estimate(u, v), "hyp": horoball.hyp_dist(u, v)})


def horoball_sweep(args):
    rows, gap = [], 0
    for m1, m2, dx, exact, est in horoball.sweep(args.max_x, args.max_m):
        gap = max(gap, est - exact)
        rows.append((m1, m2, dx, exact, est, round(horoball.hyp_dist((0, m1), (dx, m2)), 6)))
    emit_csv(args, ["m1", "m2", "dx", "exact", "estimate", "hyp"], rows)
    check(args, "horoball.estimate", {"C_est": gap, "min_gap": min(r[4] - r[3] for r in rows)})


# ------------------------------------------------------------------ farey

def farey_dist(args):
    a, b = farey.parse_slope(args.a), farey.parse_slope(args.b)
    emit(args, {"dist": farey.cc_dist(a, b), "geodesic": [str(s) for s in farey.geodesic(a, b)]})


def farey_twist(args):
    a, g, b = (farey.parse_slope(x) for x in (args.alpha, args.gamma, args.beta))
    emit(args, {"twist": farey.twist_coordinate(a, g, b)})


# ------------------------------------------------------------------ curves

def _engine():
    from .curves import engine
    return engine(5)


def curves_i(args):
    sa, a = load_curve(args.a)
    sb, b = load_curve(args.b)
    if sa != sb:
        raise SystemExit("curves live on different surfaces")
    if isinstance(a, farey.Slope):
        from .surface import S04
        n = farey.intersection(a, b, sa == S04)
    else:
        n = _engine().intersection(a, b)
    emit(args, {"i": n})


def curves_twist(args):
    _, a = load_curve(args.alpha)
    _, g = load_curve(args.gamma)
    eng = _engine()
    emit(args, {"twist": eng.twist(a, g), "reading": eng.twist_reading(a, g)})


def curves_project(args):
    from .surface import Annulus, NonAnnular, S05
    _, a = load_curve(args.alpha)
    _, g = load_curve(args.gamma)
    eng = _engine()
    y = Annulus(a, S05) if args.annulus else NonAnnular((a,), 0, S05)
    p = eng.project(g, y)
    if y.__class__ is NonAnnular and p is not None:
        p = {"slopes": [str(s) for s in eng.slopes(a, g)],
             "curves": [curve_record(S05, c) for c in sorted(p)]}
    emit(args, {"projection": p})


# ------------------------------------------------------------------ markings

def marking_ball(args):
    from .markings import Caps, ball
    m = load_marking(args.center)
    B = ball(m, args.radius, Caps(args.cap_twist), budget=args.budget_vertices)
    if args.out:
        obj = B.to_json()
        obj["config"] = _config(args)
        write_json(obj, args.out)
    print(json.dumps({"vertices": len(B.vertices), "edges": int(len(B.edges))}))


# ------------------------------------------------------------------ formula

def _load_ball(path):
    from .markings import BallGraph
    if path in ex.FORMULA_BALLS:
        return ex.cached_ball(ex.FORMULA_BALLS[path])
    with open(path) as fh:
        return BallGraph.from_json(json.load(fh))


def df_eval(args):
    from .coarse import distance_formula
    a, b = load_marking(args.a), load_marking(args.b)
    r = distance_formula(a, b, args.K, kprime=_kprime(a.surface))
    emit(args, {k: {"total": v.total, "terms": [(repr(y), d) for y, d in v.contributions]}
                for k, v in r.items()})


def _kprime(surface):
    return baselines.get(f"formula.{surface}.K_prime")


def df_fit(args):
    from .coarse import BallFormula, ball_pairs, check_two_sided, fit_two_sided
    B = _load_ball(args.ball)
    F = BallFormula(B)
    pairs = ball_pairs(B, F, args.K)
    fit = fit_two_sided(list(pairs))
    worst = max(pairs, key=lambda p: max(p[0] - fit["K_qi"] * p[1], p[1] - fit["K_qi"] * p[0]))
    emit(args, {**fit, "worst_pair": worst, "violation": check_two_sided(list(pairs), **fit),
                "vertices": len(B.vertices)})
    s = str(B.vertices[0].surface)
    spec = ex.FORMULA_BALLS.get(s)
    if spec and B.radius == spec.radius and args.K == baselines.get(f"formula.{s}.K"):
        check(args, f"formula.{s}", {**fit, "vertices": len(B.vertices)})


def behrstock_sweep(args):
    _need_seed(args)
    r = ex.behrstock_sweep(args.n, args.seed)
    emit_csv(args, ["vertex", "pair", "min"], r["rows"])
    print(json.dumps({"n": r["n"], "max": r["max"]}), file=sys.stderr)
    check(args, "behrstock", {"M1": r["max"]})


def bgit_sweep(args):
    _need_seed(args)
    r = ex.bgit_sweep(args.n, args.seed, args.max_den)
    emit(args, r)
    check(args, "bgit", {"M0": r["M0"], "M0_horoball": r["M0_horoball"]})


# ------------------------------------------------------------------ regions

def _delta(names):
    return [load_curve(n)[1] for n in names]


def region_theta(args):
    from .regions import theta
    m = load_marking(args.m)
    emit(args, {"theta": theta(m, _delta(args.delta))})


def region_rho(args):
    from .regions import rho_dist
    m = load_marking(args.m)
    r = rho_dist(m, _delta(args.delta), args.K, kprime=_kprime(m.surface))
    emit(args, {"total": r.total, "terms": [(repr(y), v) for y, v in r.contributions]})


def orthant_check(args):
    r = ex.orthant_law(args.max_depth)
    emit(args, r)
    check(args, "orthant", {"violations": len(r["violations"])})


def thick_chain(args):
    from .regions import thickness_chain, witness_lower_bound
    _, a = load_curve(args.alpha)
    _, b = load_curve(args.beta)
    path, links = thickness_chain(a, b, args.R)
    emit(args, {"path": [list(c) for c in path],
                "links": [{"curves": [list(c) for c in l.curves], "marking": marking_record(l.marking),
                           "witness_diameter": witness_lower_bound(l, args.R)} for l in links]})


def cones_classify(args):
    from .regions import classify_sequence
    ms, scale = load_sequence(args.seq)
    s = scaling(args.scale or scale or "lin", len(ms))
    r = classify_sequence(ms, s, Fraction(args.tau))
    r["components"]["tracks"] = [{"curve": list(c), "depths": d} for c, d in r["components"]["tracks"]]
    r["components"]["delta"] = [list(c) for c in r["components"]["delta"]]
    r["components"]["pieces"] = [repr(y) for y in r["components"]["pieces"]]
    emit(args, r)


def cones_profile(args):
    from .regions import sublinear_profile
    xs, scale = load_sequence(args.xs)
    mus, _ = load_sequence(args.mus)
    s = scaling(args.scale or scale or "lin", len(xs))
    emit(args, {"profile": sublinear_profile(xs, mus, s)})


def regression_cmd(args):
    names = list(baselines.CHECKS) if args.check == "all" else [args.check]
    results = [baselines.regression(n, args.baseline) for n in names]
    emit(args, results)
    if args.assert_ and not all(r["pass"] for r in results):
        raise CheckFailed(1)


# ------------------------------------------------------------------ parser

def build_parser():
    def flags(top):
        # subcommand copies only override when given, so flags may precede the command
        d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
        fp = argparse.ArgumentParser(add_help=False)
        fp.add_argument("--assert", dest="assert_", action="store_true", default=d(False),
                        help="exit nonzero when a frozen baseline disagrees")
        fp.add_argument("--seed", type=int, default=d(None))
        fp.add_argument("--out", default=d(None))
        fp.add_argument("--budget-vertices", type=int, default=d(200_000))
        return fp

    common = flags(False)
    p = argparse.ArgumentParser(prog="amcone", parents=[flags(True)])
    p.add_argument("--version", action="version", version=__version__)
    groups = p.add_subparsers(dest="group", required=True)

    def cmd(group, name, fn, **kw):
        sp = group.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=fn)
        return sp

    g = groups.add_parser("horoball").add_subparsers(dest="cmd", required=True)
    c = cmd(g, "dist", horoball_dist)
    c.add_argument("--from", dest="from_", required=True, help="x,m")
    c.add_argument("--to", required=True, help="y,k")
    c = cmd(g, "sweep", horoball_sweep)
    c.add_argument("--max-x", type=int, default=1024)
    c.add_argument("--max-m", type=int, default=10)

    g = groups.add_parser("farey").add_subparsers(dest="cmd", required=True)
    c = cmd(g, "dist", farey_dist)
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c = cmd(g, "twist", farey_twist)
    for k in ("alpha", "gamma", "beta"):
        c.add_argument(f"--{k}", required=True)

    g = groups.add_parser("curves").add_subparsers(dest="cmd", required=True)
    c = cmd(g, "i", curves_i)
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c = cmd(g, "twist", curves_twist)
    c.add_argument("--alpha", required=True)
    c.add_argument("--gamma", required=True)
    c = cmd(g, "project", curves_project)
    c.add_argument("--alpha", required=True)
    c.add_argument("--gamma", required=True)
    c.add_argument("--annulus", action="store_true", help="annulus about alpha instead of its complement")

    g = groups.add_parser("marking").add_subparsers(dest="cmd", required=True)
    c = cmd(g, "ball", marking_ball)
    c.add_argument("--center", required=True, help="marking fixture or base:<surface>")
    c.add_argument("--radius", type=int, required=True)
    c.add_argument("--cap-twist", type=int, default=8)

    g = groups.add_parser("df").add_subparsers(dest="cmd", required=True)
    c = cmd(g, "eval", df_eval)
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.add_argument("--K", type=int, required=True)
    c = cmd(g, "fit", df_fit)
    c.add_argument("--ball", required=True, help="ball JSON, or 0,4 / 1,1 / 0,5 for the standard ball")
    c.add_argument("--K", type=int, required=True)

    g = groups.add_parser("behrstock").add_subparsers(dest="cmd", required=True)
    c = cmd(g, "sweep", behrstock_sweep)
    c.add_argument("--n", type=int, default=10_000)

    g = groups.add_parser("bgit").add_subparsers(dest="cmd", required=True)
    c = cmd(g, "sweep", bgit_sweep)
    c.add_argument("--n", type=int, default=1000)
    c.add_argument("--max-den", type=int, default=200)

    g = groups.add_parser("region").add_subparsers(dest="cmd", required=True)
    c = cmd(g, "theta", region_theta)
    c.add_argument("--m", required=True)
    c.add_argument("--delta", nargs="+", required=True)
    c = cmd(g, "rho", region_rho)
    c.add_argument("--m", required=True)
    c.add_argument("--delta", nargs="+", required=True)
    c.add_argument("--K", type=int, required=True)

    g = groups.add_parser("orthant").add_subparsers(dest="cmd", required=True)
    c = cmd(g, "check", orthant_check)
    c.add_argument("--max-depth", type=int, default=3)

    g = groups.add_parser("thick").add_subparsers(dest="cmd", required=True)
    c = cmd(g, "chain", thick_chain)
    c.add_argument("--alpha", required=True)
    c.add_argument("--beta", required=True)
    c.add_argument("--R", type=int, default=20)

    g = groups.add_parser("cones").add_subparsers(dest="cmd", required=True)
    c = cmd(g, "classify", cones_classify)
    c.add_argument("--seq", required=True)
    c.add_argument("--scale", choices=["lin", "quad"], default=None)
    c.add_argument("--tau", default="1")
    c = cmd(g, "profile", cones_profile)
    c.add_argument("--xs", required=True)
    c.add_argument("--mus", required=True)
    c.add_argument("--scale", choices=["lin", "quad"], default=None)

    c = groups.add_parser("regression", parents=[common])
    c.set_defaults(func=regression_cmd)
    c.add_argument("--check", default="all")
    c.add_argument("--baseline", default=None, help="alternative baseline file")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CheckFailed:
        return 1
    except (ValueError, FileNotFoundError, MemoryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
