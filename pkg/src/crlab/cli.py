"""Command-line experiment runner.

Every run writes its data files plus ``manifest.json`` (config echo, versions,
seed, wall time, sha256 of each file) into ``--out-dir``.

Exit codes: 0 success, 2 config or input error, 3 budget exceeded,
4 verification failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction

from . import __version__
from .crossratio import cross_ratio_histogram, cross_ratio_set, is_orbit_closed, pinned_cross_ratio_set
from .errors import BudgetExceeded, ConfigError, CrlabError, IdentityViolation
from .explorer import (
    DEFAULT_BUDGET,
    FamilySpec,
    build_family,
    search_extremal,
    statistic_cost,
    sweep,
)
from .files import RunWriter, parse_config_file, parse_curve_file, parse_point_file, parse_scalar_file
from .geometry import (
    PointSet,
    RationalDirection,
    count_incidences,
    directions,
    grid,
    omega_set,
    sine_difference_set,
    solution_count_I,
    union_of_lines,
)
from .moebius import g_partition, pentuple_energy, quadruple_energy, rich_maps
from .scalar import ScalarSet, format_scalar, get_field, sort_key
from .setalg import growth_report, growth_statistics, plunnecke_check, productset, sumset, thin_plunnecke_refine

log = logging.getLogger("crlab")

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_VERIFY = 0, 2, 3, 4

COMMANDS = ("crossratio", "energy", "rich", "setalg", "omega", "incidence", "sweep", "search", "verify")

# option name -> (type, default)
OPTIONS = {
    "mode": (str, "rational"),
    "input": (str, None),
    "family": (str, None),
    "sizes": (str, None),
    "seed": (int, 0),
    "budget": (float, None),
    "threshold_t": (str, "1/2"),
    "workers": (int, 1),
    "out_dir": (str, "runs/latest"),
    # family parameters
    "ratio": (str, "2"),
    "difference": (str, "1"),
    "start": (str, "1"),
    "height": (int, None),
    # command parameters
    "curves": (str, None),
    "k": (int, 1),
    "l": (int, 1),
    "statistic": (str, "C"),
    "n": (int, 4),
    "exponent": (float, 0.0),
    "iterations": (int, 1000),
    "restarts": (int, 1),
    "directions": (str, None),
    "radii": (str, None),
    "solutions": (str, "auto"),
    "quick": (str, "false"),
}


def _add_common(p):
    g = p.add_argument_group("experiment")
    g.add_argument("--config", help="key=value config file; flags override it")
    g.add_argument("--mode", choices=("rational", "gaussian"), default=None)
    g.add_argument("--input", help="scalar file (or point file for omega/incidence)")
    g.add_argument("--family", help="ap | gp | random | union-of-lines | custom")
    g.add_argument("--sizes", help="size list or range, e.g. 4..16 or 5,8,13")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--budget", type=float, default=None, help="elementary-operation budget (env CRL_BUDGET)")
    g.add_argument("--threshold-t", dest="threshold_t", default=None)
    g.add_argument("--workers", type=int, default=None)
    g.add_argument("--out-dir", dest="out_dir", default=None)
    f = p.add_argument_group("family parameters")
    f.add_argument("--ratio", default=None, help="GP ratio (and union-of-lines radius ratio)")
    f.add_argument("--difference", default=None, help="AP common difference")
    f.add_argument("--start", default=None, help="first term of AP/GP")
    f.add_argument("--height", type=int, default=None, help="height bound for random rationals")


def build_parser():
    parser = argparse.ArgumentParser(prog="crlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"crlab {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "crossratio": "C[A] and R[A]",
        "energy": "quadruple/pentuple energies and the G partition",
        "rich": "richness histogram of Moebius maps",
        "setalg": "sum/product growth and Pluennecke checks",
        "omega": "omega[E], directions, sine sets, union of lines",
        "incidence": "point/curve incidences and the solution count I",
        "sweep": "exponent fit of a statistic across a family",
        "search": "annealing search for small normalised statistics",
        "verify": "run the exact-identity suites",
    }
    subs = {}
    for name in COMMANDS:
        subs[name] = p = sub.add_parser(name, help=helps[name])
        _add_common(p)
    subs["incidence"].add_argument("--curves", help="curve file ('L a b c' / 'H alpha delta beta')")
    subs["incidence"].add_argument("--solutions", choices=("auto", "yes", "no"), default=None,
                                   help="also count r'y' - r(y-1) = 1 over C[A]")
    subs["rich"].add_argument("--k", type=int, default=None, help="report maps with richness >= k")
    subs["setalg"].add_argument("--k", type=int, default=None)
    subs["setalg"].add_argument("--l", type=int, default=None)
    for name in ("sweep", "search"):
        subs[name].add_argument("--statistic", default=None,
                                help="C, R, Q, P, A+A, AA, CC, C+C, C-C, omega, SS")
    subs["search"].add_argument("--n", type=int, default=None)
    subs["search"].add_argument("--exponent", type=float, default=None)
    subs["search"].add_argument("--iterations", type=int, default=None)
    subs["search"].add_argument("--restarts", type=int, default=None)
    subs["omega"].add_argument("--directions", help="comma list of t-parameters for union of lines")
    subs["omega"].add_argument("--radii", help="comma list of positive radii T for union of lines")
    subs["verify"].add_argument("--quick", action="store_const", const="true", default=None,
                                help="reduced case counts")
    return parser


def _parse_sizes(text):
    if text is None:
        return None
    text = str(text).strip()
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad size list {text!r}", "sizes") from exc


def resolve_config(args) -> dict:
    """Defaults < config file < CRL_BUDGET (budget only) < flags."""
    cfg = {k: d for k, (_, d) in OPTIONS.items()}
    if getattr(args, "config", None):
        for key, value in parse_config_file(args.config).items():
            if key not in OPTIONS:
                raise ConfigError(f"unknown key {key!r}", args.config)
            typ = OPTIONS[key][0]
            try:
                cfg[key] = typ(value)
            except ValueError as exc:
                raise ConfigError(f"bad value {value!r} for {key}", f"{args.config}:{key}") from exc
    if cfg["budget"] is None and os.environ.get("CRL_BUDGET"):
        try:
            cfg["budget"] = float(os.environ["CRL_BUDGET"])
        except ValueError as exc:
            raise ConfigError("CRL_BUDGET must be a number", "CRL_BUDGET") from exc
    for key in OPTIONS:
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    if cfg["budget"] is None:
        cfg["budget"] = float(DEFAULT_BUDGET)
    cfg["command"] = args.command
    cfg["sizes"] = _parse_sizes(cfg["sizes"])
    try:
        t = Fraction(cfg["threshold_t"])
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad threshold {cfg['threshold_t']!r}", "threshold-t") from exc
    if not 0 < t < 1:
        raise ConfigError("threshold t must lie in (0, 1)", "threshold-t")
    cfg["threshold_t"] = str(t)
    if cfg["workers"] < 1:
        raise ConfigError("workers must be >= 1", "workers")
    get_field(cfg["mode"])
    return cfg


def _family_spec(cfg, sizes=None):
    fld = get_field(cfg["mode"])
    try:
        ratio, diff, start = (Fraction(cfg[k]) for k in ("ratio", "difference", "start"))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError("family parameters must be rationals", "family") from exc
    return FamilySpec(
        cfg["family"],
        sizes or cfg["sizes"] or [8],
        seed=cfg["seed"],
        ratio=ratio,
        difference=diff,
        start=start,
        height=cfg["height"] or 50,
        mode=fld.name,
    )


def _load_set(cfg, *, points=False):
    """The single input: a file or the largest member of a family."""
    if bool(cfg["input"]) == bool(cfg["family"]):
        raise ConfigError("give exactly one of --input or --family", "input")
    fld = get_field(cfg["mode"])
    if cfg["input"]:
        if points:
            return parse_point_file(cfg["input"], fld)
        return parse_scalar_file(cfg["input"], fld)
    spec = _family_spec(cfg)
    X = build_family(spec, max(spec.sizes))
    if points and isinstance(X, ScalarSet):
        return grid(X)
    if not points and isinstance(X, PointSet):
        raise ConfigError("union-of-lines family yields points; use the omega command", "family")
    return X


def _guard(cfg, statistic, n):
    est = statistic_cost(statistic, n)
    if est > cfg["budget"]:
        raise BudgetExceeded(est, cfg["budget"])


def _scalar_rows(S):
    return [[format_scalar(v)] for v in S]


def cmd_crossratio(cfg, out):
    A = _load_set(cfg)
    _guard(cfg, "C", len(A))
    C = cross_ratio_set(A, workers=cfg["workers"])
    out.csv("cross_ratios.csv", ["value"], _scalar_rows(C))
    summary = {"size_A": len(A), "size_C": len(C), "C_over_A2": str(Fraction(len(C), len(A) ** 2)),
               "orbit_closed": is_orbit_closed(C)}
    if not A.has_infinity() and len(A) >= 3:
        R = pinned_cross_ratio_set(A, workers=cfg["workers"])
        out.csv("pinned_cross_ratios.csv", ["value"], _scalar_rows(R))
        summary["size_R"] = len(R)
    out.json("crossratio.json", summary)
    return summary


def cmd_energy(cfg, out):
    A = _load_set(cfg)
    _guard(cfg, "P", len(A))
    t = Fraction(cfg["threshold_t"])
    if len(A) < 5:
        # no pentuples yet; Q is still defined
        return _energy_small(A, t, cfg, out)
    stats = pentuple_energy(A, workers=cfg["workers"])
    g1, g2 = g_partition(stats, t)
    hist = cross_ratio_histogram(A, workers=cfg["workers"])
    out.csv("cross_ratio_multiplicity.csv", ["value", "multiplicity"],
            [[format_scalar(v), hist[v]] for v in sorted(hist, key=sort_key)])
    out.csv("g_statistics.csv", ["x", "y", "p"],
            [[format_scalar(x), format_scalar(y), c] for x, y, c in stats.pairs()])
    summary = {
        "size_A": len(A),
        "Q": stats.Q,
        "P": stats.P,
        "size_G": stats.size_G,
        "size_C": stats.size_C,
        "pentuples": stats.total,
        "t": str(t),
        "size_G1": g1,
        "size_G2": g2,
        "cauchy_schwarz": stats.cauchy_schwarz_holds(),
    }
    out.json("energy.json", summary)
    return summary


def _energy_small(A, t, cfg, out):
    hist = cross_ratio_histogram(A, workers=cfg["workers"])
    out.csv("cross_ratio_multiplicity.csv", ["value", "multiplicity"],
            [[format_scalar(v), hist[v]] for v in sorted(hist, key=sort_key)])
    out.csv("g_statistics.csv", ["x", "y", "p"], [])
    summary = {"size_A": len(A), "Q": quadruple_energy(A, workers=cfg["workers"]), "P": 0, "size_G": 0,
               "size_C": len(hist), "pentuples": 0, "t": str(t), "size_G1": 0, "size_G2": 0,
               "cauchy_schwarz": True}
    out.json("energy.json", summary)
    return summary


def cmd_rich(cfg, out):
    A = _load_set(cfg)
    _guard(cfg, "CC", len(A))
    hist = rich_maps(A, workers=cfg["workers"])
    k = cfg["k"]
    out.csv("richness_histogram.csv", ["k", "count"], hist.rows())
    out.csv("rich_maps.csv", ["alpha", "beta", "gamma", "delta", "m", "richness"],
            [[*(format_scalar(c) for c in tau.coeffs), hist.domain[tau], r]
             for tau in hist.maps_at_least(k) for r in [hist.richness[tau]]])
    out.csv("dyadic.csv", ["j", "k", "M_k", "M_k_times_k5"], hist.dyadic_table())
    summary = {
        "size_A": len(A),
        "candidates": hist.candidates,
        "rich_maps": len(hist.domain),
        "k": k,
        "at_least_k": hist.at_least(k),
        "Q_from_richness": hist.quadruple_energy(),
        "P_from_richness": hist.pentuple_energy(),
        "quadruple_order": "ordered; unordered count is richness/24",
    }
    out.json("rich.json", summary)
    return summary


def cmd_setalg(cfg, out):
    A = _load_set(cfg)
    _guard(cfg, "A+A", len(A) ** 2)
    k, l = cfg["k"], cfg["l"]
    rows = [growth_report("A+A", A, sumset(A, A)).row("A"), growth_report("A*A", A, productset(A, A)).row("A")]
    report = plunnecke_check(A, max(k, 1), max(l, 0))
    summary = {
        "size_A": len(A),
        "K": str(report.K),
        "k": report.k,
        "l": report.l,
        "size_kA_minus_lA": report.size_kl,
        "plunnecke_bound": str(report.bound),
        "plunnecke_holds": report.holds,
    }
    if len(A) >= 4:
        C = cross_ratio_set(A, workers=cfg["workers"])
        growth = growth_statistics(C)
        rows.extend(r.row("C[A]") for r in growth["reports"])
        summary["C_orbit_closed"] = growth["orbit_closed"]
    refine = thin_plunnecke_refine(A, max(k, 1))
    summary["refine"] = {"size_subset": len(refine.subset), "size_sum": refine.size,
                         "K_k_A": str(refine.Kk_bound), "exhaustive": refine.exhaustive}
    out.csv("growth.csv", ["set_id", "op", "size_in", "size_out", "ratio", "exponent"], rows)
    out.json("setalg.json", summary)
    return summary


def _parse_list(text, what):
    try:
        return [Fraction(v) for v in str(text).split(",") if v.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad {what} list {text!r}", what) from exc


def cmd_omega(cfg, out):
    summary = {}
    if cfg["directions"] or cfg["radii"]:
        if not (cfg["directions"] and cfg["radii"]):
            raise ConfigError("union of lines needs both --directions and --radii", "directions")
        phi = [RationalDirection(t) for t in _parse_list(cfg["directions"], "directions")]
        T = _parse_list(cfg["radii"], "radii")
        u = union_of_lines(phi, T)
        E = u.points
        sin_d = sine_difference_set(phi)
        out.csv("sine_differences.csv", ["value"], _scalar_rows(sin_d))
        summary.update(union_of_lines=True, size_Phi=len(set(phi)), size_T=len(set(T)),
                       identity_holds=True, size_TT_sinD=len(u.products))
    else:
        E = _load_set(cfg, points=True)
    _guard(cfg, "omega", int(len(E) ** 0.5) + 1)
    om = omega_set(E)
    out.text("points.txt", E.to_text())
    out.csv("omega.csv", ["value"], _scalar_rows(om))
    summary.update(size_E=len(E), size_omega=len(om))
    if all(not (p.x == 0 and p.y == 0) for p in E):
        summary["size_Phi_E"] = len(directions(E))
    out.json("omega.json", summary)
    return summary


def cmd_incidence(cfg, out):
    fld = get_field(cfg["mode"])
    P = _load_set(cfg, points=True)
    if not cfg["curves"]:
        raise ConfigError("incidence needs --curves", "curves")
    curves = parse_curve_file(cfg["curves"], fld)
    rep = count_incidences(P, curves)
    out.csv("rich_curves.csv", ["k", "count"], rep.histogram())
    out.csv("per_curve.csv", ["curve", "points"], [[c.text(), n] for c, n in zip(rep.curves, rep.per_curve)])
    summary = {"points": len(P), "curves": len(rep.curves), "incidences": rep.incidences}
    want = cfg["solutions"]
    if want != "no" and cfg["family"] and not cfg["input"]:
        spec = _family_spec(cfg)
        A = build_family(spec, max(spec.sizes))
        if isinstance(A, ScalarSet) and len(A) >= 4:
            C = cross_ratio_set(A, workers=cfg["workers"])
            if want == "yes" or len(C) <= 2000:
                summary["size_C"] = len(C)
                summary["solution_count_I"] = solution_count_I(C)
    out.json("incidence.json", summary)
    return summary


def cmd_sweep(cfg, out):
    if not cfg["family"]:
        raise ConfigError("sweep needs --family", "family")
    spec = _family_spec(cfg, cfg["sizes"] or list(range(4, 13)))
    fit = sweep(spec, cfg["statistic"], budget=cfg["budget"], workers=cfg["workers"])
    out.csv("fit.csv", ["n", "statistic", "value"], [[n, cfg["statistic"], v] for n, v in fit.samples])
    doc = {**fit.to_dict(), "family": spec.describe(), "statistic": cfg["statistic"], "seed": cfg["seed"]}
    out.json("fit.json", doc)
    return doc


def cmd_search(cfg, out):
    res = search_extremal(
        cfg["statistic"], cfg["n"], cfg["exponent"],
        iterations=cfg["iterations"], seed=cfg["seed"], height=cfg["height"] or 10,
        restarts=cfg["restarts"], budget=cfg["budget"], workers=cfg["workers"], mode=cfg["mode"],
    )
    out.csv("trace.csv", ["iteration", "best_value"], list(enumerate(res.trace)))
    out.text("best.txt", res.best.to_text())
    doc = {"statistic": res.statistic, "n": res.n, "exponent": res.exponent, "best_value": res.best_value,
           "objective": res.objective, "seed": res.seed, "restart": res.restart}
    out.json("search.json", doc)
    return doc


def cmd_verify(cfg, out):
    from .verify import run_checks

    quick = str(cfg["quick"]).lower() in ("1", "true", "yes")
    results = run_checks(seed=cfg["seed"], quick=quick)
    for r in results:
        print(r.line())
    out.json("verify.json", {"quick": quick, "results": [
        {"name": r.name, "passed": r.passed, "cases": r.cases, "detail": r.detail} for r in results]})
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise IdentityViolation("failed: " + ", ".join(failed))
    return {"passed": len(results)}


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
        out = RunWriter(cfg["out_dir"])
        result = HANDLERS[args.command](cfg, out)
        out.manifest({k: v for k, v in cfg.items()}, {"result": result})
    except BudgetExceeded as exc:
        print(f"crlab: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except IdentityViolation as exc:
        print(f"crlab: verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ConfigError, OSError) as exc:
        print(f"crlab: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CrlabError as exc:
        print(f"crlab: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.verbose:
        log.info("wrote %s", cfg["out_dir"])
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
