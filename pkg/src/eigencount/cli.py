"""Command-line interface.

Subcommands cover the norm calculator, the interval partitioner, the
count bounds on the line / plane / strip, the transverse strip spectrum,
and the finite-difference counting oracle.  Results print as an aligned
table; --out writes the same payload as JSON, --plot writes an SVG.

Exit codes: 0 on success, 2 for bad input, 3 when an iteration fails to
converge, 4 when an internal invariant is violated.
"""

import argparse
import sys

import numpy as np

from .errors import ConvergenceError, InputError, InvariantError
from .inertia import discretize_1d, discretize_plane, discretize_strip, inertia_count
from .line import (
    bound_1d,
    bound_1d_general,
    mollify_measure,
    partition_interval,
    partition_piece_value,
    partition_quality,
    weighted_terms_1d,
)
from .measures import (
    DiscreteMeasure,
    Measure1D,
    PotentialField,
    line_projection,
    load_measure,
)
from .orlicz import (
    WeightedSamples,
    average_norm,
    l1w_quasinorm,
    luxemburg_norm,
    orlicz_norm,
)
from .plane import (
    bound_plane_lebesgue,
    bound_plane_measure,
    khuri_bound,
    orlicz_terms_plane,
    weighted_terms_plane,
)
from .reporting import format_table, to_json_text
from .strip import (
    RobinParams,
    bound_strip_neumann,
    bound_strip_robin,
    lambda12,
    strip_orlicz_terms,
    strip_terms_neumann,
    strip_terms_robin,
    transverse_spectrum,
)

BOUND_THEOREMS = (
    "est1",
    "xgenest",
    "mainthm",
    "laptnetrsol",
    "khuri",
    "gest2",
    "rbtheqn",
    "radest4",
)


def _parse_consts(pairs, allowed):
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise InputError("--const expects KEY=VALUE, got %r" % item)
        key, _, raw = item.partition("=")
        key = key.strip()
        if key not in allowed:
            raise InputError(
                "--const %s is not adjustable here (allowed: %s)"
                % (key, ", ".join(sorted(allowed)) or "none")
            )
        try:
            out[key] = float(raw)
        except ValueError:
            raise InputError("--const %s needs a numeric value, got %r" % (key, raw))
    return out


def _rows_print(rows):
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print("%-*s  %s" % (width, k, v))


def _fmt(v):
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def _emit(payload, args, table=None):
    if table is not None:
        print(table, end="" if table.endswith("\n") else "\n")
    else:
        _rows_print([(k, _fmt(v)) for k, v in payload.items() if not isinstance(v, (dict, list, tuple))])
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(to_json_text(payload))
            fh.write("\n")
        print("wrote %s" % args.out)


def _save_bars(report, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(
        1, max(len(report.series), 1), figsize=(4.2 * max(len(report.series), 1), 3.2)
    )
    if len(report.series) == 1:
        axes = [axes]
    for ax, series in zip(axes, report.series):
        ns = sorted(series.terms)
        ax.bar(range(len(ns)), [series.terms[n] for n in ns], color="#4878a8")
        ax.set_xticks(range(len(ns)))
        ax.set_xticklabels([str(n) for n in ns], fontsize=7)
        ax.set_title("%s terms" % series.label, fontsize=9)
    fig.suptitle("%s: %.6g" % (report.method, report.value), fontsize=10)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    print("wrote %s" % path)


# ---------------------------------------------------------------------------
# subcommands

def _cmd_norms(args):
    loaded = load_measure(args.input, recenter=False)
    mu, V = loaded.measure, loaded.potential
    vals = V.values_for(mu)
    wts = mu.masses()
    live = wts > 0.0
    s = WeightedSamples(vals[live], wts[live])
    mass = float(wts.sum())
    payload = {
        "carriers": int(live.sum()),
        "mass": mass,
        "luxemburg": luxemburg_norm(s),
        "orlicz": orlicz_norm(s),
        "average": average_norm(s),
        "weak_l1": l1w_quasinorm(vals[live] * wts[live]),
    }
    _emit(payload, args)


def _cmd_partition(args):
    loaded = load_measure(args.input, recenter=False)
    nu = line_projection(loaded.potential, loaded.measure)
    notes = []
    if args.eps:
        nu = mollify_measure(nu, args.eps)
        notes.append("mollified atoms at eps = %g" % args.eps)
    interval = tuple(args.interval) if args.interval else nu.support_bounds()
    breaks = partition_interval(nu, interval, args.n, a_exp=args.a_exp)
    edges = [interval[0]] + list(breaks) + [interval[1]]
    pieces = [
        partition_piece_value(nu, a, b, args.a_exp)
        for a, b in zip(edges[:-1], edges[1:])
    ]
    worst = partition_quality(nu, interval, breaks, a_exp=args.a_exp)
    payload = {
        "interval": list(interval),
        "n": args.n,
        "a_exp": args.a_exp,
        "breaks": list(breaks),
        "piece_values": pieces,
        "max_piece": worst,
        "notes": notes,
    }
    rows = [("interval", "[%.12g, %.12g]" % interval), ("pieces", str(args.n))]
    for i, (b0, b1, t) in enumerate(zip(edges[:-1], edges[1:], pieces)):
        rows.append(("piece %d" % i, "[%.10g, %.10g]  value %.10g" % (b0, b1, t)))
    _rows_print(rows)
    for note in notes:
        print(note)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(to_json_text(payload) + "\n")
        print("wrote %s" % args.out)
    if args.plot:
        _plot_partition(nu, interval, breaks, args.plot)


def _plot_partition(nu, interval, breaks, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = np.linspace(interval[0], interval[1], 600)
    fig, ax = plt.subplots(figsize=(5.5, 3.2))
    ax.plot(xs, [nu.cdf(x) for x in xs], color="#4878a8")
    for b in breaks:
        ax.axvline(b, color="#a84848", lw=0.8, ls="--")
    ax.set_xlabel("x")
    ax.set_ylabel("cumulative mass")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    print("wrote %s" % path)


def _cmd_bound_1d(args):
    loaded = load_measure(args.input, recenter=False)
    nu = line_projection(loaded.potential, loaded.measure)
    consts = _parse_consts(args.const, {"kappa"})
    kappa = consts.get("kappa", args.kappa)
    terms = weighted_terms_1d(nu)
    if args.theorem == "est1":
        report = bound_1d(terms, kappa=kappa)
    elif args.theorem == "xgenest":
        report = bound_1d_general(terms, kappa if kappa is not None else 1.559)
    else:
        raise InputError("bound-1d supports est1 or xgenest, not %s" % args.theorem)
    _emit(report.to_payload(), args, table=format_table(report))
    if args.plot:
        _save_bars(report, args.plot)


def _cmd_bound_plane(args):
    # ring geometry is anchored at the file's origin; coordinates stay
    # as authored (counts are translation invariant, the terms are not)
    loaded = load_measure(args.input, recenter=False)
    mu, V = loaded.measure, loaded.potential
    if args.theorem == "mainthm":
        consts = _parse_consts(args.const, {"norm_coefficient"})
        if args.c0 is None or args.c1 is None or args.dim is None:
            raise InputError("mainthm needs --c0, --c1 and --dim (the scaling data)")
        g = weighted_terms_plane(V, mu)
        d = orlicz_terms_plane(V, mu, args.c0, args.c1, args.dim)
        report = bound_plane_measure(g, d, norm_coefficient=consts.get("norm_coefficient"))
    elif args.theorem == "laptnetrsol":
        consts = _parse_consts(args.const, {"norm_coefficient"})
        report = bound_plane_lebesgue(
            V, mu, radial=args.radial, norm_coefficient=consts.get("norm_coefficient")
        )
    elif args.theorem == "khuri":
        consts = _parse_consts(args.const, {"coefficient"})
        report = khuri_bound(V, mu, coefficient=consts.get("coefficient"))
    else:
        raise InputError(
            "bound-plane supports mainthm, laptnetrsol or khuri, not %s" % args.theorem
        )
    _emit(report.to_payload(), args, table=format_table(report))
    if args.plot:
        _save_bars(report, args.plot)


def _atomize(mu, V):
    # flatten grid cells into point carriers; the plain section norms see
    # the same samples either way
    pts, wts, vals = mu.points(), mu.masses(), V.values_for(mu)
    return DiscreteMeasure(pts, wts), PotentialField(atom_values=vals)


def _cmd_bound_strip(args):
    loaded = load_measure(args.input, recenter=False)
    mu, V = loaded.measure, loaded.potential
    consts = _parse_consts(args.const, {"norm_coefficient"})
    nc = consts.get("norm_coefficient")
    if args.theorem == "gest2":
        if args.alpha or args.beta:
            raise InputError(
                "gest2 is the Neumann-wall estimate; rbtheqn/radest4 take Robin walls"
            )
        terms_a = strip_terms_neumann(V, mu, args.width)
        if mu.is_lebesgue_grid:
            terms_n = strip_orlicz_terms(V, mu, args.width)
        else:
            amu, aV = _atomize(mu, V)
            terms_n = strip_orlicz_terms(aV, amu, args.width)
        report = bound_strip_neumann(terms_a, terms_n, norm_coefficient=nc)
    elif args.theorem in ("rbtheqn", "radest4"):
        p = RobinParams(args.alpha, args.beta, args.width)
        terms_f = strip_terms_robin(V, mu, p)
        if args.theorem == "radest4":
            if not mu.is_lebesgue_grid:
                raise InputError("radest4 needs an area-grid measure")
            terms_n = strip_orlicz_terms(V, mu, args.width)
        else:
            amu, aV = _atomize(mu, V)
            terms_n = strip_orlicz_terms(aV, amu, args.width)
        report = bound_strip_robin(terms_f, terms_n, p, norm_coefficient=nc)
    else:
        raise InputError(
            "bound-strip supports gest2, rbtheqn or radest4, not %s" % args.theorem
        )
    _emit(report.to_payload(), args, table=format_table(report))
    if args.plot:
        _save_bars(report, args.plot)


def _cmd_spectrum_strip(args):
    p = RobinParams(args.alpha, args.beta, args.width)
    spec = transverse_spectrum(p, k=args.modes)
    lam1, lam2, _ = lambda12(p)
    payload = {
        "alpha": args.alpha,
        "beta": args.beta,
        "width": args.width,
        "region": spec.region,
        "taus": list(spec.taus),
        "lambda_1": lam1,
        "lambda_2": lam2,
    }
    rows = [("region", spec.region)]
    for i, t in enumerate(spec.taus):
        rows.append(("tau_%d" % (i + 1), _fmt(t)))
    rows += [("lambda_1", _fmt(lam1)), ("lambda_2 (2-D)", _fmt(lam2))]
    _rows_print(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(to_json_text(payload) + "\n")
        print("wrote %s" % args.out)
    if args.plot:
        _plot_spectrum(p, spec, args.plot)


def _plot_spectrum(p, spec, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    from .strip import _characteristic

    dd = _characteristic(p)
    lo = min(spec.taus[0] * 1.5, -1.0)
    hi = spec.taus[-1] * 1.2 + 1.0
    ts = np.linspace(lo, hi, 800)
    fig, ax = plt.subplots(figsize=(5.5, 3.2))
    ax.plot(ts, [dd(t) for t in ts], color="#4878a8", lw=1.0)
    ax.axhline(0.0, color="#888888", lw=0.6)
    for t in spec.taus:
        ax.plot([t], [0.0], "o", color="#a84848", ms=4)
    ax.set_xlabel("tau")
    ax.set_ylabel("characteristic")
    ax.set_title("region %s" % spec.region, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    print("wrote %s" % path)


def _oracle_1d(args, loaded, doubled):
    nu = line_projection(loaded.potential, loaded.measure)
    if doubled:
        nu = Measure1D(
            atoms=nu.atoms,
            atom_mass=2.0 * nu.atom_mass,
            grid_x0=nu.grid_x0,
            grid_h=nu.grid_h,
            grid_mass=None if nu.grid_mass is None else 2.0 * nu.grid_mass,
        )
    lo, hi = nu.support_bounds()
    interval = (min(lo, -args.trunc), max(hi, args.trunc))
    m = discretize_1d(nu, interval, args.h, bc=args.bc)
    return inertia_count(m, shift=args.shift)


def _cmd_oracle(args):
    recenter = args.problem == "plane"
    loaded = load_measure(args.input, recenter=recenter)
    if recenter and loaded.shift != (0.0, 0.0):
        print("recentered by (%.6g, %.6g)" % loaded.shift)
    if args.problem == "1d":
        res = _oracle_1d(args, loaded, doubled=args.doubled)
    elif args.problem == "strip":
        p = RobinParams(args.alpha, args.beta, args.width)
        m = discretize_strip(loaded.potential, loaded.measure, p, args.trunc, args.h)
        res = inertia_count(m, shift=args.shift)
    elif args.problem == "plane":
        m = discretize_plane(loaded.potential, loaded.measure, args.trunc, args.h)
        res = inertia_count(m, shift=args.shift)
    else:
        raise InputError("oracle problems: 1d, strip, plane")
    payload = {
        "problem": args.problem,
        "count": res.count,
        "shift": res.shift,
        "order": res.order,
        "bandwidth": res.bandwidth,
        "min_pivot": res.min_pivot,
        "perturbed_pivots": res.perturbed_pivots,
    }
    _emit(payload, args)


def _cmd_verify(args):
    t = args.theorem
    if t in ("est1", "xgenest"):
        loaded = load_measure(args.input, recenter=False)
        nu = line_projection(loaded.potential, loaded.measure)
        terms = weighted_terms_1d(nu)
        report = (
            bound_1d(terms, kappa=args.kappa)
            if t == "est1"
            else bound_1d_general(terms, args.kappa if args.kappa else 1.559)
        )
        res = _oracle_1d(args, loaded, doubled=True)
    elif t in ("gest2", "rbtheqn", "radest4"):
        loaded = load_measure(args.input, recenter=False)
        mu, V = loaded.measure, loaded.potential
        if t == "gest2":
            p = RobinParams(0.0, 0.0, args.width)
            terms_a = strip_terms_neumann(V, mu, args.width)
            if mu.is_lebesgue_grid:
                terms_n = strip_orlicz_terms(V, mu, args.width)
            else:
                amu, aV = _atomize(mu, V)
                terms_n = strip_orlicz_terms(aV, amu, args.width)
            report = bound_strip_neumann(terms_a, terms_n)
        else:
            p = RobinParams(args.alpha, args.beta, args.width)
            terms_f = strip_terms_robin(V, mu, p)
            if t == "radest4":
                if not mu.is_lebesgue_grid:
                    raise InputError("radest4 needs an area-grid measure")
                terms_n = strip_orlicz_terms(V, mu, args.width)
            else:
                amu, aV = _atomize(mu, V)
                terms_n = strip_orlicz_terms(aV, amu, args.width)
            report = bound_strip_robin(terms_f, terms_n, p)
        m = discretize_strip(V, mu, p, args.trunc, args.h)
        res = inertia_count(m, shift=args.shift)
    elif t in ("mainthm", "laptnetrsol", "khuri"):
        loaded = load_measure(args.input, recenter=False)
        mu, V = loaded.measure, loaded.potential
        if t == "mainthm":
            if args.c0 is None or args.c1 is None or args.dim is None:
                raise InputError("mainthm needs --c0, --c1 and --dim")
            g = weighted_terms_plane(V, mu)
            d = orlicz_terms_plane(V, mu, args.c0, args.c1, args.dim)
            report = bound_plane_measure(g, d)
        elif t == "laptnetrsol":
            report = bound_plane_lebesgue(V, mu, radial=args.radial)
        else:
            report = khuri_bound(V, mu)
        # the count is translation invariant, so the oracle may recenter
        # to sit the support deep inside the computational box
        centered = load_measure(args.input, recenter=True)
        m = discretize_plane(centered.potential, centered.measure, args.trunc, args.h)
        res = inertia_count(m, shift=args.shift)
    else:
        raise InputError("verify does not know theorem %s" % t)
    ok = report.value >= res.count
    payload = {
        "theorem": t,
        "bound": report.value,
        "oracle_count": res.count,
        "holds": ok,
        "order": res.order,
        "h": args.h,
        "trunc": args.trunc,
    }
    _rows_print(
        [
            ("theorem", t),
            ("bound", _fmt(report.value)),
            ("oracle count", str(res.count)),
            ("bound >= count", "yes" if ok else "NO"),
            ("matrix order", str(res.order)),
        ]
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(to_json_text(payload) + "\n")
        print("wrote %s" % args.out)


# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="eigencount",
        description="Counting bounds for two-dimensional Schrodinger operators "
        "with measure potentials, plus a finite-difference counting oracle.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, plot=True):
        p.add_argument("--out", help="write the result as JSON to this path")
        if plot:
            p.add_argument("--plot", help="write an SVG figure to this path")

    p = sub.add_parser("norms", help="Orlicz norms of the potential samples")
    p.add_argument("--input", required=True)
    add_common(p, plot=False)
    p.set_defaults(func=_cmd_norms)

    p = sub.add_parser("partition", help="split an interval into equal-value pieces")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, required=True, help="number of pieces")
    p.add_argument("--a-exp", type=float, default=1.0, dest="a_exp",
                   help="exponent of the length factor in the piece value")
    p.add_argument("--interval", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--eps", type=float, default=0.0,
                   help="mollify atoms at this radius first")
    add_common(p)
    p.set_defaults(func=_cmd_partition)

    p = sub.add_parser("bound-1d", help="eigenvalue count bounds on the line")
    p.add_argument("--input", required=True)
    p.add_argument("--theorem", required=True, choices=("est1", "xgenest"))
    p.add_argument("--kappa", type=float)
    p.add_argument("--const", action="append", metavar="KEY=VALUE")
    add_common(p)
    p.set_defaults(func=_cmd_bound_1d)

    p = sub.add_parser("bound-plane", help="eigenvalue count bounds on the plane")
    p.add_argument("--input", required=True)
    p.add_argument("--theorem", required=True,
                   choices=("mainthm", "laptnetrsol", "khuri"))
    p.add_argument("--c0", type=float)
    p.add_argument("--c1", type=float)
    p.add_argument("--dim", type=float, help="scaling exponent of the measure")
    p.add_argument("--radial", action="store_true",
                   help="mark the potential as radial (notes the droppable sum)")
    p.add_argument("--const", action="append", metavar="KEY=VALUE")
    add_common(p)
    p.set_defaults(func=_cmd_bound_plane)

    p = sub.add_parser("bound-strip", help="eigenvalue count bounds on a strip")
    p.add_argument("--input", required=True)
    p.add_argument("--theorem", required=True,
                   choices=("gest2", "rbtheqn", "radest4"))
    p.add_argument("--width", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--const", action="append", metavar="KEY=VALUE")
    add_common(p)
    p.set_defaults(func=_cmd_bound_strip)

    p = sub.add_parser("spectrum-strip", help="transverse Robin spectrum")
    p.add_argument("--width", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--modes", type=int, default=4)
    add_common(p)
    p.set_defaults(func=_cmd_spectrum_strip)

    p = sub.add_parser("oracle", help="finite-difference eigenvalue counting")
    p.add_argument("--input", required=True)
    p.add_argument("--problem", required=True, choices=("1d", "strip", "plane"))
    p.add_argument("--trunc", type=float, required=True,
                   help="half-width of the computational box")
    p.add_argument("--h", type=float, required=True, help="mesh step")
    p.add_argument("--shift", type=float, default=0.0)
    p.add_argument("--width", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--bc", choices=("neumann", "dirichlet"), default="neumann")
    p.add_argument("--doubled", action="store_true",
                   help="1d only: count for the doubled measure 2 nu")
    add_common(p, plot=False)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="bound and oracle side by side")
    p.add_argument("--input", required=True)
    p.add_argument("--theorem", required=True, choices=BOUND_THEOREMS)
    p.add_argument("--trunc", type=float, required=True)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--kappa", type=float)
    p.add_argument("--width", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--c0", type=float)
    p.add_argument("--c1", type=float)
    p.add_argument("--dim", type=float)
    p.add_argument("--radial", action="store_true")
    p.add_argument("--bc", choices=("neumann", "dirichlet"), default="neumann")
    # just below the spectral edge, so truncation modes sitting exactly at
    # the edge are not miscounted
    p.add_argument("--shift", type=float, default=-1e-8)
    add_common(p, plot=False)
    p.set_defaults(func=_cmd_verify)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except InputError as e:
        print("input error: %s" % e, file=sys.stderr)
        return 2
    except ConvergenceError as e:
        print("convergence error: %s" % e, file=sys.stderr)
        return 3
    except InvariantError as e:
        print("invariant violated: %s" % e, file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
