"""Command-line interface.

Every subcommand prints CSV with a header row (or JSON lines under
--json) and exits nonzero when an internal cross-check fails, so runs
can be diffed and scripted. Floats are rendered with %.17g: output is
reproducible bit for bit across runs on one platform.
"""

from __future__ import annotations

import csv
import json as _json
import math
import sys

import click

from . import __version__, constants as consts, lfun, simplezeros as sz, stats
from .cache import ZeroCache, build_family
from .arith import family_moduli
from .characters import character_group
from .errors import CacheMissError
from .testfn import bump_weight, sinc_squared


def _fmt(v) -> str:
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def _emit(ctx, rows: list[dict]) -> None:
    """CSV with a header (default) or one JSON object per line."""
    if not rows:
        return
    if ctx.obj["json"]:
        for row in rows:
            click.echo(_json.dumps(row, separators=(",", ":")))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(rows[0].keys())
        for row in rows:
            writer.writerow([_fmt(v) for v in row.values()])


def _chi_label(exponents) -> str:
    return ";".join(str(e) for e in exponents)


@click.group()
@click.version_option(version=__version__, prog_name="lzeros")
@click.option("--cache-dir", default=None, metavar="DIR",
              help="Zero-cache directory (default: $LZEROS_CACHE or ./.lzeros-cache).")
@click.option("--json", "as_json", is_flag=True, help="JSON lines instead of CSV.")
@click.pass_context
def main(ctx, cache_dir, as_json):
    """Zeros of primitive Dirichlet L-functions and family statistics."""
    ctx.ensure_object(dict)
    ctx.obj["cache_dir"] = cache_dir
    ctx.obj["json"] = as_json


def _open_cache(ctx) -> ZeroCache:
    return ZeroCache(ctx.obj["cache_dir"])


@main.command()
@click.option("--Q", "Q", type=float, required=True, help="Family scale: moduli in (Q, 2Q).")
@click.option("--Tmax", "t_max", type=float, default=200.0, show_default=True)
@click.option("--grid-step", type=float, default=0.05, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Worker processes (one modulus per job).")
@click.pass_context
def zeros(ctx, Q, t_max, grid_step, jobs):
    """Scan and cache zeros for every primitive character in the family."""
    cache = _open_cache(ctx)
    done = build_family(cache, Q, t_max, grid_step=grid_step, jobs=jobs,
                        progress=lambda q: click.echo("q=%d done" % q, err=True))
    rows = []
    for q in family_moduli(Q):
        for chi in character_group(q).primitive:
            rec = cache.read(q, chi.exponents, t_max)
            rows.append({"q": q, "chi": _chi_label(chi.exponents),
                         "conductor": rec.conductor, "t_max": rec.t_max,
                         "complete": rec.complete,
                         "zeros": len(rec.ordinates)})
    _emit(ctx, rows)
    click.echo("scanned %d characters" % done, err=True)


@main.command("explicit-formula")
@click.option("--q", type=int, required=True)
@click.option("--X", "X", type=float, required=True)
@click.option("--Tmax", "t_max", type=float, default=500.0, show_default=True)
@click.pass_context
def explicit_formula(ctx, q, X, t_max):
    """Explicit-formula residual for each primitive character mod q."""
    cache = _open_cache(ctx)
    phi = sinc_squared()
    rows = []
    for chi in character_group(q).primitive:
        try:
            rec = cache.read(q, chi.exponents, t_max)
            scan = rec
        except CacheMissError:
            scan = lfun.find_zeros(chi, t_max)
            cache.store(scan, conductor=chi.conductor)
        terms = stats.explicit_formula_terms(chi, X, phi, scan, t_max)
        rows.append({
            "q": q, "chi": _chi_label(chi.exponents), "X": X,
            "zero_sum_re": terms["zero_sum"].real,
            "zero_sum_im": terms["zero_sum"].imag,
            "rhs_re": terms["right"].real,
            "residual": terms["residual"],
            "tail_estimate": terms["tail_estimate"],
        })
    _emit(ctx, rows)


@main.command("pair-correlation")
@click.option("--Q", "Q", type=float, required=True)
@click.option("--alphas", default="0.25,0.5,0.75", show_default=True,
              help="Comma-separated alpha values.")
@click.option("--Tmax", "t_max", type=float, default=200.0, show_default=True)
@click.option("--build-cache", is_flag=True,
              help="Scan missing characters instead of failing.")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.pass_context
def pair_correlation(ctx, Q, alphas, t_max, build_cache, jobs):
    """F_Phi(Q^alpha; W) against the main-term prediction.

    The uncertainty band column uses an implied constant of 1 in the
    cross term: a guess for orientation, never asserted.
    """
    cache = _open_cache(ctx)
    if cache.missing(Q, t_max):
        if not build_cache:
            raise click.ClickException(
                "zero cache incomplete for Q=%g, T=%g (rerun with --build-cache)"
                % (Q, t_max))
        build_family(cache, Q, t_max, jobs=jobs,
                     progress=lambda q: click.echo("q=%d done" % q, err=True))
    W, phi = bump_weight(), sinc_squared()
    rows = []
    nres = None
    for a in (float(s) for s in alphas.split(",")):
        cfg = stats.PairCorrConfig(Q=Q, alpha=a, T_max=t_max, W=W, Phi=phi)
        if nres is None:
            nres = stats.n_phi(cfg, cache)
        fres = stats.f_phi(cfg, cache, n_phi_result=nres)
        pred = stats.theorem1_prediction(cfg)
        rows.append({
            "Q": Q, "alpha": a, "T_max": t_max,
            "n_phi": nres.value,
            "f_phi": fres.value,
            "prediction": pred.value,
            "trunc_budget": fres.truncation_budget,
            "band_guess": pred.truncation_budget,
            "wall_s": fres.wall_time,
        })
    _emit(ctx, rows)


@main.command("s-decomposition")
@click.option("--Q", "Q", type=float, required=True)
@click.option("--X", "X", type=float, required=True)
@click.pass_context
def s_decomposition(ctx, Q, X):
    """Exact S = S_D + S_N split (two routes asserted equal)."""
    W, phi = bump_weight(), sinc_squared()
    alpha = math.log(X) / math.log(Q)
    cfg = stats.PairCorrConfig(Q=Q, alpha=alpha, T_max=0.0, W=W, Phi=phi)
    s_all, s_diag, s_off = stats.s_decomposition(cfg)
    _emit(ctx, [{
        "Q": Q, "X": X, "S": s_all.value, "S_D": s_diag.value,
        "S_N": s_off.value, "wall_s": s_all.wall_time,
    }])


@main.command("constants")
@click.option("--prime-cutoff", type=int, default=4_000_000, show_default=True)
@click.option("--dmax", type=int, default=10_000_000, show_default=True)
@click.pass_context
def constants_cmd(ctx, prime_cutoff, dmax):
    """Euler-product constants with truncation points and tail bounds."""
    rows = []

    def add(name, ev):
        rows.append({"name": name, "value": ev.real,
                     "truncation": ev.truncation_prime,
                     "tail_bound": ev.tail_bound})

    add("A0", consts.euler_product("A0", P=prime_cutoff))
    add("g(1)", consts.euler_product("g", P=prime_cutoff, s=1.0))
    add("K(0)", consts.euler_product("K", P=prime_cutoff, s=0.0))
    add("K(1)", consts.euler_product("K", P=prime_cutoff, s=1.0))
    series, tail = consts.ozluk_series(dmax)
    rows.append({"name": "sum 1/(d phi(d))", "value": series,
                 "truncation": dmax, "tail_bound": tail})
    oz = consts.ozluk_constant(dmax=dmax, prime_cutoff=prime_cutoff)
    rows.append({"name": "(11/12)/(S A0)", "value": oz,
                 "truncation": dmax, "tail_bound": 0.0})
    wh = bump_weight().w_hat_1
    rows.append({"name": "W_hat(1)", "value": wh, "truncation": 0,
                 "tail_bound": 0.0})
    a = consts.a_constant(bump_weight(), prime_cutoff=prime_cutoff)
    rows.append({"name": "A = W_hat(1) A0", "value": a,
                 "truncation": prime_cutoff, "tail_bound": 0.0})
    _emit(ctx, rows)


@main.command("simple-zeros")
@click.option("--Q", "Q", type=float, required=True)
@click.option("--alpha", type=float, default=1.9, show_default=True,
              help="Kernel aperture in (1, 2].")
@click.option("--Tmax", "t_max", type=float, default=200.0, show_default=True)
@click.option("--build-cache", is_flag=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.pass_context
def simple_zeros(ctx, Q, alpha, t_max, build_cache, jobs):
    """Empirical and asymptotic lower bounds on the simple-zero proportion."""
    cache = _open_cache(ctx)
    if cache.missing(Q, t_max):
        if not build_cache:
            raise click.ClickException(
                "zero cache incomplete for Q=%g, T=%g (rerun with --build-cache)"
                % (Q, t_max))
        build_family(cache, Q, t_max, jobs=jobs,
                     progress=lambda q: click.echo("q=%d done" % q, err=True))
    W, phi = bump_weight(), sinc_squared()
    cfg = stats.PairCorrConfig(Q=Q, alpha=1.0, T_max=t_max, W=W, Phi=phi)
    spec = sz.KernelSpec(alpha)
    emp, asym = sz.simple_zero_bound(cfg, cache, spec)
    lhs, rhs, budget = sz.pairing_identity_check(cfg, cache, spec,
                                                 return_budget=True)
    row = {
        "Q": Q, "kernel_alpha": alpha, "T_max": t_max,
        "empirical_bound": emp.value,
        "asymptotic_bound": asym.value,
        "pairing_lhs": lhs, "pairing_rhs": rhs, "pairing_budget": budget,
        "trunc_budget": emp.truncation_budget,
    }
    if 1.0 < alpha < 2.0:
        row["kernel_integral_f"] = sz.kernel_integral_f(alpha)
        row["phi_term"] = sz.phi_term_integral(alpha, Q, phi)
    _emit(ctx, [row])


@main.command()
@click.option("--x", type=float, required=True)
@click.option("--Q", "Q", type=int, required=True)
@click.pass_context
def bdh(ctx, x, Q):
    """Barban-Davenport-Halberstam variance M(x, Q)."""
    res = stats.bdh_variance(x, Q)
    norm = res.value / (x * Q * math.log(x)) if x > 1 and Q >= 1 else float("nan")
    _emit(ctx, [{"x": x, "Q": Q, "M": res.value,
                 "M_over_xQlogx": norm, "wall_s": res.wall_time}])


if __name__ == "__main__":
    main()
