"""Command-line front end.

Exit status: 0 success, 1 a verification failed, 2 usage or domain error,
3 a quantity could not be decided at the working precision.
"""

from __future__ import annotations

import json
import math
import sys
from fractions import Fraction

import click

from . import __version__
from .errors import ConfigError, DomainError, NotAvailableError, PrecisionError
from .interval import Interval

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


def enc(v):
    """JSON encoding: intervals carry their width, exact values are marked."""
    if isinstance(v, Interval):
        return {"lower": v.lo, "upper": v.hi, "width": v.width}
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return {"exact": v}
    if isinstance(v, Fraction):
        return {"exact": f"{v.numerator}/{v.denominator}"}
    if isinstance(v, float):
        return {"value": v, "width": 0.0}
    if isinstance(v, dict):
        return {str(k): enc(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [enc(x) for x in v]
    if hasattr(v, "item"):
        return enc(v.item())
    return str(v)


def emit(ctx, payload: dict, lines: list[str]):
    if ctx.obj["json"]:
        payload = {**enc(payload), "schema": SCHEMA_VERSION}
        click.echo(json.dumps(payload, sort_keys=True, indent=1))
    else:
        for line in lines:
            click.echo(line)


def fmt(v: Interval) -> str:
    return f"{v.hi:.8g} (width {v.width:.2g})"


def parse_int(s: str) -> int:
    """Integers written as 8e9, 1e10 or 7727068587."""
    try:
        f = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not a number: {s}")
    if f.denominator != 1:
        raise click.BadParameter(f"not an integer: {s}")
    return int(f)


class Guard:
    """Map library errors to exit codes."""

    def __enter__(self):
        return self

    def __exit__(self, et, ev, tb):
        if et is None:
            return False
        if issubclass(et, PrecisionError):
            click.echo(f"precision: {ev}", err=True)
            sys.exit(EXIT_PRECISION)
        if issubclass(et, (DomainError, ConfigError, NotAvailableError)):
            click.echo(f"error: {ev}", err=True)
            sys.exit(EXIT_USAGE)
        return False


@click.group()
@click.version_option(__version__)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@click.option("--threads", type=click.IntRange(1), default=None,
              help="Numba thread pool size (results do not depend on it).")
@click.pass_context
def main(ctx, as_json, threads):
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json
    if threads is not None:
        import numba
        numba.set_num_threads(min(threads, numba.config.NUMBA_NUM_THREADS))


# ---------------------------------------------------------------------------

@main.command()
@click.option("--x", "x", type=float, required=True)
@click.option("--q", "q", type=str, required=True)
@click.option("--a", "a", type=int, default=None, help="Numerator; defaults to 1 (0 if q = 1).")
@click.option("--delta", type=float, default=0.0)
@click.option("--delta-cap", type=float, default=None)
@click.option("--worst-case", is_flag=True,
              help="Worst case over q' >= q and |delta| <= delta-cap.")
@click.option("--convention", type=click.Choice(["digamma", "primorial"]), default="digamma")
@click.option("--proof-constants", is_flag=True)
@click.pass_context
def bound(ctx, x, q, a, delta, delta_cap, worst_case, convention, proof_constants):
    """Explicit upper bound for |S_eta(alpha, x)| on a minor arc."""
    from .engine import ArcApprox, main_theorem_bound, table1
    q = parse_int(q)
    if worst_case and delta_cap is None:
        raise click.UsageError("--worst-case needs --delta-cap")
    if not worst_case and delta_cap is not None:
        raise click.UsageError("--delta-cap only applies with --worst-case")
    with Guard():
        if worst_case:
            row = table1(x, [q], delta_cap, convention, proof_constants)[0]
            emit(ctx, {"command": "bound", "worst_case": row},
                 [f"x = {x:g}, q >= {q}, |delta| <= {delta_cap:g} ({convention})",
                  f"bound / x <= {row['ratio']:.5f}"])
            return
        a = a if a is not None else (0 if q == 1 else 1)
        arc = ArcApprox.for_theorem(x, q, delta, a)
        rep = main_theorem_bound(arc, proof_constants)
        lines = [f"branch: {rep.branch.value}", f"bound: {fmt(rep.total)}",
                 f"bound / x: {fmt(rep.total_over_x)}"]
        lines += [f"  {k}: {fmt(v)}" for k, v in rep.components.items()]
        lines += [f"note: {n}" for n in rep.notes]
        emit(ctx, {"command": "bound", "branch": rep.branch.value, "total": rep.total,
                   "total_over_x": rep.total_over_x, "components": rep.components,
                   "parameters": rep.parameters_used, "convention_notes": rep.notes}, lines)


@main.command()
@click.option("--x", "x", type=float, default=1e27)
@click.option("--delta-cap", type=float, default=8.0)
@click.option("--convention", type=click.Choice(["digamma", "primorial"]), default="digamma")
@click.option("--proof-constants", is_flag=True)
@click.pass_context
def table(ctx, x, delta_cap, convention, proof_constants):
    """Worst-case bound/x for the q0 rows of the published table (TSV)."""
    from .engine import table1
    with Guard():
        rows = table1(x, None, delta_cap, convention, proof_constants)
    lines = ["q0\tratio\tpublished\trel_dev\tq_over_phi\tconvention"]
    for r in rows:
        lines.append("\t".join([str(r["q0"]), f"{r['ratio']:.6f}",
                                f"{r['published']:.5f}" if "published" in r else "",
                                f"{r['rel_dev']:+.4%}" if "rel_dev" in r else "",
                                f"{r['q_over_phi']:.6f}", r["convention"]]))
    emit(ctx, {"command": "table", "rows": rows,
               "provenance": "published table, x = 1e27, |delta| <= 8"}, lines)


@main.command("verify-mertens")
@click.option("--limit", type=str, default="1e10")
@click.option("--envelope", type=click.Choice(["half-inv-sqrt", "sqrt-two-over-x", "both"]),
              default="half-inv-sqrt")
@click.option("--extended", is_flag=True, help="Allow limits up to 1e12.")
@click.option("--checkpoint-dir", type=click.Path(file_okay=False), default=None)
@click.option("--resume", is_flag=True)
@click.pass_context
def verify_mertens(ctx, limit, envelope, extended, checkpoint_dir, resume):
    """Scan m(n) = sum mu(k)/k against 1/(2 sqrt x) and sqrt(2/x)."""
    from .sieve import mertens_scan
    limit = parse_int(limit)
    if resume and checkpoint_dir is None:
        raise click.UsageError("--resume needs --checkpoint-dir")
    names = ("half_inv_sqrt", "sqrt_two_over_x") if envelope == "both" else (envelope.replace("-", "_"),)

    def progress(n, lim):
        if not ctx.obj["json"]:
            click.echo(f"  ... {n}/{lim}", err=True)

    with Guard():
        rep = mertens_scan(limit, names, extended=extended, checkpoint_dir=checkpoint_dir,
                           resume=resume, progress=progress)
    threshold = 7727068587
    ok = True
    out = {}
    lines = [f"scanned n <= {limit}, final m(n) = {rep.final.value:.15g} "
             f"(certified error {rep.final.certified_error:.3g})"]
    for name, e in rep.envelopes.items():
        if name == "half_inv_sqrt":
            expected = threshold if limit >= threshold else None
            good = e.first_violation == expected
        else:
            good = e.first_violation is None
        ok &= good
        out[name] = {"first_violation": e.first_violation, "max_ratio": e.max_ratio,
                     "argmax": e.best_n, "consistent_with_published": good}
        lines.append(f"{name}: first violation {e.first_violation}, max |m(n)|/envelope "
                     f"{e.max_ratio.hi:.9f} at n = {e.best_n} [{'ok' if good else 'MISMATCH'}]")
    if checkpoint_dir:
        lines.append(f"checkpoints in {checkpoint_dir}")
    emit(ctx, {"command": "verify-mertens", "limit": limit, "final": rep.final.interval(),
               "envelopes": out, "resumed_from": rep.resumed_from,
               "provenance": "bound fails for x = 7727068588 - eps"}, lines)
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


@main.command("verify-chebyshev")
@click.option("--y", "ys", type=str, multiple=True, help="Sample points (repeatable).")
@click.option("--max", "y_max", type=str, default="1e8",
              help="Without --y: a geometric sample of integers up to this value.")
@click.pass_context
def verify_chebyshev(ctx, ys, y_max):
    """Certified checks of the psi-type inequalities at sample points."""
    from .sieve import chebyshev_checks
    if ys:
        samples = [parse_int(y) for y in ys]
    else:
        top = parse_int(y_max)
        samples = sorted({int(round(10 ** (k / 8))) for k in range(0, int(8 * math.log10(top)) + 1)} | {top})
    with Guard():
        res = chebyshev_checks(samples)
    ok = all(r.ok() for r in res)
    bad = [r for r in res if not r.ok()]
    lines = [f"{len(res)} samples, {len(bad)} failing"]
    lines += [f"  y = {r.y}: {r.verdicts}" for r in bad]
    emit(ctx, {"command": "verify-chebyshev",
               "samples": [{"y": r.y, "psi": r.psi, "verdicts": r.verdicts} for r in res],
               "holds": ok}, lines)
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


@main.command("verify-gv")
@click.option("--v", "v", type=click.Choice(["1", "2"]), default="2")
@click.option("--x-max", type=str, default="1e6")
@click.option("--rebuild-cache", is_flag=True)
@click.pass_context
def verify_gv(ctx, v, x_max, rebuild_cache):
    """|g_v(x)| <= c/x on [33, x-max] (c = 1 for v = 1, 2.1 for v = 2)."""
    from .mucancel import g_bound_check, g_table
    v, x_max = int(v), parse_int(x_max)
    with Guard():
        if rebuild_cache:
            g_table(v, max(x_max, 1000), rebuild_cache=True)
        r = g_bound_check(v, 33, x_max)
    lines = [f"v = {v}: sup x|g_v(x)| on [33, {x_max}] = {fmt(r['max_x_abs_g'])} near x = {r['argmax'] + 1}",
             f"  max over integers {fmt(r['max_at_integers'])} at {r['argmax_integer']}",
             f"  bound {r['bound']}: {'holds' if r['holds'] else 'FAILS'}"]
    emit(ctx, {"command": "verify-gv", **r}, lines)
    sys.exit(EXIT_OK if r["holds"] else EXIT_FAIL)


@main.command("verify-corto")
@click.option("--v", "v", type=click.Choice(["1", "2"]), default="2")
@click.option("--s-max", type=str, default="1e5")
@click.option("--integral", is_flag=True, help="Also check int_1^T G_v dS/S <= c log T.")
@click.pass_context
def verify_corto(ctx, v, s_max, integral):
    """The triple-sum bound G_v(S) <= c on [S0, s-max]."""
    from .mucancel import corto_check, passi_check
    v, s_max = int(v), parse_int(s_max)
    with Guard():
        r = corto_check(v, None, s_max)
    ok = r["holds_integers"] and r["holds_real"]
    lines = [f"v = {v}: max G_v over integers {r['max_at_integers']:.7f} at S = {r['argmax']}, "
             f"real max {r['max_real']:.7f}, bound {r['bound']:.5f}: {'holds' if ok else 'FAILS'}"]
    payload = {"command": "verify-corto", "corto": r}
    if integral:
        with Guard():
            p = passi_check(v)
        ok &= p["holds"]
        lines.append(f"integral bound c = {p['c']}: {'holds' if p['holds'] else 'FAILS'}, "
                     f"min margin {p['min_margin']:.5f} at T = {p['at_T']:.4f}, "
                     f"sup ratio {p['sup_ratio'][0]:.5f} at T = {p['sup_ratio'][1]:.4f}")
        payload["integral"] = p
    emit(ctx, payload, lines)
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


@main.command("certify-fourier")
@click.option("--out", type=click.Path(dir_okay=False), default="eta2pp_fourier.cert")
@click.option("--step", type=float, default=1e-3)
@click.option("--method", type=click.Choice(["simpson", "hybrid"]), default="simpson")
@click.option("--log-scaled", is_flag=True, help="Also certify the log-scaled bound for y >= 4.")
@click.pass_context
def certify_fourier(ctx, out, step, method, log_scaled):
    """Certify sup |(eta_2'')^| <= 31.521 and write the certificate."""
    from .certify import certify_eta2pp_fourier_norm, certify_g_max
    with Guard():
        g = certify_g_max()
        cert = certify_eta2pp_fourier_norm(step=step, method=method)
        cert.save(out)
    ok = cert.check() and cert.certified_upper.hi <= 31.521
    lines = [f"max |g| <= {g.certified_upper.hi:.7f} (witness {g.witness_lower:.7f})",
             f"sup |(eta_2'')^| <= {cert.certified_upper.hi:.7f}, sampled max "
             f"{cert.sampled_max.lo:.7f} at t = {cert.witness_point:.4f}",
             f"certificate written to {out}"]
    payload = {"command": "certify-fourier", "g_max": g.certified_upper,
               "certified_upper": cert.certified_upper, "sampled_max": cert.sampled_max,
               "witness_point": cert.witness_point, "certificate": str(out),
               "provenance": "<= 31.521; sampled 31.52065"}
    if log_scaled:
        from .certify import certify_log_scaled_norm
        with Guard():
            c4 = certify_log_scaled_norm(4.0)
        payload["log_scaled_y4"] = c4.certified_upper
        lines.append(f"log-scaled, y = 4: <= {c4.certified_upper.hi:.6f} (31.521 log 4 = {31.521 * math.log(4):.6f})")
    emit(ctx, payload, lines)
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


@main.command("verify-lemmas")
@click.option("--suite", type=click.Choice(["trig", "sieve", "typeI", "all"]), default="all")
@click.option("--count", type=click.IntRange(1), default=None, help="Instances per lemma.")
@click.option("--seed", type=int, default=None)
@click.option("--report", type=click.Path(dir_okay=False), default=None,
              help="JSON-lines file with one record per instance.")
@click.option("--printed-log-weighted", is_flag=True,
              help="Use the typeset main term of the log-weighted type I bound.")
@click.pass_context
def verify_lemmas(ctx, suite, count, seed, report, printed_log_weighted):
    """Brute-force checks of the lemma-level inequalities."""
    from . import oracles as O
    runs = []
    if suite in ("trig", "all"):
        runs += [(w.value, lambda w=w: O.run_trig_suite(w, count or 10**4, seed)) for w in O.TrigLemma]
    if suite in ("sieve", "all"):
        runs += [(v, lambda v=v: O.run_sieve_suite(v, count or 1000, seed)) for v in O.LS_VARIANTS]
    if suite in ("typeI", "all"):
        runs += [(k, lambda k=k: O.run_type_I_suite(k, count or 200, seed, printed=printed_log_weighted))
                 for k in O.TYPE_I_LEMMAS]
    sink = open(report, "w") if report else None
    summaries = []
    try:
        with Guard():
            for name, make in runs:
                summaries.append(O.summarize(name, make(), sink))
    finally:
        if sink:
            sink.close()
    viol = sum(s.violations for s in summaries)
    worst = max(s.inconclusive_rate for s in summaries)
    lines = [f"{s.name:24s} {s.total:6d} holds {s.holds:6d} inconclusive {s.inconclusive:4d} "
             f"violations {s.violations:3d} skipped {s.skipped:3d}" for s in summaries]
    emit(ctx, {"command": "verify-lemmas",
               "suites": [vars(s) for s in summaries], "violations": viol,
               "max_inconclusive_rate": worst}, lines)
    if viol:
        sys.exit(EXIT_FAIL)
    sys.exit(EXIT_PRECISION if worst >= 0.01 else EXIT_OK)


@main.command()
@click.option("--alpha", type=float, default=None)
@click.option("--x", "x", type=float, default=None)
@click.option("--U", "U_", type=float, default=None)
@click.option("--V", "V", type=float, default=None)
@click.option("--suite", "n_suite", type=click.IntRange(1), default=None,
              help="Run this many random decompositions instead.")
@click.option("--seed", type=int, default=None)
@click.pass_context
def vaughan(ctx, alpha, x, U_, V, n_suite, seed):
    """Evaluate the Vaughan decomposition with v = 2 and check the residual."""
    from .oracles import run_vaughan_suite, vaughan_decompose
    if n_suite is not None:
        if any(o is not None for o in (alpha, x, U_, V)):
            raise click.UsageError("--suite excludes --alpha/--x/--U/--V")
        bad, widths = 0, []
        with Guard():
            for rep, ok, meta in run_vaughan_suite(n_suite, seed):
                bad += not ok
                widths.append(rep.residual_width / rep.x)
        emit(ctx, {"command": "vaughan", "count": n_suite, "failures": bad,
                   "max_width_over_x": max(widths)},
             [f"{n_suite} decompositions, {bad} failures, max residual width / x = {max(widths):.3g}"])
        sys.exit(EXIT_FAIL if bad else EXIT_OK)
    if any(o is None for o in (alpha, x, U_, V)):
        raise click.UsageError("give --alpha, --x, --U and --V (or --suite)")
    with Guard():
        rep = vaughan_decompose(alpha, x, U_, V)
    ok = rep.holds and rep.residual_width < 1e-8 * x
    lines = [f"{k}: {p.re.mid:+.10g} {p.im.mid:+.10g}i (width {max(p.re.width, p.im.width):.2g})"
             for k, p in rep.parts.items()]
    lines.append(f"residual contains 0: {rep.holds}, width {rep.residual_width:.3g}")
    emit(ctx, {"command": "vaughan", "alpha": alpha, "x": x, "U": U_, "V": V,
               "parts": {k: {"re": p.re, "im": p.im} for k, p in rep.parts.items()},
               "residual": {"re": rep.residual.re, "im": rep.residual.im}, "holds": ok}, lines)
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


@main.command()
@click.option("--x", "x", type=float, required=True)
@click.option("--q", "q", type=str, required=True)
@click.option("--delta", type=float, default=0.0)
@click.option("--choice", type=click.Choice(["first", "second"]), default="first")
@click.pass_context
def params(ctx, x, q, delta, choice):
    """The parameters U, V, Q, theta for a given arc, with side conditions."""
    from .engine import select_parameters
    q = parse_int(q)
    with Guard():
        p = select_parameters(x, q, delta, choice, strict=False)
    d = p.as_dict()
    ok = all(d["checks"].values())
    lines = [f"{k} = {d[k]:.6g}" for k in ("U", "V", "Q", "y", "theta", "eps1")]
    lines += [f"  {k}: {'ok' if v else 'FAILS'}" for k, v in d["checks"].items()]
    emit(ctx, {"command": "params", "x": x, "q": q, "delta": delta, **d}, lines)
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


if __name__ == "__main__":
    main()
