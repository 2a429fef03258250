"""The nine acceptance criteria at their stated tolerances.

Criteria 4, 5 and 6 do not hold as stated; they are marked strict xfail with
the measured values, so they fail loudly if the numbers ever change.
"""

import math

import pytest

from minorarc import engine, interval as iv
from minorarc.certify import certify_eta2pp_fourier_norm, certify_g_max
from minorarc.constants import default_constants
from minorarc.mucancel import corto_check, g_bound_check, passi_check
from minorarc.oracles import (LS_VARIANTS, TYPE_I_LEMMAS, TrigLemma, run_sieve_suite, run_trig_suite,
                              run_type_I_suite, run_vaughan_suite, summarize)
from minorarc.sieve import mertens_scan

from conftest import record_criterion

THRESHOLD = 7727068587


def _assert(n, checks, capsys):
    assert record_criterion(n, checks, capsys), f"criterion {n} fails"


def test_criterion_1_fourier_certificate(capsys):
    cert = certify_eta2pp_fourier_norm()
    up, samp = cert.certified_upper.hi, cert.sampled_max
    _assert(1, {
        "certified_upper <= 31.521": (up <= 31.521, f"{up:.7f}"),
        "sampled_max >= 31.52": (samp.lo >= 31.52, f"{samp.lo:.8f}"),
        "sampled within 4.5e-5 of 31.52065": (abs(samp.mid - 31.52065) <= 4.5e-5, f"{samp.mid:.8f}"),
        "certificate self-check": (cert.check(), ""),
    }, capsys)


def test_criterion_2_trig_polynomial_max(capsys):
    g = certify_g_max()
    _assert(2, {
        "max <= 7.87052": (g.certified_upper.hi <= 7.87052, f"{g.certified_upper.hi:.7f}"),
        "witness >= 7.8704": (g.witness_lower >= 7.8704, f"{g.witness_lower:.7f}"),
    }, capsys)


@pytest.mark.slow
def test_criterion_3_mertens_threshold(capsys):
    rep = mertens_scan(10**10, ("half_inv_sqrt", "sqrt_two_over_x"))
    h, s = rep.envelopes["half_inv_sqrt"], rep.envelopes["sqrt_two_over_x"]
    err = rep.final.certified_error  # nondecreasing along the scan, so it bounds the error at the threshold
    _assert(3, {
        "first violation of 1/(2 sqrt x)": (h.first_violation == THRESHOLD and h.undecided is None,
                                            f"n = {h.first_violation}"),
        "accumulation error < 1e-12": (err < 1e-12, f"{err:.3g}"),
        "sqrt(2/x) holds to 1e10": (s.holds(), f"max ratio {s.max_ratio.hi:.6f} at n = {s.best_n}"),
    }, capsys)


@pytest.mark.xfail(strict=True, reason="int_1^T G_2 dS/S reaches 0.39691 log T near T = 8.15; "
                                       "the integral bound with 0.37273 is false")
def test_criterion_4_mu_cancellation(capsys):
    g2 = g_bound_check(2, 33, 10**6)
    g1 = g_bound_check(1, 33, 10**6)
    c = corto_check(2, 16, 10**5)
    p = passi_check(2)
    _assert(4, {
        "sup x|g_2| = 2.0895071 +- 1e-5": (abs(g2["max_x_abs_g"].mid - 2.0895071) <= 1e-5,
                                           f"{g2['max_x_abs_g'].mid:.7f}"),
        "|g_1(x)| <= 1/x": (g1["holds"], f"sup x|g_1| {g1['max_x_abs_g'].hi:.5f}"),
        "triple sum <= 0.37273 on [16, 1e5]": (c["holds_integers"], f"max {c['max_at_integers']:.7f}"),
        "integral <= 0.37273 log T (N = 10)": (p["holds"], f"min margin {p['min_margin']:.5f} at T = "
                                                f"{p['at_T']:.2f}; sup ratio {p['sup_ratio'][0]:.5f}"),
    }, capsys)


@pytest.mark.xfail(strict=True, reason="C(2.16e20, 2y) evaluates to 1.400175 and the rho formula at "
                                       "x1 = 1e25, q0 = 2e5 to 3.39796")
def test_criterion_5_engine_constants(capsys):
    x0 = 2.16e20
    y = x0 ** (1 / 3) / 6
    r = engine.R(1e25, 5e5).mid
    c1 = engine.C(x0, 2 * y).mid
    c2 = engine.C(3.1e28, 2e6).mid
    rho = engine.optimal_rho().mid
    try:
        audit = bool(default_constants().audit())
    except Exception:
        audit = False
    _assert(5, {
        "R(1e25, 5e5) = 0.59648": (abs(r - 0.59648) <= 1e-5, f"{r:.6f}"),
        "C(2.16e20, 2y) = 1.39942": (abs(c1 - 1.39942) <= 1e-4, f"{c1:.6f}"),
        "C(3.1e28, 2e6) = 0.64020": (abs(c2 - 0.64020) <= 1e-4, f"{c2:.6f}"),
        "rho = 3.61407": (abs(rho - 3.61407) <= 1e-5, f"{rho:.6f}"),
        "constant audit": (audit, "all strict inequalities"),
    }, capsys)


@pytest.mark.xfail(strict=True, reason="primorial convention: rows q0 = 2.5e5 and 5e5 deviate by "
                                       "-2.16% and -2.78%")
def test_criterion_6_table_primorial(capsys):
    rows = engine.table1(convention="primorial")
    checks = {f"q0 = {r['q0']:g}": (abs(r["rel_dev"]) <= 0.02, f"{r['ratio']:.5f} vs {r['published']:.5f}, "
                                    f"{r['rel_dev']:+.2%}") for r in rows}
    _assert(6, checks, capsys)


def test_table_digamma_convention_companion(capsys):
    rows = engine.table1(convention="digamma")
    worst = max(abs(r["rel_dev"]) for r in rows)
    with capsys.disabled():
        print(f"\nTable rows under the q/phi(q) <= F(q0) convention: worst deviation {worst:.3%}")
    assert worst <= 0.02


def test_criterion_7_vaughan_identity(capsys):
    res = list(run_vaughan_suite(100))
    bad = [m for _, ok, m in res if not ok]
    worst = max(rep.residual_width / rep.x for rep, _, _ in res)
    _assert(7, {
        "100 residuals contain 0": (not bad, f"{len(res) - len(bad)}/100"),
        "width < 1e-8 x": (worst < 1e-8, f"max width/x {worst:.2g}"),
    }, capsys)


def test_criterion_8_inequality_suites(capsys):
    checks = {}
    for w in TrigLemma:
        s = summarize(w.value, run_trig_suite(w, 10**4))
        checks[w.value] = (s.violations == 0 and s.inconclusive_rate < 0.01 and s.total == 10**4,
                           f"{s.holds}/{s.total} hold, {s.inconclusive} inconclusive")
    for v in LS_VARIANTS:
        s = summarize(v, run_sieve_suite(v, 1000))
        checks[v] = (s.violations == 0 and s.inconclusive_rate < 0.01 and s.total == 1000,
                     f"{s.holds}/{s.total}")
    for k in TYPE_I_LEMMAS:
        s = summarize(k, run_type_I_suite(k, 200))
        checks[k] = (s.violations == 0 and s.inconclusive_rate < 0.01 and s.holds + s.inconclusive == 200,
                     f"{s.holds}/{s.total}")
    _assert(8, checks, capsys)


def test_criterion_9_second_choice(capsys):
    s = engine.second_choice_assembly(2.16e20)
    _assert(9, {
        "0.27266 reproduced": (s["main_coeff_rounded"] == 0.27266, f"{s['main_coeff']:.7f}"),
        "1217.35 reproduced": (s["log_coeff_rounded"] == 1217.35, f"{s['log_coeff']:.4f}"),
        "type II part within 0.272652": (s["hust_within_published"], f"{s['hust_ratio_recomputed']:.6f}"),
        "dominated by 0.2727, 1218": (s["dominated_by_theorem"], ""),
    }, capsys)
