import cmath
import dataclasses
import io
import json
import math
import random

import mpmath
import pytest
from hypothesis import assume, given, settings, strategies as st

from minorarc.errors import DomainError
from minorarc.interval import Interval
from minorarc.oracles import (LS_VARIANTS, TYPE_I_LEMMAS, SieveInstance, TrigInstance, TrigLemma,
                              TypeIInstance, Verdict, S_eta, large_sieve_check, large_sieve_lhs,
                              quadratic_decay_check, random_sieve_instance, run_sieve_suite,
                              run_trig_suite, run_type_I_suite, run_vaughan_suite, summarize,
                              trig_lemma_check, truncation_M, type_I_branch, type_I_lemma_check,
                              vaughan_decompose, verdict)
from minorarc.sieve import mobius_table


# --- verdicts -------------------------------------------------------------------

def test_verdict_is_two_sided():
    assert verdict(Interval(1, 2), Interval(2, 3)) is Verdict.HOLDS
    assert verdict(Interval(1, 2.5), Interval(2, 3)) is Verdict.INCONCLUSIVE
    assert verdict(Interval(3.5, 4), Interval(2, 3)) is Verdict.VIOLATION


# --- trigonometric sums -------------------------------------------------------------

def test_q_equal_one_excluded_sum_is_empty():
    inst = TrigInstance(a=0, q=1, beta=0.3, Q=100.0, y1=0.0, y2=1.0, A=2.0, C=3.0)
    lhs, rhs = trig_lemma_check(inst, TrigLemma.Q_EXCLUDED)
    assert lhs == Interval(0.0) and rhs.lo >= 0


@pytest.mark.parametrize("which", list(TrigLemma))
def test_trig_A_zero(which):
    rng = random.Random(5)
    for _ in range(50):
        q = rng.randrange(2, 200)
        a = next(a for a in range(1, q) if math.gcd(a, q) == 1)
        inst = TrigInstance(a=a, q=q, beta=rng.uniform(-1, 1), Q=float(q * 10), y1=0.0, y2=float(q),
                            A=0.0, C=1.5, B=0.7)
        lhs, rhs = trig_lemma_check(inst, which)
        assert verdict(lhs, rhs) is Verdict.HOLDS


@pytest.mark.parametrize("which", list(TrigLemma))
def test_trig_suite_sample(which):
    s = summarize(which.value, run_trig_suite(which, count=300))
    assert s.violations == 0 and s.inconclusive == 0


def test_trig_rejects_bad_instances():
    with pytest.raises(DomainError):
        TrigInstance(a=2, q=4, beta=0.0, Q=10.0, y1=0, y2=4).validate()
    with pytest.raises(DomainError):
        TrigInstance(a=1, q=4, beta=2.0, Q=10.0, y1=0, y2=4).validate()


# --- quadratic decay ---------------------------------------------------------------

def test_quadratic_decay_half():
    lhs, rhs = quadratic_decay_check(0.5)
    assert rhs.overlaps(Interval(31.521 / 4))
    assert lhs.hi <= rhs.lo


def test_quadratic_decay_scaled():
    lhs, rhs = quadratic_decay_check(0.3, N=10**4)
    assert verdict(lhs, rhs) is Verdict.HOLDS


@given(st.floats(1e-3, 0.999), st.integers(10, 3000))
@settings(max_examples=40)
def test_quadratic_decay_symmetric_and_holds(alpha, N):
    a, ra = quadratic_decay_check(alpha, N)
    b, rb = quadratic_decay_check(-alpha, N)
    assert a.overlaps(b) and ra.overlaps(rb)
    assert verdict(a, ra) is not Verdict.VIOLATION


def test_quadratic_decay_near_integer():
    with pytest.raises(DomainError):
        quadratic_decay_check(1e-9)


# --- large sieve -------------------------------------------------------------------

def test_single_m_large_sieve():
    q = 13
    inst = SieveInstance("zerom", W=500.0, Wp=250.0, a=3, q=q, Q=400.0, A0=40.0, A1=41.0, odd=False,
                         gamma=1e-5, varrho=1 / q, rho=q / 400)
    lhs, rhs = large_sieve_check(inst)
    alpha = 3 / q + 1e-5
    ps = [p for p in range(251, 501) if all(p % d for d in range(2, int(p ** 0.5) + 1))]
    direct = abs(sum(math.log(p) * cmath.exp(2j * math.pi * alpha * 41 * p) for p in ps)) ** 2
    assert lhs.contains(direct) or abs(lhs.mid - direct) < 1e-9 * direct
    assert verdict(lhs, rhs) is Verdict.HOLDS


@given(st.integers(0, 10**6))
@settings(max_examples=25)
def test_odd_m_sum_is_below_all_m(seed):
    rng = random.Random(seed)
    q = rng.randrange(1, 100)
    a = 2 * rng.randrange(0, q) + 1
    assume(math.gcd(a, 2 * q) == 1)
    A0 = rng.uniform(0, 200)
    common = dict(W=800.0, Wp=400.0, Q=1e4, A0=A0, A1=A0 + rng.uniform(1, 300), gamma=rng.uniform(-1e-4, 1e-4))
    odd = SieveInstance("pokor1b", a=a, q=q, odd=True, **common)
    full = SieveInstance("pokor1", a=a, q=2 * q, odd=False, **common)
    assert odd.den == full.den
    assert large_sieve_lhs(odd)[0].lo <= large_sieve_lhs(full)[0].hi


@pytest.mark.parametrize("variant", LS_VARIANTS)
def test_sieve_suite_sample(variant):
    s = summarize(variant, run_sieve_suite(variant, count=40))
    assert s.violations == 0 and s.inconclusive == 0


def test_sieve_hypotheses_enforced():
    inst = random_sieve_instance(random.Random(1), "pokor2")
    with pytest.raises(DomainError):
        large_sieve_check(dataclasses.replace(inst, Q=inst.W))


# --- type I ------------------------------------------------------------------------

def test_type_I_D_equal_one():
    # only m = 1: lhs is |sum_n e(alpha n) eta(n/x)|
    inst = TypeIInstance("bosta1", x=2000.0, a=1, q=5, delta=0.0, Q0=100.0, D=1.0)
    lhs, rhs = type_I_lemma_check(inst)
    alpha = 1 / 5
    n = range(1, 2000)
    eta = lambda t: 4 * max(math.log(2) - abs(math.log(2 * t)), 0.0)
    direct = abs(sum(eta(k / 2000) * cmath.exp(2j * math.pi * alpha * k) for k in n))
    assert lhs.contains(direct) or abs(lhs.mid - direct) < 1e-9 * max(direct, 1)
    assert verdict(lhs, rhs) is Verdict.HOLDS


def test_type_I_stated_instance():
    inst = TypeIInstance("bosta1", x=1e5, a=1, q=7, delta=0.0, Q0=1000.0, D=100.0)
    lhs, rhs = type_I_lemma_check(inst)
    assert verdict(lhs, rhs) is Verdict.HOLDS


@pytest.mark.parametrize("lemma", TYPE_I_LEMMAS)
def test_type_I_suite_sample(lemma):
    results = list(run_type_I_suite(lemma, count=25))
    s = summarize(lemma, results)
    assert s.violations == 0 and s.inconclusive == 0


def test_type_I_truncation_freedom_is_not_free():
    # with M pinned to min(Q0/2, D) the bound fails here; the truncation
    # used in the argument, min(floor(x/|delta q|)/2, D), restores it
    inst = TypeIInstance("bosta1", x=493615.0, a=1, q=1, delta=-0.13849413607801614,
                         Q0=499.59240332669236, D=546.972296587384)
    lhs, rhs = type_I_lemma_check(inst)
    assert verdict(lhs, rhs) is Verdict.HOLDS
    assert float(truncation_M(inst)) > min(inst.Q0 / 2, inst.D)
    assert 5103 < lhs.mid < 5104


def test_log_weighted_printed_main_term_fails():
    inst = TypeIInstance("bostb1", x=582752.0, a=1, q=3, delta=0.1654974219097162,
                         Q0=11247.288177837501, D=28.15500416854927)
    lhs, rhs_printed = type_I_lemma_check(inst, printed=True)
    assert verdict(lhs, rhs_printed) is Verdict.VIOLATION
    _, rhs = type_I_lemma_check(inst)
    assert verdict(lhs, rhs) is Verdict.HOLDS
    assert type_I_branch(inst) == "small_delta"


def test_type_I_hypotheses():
    with pytest.raises(DomainError):
        type_I_lemma_check(TypeIInstance("bostb1", x=1e4, a=1, q=3, delta=0.0, Q0=50.0, D=10.0))
    with pytest.raises(DomainError):
        type_I_lemma_check(TypeIInstance("bogus", x=1e4, a=0, q=1, delta=0.0, Q0=300.0, U=2, V=2))


# --- Vaughan's identity ------------------------------------------------------------

def test_vaughan_random_identities():
    for rep, ok, meta in run_vaughan_suite(count=10):
        assert ok, meta


def test_vaughan_S0inf_vanishes_for_small_V():
    rep = vaughan_decompose(0.3183, 5000.0, 20.0, 100.0)
    s0 = rep.parts["S_0inf"]
    assert s0.re.contains(0.0) and s0.im.contains(0.0) and max(s0.re.width, s0.im.width) < 1e-250
    assert rep.holds


def test_vaughan_alpha_zero_is_real():
    rep = vaughan_decompose(0.0, 1000.0, 10.0, 10.0)
    tot = rep.parts["S_total"]
    assert tot.im.contains(0.0) and tot.im.width < 1e-11 * 1000
    eta = lambda t: 4 * max(math.log(2) - abs(math.log(2 * t)), 0.0)
    mu = mobius_table(1000)
    lam = [0.0] * 1001
    for p in range(2, 1001):
        if all(p % d for d in range(2, int(p ** 0.5) + 1)):
            pk = p
            while pk <= 1000:
                lam[pk] = math.log(p)
                pk *= p
    direct = math.fsum(lam[n] * eta(n / 1000) for n in range(1, 1000))
    assert abs(tot.re.mid - direct) < 1e-9 * direct or tot.re.contains(direct)
    assert mu[1] == 1


def _S_direct(alpha, x):
    mpmath.mp.dps = 30
    total = mpmath.mpc(0)
    for n in range(2, int(x)):
        ps = [p for p in range(2, n + 1) if n % p == 0 and all(p % d for d in range(2, int(p ** 0.5) + 1))]
        if len(ps) != 1:
            continue
        t = mpmath.mpf(n) / x
        eta = 4 * max(mpmath.log(2) - abs(mpmath.log(2 * t)), 0)
        total += mpmath.log(ps[0]) * eta * mpmath.expjpi(2 * mpmath.mpf(alpha) * n)
    return total


@pytest.mark.parametrize("alpha", [0.123456789, 0.5, 0.7071067811865476])
def test_S_eta_against_high_precision(alpha):
    s = S_eta(alpha, 400.0)
    ref = _S_direct(alpha, 400.0)
    assert abs(s.re.mid - float(ref.real)) < 1e-10 and abs(s.im.mid - float(ref.imag)) < 1e-10


@given(st.floats(-1, 1))
@settings(max_examples=100)
def test_conjugation(alpha):
    a, b = S_eta(alpha, 3000.0), S_eta(-alpha, 3000.0)
    assert a.re.overlaps(b.re) and a.im.overlaps(-b.im)


# --- reports -----------------------------------------------------------------------

def test_json_lines_report():
    sink = io.StringIO()
    summarize("trig", run_trig_suite("B_over_sin", count=5, seed=11), sink)
    lines = sink.getvalue().splitlines()
    assert len(lines) == 5
    rec = json.loads(lines[0])
    assert {"id", "seed", "lemma", "lhs", "rhs", "verdict"} <= set(rec)
    assert rec["seed"] == 11 and rec["verdict"] in ("holds", "inconclusive", "VIOLATION")
