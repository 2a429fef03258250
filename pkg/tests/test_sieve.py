import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from minorarc.errors import ConfigError
from minorarc.sieve import (chebyshev_checks, lambda_base_table, mertens_scan, mertens_value,
                            mobius_table, primes_up_to, sieve_segment)


def factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mu_slow(n):
    f = factor(n)
    if any(e > 1 for e in f.values()):
        return 0
    return (-1) ** len(f)


def base_slow(n):
    f = factor(n)
    return next(iter(f)) if len(f) == 1 else 0


def test_small_tables_against_trial_division():
    mu = mobius_table(2000)
    base = lambda_base_table(2000)
    assert mu[0] == 0 and base[0] == 0 and base[1] == 0
    for n in range(1, 2001):
        assert mu[n] == mu_slow(n)
        assert base[n] == base_slow(n)


def test_primes_up_to():
    p = primes_up_to(100)
    assert list(p) == [n for n in range(2, 101) if base_slow(n) == n]
    assert len(primes_up_to(10**6)) == 78498


@given(st.integers(1, 10**9), st.integers(1, 3000))
def test_segments_match_trial_division(lo, length):
    seg = sieve_segment(lo, lo + length - 1)
    for n in (lo, lo + length // 2, lo + length - 1):
        assert seg.mu_of(n) == mu_slow(n)
        assert seg.lambda_base(n) == base_slow(n)


def test_segment_caps():
    with pytest.raises(ConfigError):
        sieve_segment(10, 5)
    with pytest.raises(ConfigError):
        sieve_segment(1, 100, block_cap=10)
    with pytest.raises(ConfigError):
        sieve_segment(10**10, 10**10 + 5)


def test_mertens_value_matches_exact_sum():
    mu = mobius_table(5000)
    exact = sum(Fraction(int(mu[k]), k) for k in range(1, 5001) if mu[k])
    v = mertens_value(5000)
    assert v.interval().contains(float(exact))
    assert v.certified_error < 1e-20


def test_mertens_small_scan_and_checkpoint_resume(tmp_path):
    full = mertens_scan(300_000, ("half_inv_sqrt", "sqrt_two_over_x"))
    assert full.first_violation("half_inv_sqrt") is None
    assert full.first_violation("sqrt_two_over_x") is None
    part = mertens_scan(200_000, ("half_inv_sqrt", "sqrt_two_over_x"), checkpoint_dir=tmp_path,
                        checkpoint_every=100_000)
    assert any(tmp_path.glob("mertens_*.ckpt"))
    resumed = mertens_scan(300_000, ("half_inv_sqrt", "sqrt_two_over_x"), checkpoint_dir=tmp_path,
                           checkpoint_every=100_000, resume=True)
    assert resumed.resumed_from == 200_000
    assert resumed.final.interval().overlaps(full.final.interval())
    assert abs(resumed.final.value - full.final.value) < 1e-18
    assert part.final.n_terms == 200_000


def test_mertens_limit_caps():
    with pytest.raises(ConfigError):
        mertens_scan(10**11)
    with pytest.raises(ConfigError):
        mertens_scan(10, "no_such_envelope")


def test_chebyshev_samples_hold():
    res = chebyshev_checks([1, 2, 3, 10, 117, 664, 1000, 10**5, 2 * 10**6, 3 * 10**6])
    assert all(r.ok() for r in res), [(r.y, r.verdicts) for r in res if not r.ok()]
    by_y = {r.y: r for r in res}
    psi = sum(math.log(base_slow(n)) for n in range(2, 1001) if base_slow(n))
    assert by_y[1000].psi.contains(psi) or abs(by_y[1000].psi.mid - psi) < 1e-9


@given(st.integers(2, 20000))
def test_psi_interval_contains_direct_sum(y):
    base = lambda_base_table(y)
    direct = math.fsum(math.log(p) for p in base[2:] if p)
    r = chebyshev_checks([y])[0]
    assert r.psi.lo - 1e-9 <= direct <= r.psi.hi + 1e-9
