import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, example, given, strategies as st

from minorarc import interval as iv
from minorarc.dd import add_dd, recip, two_prod, two_sum
from minorarc.errors import DomainError
from minorarc.interval import ComplexInterval, Interval

mpmath.mp.dps = 40

finite = st.one_of(st.just(0.0),
                   st.floats(min_value=1e-100, max_value=1e6),
                   st.floats(min_value=-1e6, max_value=-1e-100))
positive = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False, allow_infinity=False)


@st.composite
def intervals(draw, elems=finite):
    a, b = draw(elems), draw(elems)
    return Interval(min(a, b), max(a, b))


def exact(x):
    return Fraction(x)


def contains_exact(ivl, value: Fraction) -> bool:
    return Fraction(ivl.lo) <= value <= Fraction(ivl.hi)


@given(intervals(), intervals(), st.floats(0, 1), st.floats(0, 1))
def test_arithmetic_contains_exact_results(a, b, s, t):
    x = Fraction(a.lo) + (Fraction(a.hi) - Fraction(a.lo)) * Fraction(s)
    y = Fraction(b.lo) + (Fraction(b.hi) - Fraction(b.lo)) * Fraction(t)
    assert contains_exact(a + b, x + y)
    assert contains_exact(a - b, x - y)
    assert contains_exact(a * b, x * y)
    if b.lo > 0 or b.hi < 0:
        assert contains_exact(a / b, x / y)


@given(intervals())
@example(Interval(1.7767213766719376e-288, 1.0))
def test_sqr_is_nonnegative_and_tighter_than_product(a):
    s = a.sqr()
    assert s.lo >= 0
    p = a * a
    assert p.lo <= s.lo and s.hi <= p.hi


@given(positive)
def test_elementary_functions_enclose_high_precision_values(x):
    X = Interval(x)
    mx = mpmath.mpf(x)
    for f, g in ((iv.sqrt, mpmath.sqrt), (iv.log, mpmath.log), (iv.exp, mpmath.exp),
                 (iv.sin, mpmath.sin), (iv.cos, mpmath.cos), (iv.log1p, mpmath.log1p)):
        if f is iv.exp and x > 700:
            continue
        r = f(X)
        v = g(mx)
        assert mpmath.mpf(r.lo) <= v <= mpmath.mpf(r.hi), f.__name__


@given(intervals(st.floats(-50, 50)))
def test_sin_cos_ranges(a):
    for f, g in ((iv.sin, math.sin), (iv.cos, math.cos)):
        r = f(a)
        assert -1 <= r.lo and r.hi <= 1
        for t in (a.lo, a.mid, a.hi):
            assert r.lo <= g(t) + 1e-15 and g(t) - 1e-15 <= r.hi


def test_constants_are_tight():
    for c, text in ((iv.PI, mpmath.pi), (iv.E, mpmath.e), (iv.LOG2, mpmath.log(2)),
                    (iv.EULER_GAMMA, mpmath.euler)):
        assert mpmath.mpf(c.lo) <= text <= mpmath.mpf(c.hi)
        assert c.width <= 2 * math.ulp(c.hi)


def test_parse_encloses_decimal():
    c = iv.const("0.1")
    assert Fraction(c.lo) <= Fraction(1, 10) <= Fraction(c.hi)
    assert c.lo < c.hi


def test_domain_errors():
    with pytest.raises(DomainError):
        iv.log(Interval(-1, 2))
    with pytest.raises(DomainError):
        iv.sqrt(Interval(-1, 2))
    with pytest.raises(DomainError):
        Interval(2, 1)
    with pytest.raises(DomainError):
        Interval(1) / Interval(-1, 1)


def test_comparisons_and_widen():
    a, b = Interval(1, 2), Interval(3, 4)
    assert a.certainly_lt(b) and b.certainly_gt(a)
    assert not a.overlaps(b)
    assert a.widen(1.5).overlaps(b)
    assert Interval.hull_of(a, b) == Interval(1, 4)


@given(st.floats(-10, 10), st.floats(-10, 10))
@example(0.0, 2.92996644754162e-268)
def test_complex_abs_and_conj(x, y):
    z = ComplexInterval(Interval(x), Interval(y))
    r = z.abs()
    assert r.lo <= math.hypot(x, y) * (1 + 1e-15) and math.hypot(x, y) * (1 - 1e-15) <= r.hi
    c = z.conj()
    assert c.im.contains(-y)


# double-double kernels

dd_floats = st.floats(min_value=-1e100, max_value=1e100, allow_nan=False, allow_infinity=False)


@given(dd_floats, dd_floats)
def test_two_sum_is_error_free(a, b):
    s, e = two_sum(a, b)
    assert Fraction(s) + Fraction(e) == Fraction(a) + Fraction(b)


@given(st.floats(-1e150, 1e150), st.floats(-1e150, 1e150))
def test_two_prod_is_error_free(a, b):
    # error-free only away from underflow
    assume(a == 0 or b == 0 or abs(a * b) > 1e-250)
    p, e = two_prod(a, b)
    assert Fraction(p) + Fraction(e) == Fraction(a) * Fraction(b)


@given(st.integers(1, 10**12))
def test_recip_error_bound(n):
    r, c = recip(float(n))
    err = abs(Fraction(r) + Fraction(c) - Fraction(1, n))
    assert err <= Fraction(3) * Fraction(2.0**-106) / n


@given(dd_floats, dd_floats)
def test_add_dd_error_bound(h, th):
    s, e = add_dd(h, 0.0, th, 0.0)
    err = abs(Fraction(s) + Fraction(e) - Fraction(h) - Fraction(th))
    assert err <= 4 * Fraction(2.0**-106) * (abs(Fraction(h)) + abs(Fraction(th)))
