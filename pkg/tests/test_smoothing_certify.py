import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from minorarc import fourier as fo
from minorarc import interval as iv
from minorarc.certify import (G_MAX, MaxCertificate, certify_g_max, certify_log_scaled_norm,
                              g_interval, grid_max, log_scaled_core, simpson_certified)
from minorarc.errors import DomainError, NotAvailableError, PrecisionError
from minorarc.interval import Interval
from minorarc.smoothing import (ETA1, ETA2, LOG_TIMES_ETA2, Norm, convolution_check,
                                eta2_log_scaled)

mpmath.mp.dps = 30


def eta2_exact(t):
    return 4 * max(math.log(2) - abs(math.log(2 * t)), 0.0) if t > 0 else 0.0


@given(st.floats(0.0, 1.2))
def test_eta2_matches_closed_form(t):
    v = ETA2(t)
    assert v.lo - 1e-14 <= eta2_exact(t) <= v.hi + 1e-14


def test_eta2_support_and_kinks():
    assert ETA2(0.25).contains(0.0) and ETA2(1.0).contains(0.0)
    assert ETA2(0.5).contains(4 * math.log(2))
    assert ETA2(Interval(0.2, 0.3)).contains(0.0)
    assert ETA1(0.75) == Interval(2.0) and ETA1(0.5).contains(0.0)


@pytest.mark.parametrize("t", [0.3, 0.5, 0.7, 0.9999])
def test_eta2_is_the_multiplicative_convolution_of_eta1(t):
    assert convolution_check(t).overlaps(Interval(eta2_exact(t)).widen(1e-12))


def test_convolution_check_errors():
    with pytest.raises(DomainError):
        convolution_check(2.5)
    with pytest.raises(PrecisionError):
        convolution_check(0.7, quadrature_budget=1)


def test_norms():
    assert ETA2.norm(Norm.L1) == Interval(1.0)
    assert ETA2.norm("L1_of_derivative").contains(8 * math.log(2))
    q = mpmath.quad(lambda s: abs(mpmath.log(s)) * eta2_exact(float(s)), [0.25, 0.5, 1])
    assert LOG_TIMES_ETA2.norm("L1").contains(float(q)) or abs(LOG_TIMES_ETA2.norm("L1").mid - float(q)) < 1e-12
    with pytest.raises(NotAvailableError):
        ETA1.norm("L1_of_derivative")


@given(st.floats(4.0, 1e6))
def test_log_scaled_norms_obey_the_log_rho_bounds(y):
    f = eta2_log_scaled(y)
    for which in ("L1", "L1_of_derivative"):
        assert f.norm(which).hi <= f.norm_bound(which).hi * (1 + 1e-12)


def test_log_scaled_needs_y_at_least_4():
    with pytest.raises(DomainError):
        eta2_log_scaled(3.9)


def test_derivatives_of_eta2():
    assert ETA2.derivative(0.3).contains(4 / 0.3)
    assert ETA2.derivative(0.75, 2).contains(4 / 0.75 ** 2)
    with pytest.raises(NotAvailableError):
        ETA2.derivative(0.3, 3)


# transforms

def f_hat(t):
    """Transform of the absolutely continuous part of eta_2''."""
    e = lambda s: mpmath.expjpi(-2 * t * s)  # noqa: E731
    return (mpmath.quad(lambda s: -4 / s ** 2 * e(s), [0.25, 0.5])
            + mpmath.quad(lambda s: 4 / s ** 2 * e(s), [0.5, 1]))


@pytest.mark.parametrize("t", [0.0, 0.37, 1.0, 2.5, 7.3, 31.0])
def test_F_value_encloses_high_precision_transform(t):
    r, i, e = fo.F_value(t, 200, 0, 0)
    g = 4 * (4 * mpmath.expjpi(-t / 2) - 4 * mpmath.expjpi(-t) + mpmath.expjpi(-2 * t))
    ref = g + f_hat(t)
    assert abs(complex(ref) - complex(r, i)) <= e


def test_F_at_zero_is_zero():
    # the transform of eta_2'' at 0 is the integral of eta_2'', which vanishes
    r, i, e = fo.F_value(0.0, 200, 0, 0)
    assert abs(r) <= e and abs(i) <= e


def test_ibp_agrees_with_simpson():
    for t in (60.0, 123.4, 400.0):
        a = fo.F_value(t, 200, 0, 0)
        b = fo.F_value(t, 200, 0, 10)
        assert abs(complex(a[0], a[1]) - complex(b[0], b[1])) <= a[2] + b[2]


def test_simpson_certified_encloses_integral():
    val = simpson_certified(lambda s: 4 / s, Interval(0.5), Interval(1.0), 64, Interval(96.0, 3072.0))
    assert val.contains(4 * math.log(2))
    with pytest.raises(DomainError):
        simpson_certified(lambda s: s, 0, 1, 3, 1.0)


def test_grid_max_on_cosine_and_precision_error():
    cert = grid_max(lambda t: iv.cos(2 * iv.PI * t), 1.0, 4 * math.pi ** 2, 1e-3)
    assert 1.0 <= cert.certified_upper.hi <= 1.0 + 1e-5
    assert cert.check()
    with pytest.raises(PrecisionError):
        grid_max(lambda t: iv.cos(2 * iv.PI * t), 1.0, 4 * math.pi ** 2, 0.1, tol=1e-6)


def test_g_max_certificate(tmp_path):
    cert = certify_g_max()
    assert cert.certified_upper.hi <= G_MAX.hi
    assert cert.witness_lower >= 7.8704
    # the witness really attains the sampled value
    assert g_interval(cert.witness_point).abs().hi >= cert.witness_lower
    path = cert.save(tmp_path / "g.cert")
    again = MaxCertificate.load(path)
    assert again == cert and again.check()


def test_g_has_period_four():
    for t in (0.1, 1.3, 2.9):
        assert g_interval(t).abs().overlaps(g_interval(t + 4).abs().widen(1e-12))


@pytest.mark.xfail(strict=True, reason="the sup of |arg(g/k)| on [-2, 2] is about 0.855, not below 0.7")
def test_phase_of_g_over_k_below_07():
    assert log_scaled_core().lemma_phase_bound < 0.7


def test_phase_of_g_over_k_below_pi_over_3():
    core = log_scaled_core()
    assert 0.85 < core.lemma_phase_bound < math.pi / 3
    assert core.region_arg_bound < math.pi / 3


@pytest.mark.parametrize("y", [4.0, 10.0, 1e6])
def test_log_scaled_certificate(y):
    cert = certify_log_scaled_norm(y)
    assert cert.certified_upper.hi < 31.521 * math.log(y)
    assert cert.sampled_max.lo <= cert.certified_upper.hi
    with pytest.raises(DomainError):
        certify_log_scaled_norm(2.0)
