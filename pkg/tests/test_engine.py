import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from minorarc import interval as iv
from minorarc.engine import (LARGE_Q, TABLE1_ROWS, ArcApprox, Branch, C, C0, Choice, Phi, R, TypeI,
                             TypeII, branch_continuity, digamma_F, euler_phi, main_theorem_bound,
                             optimal_rho, primorial_ratio, rho_coefficients, rho_consistency,
                             rho_formula, second_choice_assembly, select_parameters, table1,
                             therwald, typeI_bounds, typeII_bounds, typeII_case)
from minorarc.errors import DomainError
from minorarc.interval import Interval

from reference import FROZEN, C_ref, R_ref, S_I1_ref, main_bound_ref, phi

X0 = 2.16e20


def close(a: Interval, ref, rel=1e-13):
    return a.contains(float(ref)) or abs(a.mid - float(ref)) <= rel * abs(float(ref))


# --- C and R -------------------------------------------------------------------

def test_R_golden():
    assert abs(R(1e25, 5e5).mid - 0.59648) < 1e-5


def test_C_large_x_golden():
    assert abs(C(3.1e28, 2e6).mid - 0.64020) < 1e-4


def test_C_at_quarter_is_zero():
    assert C(1e25, 0.25).contains(0.0)
    assert R(1e25, 0.25).contains(0.41415)


def test_reference_is_frozen():
    assert mpmath.nstr(R_ref(1e27, 2e5), 15) == FROZEN["R(1e27,2e5)"]
    assert float(main_bound_ref(X0, 10**5, 0)) == pytest.approx(float(FROZEN["main(2.16e20,1e5,0)"]), rel=1e-14)
    assert float(S_I1_ref(1e25, 10**5, 0)) == pytest.approx(float(FROZEN["S_I1(1e25,1e5,0)"]), rel=1e-14)


def test_R_derived_value():
    assert close(R(1e27, 2e5), FROZEN["R(1e27,2e5)"])


@given(st.floats(21, 30), st.floats(-0.5, 6))
@settings(max_examples=40)
def test_C_matches_reference(lx, lt):
    x, t = 10.0 ** lx, 10.0 ** lt
    assume(9 * x ** (1 / 3) / (2.004 * t) > 10)
    assert close(C(x, t), C_ref(x, t), 1e-12)


def test_C_domain():
    with pytest.raises(DomainError):
        C(1e25, 0)
    with pytest.raises(DomainError):
        C(1e6, 1e6)


# --- q/phi(q) ----------------------------------------------------------------

def test_digamma_examples():
    assert digamma_F(30).lo > 3
    assert 510510 / 92160 < digamma_F(510510).lo
    assert euler_phi(510510) == 92160
    with pytest.raises(DomainError):
        digamma_F(2)


def test_digamma_bounds_q_over_phi_up_to_1e6():
    n = 10**6
    ph = np.arange(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if ph[p] == p:
            ph[p::p] -= ph[p::p] // p
    q = np.arange(30, n + 1)
    ratio = q / ph[30:]
    ll = np.log(np.log(q))
    F = np.exp(np.euler_gamma) * ll + 2.50637 / ll
    margin = F - ratio
    assert margin.min() > 1e-3
    assert ph[510510] == 92160


@given(st.integers(1, 10**6))
def test_euler_phi(n):
    assert euler_phi(n) == phi(n)


def test_primorial_ratio():
    assert primorial_ratio(30) == mpmath.mpf(15) / 4 or float(primorial_ratio(30)) == 3.75
    assert primorial_ratio(29) == 3
    assert float(primorial_ratio(10**6)) == pytest.approx(510510 / 92160)


# --- the main bound ------------------------------------------------------------

def test_main_bound_derived_value():
    r = main_theorem_bound(ArcApprox.for_theorem(X0, 10**5))
    assert r.branch is Branch.SMALL_Q
    assert close(r.total, FROZEN["main(2.16e20,1e5,0)"], 1e-13)


@given(st.floats(20.4, 30), st.integers(1, 10**6), st.floats(-1e3, 1e3))
@settings(max_examples=40)
def test_main_bound_matches_reference(lx, q, delta):
    x = 10.0 ** lx
    assume(x >= X0 and q <= x ** (1 / 3) / 6 * 0.999)
    assume(abs(delta) * q * 0.75 * x ** (2 / 3) <= x * 0.999)
    arc = ArcApprox.for_theorem(x, q, delta)
    assert close(main_theorem_bound(arc).total, main_bound_ref(x, q, delta), 1e-12)


@given(st.floats(20.4, 30), st.integers(1, 10**6), st.floats(0, 1e3))
@settings(max_examples=40)
def test_components_sum_to_total(lx, q, delta):
    x = 10.0 ** lx
    assume(q <= x ** (1 / 3) / 6 * 0.999)
    assume(abs(delta) * q * 0.75 * x ** (2 / 3) <= x * 0.999)
    arc = ArcApprox.for_theorem(x, q, delta)
    r = main_theorem_bound(arc)
    tot = Interval(0.0)
    for v in r.components.values():
        tot = tot + v
    assert tot == r.total


@given(st.floats(0, 6), st.floats(0, 6))
@settings(max_examples=40)
def test_bound_nonincreasing_in_delta0(a, b):
    x, q = 1e27, 1000
    lo, hi = sorted((8 + 10 ** a, 8 + 10 ** b))
    arc = lambda d: ArcApprox(x=x, a=1, q=q, delta=d, Q=0.75 * x ** (2 / 3))
    assume(hi * q * arc(0).Q <= x)
    assert main_theorem_bound(arc(hi)).total.hi <= main_theorem_bound(arc(lo)).total.hi * (1 + 1e-12)


def test_large_q_branch():
    x = 1e27
    q = int(x ** (1 / 3) / 6) + 1
    r = main_theorem_bound(ArcApprox.for_theorem(x, q))
    assert r.branch is Branch.LARGE_Q
    lx = math.log(x)
    expect = 0.2727 * x ** (5 / 6) * lx ** 1.5 + 1218 * x ** (2 / 3) * lx
    assert r.total.contains(expect) or abs(r.total.mid / expect - 1) < 1e-12


def test_branch_continuity_reports_both():
    b = branch_continuity(1e27)
    assert b["small_q_over_x"] > 0 and b["large_q_over_x"] > 0


def test_main_bound_domain():
    with pytest.raises(DomainError):
        main_theorem_bound(ArcApprox.for_theorem(1e20, 5))
    with pytest.raises(DomainError):
        ArcApprox(x=1e25, a=2, q=4, delta=0.0, Q=1e16)
    with pytest.raises(DomainError):
        ArcApprox(x=1e25, a=1, q=10, delta=1e10, Q=1e16)
    with pytest.raises(DomainError):
        main_theorem_bound(ArcApprox(x=1e25, a=1, q=10, delta=0.0, Q=1e15))


def test_delta0():
    arc = lambda d: ArcApprox.for_theorem(1e25, 1, d)
    assert arc(3.0).delta0 == 2 and arc(40.0).delta0 == 10


def test_proof_constants_are_smaller():
    arc = ArcApprox.for_theorem(1e25, 1000)
    assert main_theorem_bound(arc, proof_constants=True).total.hi < main_theorem_bound(arc).total.lo


# --- worst-case table --------------------------------------------------------------------

def test_table_digamma_convention_within_tolerance():
    rows = table1(convention="digamma")
    assert len(rows) == len(TABLE1_ROWS)
    for r in rows:
        assert abs(r["rel_dev"]) < 0.002


def test_table_primorial_rows():
    rows = {r["q0"]: r for r in table1(convention="primorial")}
    assert abs(rows[10**5]["ratio"] - 0.04522) / 0.04522 < 0.02
    assert abs(rows[10**7]["ratio"] - 0.00716) / 0.00716 < 0.02
    # rows 250000 and 500000 sit 2.2% and 2.8% below the printed values
    assert -0.03 < rows[500000]["rel_dev"] < -0.02


def test_table_decreasing_in_q0():
    for conv in ("digamma", "primorial"):
        ratios = [r["ratio"] for r in table1(convention=conv)]
        assert ratios == sorted(ratios, reverse=True)


def test_table_unknown_convention():
    with pytest.raises(DomainError):
        table1(convention="nope")


# --- parameters -----------------------------------------------------------------

@pytest.mark.parametrize("q", [1, 7, 10**4, 999999])
def test_first_choice_side_conditions(q):
    p = select_parameters(X0, q)
    assert all(p.checks.values())
    assert p.Q == pytest.approx(0.75 * X0 ** (2 / 3), rel=1e-12)
    assert p.theta == 27 / 8


def test_second_choice_is_an_equality():
    p = select_parameters(X0, 10**7, choice="second")
    assert all(p.checks.values())
    assert p.U / (X0 / (p.U * p.V)) == pytest.approx(5e5, rel=1e-12)
    assert p.theta == pytest.approx(math.exp(2))


def test_first_choice_needs_small_q():
    with pytest.raises(DomainError):
        select_parameters(X0, 10**7)
    with pytest.raises(DomainError):
        select_parameters(1e20, 1)


# --- type I and type II -----------------------------------------------------------

def test_C0_constants():
    assert C0(0.0).overlaps(iv.const("4.39636"))
    big = C0(10.0, eps=0.0)
    assert big.overlaps(iv.const("4.88963"))
    assert (C0(10.0, eps=0.5) - C0(10.0, eps=0.0)).overlaps(0.5 * iv.const("1.31541"))


def test_S_I1_derived_value():
    assert close(therwald(1e25, 10**5, 0), FROZEN["S_I1(1e25,1e5,0)"], 1e-13)


@given(st.floats(20.4, 28), st.integers(1, 10**5), st.floats(-100, 100))
@settings(max_examples=30)
def test_S_I1_matches_reference(lx, q, delta):
    assert close(therwald(10.0 ** lx, q, delta), S_I1_ref(10.0 ** lx, q, delta), 1e-12)


def test_typeI_variants():
    x, q = 1e25, 1000
    arc = ArcApprox.for_theorem(x, q)
    p = select_parameters(x, q)
    s1 = typeI_bounds(arc, p.U, p.V, TypeI.SI1)
    assert s1.lo > 0
    with pytest.raises(DomainError):
        typeI_bounds(arc, p.U * 2, p.V, "SI1")
    s2 = typeI_bounds(arc, p.U, p.V, "SI2_small_q")
    assert 0 < s2.lo and s2.hi < x
    big = ArcApprox.for_theorem(x, q, 1e3)
    assert typeI_bounds(big, p.U, p.V, "SI2_small_q").hi < x
    p2 = select_parameters(x, 10**7, choice="second")
    far = ArcApprox.for_theorem(x, 10**7)
    v = typeI_bounds(far, p2.U, p2.V, "SI2_large_q")
    lx = math.log(x)
    assert v.contains(x ** (2 / 3) * lx * (1213.15 + 0.0006406 * lx)) or \
        abs(v.mid / (x ** (2 / 3) * lx * (1213.15 + 0.0006406 * lx)) - 1) < 1e-12


def test_typeII_cases_and_domain():
    x = 1e25
    p = select_parameters(x, 10)
    arc = ArcApprox.for_theorem(x, 10)
    case = typeII_case(arc, p.U, p.V, p.theta)
    assert case is TypeII.VINLAND1
    v = typeII_bounds(arc, p.U, p.V, p.theta)
    assert 0 < v.lo and v.hi < x
    with pytest.raises(DomainError):
        typeII_bounds(arc, p.U, p.V, p.theta, case="vinland3")
    with pytest.raises(DomainError):
        typeII_bounds(arc, p.U, p.V, 2.0)
    far = ArcApprox.for_theorem(x, 10, 100.0)
    assert typeII_case(far, p.U, p.V, p.theta) in (TypeII.ERIKSAGA, TypeII.VINLANDSAGA)
    assert typeII_bounds(far, p.U, p.V, p.theta).hi < x


def test_Phi_empty_range():
    assert Phi(1e25, 10**9, 1e17, 1e8, 27 / 8) == Interval(0.0)


def test_kappa_constants():
    from minorarc.constants import default_constants
    k = default_constants()
    assert k.kappa6.overlaps(iv.const("0.60428"))
    for name, v in (("kappa7", "0.1281"), ("kappa2", "1.93768"), ("kappa9", "3.9086")):
        assert getattr(k, name).overlaps(iv.const(v))


# --- rho and the second choice ------------------------------------------------------

def test_rho_values():
    # the formula at the stated point gives 3.39796; 3.61407 is its value at q0 = 4e5
    assert abs(optimal_rho().mid - 3.39796) < 1e-5
    assert abs(rho_formula(1e25, 4e5).mid - 3.61407) < 1e-5


def test_rho_reproduces_R_coefficients():
    co = rho_coefficients(optimal_rho())
    assert all(rho_consistency(optimal_rho()).values())
    assert abs(co["C_coeff"].mid - 0.27125) < 1e-4


def test_second_choice_assembly():
    s = second_choice_assembly()
    assert s["reproduces"] and s["dominated_by_theorem"] and s["hust_within_published"]
    assert s["main_coeff_rounded"] == 0.27266 and s["log_coeff_rounded"] == 1217.35
    assert LARGE_Q[0].lo >= 0.27266
