"""Explicit minor-arc bounds for S_eta(alpha, x) with eta = eta_2.

All formulas are evaluated in interval arithmetic. Reported totals are the
upper endpoints of the resulting intervals, so a bound stays a bound.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import interval as iv
from .constants import ConstantsTable, default_constants
from .errors import DomainError
from .interval import Interval

K = iv.const
X0 = K("2.16e20")
# theorem statement vs the sharper pair from its proof
STATED_CONSTANTS = (K("0.5"), K("2.5"))
PROOF_CONSTANTS = (K("0.49911"), K("2.491"))
R_COEFFS = (K("0.27125"), K("0.41415"))
LARGE_Q = (K("0.2727"), K("1218"))
EPS_TYPE_I = 0.07

# published worst-case table (x = 1e27, |delta| <= 8)
TABLE1_X = 1e27
TABLE1_ROWS = [(10**5, K("0.04522")), (150000, K("0.03821")), (250000, K("0.03097")),
               (500000, K("0.02336")), (750000, K("0.01984")), (10**6, K("0.01767")),
               (10**7, K("0.00716"))]


def _i(x) -> Interval:
    return iv.as_interval(x)


def imin(*xs) -> Interval:
    xs = [_i(x) for x in xs]
    return Interval(min(x.lo for x in xs), min(x.hi for x in xs))


def imax(*xs) -> Interval:
    xs = [_i(x) for x in xs]
    return Interval(max(x.lo for x in xs), max(x.hi for x in xs))


def log_plus(x) -> Interval:
    x = _i(x)
    if x.hi <= 1:
        return Interval(0.0)
    return imax(iv.log(imax(x, 1.0)), 0.0)


def cbrt(x) -> Interval:
    return iv.exp(iv.log(_i(x)) / 3)


def x_pow(x, num: int, den: int) -> Interval:
    return iv.exp(iv.log(_i(x)) * num / den)


# ---------------------------------------------------------------------------
# C, R and the digamma-type bound on q/phi(q)

def C(x, t) -> Interval:
    """log(1 + log 4t / (2 log(9 x^(1/3) / (2.004 t))))."""
    x, t = _i(x), _i(t)
    if t.lo <= 0:
        raise DomainError("C needs t > 0")
    inner = 9 * cbrt(x) / (K("2.004") * t)
    if inner.lo <= 1:
        raise DomainError("C needs t < 9 x^(1/3) / 2.004")
    ratio = iv.log(4 * t) / (2 * iv.log(inner))
    if ratio.lo <= -1:
        raise DomainError("C undefined: 1 + ratio <= 0")
    return iv.log1p(ratio)


def R(x, t) -> Interval:
    return R_COEFFS[0] * C(x, t) + R_COEFFS[1]


def digamma_F(q) -> Interval:
    """e^gamma log log q + 2.50637 / log log q; an upper bound for q/phi(q)."""
    if _i(q).lo < 3:
        raise DomainError("digamma_F needs q >= 3")
    ll = iv.log(iv.log(_i(q)))
    return iv.exp(iv.EULER_GAMMA) * ll + K("2.50637") / ll


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError("phi needs n >= 1")
    r = n
    for p in factorize(n):
        r = r // p * (p - 1)
    return r


def primorial_ratio(q0: int) -> Fraction:
    """prod p/(p-1) over p <= P, for the largest primorial 2*3*...*P <= q0."""
    prod, ratio, p = 1, Fraction(1), 2
    while True:
        if all(p % d for d in range(2, int(p ** 0.5) + 1)):
            if prod * p > q0:
                return ratio
            prod *= p
            ratio *= Fraction(p, p - 1)
        p += 1


def frac_interval(f: Fraction) -> Interval:
    return Interval(iv.fraction_down(f), iv.fraction_up(f))


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArcApprox:
    """2 alpha = a/q + delta/x with gcd(a, q) = 1, |delta/x| <= 1/(qQ), q <= Q."""

    x: float
    a: int
    q: int
    delta: float
    Q: float

    def __post_init__(self):
        if self.x < 1:
            raise DomainError("x must be >= 1")
        if self.q < 1:
            raise DomainError("q must be >= 1")
        if math.gcd(self.a, self.q) != 1:
            raise DomainError(f"gcd({self.a}, {self.q}) != 1")
        if self.q > self.Q:
            raise DomainError("q > Q")
        if abs(self.delta) * self.q * self.Q > self.x * (1 + 1e-15):
            raise DomainError("|delta/x| > 1/(qQ)")

    @property
    def delta0(self) -> float:
        return max(2.0, abs(self.delta) / 4)

    @classmethod
    def for_theorem(cls, x: float, q: int, delta: float = 0.0, a: int = 1) -> "ArcApprox":
        """Arc with the theorem's Q = (3/4) x^(2/3)."""
        return cls(x=x, a=a, q=q, delta=delta, Q=0.75 * x ** (2 / 3))


class Branch(enum.Enum):
    SMALL_Q = "small_q"
    LARGE_Q = "large_q"


@dataclass
class BoundReport:
    total: Interval
    branch: Branch
    components: dict[str, Interval]
    parameters_used: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def total_over_x(self) -> Interval:
        return self.total / _i(self.parameters_used["x"])


def _sum(components: dict[str, Interval]) -> Interval:
    tot = Interval(0.0)
    for v in components.values():
        tot = tot + v
    return tot


def _qphi(q: int, qphi) -> Interval:
    return _i(qphi) if qphi is not None else frac_interval(Fraction(q, euler_phi(q)))


def small_q_components(x, q, delta0, qphi: Interval, constants=STATED_CONSTANTS) -> dict[str, Interval]:
    """Terms of the q <= x^(1/3)/6 bound; qphi is (an upper bound for) q/phi(q)."""
    x, d0, q = _i(x), _i(delta0), _i(q)
    ca, cb = constants
    t = d0 * q
    lt = iv.log(t)
    phi_d0 = t / qphi  # delta0 * phi(q)
    main = (R(x, t) * lt + ca) / iv.sqrt(phi_d0) * x
    second = cb * x / iv.sqrt(t)
    lq, ld = iv.log(q), iv.log(d0)
    m1 = (K("1.75") * ld + K("3.25") * lq + Interval(80) / 9) * qphi
    m2 = Interval(5) / 6 * iv.log(x) + Interval(50) / 9
    tail = Interval(80) / 9 * lq + Interval(16) / 9 * ld + Interval(111) / 5
    lterm = 2 * x / t * (imin(m1, m2) + tail)
    return {"main": main, "delta_q_term": second, "L_term": lterm,
            "x56_term": K("3.2") * x_pow(x, 5, 6)}


def large_q_components(x) -> dict[str, Interval]:
    x = _i(x)
    lx = iv.log(x)
    return {"x56_log32": LARGE_Q[0] * x_pow(x, 5, 6) * lx * iv.sqrt(lx),
            "x23_log": LARGE_Q[1] * x_pow(x, 2, 3) * lx}


def main_theorem_bound(arc: ArcApprox, proof_constants: bool = False, qphi=None,
                       check_Q: bool = True) -> BoundReport:
    """Bound for |S_eta(alpha, x)|, alpha as in ``arc``, x >= 2.16e20.

    ``qphi`` overrides q/phi(q) by a supplied upper bound (worst-case tables).
    """
    if arc.x < X0.hi:
        raise DomainError("the bound needs x >= 2.16e20")
    if check_Q and not math.isclose(arc.Q, 0.75 * arc.x ** (2 / 3), rel_tol=1e-9):
        raise DomainError("the bound is stated for Q = (3/4) x^(2/3)")
    y = cbrt(arc.x) / 6
    params = {"x": arc.x, "q": arc.q, "delta": arc.delta, "delta0": arc.delta0, "Q": arc.Q}
    notes = []
    if y.certainly_ge(arc.q):
        consts = PROOF_CONSTANTS if proof_constants else STATED_CONSTANTS
        comps = small_q_components(arc.x, arc.q, arc.delta0, _qphi(arc.q, qphi), consts)
        branch = Branch.SMALL_Q
        notes.append(f"additive constants {consts[0]}, {consts[1]}"
                     + (" (proof)" if proof_constants else " (statement)"))
        if qphi is not None:
            notes.append(f"q/phi(q) replaced by {qphi}")
    elif y.certainly_lt(arc.q):
        comps = large_q_components(arc.x)
        branch = Branch.LARGE_Q
    else:
        # q within rounding of the threshold: both branches, take the larger
        a = small_q_components(arc.x, arc.q, arc.delta0, _qphi(arc.q, qphi))
        b = large_q_components(arc.x)
        if _sum(a).hi >= _sum(b).hi:
            comps, branch = a, Branch.SMALL_Q
        else:
            comps, branch = b, Branch.LARGE_Q
        notes.append("q at the branch threshold up to rounding; larger branch reported")
    return BoundReport(_sum(comps), branch, comps, params, notes)


def branch_continuity(x: float) -> dict:
    """Both branch totals at q = floor(x^(1/3)/6), delta = 0. No equality is implied."""
    q = int(math.floor(cbrt(x).lo / 6))
    while q > 1 and (cbrt(x) / 6).certainly_lt(q):
        q -= 1
    small = _sum(small_q_components(x, q, 2.0, _qphi(q, None)))
    large = _sum(large_q_components(x))
    return {"x": x, "q": q, "small_q_over_x": (small / _i(x)).hi,
            "large_q_over_x": (large / _i(x)).hi}


# ---------------------------------------------------------------------------
# worst-case table

def table1(x: float = TABLE1_X, q0_list=None, delta_cap: float = 8.0,
           convention: str = "digamma", proof_constants: bool = False) -> list[dict]:
    """Worst-case bound/x over q >= q0 and |delta| <= delta_cap.

    convention "digamma": q/phi(q) < F(q0') for every q <= q0' (q0' >= 30),
    and the main term sqrt(F(q)/q) decreases in q, so evaluating at q = q0
    with q/phi(q) replaced by F(q0) is a rigorous worst case.
    convention "primorial": q/phi(q) set to its value at the largest
    primorial <= q0, evaluated at q = q0.
    Every term is nonincreasing in delta0, so delta0 = 2 is worst; the
    other end of the delta range is evaluated as well and the larger kept.
    """
    q0_list = q0_list if q0_list is not None else [r[0] for r in TABLE1_ROWS]
    published = dict(TABLE1_ROWS)
    consts = PROOF_CONSTANTS if proof_constants else STATED_CONSTANTS
    rows = []
    for q0 in q0_list:
        if convention == "digamma":
            qphi = digamma_F(max(q0, 30))
        elif convention == "primorial":
            qphi = frac_interval(primorial_ratio(q0))
        else:
            raise DomainError(f"unknown convention {convention!r}")
        vals = []
        for d0 in sorted({2.0, max(2.0, delta_cap / 4)}):
            comps = small_q_components(x, q0, d0, qphi, consts)
            vals.append((_sum(comps) / _i(x)).hi)
        ratio = max(vals)
        row = {"q0": q0, "ratio": ratio, "convention": convention, "delta_cap": delta_cap,
               "q_over_phi": qphi.hi}
        if q0 in published and x == TABLE1_X and delta_cap == 8.0:
            row["published"] = published[q0].hi
            row["rel_dev"] = ratio / published[q0].hi - 1
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# parameter choices

class Choice(enum.Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class Parameters:
    x: float
    q: int
    delta: float
    choice: Choice
    U: float
    V: float
    Q: float
    y: float
    theta: float
    eps1: float
    checks: dict = field(default_factory=dict)

    @property
    def delta0(self) -> float:
        return max(2.0, abs(self.delta) / 4)

    def as_dict(self) -> dict:
        return {"U": self.U, "V": self.V, "Q": self.Q, "y": self.y, "theta": self.theta,
                "eps1": self.eps1, "choice": self.choice.value,
                "checks": {k: bool(v) for k, v in self.checks.items()}}


def select_parameters(x: float, q: int, delta: float = 0.0, choice: str | Choice = "first",
                      strict: bool = True) -> Parameters:
    """The two parameter sets, with their side conditions checked in interval arithmetic."""
    choice = Choice(choice)
    if x < X0.hi:
        raise DomainError("parameter choices need x >= 2.16e20")
    X = _i(x)
    x13 = cbrt(X)
    y = x13 / 6
    d0 = max(2.0, abs(delta) / 4)
    checks: dict[str, bool] = {}
    if choice is Choice.FIRST:
        Q = X / (8 * y)
        U = x_pow(X, 2, 3) / (9 * iv.sqrt(_i(q) * d0))
        V = 9 * x13 / 2
        theta = Interval(27) / 8
        if not y.certainly_ge(q):
            raise DomainError("first choice needs q <= x^(1/3)/6")
        checks["werto_q"] = (V / (2 * theta * q)).certainly_ge(4 * (1 - 1e-12))
        if abs(delta) * q <= 8 * y.lo:
            checks["werto_delta_q"] = (abs(delta) == 0 or
                                       (V / (theta * abs(delta) * q)).certainly_ge(1 - 1e-12))
        checks["curious"] = U.certainly_ge(K("5e5") * X / (U * V))
    else:
        U = 500 * iv.sqrt(Interval(6)) * x13
        V = x13 / 3
        Q = X / U
        theta = iv.exp(Interval(2))
        # equality holds exactly; compare with a relative rounding allowance
        checks["curious"] = (U / (K("5e5") * X / (U * V))).overlaps(Interval(1)) or \
            U.certainly_ge(K("5e5") * X / (U * V))
        checks["U_below_sqrt_x"] = U.certainly_lt(iv.sqrt(X))
    # the second choice meets V = 2e6 with equality at x = 2.16e20
    checks["V_ge_2e6"] = V.certainly_ge(2e6) or V.overlaps(Interval(2e6))
    checks["V_lt_x_over_4"] = V.certainly_lt(X / 4)
    checks["UV_le_x"] = (U * V).certainly_le(X)
    checks["Q_ge_sqrt_ex"] = Q.certainly_ge(iv.sqrt(iv.E * X))
    checks["Q_ge_U"] = Q.certainly_ge(U) or Q.overlaps(U)
    checks["Q_ge_x_over_U"] = Q.certainly_ge(X / U) or Q.overlaps(X / U)
    eps1 = (X / (2 * U * Q)).hi
    if choice is Choice.FIRST:
        checks["eps1_le_0.002"] = eps1 <= 0.002
    bad = [k for k, v in checks.items() if not v]
    if bad and strict:
        raise DomainError(f"side conditions fail: {', '.join(bad)}")
    return Parameters(x, q, delta, choice, U.mid, V.mid, Q.mid, y.mid, theta.mid, eps1, checks)


# ---------------------------------------------------------------------------
# type I

class TypeI(enum.Enum):
    SI1 = "SI1"
    SI2_SMALL_Q = "SI2_small_q"
    SI2_LARGE_Q = "SI2_large_q"


def C0(delta: float, eps: float = EPS_TYPE_I, k: ConstantsTable | None = None) -> Interval:
    k = k or default_constants()
    if abs(delta) <= (1 / (2 * k.c2)).lo:
        return k.C0_small_delta
    return k.C0_large_delta(eps)


def chusan(x, q, delta, U, V, Q, k: ConstantsTable | None = None) -> Interval:
    """Terms of the S_I2 bound shared by both delta ranges."""
    k = k or default_constants()
    x, U, V, Q = _i(x), _i(U), _i(V), _i(Q)
    phi = euler_phi(q)
    d2 = (iv.PI * abs(delta)).sqr()
    m = Interval(1.0) if d2.hi <= k.c0.lo else imin(1.0, k.c0 / d2)
    lp = log_plus(Q / (4 * V * q * q))
    f = Interval(1.0) if lp.lo == 0 else imin(K("0.8") / lp, 1.0)
    lv = iv.log(V)
    return (x / (2 * phi) * m * f * iv.log(V * q)
            + k.I2[8] * x / q * (U * V / x).sqr() * (1 + _i(q) / U).sqr()
            + k.I[10] / 2 * (U * V / x * q * lv + U.sqr() * V / x * lv))


def fausto(x, q, U, V, Q, k: ConstantsTable | None = None) -> Interval:
    k = k or default_constants()
    x, U, V, Q = _i(x), _i(U), _i(V), _i(Q)
    return (k.C0_small_delta * U * V
            + (k.I2[10] * iv.log(U / q) + k.I2[5] * imax(iv.log(k.I[11] * q * q / x), 2)
               + k.I2[12]) * Q)


def magus(x, q, delta, U, V, Q, eps: float = EPS_TYPE_I, k: ConstantsTable | None = None) -> Interval:
    k = k or default_constants()
    if not 0 < eps < 1:
        raise DomainError("epsilon must lie in (0, 1)")
    x, U, V, Q = _i(x), _i(U), _i(V), _i(Q)
    e = _i(eps)
    ce = (1 + e) * iv.sqrt(3 + 2 * e)
    ad = _i(abs(delta))
    return ((k.I2[4] + (1 + e) * k.I2[13]) * U * V
            + ce * (k.I2[14] * (iv.log(_i(q)) + log_plus(6 * U * V * ad * q / (iv.sqrt(Interval(2)) * x)))
                    + k.I2[15]) * x / (ad * q)
            + k.I2[16] * (2 + (1 + e) / e * log_plus(2 * U * V * ad * q / x)) * x / (Q / V)
            + k.I2[17] * Q + ce * k.I2[18] * V)


def therwald(x, q, delta) -> Interval:
    """S_I1 bound under the first choice of parameters."""
    k = default_constants()
    x = _i(x)
    d0 = max(2.0, abs(delta) / 4)
    lx = iv.log(x)
    d2 = _i(delta).sqr()
    m = Interval(1.0) if d2.hi <= k.c0p.lo else imin(1.0, k.c0p / d2)
    qphi = frac_interval(Fraction(q, euler_phi(q)))
    inner = imin(qphi * (K("1.75") * iv.log(_i(d0) * q) + K("6.11676")), lx / 2 + K("5.65787"))
    x23 = x_pow(x, 2, 3)
    return (x / q * m * inner + x23 / iv.sqrt(_i(q) * d0) * (K("0.67845") * lx - K("1.20818"))
            + K("0.0507") * x23)


def typeI_bounds(arc: ArcApprox, U: float, V: float, variant: str | TypeI,
                 eps: float = EPS_TYPE_I) -> Interval:
    variant = TypeI(variant)
    k = default_constants()
    x, q, delta = arc.x, arc.q, arc.delta
    if variant is TypeI.SI1:
        p = select_parameters(x, q, delta, Choice.FIRST, strict=False)
        if not (math.isclose(U, p.U, rel_tol=1e-9) and math.isclose(V, p.V, rel_tol=1e-9)):
            raise DomainError("the S_I1 closed form assumes the first choice of U, V")
        return therwald(x, q, delta)
    if variant is TypeI.SI2_SMALL_Q:
        if q > arc.Q / V:
            raise DomainError("q <= Q/V is required; use SI2_large_q")
        if arc.Q > 2 * U * V / math.e:
            raise DomainError("Q <= 2UV/e is required")
        base = chusan(x, q, delta, U, V, arc.Q, k)
        if abs(delta) <= (1 / (2 * k.c2)).lo:
            return base + fausto(x, q, U, V, arc.Q, k)
        return base + magus(x, q, delta, U, V, arc.Q, eps, k)
    # q > Q/V: the closed form of the second choice
    X = _i(x)
    if not (_i(U) * V + Interval(19) / 18 * arc.Q).certainly_le(X / K("5.6")):
        raise DomainError("UV + (19/18) Q <= x/5.6 is required")
    lx = iv.log(X)
    return x_pow(X, 2, 3) * lx * (K("1213.15") + K("0.0006406") * lx)


# ---------------------------------------------------------------------------
# type II

class TypeII(enum.Enum):
    VINLAND1 = "vinland1"
    VINLAND2 = "vinland2"
    VINLAND3 = "vinland3"
    ERIKSAGA = "eriksaga"
    VINLANDSAGA = "vinlandsaga"


def Phi(x, q, U, V, theta) -> Interval:
    x, U, V, theta = _i(x), _i(U), _i(V), _i(theta)
    l2q = iv.log(_i(2 * q))
    if (2 * theta * q).certainly_gt(x / U):
        return Interval(0.0)
    if (V / (2 * theta)).certainly_ge(q):
        return l2q * iv.log1p(iv.log(x / (U * V)) / iv.log(V / (2 * q)))
    return l2q * (iv.log(iv.log(x / (2 * U * q))) - iv.log(iv.log(theta)))


def typeII_case(arc: ArcApprox, U, V, theta) -> TypeII:
    x, q, d = arc.x, arc.q, abs(arc.delta)
    if d >= 8:
        return TypeII.ERIKSAGA if d * q <= V / theta else TypeII.VINLANDSAGA
    if q <= V / (2 * theta):
        return TypeII.VINLAND1
    if q <= x / (2 * theta * U):
        return TypeII.VINLAND2
    return TypeII.VINLAND3


def typeII_bounds(arc: ArcApprox, U: float, V: float, theta: float,
                  case: str | TypeII | None = None, qphi=None) -> Interval:
    k = default_constants()
    expected = typeII_case(arc, U, V, theta)
    case = expected if case is None else TypeII(case)
    d = abs(arc.delta)
    ok = {TypeII.VINLAND1: d < 8 and arc.q <= V / (2 * theta),
          TypeII.VINLAND2: V / (2 * theta) < arc.q <= arc.x / (2 * theta * U),
          TypeII.VINLAND3: arc.q > arc.x / (2 * theta * U),
          TypeII.ERIKSAGA: d >= 8 and d * arc.q <= V / theta,
          TypeII.VINLANDSAGA: d >= 8 and d * arc.q > V / theta}[case]
    if not ok:
        raise DomainError(f"hypotheses of {case.value} fail for q={arc.q}, delta={arc.delta}")
    if theta < math.e:
        raise DomainError("theta >= e is required")
    x, U_, V_, th = _i(arc.x), _i(U), _i(V), _i(theta)
    q = arc.q
    qi = _i(q)
    qp = _qphi(q, qphi)
    phi = qi / qp
    k2, k6, k7, k9 = k.kappa2, k.kappa6, k.kappa7, k.kappa9
    s2 = iv.sqrt(Interval(2))
    lV = iv.log(V_)
    if case is TypeII.VINLAND1:
        lxuv = iv.log(x / (U_ * V_))
        l2q = iv.log(2 * qi)
        first = x / iv.sqrt(2 * phi) * iv.sqrt(
            (lxuv + l2q * iv.log1p(lxuv / iv.log(V_ / (2 * qi)))) * (k6 * lxuv + 2 * k7))
        return (first + s2 * k2 * iv.sqrt(qp) * (1 + K("1.15") * iv.sqrt(l2q / iv.log(x / (2 * U_ * qi))))
                * x / iv.sqrt(U_) + k9 * x / iv.sqrt(V_))
    if case is TypeII.VINLAND2:
        l2q = iv.log(2 * qi)
        a = iv.log(x / (U_ * 2 * th * qi))
        l2tq = iv.log(2 * th * qi)
        first = x / iv.sqrt(2 * phi) * iv.sqrt(
            (a + l2q * iv.log(iv.log(x / (2 * U_ * qi)) / iv.log(th))) * (k6 * a + 2 * k7))
        p32 = l2tq * iv.sqrt(l2tq) - lV * iv.sqrt(lV)
        return (first
                + s2 * k2 * iv.sqrt(qp) * (1 + K("1.15") * iv.sqrt(l2q / iv.log(x / (2 * U_ * qi))))
                * x / iv.sqrt(U_)
                + (k2 * iv.sqrt(l2tq) + k9) * x / iv.sqrt(V_)
                + k2 / 6 * p32 * x / iv.sqrt(qi)
                + k2 * (iv.sqrt(2 * th * l2tq) + Interval(2) / 3 * p32) * iv.sqrt(qi * x))
    if case is TypeII.VINLAND3:
        lxu = iv.log(x / U_)
        p32 = lxu * iv.sqrt(lxu) - lV * iv.sqrt(lV)
        return ((k2 * iv.sqrt(2 * lxu) + k9) * x / iv.sqrt(V_) + k2 * iv.sqrt(lxu) * x / iv.sqrt(U_)
                + 2 * k2 / 3 * p32 * (x / (2 * iv.sqrt(2 * qi)) + iv.sqrt(qi * x)))
    di = _i(d)
    if case is TypeII.ERIKSAGA:
        eps1 = x / (2 * U_ * _i(arc.Q))
        lxuv = iv.log(x / (U_ * V_))
        inner = lxuv + iv.log(di * qi * (1 + eps1) / 4) * iv.log1p(
            lxuv / iv.log(4 * V_ / (di * (1 + eps1) * qi)))
        return (2 * x / iv.sqrt(di * phi) * iv.sqrt(inner) * iv.sqrt(k6 * lxuv + 2 * k7)
                + k2 * iv.sqrt(2 * qp) * iv.sqrt(lV / iv.log(2 * V_ / (di * qi))) * x / iv.sqrt(U_)
                + k9 * x / iv.sqrt(V_))
    # vinlandsaga
    dq = di * qi
    rho = qi / _i(arc.Q)
    a = iv.log(x / (U_ * th * dq))
    first = 2 * x / iv.sqrt(di * phi) * iv.sqrt(
        (a + iv.log(3 * dq / 8) * iv.log(iv.log(8 * x / (3 * U_ * dq)) / iv.log(8 * th / 3)))
        * (k6 * a + 2 * k7))
    ltdq = iv.log(th * dq)
    p32 = ltdq * iv.sqrt(ltdq) - lV * iv.sqrt(lV)
    return (first
            + 2 * k2 / 3 * (x / iv.sqrt(2 * dq) + x / (4 * iv.sqrt(_i(arc.Q) - qi))) * p32
            + (k2 / iv.sqrt(2 * (1 - rho)) * (iv.sqrt(lV) + iv.sqrt(1 / lV)) + k9) * x / iv.sqrt(V_)
            + k2 * iv.sqrt(qp) * iv.sqrt(ltdq) * x / iv.sqrt(U_))


# ---------------------------------------------------------------------------
# the final simplification

def rho_formula(x1=1e25, q0=2e5) -> Interval:
    """(C_{x1,2q0}(log 2q0 + 0.002) + log(8q0)/2) / (0.30214 log 2q0 + 0.67506)."""
    q0 = _i(q0)
    l2q = iv.log(2 * q0)
    return ((C(x1, 2 * q0) * (l2q + K("0.002")) + iv.log(8 * q0) / 2)
            / (K("0.30214") * l2q + K("0.67506")))


def optimal_rho() -> Interval:
    """rho at the stated optimisation point x1 = 1e25, q0 = 2e5."""
    return rho_formula(1e25, 2e5)


def rho_coefficients(rho) -> dict[str, Interval]:
    """Coefficients produced by the AM-GM step for a given rho."""
    rho = _i(rho)
    sr = iv.sqrt(rho)
    return {"C_coeff": 1 / (2 * sr),
            "log_coeff": 1 / (4 * sr) + K("0.30214") * sr / 2,
            "const": (iv.LOG2 / sr + sr * K("0.67506") / 2) / 2}


RHO_TARGETS = {"C_coeff": K("0.27125"), "log_coeff": K("0.4141"), "const": K("0.49911")}


def rho_consistency(rho) -> dict[str, bool]:
    """Whether the coefficients at rho stay below the stated 0.27125, 0.4141, 0.49911."""
    co = rho_coefficients(rho)
    return {k: co[k].certainly_le(RHO_TARGETS[k]) for k in co}


# ---------------------------------------------------------------------------
# the second choice of parameters

def hust(x, q=None) -> Interval:
    """Type II bound for y/4 < q <= x/(2 e^2 U) under the second choice."""
    k = default_constants()
    x = _i(x)
    x13 = cbrt(x)
    y = x13 / 6
    q = y if q is None else _i(q)
    U = 500 * iv.sqrt(Interval(6)) * x13
    V = x13 / 3
    e2 = iv.exp(Interval(2))
    k2, k6, k7, k9 = k.kappa2, k.kappa6, k.kappa7, k.kappa9
    a = iv.log(x / (U * 2 * e2 * q))
    lxu = iv.log(x / U)
    lV = iv.log(V)
    ly = iv.log(y)
    l = iv.log(e2 * y / 2)
    first = x * iv.sqrt(digamma_F(q)) / iv.sqrt(2 * q) * iv.sqrt(
        (a + iv.log(2 * q) * iv.log(iv.log(x / (2 * U * q)) / 2)) * (k6 * a + 2 * k7))
    return (first
            + iv.sqrt(Interval(2)) * k2 * iv.sqrt(digamma_F(x / (2 * e2 * U)))
            * (1 + K("1.15") * iv.sqrt(iv.log(x / (e2 * U)) / 2)) * x / iv.sqrt(U)
            + (k2 * iv.sqrt(lxu) + k9) * x / iv.sqrt(V)
            + k2 / 6 * (l * iv.sqrt(l) - ly * iv.sqrt(ly)) * x / iv.sqrt(y)
            + k2 * (iv.sqrt(2 * e2 * lxu) + Interval(2) / 3 * (lxu * iv.sqrt(lxu) - lV * iv.sqrt(lV)))
            * x / iv.sqrt(2 * e2 * U))


SECOND_CHOICE_PUBLISHED = {
    "SI1_log": K("4.1982"), "SI1_log2": K("0.001063"),
    "SI2_log": K("1213.15"), "SI2_log2": K("0.0006406"),
    "SII_main": K("0.272652"),
    "SII_case_a_large_q": K("0.10198"), "SII_case_b": K("0.24956"),
    "total_main": K("0.27266"), "total_log": K("1217.35"),
}


def _round_up(v: float, digits: int) -> float:
    s = 10 ** digits
    return math.ceil(v * s - 1e-9) / s


def second_choice_assembly(x: float = 2.16e20) -> dict:
    """Totals for q > x^(1/3)/6: the component constants and their sum.

    The (log x)^2 coefficients are absorbed into the x^(5/6)(log x)^(3/2) term
    using x^(1/6)/sqrt(log x), which increases for x >= x0.
    """
    P = SECOND_CHOICE_PUBLISHED
    X = _i(x)
    lx = iv.log(X)
    norm = x_pow(X, 5, 6) * lx * iv.sqrt(lx)
    hust_ratio = hust(X) / norm
    log_coeff = P["SI1_log"] + P["SI2_log"]
    log2_coeff = P["SI1_log2"] + P["SI2_log2"]
    absorbed = log2_coeff * iv.sqrt(lx) / cbrt(iv.sqrt(X))
    main = P["SII_main"] + absorbed
    main_rounded = _round_up(main.hi, 5)
    log_rounded = _round_up(log_coeff.hi, 2)
    return {
        "x": x,
        "hust_ratio_recomputed": hust_ratio.hi,
        "hust_within_published": hust_ratio.certainly_le(P["SII_main"]),
        "log_coeff": log_coeff.hi,
        "log2_coeff": log2_coeff.hi,
        "log2_absorbed": absorbed.hi,
        "main_coeff": main.hi,
        "main_coeff_rounded": main_rounded,
        "log_coeff_rounded": log_rounded,
        "reproduces": (main_rounded == P["total_main"].hi or main.certainly_le(P["total_main"]))
        and log_coeff.certainly_le(P["total_log"]),
        "dominated_by_theorem": P["total_main"].certainly_le(LARGE_Q[0])
        and P["total_log"].certainly_le(LARGE_Q[1]),
    }
