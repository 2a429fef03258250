"""Brute-force oracles for the lemma-level inequalities and the Vaughan identity.

Every check evaluates the literal sum in floating point together with an
a-priori bound on its error, so the left side is an interval; the right side
is evaluated in interval arithmetic. The verdict is ``holds`` when
lhs.hi <= rhs.lo, ``VIOLATION`` when lhs.lo > rhs.hi, and ``inconclusive``
otherwise.

Phases e(theta) are computed from an exactly reduced fraction: either
alpha = a/D + gamma with integer D (the residue a*m*n mod D is exact) or, for
a float alpha, from an error-free product alpha*N = p + e.
"""

from __future__ import annotations

import enum
import json
import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import mpmath
import numba as nb
import numpy as np

from . import interval as iv
from .certify import C0
from .dd import U, two_prod
from .engine import euler_phi, imax, imin, log_plus
from .errors import DomainError
from .interval import Interval
from .sieve import lambda_base_table, mobius_table, primes_up_to

K = iv.const
TWO_PI = 2.0 * math.pi
ETA2_D1 = 8 * iv.LOG2  # |eta_2'|_1
C4 = K("1.03884")


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    INCONCLUSIVE = "inconclusive"
    VIOLATION = "VIOLATION"
    SKIPPED = "skipped"


def verdict(lhs: Interval, rhs: Interval) -> Verdict:
    if lhs.hi <= rhs.lo:
        return Verdict.HOLDS
    if lhs.lo > rhs.hi:
        return Verdict.VIOLATION
    return Verdict.INCONCLUSIVE


@dataclass
class CheckResult:
    id: int
    seed: int
    lemma: str
    lhs: Interval | None
    rhs: Interval | None
    verdict: Verdict
    params: dict = field(default_factory=dict)
    reason: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    def to_json(self) -> str:
        d = {"id": self.id, "seed": self.seed, "lemma": self.lemma,
             "lhs": None if self.lhs is None else [self.lhs.lo, self.lhs.hi],
             "rhs": None if self.rhs is None else [self.rhs.lo, self.rhs.hi],
             "verdict": self.verdict.value, "params": self.params}
        if self.reason:
            d["reason"] = self.reason
        return json.dumps(d, sort_keys=True)


def _result(i, seed, lemma, lhs, rhs, params) -> CheckResult:
    return CheckResult(i, seed, lemma, lhs, rhs, verdict(lhs, rhs), params)


def _skip(i, seed, lemma, reason, params=None) -> CheckResult:
    return CheckResult(i, seed, lemma, None, None, Verdict.SKIPPED, params or {}, reason)


def _pos_sum(lo: np.ndarray, hi: np.ndarray) -> Interval:
    """Interval for a sum of nonnegative terms given termwise bounds."""
    n = len(lo)
    s_lo = math.fsum(lo.tolist()) * (1 - 2 * U)
    s_hi = math.fsum(hi.tolist()) * (1 + 2 * U)
    return Interval(max(s_lo, 0.0) if n else 0.0, s_hi if n else 0.0)


# ---------------------------------------------------------------------------
# trigonometric sums

class TrigLemma(str, enum.Enum):
    FULL_PERIOD = "sum_over_full_period"
    Q_EXCLUDED = "q_excluded"
    B_OVER_SIN = "B_over_sin"


@dataclass
class TrigInstance:
    a: int
    q: int
    beta: float
    Q: float
    y1: float
    y2: float
    A: float = 0.0
    C: float = 0.0
    B: float = 0.0

    def validate(self):
        if math.gcd(self.a, self.q) != 1 or self.q < 1:
            raise DomainError("gcd(a, q) must be 1")
        if abs(self.beta) > 1 or self.q > self.Q:
            raise DomainError("need |beta| <= 1 and q <= Q")
        if min(self.A, self.B, self.C) < 0:
            raise DomainError("A, B, C must be nonnegative")


def _sin_bounds(a: int, q: int, beta: float, Q: float, n: np.ndarray):
    """Enclosures for |sin(pi alpha n)|, alpha = a/q + beta/(qQ)."""
    res = (a * n) % q
    small = beta * n.astype(np.float64) / (q * Q)
    r = res / q + small
    r = r - np.round(r)
    er = 2 * U + 4 * U * (np.abs(small) + 1)
    s = np.abs(np.sin(np.pi * r))
    es = np.pi * er + 6 * U * s + 1e-300
    return np.maximum(s - es, 0.0), s + es


def trig_lemma_check(inst: TrigInstance, which: TrigLemma | str) -> tuple[Interval, Interval]:
    which = TrigLemma(which)
    inst.validate()
    q, A, B, Cc = inst.q, inst.A, inst.B, inst.C
    if which is not TrigLemma.FULL_PERIOD:
        if inst.y2 - inst.y1 > q or inst.y2 > inst.Q / 2 or inst.y1 < 0:
            raise DomainError("need y2 - y1 <= q, y2 <= Q/2, y1 >= 0")
    n0 = math.floor(inst.y1) + 1
    n1 = math.floor(inst.y2) if which is not TrigLemma.FULL_PERIOD else math.floor(inst.y1 + q)
    n = np.arange(n0, n1 + 1, dtype=np.int64)
    if which is not TrigLemma.FULL_PERIOD:
        n = n[n % q != 0]
    s_lo, s_hi = _sin_bounds(inst.a, q, inst.beta, inst.Q, n)
    with np.errstate(divide="ignore"):
        c_lo = np.where(s_hi > 0, Cc / s_hi ** 2, np.inf) * (1 - 4 * U)
        c_hi = np.where(s_lo > 0, Cc / s_lo ** 2, np.inf) * (1 + 4 * U)
        if which is TrigLemma.B_OVER_SIN:
            b_lo = np.where(s_hi > 0, B / s_hi, np.inf) * (1 - 4 * U)
            b_hi = np.where(s_lo > 0, B / s_lo, np.inf) * (1 + 4 * U)
            t_lo, t_hi = np.minimum(b_lo, c_lo), np.minimum(b_hi, c_hi)
        else:
            t_lo, t_hi = np.minimum(A, c_lo), np.minimum(A, c_hi)
    t_lo = np.where(np.isnan(t_lo), 0.0, t_lo)  # 0 * inf from C = 0
    t_hi = np.where(np.isnan(t_hi), 0.0, t_hi)
    lhs = _pos_sum(t_lo, t_hi)
    pi = iv.PI
    A_, C_, B_, q_ = Interval(A), Interval(Cc), Interval(B), Interval(q)
    if which is TrigLemma.FULL_PERIOD:
        rhs = imin(2 * A_ + 6 * q_.sqr() / pi.sqr() * C_,
                   3 * A_ + 4 * q_ / pi * iv.sqrt(A_ * C_))
    elif which is TrigLemma.Q_EXCLUDED:
        rhs = imin(20 * C_ * q_.sqr() / (3 * pi.sqr()), 2 * A_ + 4 * q_ / pi * iv.sqrt(A_ * C_))
    else:
        if B == 0:
            rhs = Interval(0.0)
        elif Cc == 0:
            rhs = 2 * B_ * q_ / pi * 2
        else:
            rhs = 2 * B_ * q_ / pi * imax(2, iv.log(C_ * iv.exp(Interval(3)) * q_ / (B_ * pi)))
    return lhs, rhs


def _loguniform(rng: random.Random, lo: float, hi: float) -> float:
    return math.exp(rng.uniform(math.log(lo), math.log(hi)))


def _coprime(rng: random.Random, q: int) -> int:
    if q == 1:
        return 0
    while True:
        a = rng.randrange(1, q)
        if math.gcd(a, q) == 1:
            return a


def random_trig_instance(rng: random.Random, which: TrigLemma, q_max=1000, Q_max=1e6) -> TrigInstance:
    q = int(_loguniform(rng, 1, q_max + 1))
    q = min(q, q_max)
    Q = rng.uniform(q, Q_max) if rng.random() < 0.5 else _loguniform(rng, q, Q_max)
    a = _coprime(rng, q)
    beta = rng.uniform(-1, 1)

    def coef():
        return 0.0 if rng.random() < 0.05 else _loguniform(rng, 1e-3, 1e3)

    if which is TrigLemma.FULL_PERIOD:
        y1 = rng.uniform(0, 1e6)
        y2 = y1 + q
    else:
        y2 = rng.uniform(0, Q / 2)
        y1 = max(0.0, y2 - rng.uniform(0, q))
    inst = TrigInstance(a, q, beta, Q, y1, y2, A=coef(), C=coef())
    if which is TrigLemma.B_OVER_SIN:
        inst.B = _loguniform(rng, 1e-3, 1e3)
        inst.C = _loguniform(rng, 1e-3, 1e3)
    return inst


# ---------------------------------------------------------------------------
# quadratic decay of sums of f(n) e(alpha n)

def quadratic_decay_check(alpha: float, N: int = 1, min_sin: float = 1e-6) -> tuple[Interval, Interval]:
    """|sum_n eta_2(n/N) e(alpha n)| against |f''^|_inf / (4 sin^2 pi alpha).

    For f(t) = eta_2(t/N) the sup norm of the transform of f'' is that of
    eta_2'' divided by N, and the latter is at most 31.521.
    """
    s = Interval(abs(math.sin(math.pi * alpha))).widen(4 * U + 8 * U * abs(alpha))
    if s.lo < min_sin:
        raise DomainError("alpha too close to an integer")
    n = np.arange(N // 4 + 1, N + 1, dtype=np.int64)
    n = n[(4 * n > N) & (n < N)]
    t = n / N
    eta = np.where(t <= 0.5, 4 * np.log(4 * t), -4 * np.log(t))
    p, e = _exact_frac_vec(alpha, n)
    th = p + e
    re = math.fsum((eta * np.cos(TWO_PI * th)).tolist())
    im = math.fsum((eta * np.sin(TWO_PI * th)).tolist())
    mag = float(np.sum(np.abs(eta)))
    err = mag * (TWO_PI * 2 * U + 20 * U) + len(n) * 16 * U + 4 * U * (abs(re) + abs(im))
    val = math.hypot(re, im)
    lhs = Interval(max(val - 2 * err, 0.0), val + 2 * err) if len(n) else Interval(0.0)
    rhs = C0 / (4 * N * s.sqr())
    return lhs, rhs


def _exact_frac_vec(alpha: float, n: np.ndarray):
    """alpha*n mod 1 as p + e with p exact and |e| tiny; alpha a float."""
    nf = n.astype(np.float64)
    p = alpha * nf
    # Dekker split of alpha * n, n < 2**53 exact
    c = 134217729.0 * alpha
    ah = c - (c - alpha)
    al = alpha - ah
    c = 134217729.0 * nf
    bh = c - (c - nf)
    bl = nf - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p - np.round(p), e


# ---------------------------------------------------------------------------
# large sieve

LS_VARIANTS = ("pokor1", "pokor2", "zerom", "pokor1b", "pokor2b", "zeromb",
               "garn1b", "garn1a", "gargamel", "procida2", "procida3")


@dataclass
class SieveInstance:
    """Sum over m in (A0, A1] of |sum_{W' < p <= W} log p e(alpha m p)|^2.

    alpha = a/den + gamma, where den = q (all m) or 2q (odd m, 2alpha = a/q + ...).
    """

    variant: str
    W: float
    Wp: float
    a: int
    q: int
    Q: float
    A0: float
    A1: float
    odd: bool
    gamma: float
    x: float = 0.0
    delta: float = 0.0
    varrho: float = 0.0
    rho: float = 0.0

    @property
    def den(self) -> int:
        return 2 * self.q if self.odd else self.q


_PRIMES = None


def _primes(limit: int) -> np.ndarray:
    global _PRIMES
    if _PRIMES is None or _PRIMES[-1] < limit:
        _PRIMES = primes_up_to(max(limit, 10**4) + 100).astype(np.int64)
    return _PRIMES


@nb.njit(cache=True)
def _ls_kernel(ms, ps, lp, a, den, gamma):
    """|S_m|^2 bounds for each m; returns (lo, hi)."""
    k = ms.shape[0]
    lo = np.empty(k)
    hi = np.empty(k)
    U_ = 2.0 ** -53
    slp = 0.0
    for j in range(ps.shape[0]):
        slp += lp[j]
    n_p = ps.shape[0]
    for i in range(k):
        m = ms[i]
        sr = 0.0
        si = 0.0
        big = 0.0
        for j in range(n_p):
            p = ps[j]
            r = ((a * m * p) % den) / den
            small = gamma * m * p
            th = r + small
            th = th - math.floor(th + 0.5)
            if abs(small) > big:
                big = abs(small)
            sr += lp[j] * math.cos(TWO_PI * th)
            si += lp[j] * math.sin(TWO_PI * th)
        eth = 2 * U_ + 4 * U_ * (big + 1.0)
        err = slp * (TWO_PI * eth + 12 * U_) + (n_p + 2) * U_ * slp
        s = math.sqrt(sr * sr + si * si)
        l = max(s - err, 0.0)
        h = s + err
        lo[i] = l * l * (1 - 4 * U_)
        hi[i] = h * h * (1 + 4 * U_)
    return lo, hi


def _ms(inst: SieveInstance) -> np.ndarray:
    m0 = math.floor(inst.A0) + 1
    m1 = math.floor(inst.A1)
    ms = np.arange(m0, m1 + 1, dtype=np.int64)
    if inst.odd:
        ms = ms[ms % 2 == 1]
    return ms


def _prime_block(Wp: float, W: float):
    P = _primes(int(W) + 1)
    ps = P[(P > Wp) & (P <= W)]
    lp = np.log(ps.astype(np.float64))
    s2 = math.fsum((lp * lp).tolist())
    return ps, lp, Interval(s2 * (1 - 8 * U), s2 * (1 + 8 * U))


def large_sieve_lhs(inst: SieveInstance) -> tuple[Interval, Interval]:
    """(lhs, sum over p of (log p)^2)."""
    ps, lp, s2 = _prime_block(inst.Wp, inst.W)
    ms = _ms(inst)
    if len(ps) == 0 or len(ms) == 0:
        return Interval(0.0), s2
    lo, hi = _ls_kernel(ms, ps, lp, inst.a, inst.den, inst.gamma)
    return _pos_sum(lo, hi), s2


def _ceil_div(a: float, b: float) -> int:
    return math.ceil(Fraction(a) / Fraction(b))


def large_sieve_rhs(inst: SieveInstance, s2: Interval) -> Interval:
    v = inst.variant
    W, Wp, q, Q = Interval(inst.W), Interval(inst.Wp), inst.q, inst.Q
    qi = Interval(q)
    qphi = Interval(q) / euler_phi(q)
    span = inst.A1 - inst.A0
    if v in ("pokor1", "pokor1b"):
        k = min(q, math.ceil(Q / 2)) if v == "pokor1" else min(2 * q, Q)
        return _ceil_div(span, k) * (W - Wp + 2 * qi) * s2
    if v in ("pokor2", "pokor2b"):
        k = q if v == "pokor2" else 2 * q
        return _ceil_div(span, k) * qphi * W / iv.log(W / (2 * qi)) * s2
    if v in ("zerom", "zeromb"):
        return (W - Wp + qi / (1 - Interval(inst.varrho) * inst.rho)) * s2
    x = Interval(inst.x)
    if v == "garn1b":
        rho = Interval(inst.rho)
        return (imax(1, 2 * rho) * (x / (8 * qi) + x / (2 * W)) + W / 2 + 2 * qi) * s2
    if v == "garn1a":
        L = iv.log(W / (2 * qi))
        return (x / (4 * euler_phi(q) * L) + qphi * W / L) * s2
    if v == "gargamel":
        return (W / 2 + qi / (1 - x / (4 * W * qi))) * s2
    dq = Interval(abs(inst.delta)) * q
    if v == "procida2":
        ratio = x / dq / (qi + x / (4 * W))
        L = iv.log(ratio)
        f = Interval(1.0) if L.lo <= 0 else imin(1, 2 * qphi / L)
        return f * (x / dq + W / 2) * s2
    if v == "procida3":
        one_m = 1 - Interval(inst.rho)
        return (x / dq + W / 2 + x / (8 * one_m * inst.Q) + x / (4 * one_m * W)) * s2
    raise DomainError(f"unknown large-sieve variant {v!r}")


def large_sieve_check(inst: SieveInstance) -> tuple[Interval, Interval]:
    _validate_sieve(inst)
    lhs, s2 = large_sieve_lhs(inst)
    return lhs, large_sieve_rhs(inst, s2)


def _validate_sieve(inst: SieveInstance):
    v = inst.variant
    if not (inst.W >= 1 and inst.W / 2 <= inst.Wp < inst.W and inst.q <= inst.Q):
        raise DomainError("need W >= 1, W/2 <= W' < W, q <= Q")
    if math.gcd(inst.a, inst.q) != 1:
        raise DomainError("gcd(a, q) must be 1")
    if v in ("pokor2", "pokor2b", "garn1a") and not inst.q < inst.W / 2:
        raise DomainError("need q < W/2")
    if v in ("pokor2", "pokor2b") and not inst.Q >= 3.5 * inst.W:
        raise DomainError("need Q >= 3.5 W")
    if v in ("zerom", "zeromb"):
        k = 1 if v == "zerom" else 2
        if not (inst.A1 - inst.A0 <= k * inst.varrho * inst.q and inst.q <= inst.rho * inst.Q
                and 0 <= inst.varrho <= 1 and 0 <= inst.rho <= 1 and inst.varrho * inst.rho < 1):
            raise DomainError("need A1 - A0 <= varrho q (2 varrho q for odd m), q <= rho Q")
    if v in ("garn1b", "garn1a", "gargamel", "procida2", "procida3"):
        if not (inst.x >= inst.W and inst.Q >= 3.5 * inst.W and inst.A0 >= inst.x / (2 * inst.W)
                and inst.A1 == inst.x / inst.W and inst.odd):
            raise DomainError("need x >= W, Q >= 3.5 W, U' >= x/2W and odd m <= x/W")
        if abs(inst.delta) * inst.q * inst.Q > inst.x * (1 + 1e-12):
            raise DomainError("need |delta/x| <= 1/(qQ)")
    if v == "gargamel" and not inst.W > inst.x / (4 * inst.q):
        raise DomainError("need W > x/4q")
    if v == "procida2" and not (inst.delta != 0 and
                                inst.x / (4 * inst.W) + inst.q <= inst.x / (abs(inst.delta) * inst.q)):
        raise DomainError("need delta != 0 and x/4W + q <= x/|delta q|")
    if v in ("garn1b", "procida3") and not inst.q <= inst.rho * inst.Q:
        raise DomainError("need q <= rho Q")
    if v == "procida3" and not (inst.delta != 0 and inst.rho < 1):
        raise DomainError("need delta != 0 and rho < 1")


def random_sieve_instance(rng: random.Random, variant: str, W_max: float = 1e4) -> SieveInstance:
    odd = variant.endswith("b") or variant in ("garn1b", "garn1a", "gargamel", "procida2", "procida3")
    for _ in range(10000):
        W = _loguniform(rng, 8, W_max)
        Wp = rng.uniform(W / 2, W)
        if variant in LS_VARIANTS[:6]:
            q = int(_loguniform(rng, 1, 2000))
            if variant in ("pokor2", "pokor2b"):
                if W < 6:
                    continue
                q = int(_loguniform(rng, 1, W / 2))
                if not q < W / 2:
                    continue
                Q = _loguniform(rng, max(3.5 * W, q), 3.5 * W * 100)
            else:
                Q = _loguniform(rng, q, max(q * 100, 2 * q))
            a = _coprime(rng, q)
            beta = rng.uniform(-1, 1)
            A0 = float(rng.randrange(0, 10**5))
            span = rng.randrange(1, 400)
            varrho = rho = 0.0
            if variant in ("zerom", "zeromb"):
                k = 1 if variant == "zerom" else 2
                span = rng.randrange(1, max(2, min(k * q, 400)) + 1)
                varrho = min(1.0, span / (k * q))
                rho = q / Q
                if varrho * rho >= 1 or span > k * varrho * q:
                    continue
            den = 2 * q if odd else q
            inst = SieveInstance(variant, W, Wp, a, q, Q, A0, A0 + span, odd, beta / (den * Q),
                                 varrho=varrho, rho=rho)
        else:
            k = _loguniform(rng, 2, 800)
            x = W * k
            Q = _loguniform(rng, 3.5 * W, 3.5 * W * 100)
            if variant == "garn1a":
                if W < 6:
                    continue
                q = int(_loguniform(rng, 1, W / 2))
                if not q < W / 2:
                    continue
            elif variant == "gargamel":
                q = int(_loguniform(rng, max(1, x / (4 * W)) + 1, max(x / (4 * W) + 2, 2000)))
            else:
                q = int(_loguniform(rng, 1, 2000))
            if q > Q:
                continue
            a = _coprime(rng, q)
            dmax = x / (q * Q)
            if variant == "procida2":
                dmax = min(dmax, x / (q * (x / (4 * W) + q)))
            delta = rng.uniform(-dmax, dmax)
            if variant in ("procida2", "procida3") and delta == 0:
                continue
            Up = x / (2 * W) * rng.uniform(1, 1.5)
            rho = q / Q
            if variant == "procida3" and rho >= 1:
                continue
            inst = SieveInstance(variant, W, Wp, a, q, Q, Up, x / W, True, delta / (2 * x),
                                 x=x, delta=delta, rho=rho)
        try:
            _validate_sieve(inst)
        except DomainError:
            continue
        return inst
    raise DomainError(f"could not draw an instance for {variant}")


# ---------------------------------------------------------------------------
# type I lemmas

TYPE_I_LEMMAS = ("bosta1", "bosta2", "bostb1", "bogus")


@dataclass
class TypeIInstance:
    lemma: str
    x: float
    a: int
    q: int
    delta: float
    Q0: float
    D: float = 0.0
    U: float = 0.0
    V: float = 0.0
    eps: float = 0.5

    @property
    def halved(self) -> bool:
        """True when the approximation is to 2 alpha (odd m and n)."""
        return self.lemma != "bosta1"


@nb.njit(cache=True)
def _typeI_kernel(coef, x, a, den, gamma, odd_n, log_n):
    """sum_m coef[m] sum_n [log n] e(alpha m n) eta_2(mn/x), alpha = a/den + gamma."""
    U_ = 2.0 ** -53
    re = 0.0
    im = 0.0
    mag = 0.0
    eta_mag = 0.0
    nmax = 0
    for m in range(1, coef.shape[0]):
        c = coef[m]
        if c == 0.0:
            continue
        n0 = int(math.floor(x / (4.0 * m))) + 1
        n1 = int(math.ceil(x / m))
        sr = 0.0
        si = 0.0
        cnt = 0
        for n in range(n0, n1 + 1):
            if odd_n and n % 2 == 0:
                continue
            t = (m * n) / x
            if t <= 0.25 or t >= 1.0:
                continue
            if t <= 0.5:
                eta = 4.0 * math.log(4.0 * t)
            else:
                eta = -4.0 * math.log(t)
            w = eta
            if log_n:
                w = eta * math.log(n)
            th = ((a * m * n) % den) / den + gamma * m * n
            th = th - math.floor(th + 0.5)
            sr += w * math.cos(TWO_PI * th)
            si += w * math.sin(TWO_PI * th)
            mag += abs(c * w)
            eta_mag += abs(c) * (math.log(n) if log_n else 1.0)
            cnt += 1
        re += c * sr
        im += c * si
        if cnt > nmax:
            nmax = cnt
    return re, im, mag, eta_mag, nmax


def _typeI_lhs(inst: TypeIInstance, coef: np.ndarray, odd_n: bool, log_n: bool) -> Interval:
    den = 2 * inst.q if inst.halved else inst.q
    gamma = inst.delta / (2 * inst.x) if inst.halved else inst.delta / inst.x
    re, im, mag, eta_mag, nmax = _typeI_kernel(coef, float(inst.x), inst.a, den, gamma, odd_n, log_n)
    eth = 2 * U + 4 * U * (abs(gamma) * inst.x + 1)
    m_count = int(np.count_nonzero(coef))
    err = (mag * (TWO_PI * eth + 20 * U + (nmax + m_count + 4) * U)
           + eta_mag * 16 * U * 4)
    val = math.hypot(re, im)
    return Interval(max(val - 2 * err, 0.0), val + 2 * err + 1e-300)


def _mobius_coef(D: float, odd: bool) -> np.ndarray:
    n = int(math.floor(D))
    mu = mobius_table(max(n, 1)).astype(np.float64)
    coef = np.zeros(n + 1)
    coef[1:] = mu[1:n + 1]
    if odd:
        coef[0::2] = 0.0
    return coef


def _bogus_coef(Uu: float, V: float) -> np.ndarray:
    n = int(math.floor(Uu * V))
    u_max, v_max = int(math.floor(Uu)), int(math.floor(V))
    mu = mobius_table(max(u_max, 1)).astype(np.float64)
    base = lambda_base_table(max(v_max, 1))
    coef = np.zeros(n + 1)
    us = np.arange(1, u_max + 1, 2)
    mus = mu[us]
    for v in range(1, v_max + 1, 2):
        p = base[v]
        if p == 0:
            continue
        coef[v * us] += math.log(p) * mus
    return coef


def _mu_sum(limit: float, q: int, odd: bool, log_x: float | None = None) -> Interval:
    """|sum_{m <= limit, gcd(m, q) = 1 (and m odd)} mu(m)/m [log(x/(mq))]|."""
    n = int(math.floor(limit))
    if n < 1:
        return Interval(0.0)
    mu = mobius_table(n)
    terms = []
    for m in range(1, n + 1):
        if mu[m] == 0 or math.gcd(m, q) != 1 or (odd and m % 2 == 0):
            continue
        t = int(mu[m]) / m
        if log_x is not None:
            t *= log_x - math.log(m * q)
        terms.append(t)
    s = math.fsum(terms)
    mag = math.fsum(abs(t) for t in terms)
    e = mag * 8 * U * (1 + (log_x or 0)) + 1e-300
    return abs(Interval(s - e, s + e))


def _fourier_log_eta2(t: float) -> Interval:
    """The transform of log(s) eta_2(s) at t, by high-precision quadrature."""
    with mpmath.workdps(30):
        def f(s, w):
            return mpmath.log(s) * w * mpmath.expjpi(2 * t * s)
        re, err1 = mpmath.quad(lambda s: f(s, 4 * mpmath.log(4 * s)), [0.25, 0.5], error=True)
        re2, err2 = mpmath.quad(lambda s: f(s, -4 * mpmath.log(s)), [0.5, 1], error=True)
        v = abs(re + re2)
        e = float(err1 + err2) * 10 + 1e-20
    return Interval(float(v) - e, float(v) + e)


def truncation_M(inst: TypeIInstance) -> Fraction:
    """M = min(Q/2, D) with Q = floor(x/|delta q|), as in the proofs of the type I bounds.

    Any Q0 admissible for the approximation has Q0 <= Q, so M lies in
    [min(Q0/2, D), D]; a smaller M (e.g. min(Q0/2, D)) drops genuine main terms.
    """
    D = Fraction(inst.D)
    if inst.delta == 0:
        return D
    Q = math.floor(Fraction(inst.x) / (abs(Fraction(inst.delta)) * inst.q))
    return min(Fraction(Q, 2), D)


def type_I_rhs(inst: TypeIInstance, printed: bool = False) -> Interval:
    """Right-hand side of the lemma; ``printed`` keeps the typeset log-weighted main term."""
    k = inst
    pi = iv.PI
    c0 = C0
    x, q, D = Interval(k.x), Interval(k.q), Interval(k.D)
    ad = abs(k.delta)
    d1 = ETA2_D1
    eps = Interval(k.eps)
    e3 = iv.exp(Interval(3))
    if k.lemma == "bosta1":
        c2 = 3 * pi / (5 * iv.sqrt(c0)) * (1 + iv.sqrt(Interval(13) / 3))
    else:
        c2 = 6 * pi / (5 * iv.sqrt(c0))
    small = ad <= (1 / (2 * c2)).lo
    if not small and (1 / (2 * c2)).hi >= ad:
        raise DomainError("delta too close to 1/(2 c2) to pick a branch")
    M = truncation_M(k)
    mdelta = Interval(1.0) if ad == 0 else None
    if k.lemma == "bosta1":
        c1 = 1 + d1 / (2 * x / D)
        if mdelta is None:
            mdelta = imin(1, c0 / (2 * pi * ad).sqr())
        cup = (x / q * mdelta * _mu_sum(M / k.q, k.q, False)
               + c0 * (Interval(0.25) - 1 / pi.sqr()) * (D.sqr() / (2 * x * q) + D / (2 * x)))
        sq = iv.sqrt(c0 * c1)
        base = (2 * sq / pi * D + 3 * c1 * x / q * log_plus(D / (c2 * x / q))
                + sq / pi * q * log_plus(D / (q / 2))
                + d1 / pi * q * imax(2, iv.log(c0 * e3 * q.sqr() / (4 * pi * d1 * x)))
                + (2 * iv.sqrt(3 * c0 * c1) / pi + 3 * c1 / c2 + 55 * c0 * c2 / (12 * pi.sqr())) * q)
        if small or k.D <= k.Q0 / 2:
            return cup + base
        xdq = x / (Interval(ad) * q)
        varpi = iv.sqrt(3 + 2 * eps) + ((1 + iv.sqrt(Interval(13) / 3)) / 4 - 1) / (2 * (1 + eps))
        fl = Interval(math.floor((x / (Interval(ad) * q)).lo)) + 1
        fl_hi = Interval(math.floor((x / (Interval(ad) * q)).hi)) + 1
        fl = Interval(fl.lo, fl_hi.hi)
        return cup + (2 * sq / pi * (D + (1 + eps) * imin(fl, 2 * D) * (varpi + log_plus(2 * D / xdq) / 2))
                      + 3 * c1 * (2 + (1 + eps) / eps * log_plus(2 * D / xdq)) * x / k.Q0
                      + 35 * c0 * c2 / (6 * pi.sqr()) * q)
    if k.lemma == "bosta2":
        c1 = 1 + d1 / (x / D)
        if mdelta is None:
            mdelta = imin(1, c0 / (pi * ad).sqr())
        mus = Interval(0.0) if k.q % 2 == 0 else _mu_sum(M / k.q, 2 * k.q, False)
        cup = (x / (2 * q) * mdelta * mus
               + c0 * q / x * (Interval(1) / 8 - 1 / (2 * pi.sqr())) * (D / q + 1).sqr())
        sq = iv.sqrt(c0 * c1)
        base = (2 * sq / pi * D + 3 * c1 / 2 * x / q * log_plus(D / (c2 * x / q))
                + sq / pi * q * log_plus(D / (q / 2))
                + 2 * d1 / pi * q * imax(1, iv.log(c0 * e3 * q.sqr() / (4 * pi * d1 * x)))
                + (2 * iv.sqrt(3 * c0 * c1) / pi + 3 * c1 / (2 * c2) + 55 * c0 * c2 / (6 * pi.sqr())) * q)
        if small or k.D <= k.Q0 / 2:
            return cup + base
        xdq = x / (Interval(ad) * q)
        lo_f = math.floor(xdq.lo) + 1
        hi_f = math.floor(xdq.hi) + 1
        fl = Interval(lo_f, hi_f)
        return cup + (2 * sq / pi * (D + (1 + eps) * imin(fl, 2 * D)
                                     * (iv.sqrt(3 + 2 * eps) + log_plus(2 * D / xdq) / 2))
                      + Interval(1.5) * c1 * (2 + (1 + eps) / eps * log_plus(2 * D / xdq)) * x / k.Q0
                      + 35 * c0 * c2 / (3 * pi.sqr()) * q)
    if k.lemma == "bostb1":
        if not (small or k.D <= k.Q0 / 2):
            raise DomainError("only the |delta| <= 1/2c2 or D <= Q0/2 branch is implemented")
        c1 = 1 + d1 / (x / D)
        lx = math.log(k.x)
        if printed:
            # as typeset: x/q, all m coprime to q, transforms at -delta
            if mdelta is None:
                mdelta = imin(1, c0 / Interval(ad).sqr() / (2 * pi).sqr())
            s_log = _mu_sum(M / k.q, k.q, False, log_x=lx)
            s_plain = _mu_sum(M / k.q, k.q, False)
            lead, t = x / q, -k.delta
        else:
            # m and n odd with 2 alpha = a/q + delta/x: only odd m divisible by q
            # contribute, so the lead is x/2q and the transforms sit at -delta/2
            if mdelta is None:
                mdelta = imin(1, c0 / (pi * ad).sqr())
            if k.q % 2 == 0:
                s_log = s_plain = Interval(0.0)
            else:
                s_log = _mu_sum(M / k.q, 2 * k.q, False, log_x=lx)
                s_plain = _mu_sum(M / k.q, 2 * k.q, False)
            lead, t = x / (2 * q), -k.delta / 2
        cup = (lead * mdelta * s_log + lead * _fourier_log_eta2(t) * s_plain
               + c0 * (Interval(0.5) - 2 / pi.sqr())
               * (D.sqr() / (4 * q * x) * iv.log(iv.sqrt(iv.E) * x / D) + 1 / iv.E))
        sq = iv.sqrt(c0 * c1)
        lqc = iv.log(q / c2)
        kuche = (2 * sq / pi * D * iv.log(iv.E * x / D)
                 + 3 * c1 / 2 * x / q * log_plus(D / (c2 * x / q)) * lqc
                 + (2 * d1 / pi * imax(1, iv.log(c0 * e3 * q.sqr() / (4 * pi * d1 * x))) * iv.log(x)
                    + 2 * sq / pi * (iv.sqrt(Interval(3)) + log_plus(D / (q / 2)) / 2) * lqc) * q
                 + 3 * c1 / 2 * iv.sqrt(2 * x / c2) * iv.log(2 * x / c2)
                 + 20 * c0 * c2 * iv.sqrt(c2) / (3 * pi.sqr()) * iv.sqrt(2 * x)
                 * iv.log(2 * iv.sqrt(iv.E) * x / c2))
        return cup + kuche
    # bogus
    Uu, V = Interval(k.U), Interval(k.V)
    D = Uu * V
    c1 = 1 + d1 / (2 * x / D)
    if mdelta is None:
        mdelta = imin(1, c0 / (pi * ad).sqr())
    cup = (x / (2 * q) * mdelta * iv.log(V * q)
           + (Interval(0.25) - 1 / pi.sqr()) * c0
           * (D.sqr() * iv.log(V) / (2 * q * x) + 3 * C4 / 2 * Uu * V.sqr() / x
              + (Uu + 1).sqr() * V / (2 * x) * iv.log(q)))
    sq = iv.sqrt(c0 * c1)
    lD = iv.log(D)
    if small or (k.U * k.V) <= k.Q0 / 2:
        return cup + (2 * sq / pi * (D * iv.log(D / iv.sqrt(iv.E))
                                     + q * (iv.sqrt(Interval(3)) * iv.log(c2 * x / q)
                                            + lD / 2 * log_plus(D / (q / 2))))
                      + 3 * c1 / 2 * x / q * lD * log_plus(D / (c2 * x / q))
                      + 2 * d1 / pi * q * imax(1, iv.log(c0 * e3 * q.sqr() / (4 * pi * d1 * x)))
                      * iv.log(q / 2)
                      + 3 * c1 / (2 * iv.sqrt(2 * c2)) * iv.sqrt(x) * iv.log(c2 * x / 2)
                      + 25 * c0 / (4 * pi.sqr()) * (2 * c2) * iv.sqrt(2 * c2) * iv.sqrt(x) * iv.log(x))
    xdq = x / (Interval(ad) * q)
    return cup + (2 * sq / pi * D * iv.log(D / iv.E)
                  + 2 * sq / pi * (1 + eps) * (xdq + 1)
                  * ((iv.sqrt(3 + 2 * eps) - 1) * iv.log((xdq + 1) / iv.sqrt(Interval(2)))
                     + lD / 2 * log_plus(iv.E.sqr() * D / xdq))
                  + (3 * c1 / 2 * (Interval(0.5) + 3 * (1 + eps) / (16 * eps) * iv.log(x))
                     + 20 * c0 / (3 * pi.sqr()) * (2 * c2) * iv.sqrt(2 * c2)) * iv.sqrt(x) * iv.log(x))


def type_I_branch(inst: TypeIInstance) -> str:
    """Which form of the bound applies: 'small_delta', 'short_D' or 'general'."""
    c0 = 31.521
    if inst.lemma == "bosta1":
        c2 = 3 * math.pi / (5 * math.sqrt(c0)) * (1 + math.sqrt(13 / 3))
    else:
        c2 = 6 * math.pi / (5 * math.sqrt(c0))
    if abs(inst.delta) <= 1 / (2 * c2):
        return "small_delta"
    D = inst.U * inst.V if inst.lemma == "bogus" else inst.D
    return "short_D" if D <= inst.Q0 / 2 else "general"


def validate_type_I(inst: TypeIInstance):
    k = inst
    if math.gcd(k.a, k.q) != 1 or k.q > k.Q0:
        raise DomainError("need gcd(a, q) = 1 and q <= Q0")
    if abs(k.delta) * k.q * k.Q0 > k.x * (1 + 1e-12):
        raise DomainError("need |delta/x| <= 1/(q Q0)")
    if not 0 < k.eps <= 1:
        raise DomainError("need eps in (0, 1]")
    if k.lemma in ("bosta1", "bosta2"):
        if not (k.Q0 >= 16 and 1 <= k.D <= k.x):
            raise DomainError("need Q0 >= 16 and 1 <= D <= x")
    elif k.lemma == "bostb1":
        if not (k.Q0 >= max(16, 2 * math.sqrt(k.x)) and math.sqrt(3) <= k.D <= k.x / 4):
            raise DomainError("need Q0 >= max(16, 2 sqrt x) and sqrt 3 <= D <= x/4")
    elif k.lemma == "bogus":
        c2 = 6 * math.pi / (5 * math.sqrt(31.521))
        if not (k.Q0 >= max(2 * math.e, 2 * math.sqrt(k.x)) and k.x >= math.e ** 2 * c2 / 2
                and k.U >= 1 and k.V >= 1 and k.U * k.V + 19 / 18 * k.Q0 <= k.x / 5.6):
            raise DomainError("need Q0 >= max(2e, 2 sqrt x), UV + (19/18) Q0 <= x/5.6")
        if k.q < 2:
            raise DomainError("q >= 2 (the bound has a log(q/2) factor)")
    else:
        raise DomainError(f"unknown lemma {k.lemma!r}")


def type_I_lemma_check(inst: TypeIInstance, printed: bool = False) -> tuple[Interval, Interval]:
    validate_type_I(inst)
    if inst.lemma == "bosta1":
        coef, odd_n, log_n = _mobius_coef(inst.D, False), False, False
    elif inst.lemma == "bosta2":
        coef, odd_n, log_n = _mobius_coef(inst.D, True), True, False
    elif inst.lemma == "bostb1":
        coef, odd_n, log_n = _mobius_coef(inst.D, True), True, True
    else:
        coef, odd_n, log_n = _bogus_coef(inst.U, inst.V), True, False
    rhs = type_I_rhs(inst, printed)
    return _typeI_lhs(inst, coef, odd_n, log_n), rhs


def random_type_I_instance(rng: random.Random, lemma: str, x_lo=1e4, x_hi=1e6) -> TypeIInstance:
    c2_small = 6 * math.pi / (5 * math.sqrt(31.521))
    for _ in range(10000):
        x = float(int(_loguniform(rng, x_lo, x_hi)))
        if lemma in ("bosta1", "bosta2"):
            Q0 = _loguniform(rng, 16, x)
        else:
            Q0 = _loguniform(rng, max(16, 2 * math.sqrt(x)), x)
        q = int(_loguniform(rng, 1 if lemma != "bogus" else 2, min(Q0, 2000)))
        if q > Q0:
            continue
        a = _coprime(rng, q)
        dmax = x / (q * Q0)
        c2 = c2_small if lemma != "bosta1" else 3 * math.pi / (5 * math.sqrt(31.521)) * (1 + math.sqrt(13 / 3))
        if rng.random() < 0.5:
            delta = rng.uniform(-1, 1) * min(dmax, 0.999 / (2 * c2))
        else:
            delta = rng.uniform(-1, 1) * dmax
        if rng.random() < 0.1:
            delta = 0.0
        eps = rng.uniform(0.01, 1.0)
        if lemma == "bogus":
            cap = x / 5.6 - 19 / 18 * Q0
            if cap < 1:
                continue
            D = _loguniform(rng, 1, min(cap, 2e4))
            Uu = _loguniform(rng, 1, D)
            inst = TypeIInstance(lemma, x, a, q, delta, Q0, U=Uu, V=D / Uu, eps=eps)
        else:
            D_hi = min(x if lemma != "bostb1" else x / 4, 2e4)
            D = _loguniform(rng, 1 if lemma != "bostb1" else math.sqrt(3), D_hi)
            inst = TypeIInstance(lemma, x, a, q, delta, Q0, D=D, eps=eps)
            if lemma == "bostb1" and abs(delta) > 0.999 / (2 * c2) and D > Q0 / 2:
                continue
        try:
            validate_type_I(inst)
        except DomainError:
            continue
        return inst
    raise DomainError(f"could not draw an instance for {lemma}")


# ---------------------------------------------------------------------------
# Vaughan decomposition

@nb.njit(cache=True)
def _vaughan_weights(x_int, Uu, V, mu, base):
    """Weights W_X(N) with S_X = sum_N W_X(N) e(alpha N) eta_2(N/x), v = 2.

    Rows: total, S_I1, S_I2, S_II, S_0inf, S_0v. Also per-row magnitude
    sums for the rounding bound.
    """
    n = x_int
    W = np.zeros((6, n + 1))
    Mg = np.zeros((6, n + 1))
    lam = np.zeros(n + 1)
    for k in range(2, n + 1):
        if base[k] > 0:
            lam[k] = math.log(base[k])
    for N in range(1, n + 1):
        W[0, N] = lam[N]
        Mg[0, N] = lam[N]
        if N % 2 == 1:
            if N <= V:
                W[4, N] = lam[N]
                Mg[4, N] = lam[N]
        elif base[N] == 2:
            W[5, N] = lam[N]
            Mg[5, N] = lam[N]
    u_max = int(math.floor(Uu))
    v_max = int(math.floor(V))
    # S_I1: m <= U odd, n odd; weight mu(m) log n
    for m in range(1, min(u_max, n) + 1, 2):
        if mu[m] == 0:
            continue
        for j in range(1, n // m + 1, 2):
            t = mu[m] * math.log(j)
            W[1, m * j] += t
            Mg[1, m * j] += abs(t)
    # S_I2: c(k) = sum_{dm = k, d <= V, m <= U, odd} Lambda(d) mu(m)
    c = np.zeros(n + 1)
    cm = np.zeros(n + 1)
    for d in range(1, min(v_max, n) + 1, 2):
        if lam[d] == 0.0:
            continue
        for m in range(1, min(u_max, n // d) + 1, 2):
            if mu[m] != 0:
                c[d * m] += lam[d] * mu[m]
                cm[d * m] += lam[d]
    for k in range(1, n + 1, 2):
        if cm[k] == 0.0:
            continue
        for j in range(1, n // k + 1, 2):
            W[2, k * j] += c[k]
            Mg[2, k * j] += cm[k]
    # S_II: b(m) = sum_{d | m, d > U} mu(d), m > U odd; times Lambda(n), n > V odd
    b = np.zeros(n + 1, np.int64)
    for d in range(u_max + 1, n + 1):
        if d % 2 == 0 or mu[d] == 0:
            continue
        for j in range(1, n // d + 1, 2):
            b[d * j] += mu[d]
    for m in range(u_max + 1, n + 1):
        if m % 2 == 0 or b[m] == 0:
            continue
        for j in range(v_max + 1, n // m + 1):
            if j % 2 == 1 and lam[j] != 0.0:
                W[3, m * j] += b[m] * lam[j]
                Mg[3, m * j] += abs(b[m]) * lam[j]
    return W, Mg


@nb.njit(cache=True)
def _weighted_phase_sums(W, Mg, x, alpha):
    """Complex sums of W_X(N) e(alpha N) eta_2(N/x) over N in (x/4, x), with error bounds."""
    U_ = 2.0 ** -53
    rows = W.shape[0]
    out = np.zeros((rows, 3))
    n = W.shape[1] - 1
    count = 0
    for N in range(1, n + 1):
        t = N / x
        if t <= 0.25 or t >= 1.0:
            continue
        count += 1
        if t <= 0.5:
            eta = 4.0 * math.log(4.0 * t)
        else:
            eta = -4.0 * math.log(t)
        eta_err = 4.0 * (abs(math.log(t)) + 3.0) * 2.0 * U_
        p, e = two_prod(alpha, float(N))
        th = (p - math.floor(p + 0.5)) + e
        cs = math.cos(TWO_PI * th)
        sn = math.sin(TWO_PI * th)
        ph_err = TWO_PI * 4.0 * U_ + 4.0 * U_
        for r in range(rows):
            w = W[r, N]
            if w == 0.0 and Mg[r, N] == 0.0:
                continue
            out[r, 0] += w * eta * cs
            out[r, 1] += w * eta * sn
            # weight rounding: <= 64 u times the magnitude sum of its terms
            out[r, 2] += (Mg[r, N] * 64.0 * U_ * abs(eta) + abs(w) * (eta_err + abs(eta) * (ph_err + 8.0 * U_)))
    for r in range(rows):
        # recursive summation of `count` terms
        out[r, 2] += (count + 4) * U_ * 4.0 * _row_mag(W, Mg, r, x)
    return out


@nb.njit(cache=True)
def _row_mag(W, Mg, r, x):
    s = 0.0
    n = W.shape[1] - 1
    for N in range(1, n + 1):
        t = N / x
        if 0.25 < t < 1.0:
            s += (abs(W[r, N]) + Mg[r, N] * 1e-12) * 2.8
    return s


VAUGHAN_PARTS = ("S_total", "S_I1", "S_I2", "S_II", "S_0inf", "S_0v")


@dataclass
class VaughanReport:
    alpha: float
    x: float
    U: float
    V: float
    parts: dict
    residual: iv.ComplexInterval

    @property
    def residual_width(self) -> float:
        return max(self.residual.re.width, self.residual.im.width)

    @property
    def holds(self) -> bool:
        return self.residual.re.contains(0.0) and self.residual.im.contains(0.0)


def vaughan_decompose(alpha: float, x: float, U_: float, V: float, x_cap: float = 1e6) -> VaughanReport:
    """All five sums of the decomposition with f = 1 on odd n (v = 2), eta = eta_2.

    S_0v collects the terms n with gcd(n, 2) > 1, i.e. the powers of 2.
    """
    if x > x_cap:
        raise DomainError(f"x above the desk cap {x_cap:g}")
    if U_ < 1 or V < 1:
        raise DomainError("need U, V >= 1")
    n = int(math.ceil(x))
    mu = mobius_table(n).astype(np.int64)
    base = lambda_base_table(n)
    W, Mg = _vaughan_weights(n, float(U_), float(V), mu, base)
    out = _weighted_phase_sums(W, Mg, float(x), float(alpha))
    parts = {}
    for i, name in enumerate(VAUGHAN_PARTS):
        re, im, err = out[i]
        err = err * (1 + 1e-9) + 1e-300
        parts[name] = iv.ComplexInterval(Interval(re - err, re + err), Interval(im - err, im + err))
    resid = parts["S_total"] - (parts["S_I1"] - parts["S_I2"] + parts["S_II"]
                                + parts["S_0inf"] + parts["S_0v"])
    return VaughanReport(alpha, x, U_, V, parts, resid)


def S_eta(alpha: float, x: float) -> iv.ComplexInterval:
    """sum_n Lambda(n) e(alpha n) eta_2(n/x), enclosed."""
    n = int(math.ceil(x))
    base = lambda_base_table(n)
    W = np.zeros((1, n + 1))
    nz = base > 0
    W[0, nz] = np.log(base[nz].astype(np.float64))
    out = _weighted_phase_sums(W, W.copy(), float(x), float(alpha))
    re, im, err = out[0]
    err = err * (1 + 1e-9) + 1e-300
    return iv.ComplexInterval(Interval(re - err, re + err), Interval(im - err, im + err))


# ---------------------------------------------------------------------------
# suites

SUITE_SEEDS = {"trig": 20240101, "sieve": 20240202, "typeI": 20240303, "vaughan": 20240404}


def run_trig_suite(which: TrigLemma | str, count: int = 10**4, seed: int | None = None):
    which = TrigLemma(which)
    seed = SUITE_SEEDS["trig"] + list(TrigLemma).index(which) if seed is None else seed
    rng = random.Random(seed)
    for i in range(count):
        inst = random_trig_instance(rng, which)
        lhs, rhs = trig_lemma_check(inst, which)
        yield _result(i, seed, which.value, lhs, rhs, asdict(inst))


def run_sieve_suite(variant: str, count: int = 1000, seed: int | None = None):
    seed = SUITE_SEEDS["sieve"] + LS_VARIANTS.index(variant) if seed is None else seed
    rng = random.Random(seed)
    for i in range(count):
        inst = random_sieve_instance(rng, variant)
        lhs, rhs = large_sieve_check(inst)
        yield _result(i, seed, variant, lhs, rhs, asdict(inst))


def run_type_I_suite(lemma: str, count: int = 200, seed: int | None = None, x_hi: float = 1e6,
                     printed: bool = False):
    seed = SUITE_SEEDS["typeI"] + TYPE_I_LEMMAS.index(lemma) if seed is None else seed
    rng = random.Random(seed)
    for i in range(count):
        inst = random_type_I_instance(rng, lemma, x_hi=x_hi)
        try:
            lhs, rhs = type_I_lemma_check(inst, printed)
        except DomainError as exc:
            yield _skip(i, seed, lemma, str(exc), asdict(inst))
            continue
        params = asdict(inst)
        params["branch"] = type_I_branch(inst)
        yield _result(i, seed, lemma, lhs, rhs, params)


def run_vaughan_suite(count: int = 100, seed: int | None = None, x_hi: float = 1e5):
    seed = SUITE_SEEDS["vaughan"] if seed is None else seed
    rng = random.Random(seed)
    for i in range(count):
        x = float(rng.randrange(100, int(x_hi) + 1))
        Uu = _loguniform(rng, 1, math.sqrt(x) * 2)
        V = _loguniform(rng, 1, math.sqrt(x) * 2)
        alpha = rng.random()
        rep = vaughan_decompose(alpha, x, Uu, V)
        ok = rep.holds and rep.residual_width < 1e-8 * x
        yield rep, ok, {"id": i, "seed": seed, "alpha": alpha, "x": x, "U": Uu, "V": V}


@dataclass
class SuiteSummary:
    name: str
    total: int = 0
    holds: int = 0
    inconclusive: int = 0
    violations: int = 0
    skipped: int = 0

    def add(self, r: CheckResult):
        self.total += 1
        if r.verdict is Verdict.HOLDS:
            self.holds += 1
        elif r.verdict is Verdict.INCONCLUSIVE:
            self.inconclusive += 1
        elif r.verdict is Verdict.VIOLATION:
            self.violations += 1
        else:
            self.skipped += 1

    @property
    def inconclusive_rate(self) -> float:
        checked = self.total - self.skipped
        return self.inconclusive / checked if checked else 0.0


def summarize(name: str, results, sink=None) -> SuiteSummary:
    s = SuiteSummary(name)
    for r in results:
        s.add(r)
        if sink is not None:
            sink.write(r.to_json() + "\n")
    return s
