"""Certified maxima and quadrature for the Fourier-norm bounds on eta_2''.

Grid maxima rest on the interpolation bound: for a <= t <= b,

    |f(t)| <= max(|f(a)|, |f(b)|) + (b - a)**2 / 8 * max |f''|,

valid for complex f by applying it to Re(e^{i theta} f). Curvature bounds
are always supplied in closed form by the caller.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import fourier as fo
from . import interval as iv
from .dd import U
from .errors import DomainError, PrecisionError
from .interval import ComplexInterval, Interval

CERT_FORMAT = "minorarc-max-certificate"
CERT_VERSION = 1

C0 = iv.const("31.521")
G_MAX = iv.const("7.87052")
# closed-form bounds: |g''| <= 9 pi^2, |(4g + f^)''| <= 48 pi^2,
# |k''| <= (pi/2)^2 * 2 + pi^2, |h^''| <= (2 pi)^2 |x^2 h|_1 = 24 pi^2 (2 - log 2)
G_D2 = 9 * iv.PI.sqr()
F_D2 = 48 * iv.PI.sqr()
K_D2_EXACT = iv.const("1.5") * iv.PI.sqr()
K_D2_LOOSE = 6 * iv.PI.sqr()
HHAT_D2 = 24 * iv.PI.sqr() * (2 - iv.LOG2)
F_PRIME_L1 = Interval(160.0)
H_PRIME_L1 = 320 * (1 + iv.LOG2)


def _up(x: float, k: int = 1) -> float:
    for _ in range(k):
        x = math.nextafter(x, math.inf)
    return x


def _down(x: float, k: int = 1) -> float:
    for _ in range(k):
        x = math.nextafter(x, -math.inf)
    return x


def grid_error(step: float, d2: Interval) -> float:
    return (Interval(step).sqr() * d2 / 8).hi


@dataclass
class MaxCertificate:
    """Record of a certified upper bound for sup |f|."""

    name: str
    grid_step: float
    curvature_bound: Interval
    sampled_max: Interval
    certified_upper: Interval
    witness_point: float
    witness_lower: float
    quadrature_error: Interval
    domain: tuple[float, float] = (0.0, 0.0)
    extra: dict[str, float] = field(default_factory=dict)

    @property
    def grid_error(self) -> float:
        return grid_error(self.grid_step, self.curvature_bound)

    def check(self) -> bool:
        """Re-check the arithmetic recorded in the certificate."""
        need = Interval(self.sampled_max.hi) + self.grid_error
        return (self.certified_upper.hi >= need.hi
                and self.witness_lower <= self.certified_upper.hi
                and self.sampled_max.lo <= self.sampled_max.hi
                and self.witness_lower <= self.sampled_max.lo + 1e-300)

    def to_text(self) -> str:
        lines = [f"format: {CERT_FORMAT}", f"version: {CERT_VERSION}",
                 f"name: {self.name}",
                 f"domain_lo: {self.domain[0].hex()}", f"domain_hi: {self.domain[1].hex()}",
                 f"grid_step: {self.grid_step.hex()}"]
        for key in ("curvature_bound", "sampled_max", "certified_upper", "quadrature_error"):
            v = getattr(self, key)
            lines += [f"{key}.lo: {v.lo.hex()}", f"{key}.hi: {v.hi.hex()}"]
        lines += [f"witness_point: {self.witness_point.hex()}",
                  f"witness_lower: {self.witness_lower.hex()}"]
        for k in sorted(self.extra):
            lines.append(f"extra.{k}: {float(self.extra[k]).hex()}")
        lines.append(f"# certified_upper <= {self.certified_upper.hi!r}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MaxCertificate":
        kv = {}
        for line in text.splitlines():
            if line.startswith("#") or ": " not in line:
                continue
            k, v = line.split(": ", 1)
            kv[k] = v
        if kv.get("format") != CERT_FORMAT or int(kv.get("version", -1)) != CERT_VERSION:
            raise DomainError("not a version 1 certificate")
        f = lambda k: float.fromhex(kv[k])  # noqa: E731
        ivl = lambda k: Interval(f(k + ".lo"), f(k + ".hi"))  # noqa: E731
        extra = {k[6:]: float.fromhex(v) for k, v in kv.items() if k.startswith("extra.")}
        return cls(kv["name"], f("grid_step"), ivl("curvature_bound"), ivl("sampled_max"),
                   ivl("certified_upper"), f("witness_point"), f("witness_lower"),
                   ivl("quadrature_error"), (f("domain_lo"), f("domain_hi")), extra)

    def save(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_text())
        return path

    @classmethod
    def load(cls, path: str | Path) -> "MaxCertificate":
        return cls.from_text(Path(path).read_text())


def _abs(v) -> Interval:
    if isinstance(v, ComplexInterval):
        return v.abs()
    if isinstance(v, Interval):
        return abs(v)
    if isinstance(v, complex):
        return iv.as_complex(v).abs()
    return abs(iv.as_interval(v))


def grid_max(f, period: float, d2_bound, step: float, tol: float | None = None,
             start: float = 0.0, name: str = "grid_max") -> MaxCertificate:
    """Certified sup |f| over R for f with the given period.

    f takes an Interval and returns an enclosure (real or complex). The
    period is split into N = ceil(period/step) equal cells and f is
    evaluated at all N + 1 nodes.
    """
    if step <= 0 or period <= 0:
        raise DomainError("step and period must be positive")
    d2 = iv.as_interval(d2_bound)
    n = max(1, math.ceil(period / step))
    h = (Interval(period) / n).hi
    best_lo, best_hi, witness = -1.0, -1.0, start
    p = Interval(period)
    for k in range(n + 1):
        t = start + p * k / n
        a = _abs(f(t))
        if a.lo > best_lo:
            best_lo, witness = a.lo, t.mid
        best_hi = max(best_hi, a.hi)
    sampled = Interval(best_lo, best_hi)
    err = grid_error(h, d2)
    upper = Interval(best_hi) + err
    cert = MaxCertificate(name, h, d2, sampled, Interval(upper.hi), witness, best_lo,
                          Interval(0.0), (start, start + period))
    if tol is not None and upper.hi - best_lo > tol:
        gap = tol - (best_hi - best_lo)
        hint = math.sqrt(8 * gap / d2.hi) if gap > 0 else float("nan")
        raise PrecisionError(f"grid too coarse: bound gap {upper.hi - best_lo:.3g} > {tol:g}; "
                             f"try step <= {hint:.3g}")
    return cert


def simpson_certified(f, a, b, n: int, d4_bound) -> Interval:
    """Enclosure of int_a^b f by composite Simpson with n (even) panels.

    d4_bound encloses f'''' on [a, b]: an Interval is taken as the range of
    f'''' (so a known sign tightens the result), a number M as |f''''| <= M.
    The remainder is -(b - a)^5 f''''(xi) / (180 n^4).
    """
    if n < 2 or n % 2:
        raise DomainError("Simpson needs an even number of panels")
    a = iv.as_interval(a)
    b = iv.as_interval(b)
    if isinstance(d4_bound, Interval):
        d4 = d4_bound
    else:
        m = float(d4_bound)
        d4 = Interval(-m, m)
    width = b - a
    acc = f(a) + f(b)
    odd = Interval(0.0)
    even = Interval(0.0)
    for j in range(1, n):
        x = a + width * j / n
        if j % 2:
            odd = odd + f(x)
        else:
            even = even + f(x)
    total = (acc + 4 * odd + 2 * even) * width / (3 * n)
    rem = -(iv.ipow(width, 5) * d4) / (180 * Interval(n) ** 4)
    return total + rem


# g and k --------------------------------------------------------------------

def g_interval(t) -> ComplexInterval:
    t = iv.as_interval(t)
    return (4 * iv.unit_phase(-t / 4) - 4 * iv.unit_phase(-t / 2) + iv.unit_phase(-t))


def k_interval(t) -> ComplexInterval:
    t = iv.as_interval(t)
    return 2 * iv.unit_phase(-t / 4) - iv.unit_phase(-t / 2)


@lru_cache(maxsize=4)
def certify_g_max(step: float = 3e-4, period: float = 4.0) -> MaxCertificate:
    """sup |4e(-t/4) - 4e(-t/2) + e(-t)|; g has period 4 in t."""
    return grid_max(g_interval, period, G_D2, step, name="g_max")


# the 31.521 certificate ------------------------------------------------------

def _scan_F_max(t_max: float, step: float, simpson_base: int, n_fixed: int,
                ibp_from: float, ibp_order: int, chunk: int = 50_000):
    n = int(round(t_max / step))
    best_v = best_lo = best_hi = -1.0
    witness = 0.0
    max_err = 0.0
    for k0 in range(0, n + 1, chunk):
        k1 = min(n + 1, k0 + chunk)
        vals, errs = fo.scan_F(k0, k1, step, simpson_base, n_fixed, ibp_from, ibp_order)
        lo = vals - errs
        hi = vals + errs
        j = int(np.argmax(lo))
        if lo[j] > best_lo:
            best_lo = float(lo[j])
            witness = (k0 + j) * step
            best_v = float(vals[j])
        best_hi = max(best_hi, float(hi.max()))
        max_err = max(max_err, float(errs.max()))
    return n, best_lo, best_hi, best_v, witness, max_err


def certify_eta2pp_fourier_norm(step: float = 1e-3, t_max: float = 655.0,
                                simpson_base: int = 200, n_fixed: int = 0,
                                method: str = "simpson", target: float = 31.521) -> MaxCertificate:
    """Certified sup over t of |4g(t) + f^(t)| = |(eta_2'')^(t)|.

    method "simpson" evaluates f^ by Simpson with simpson_base * max(1,
    floor(sqrt t)) panels per piece everywhere; "hybrid" switches to
    integration by parts (order 10) for t >= 60.
    """
    if method not in ("simpson", "hybrid"):
        raise DomainError(f"unknown method {method!r}")
    gcert = certify_g_max()
    gsup = gcert.certified_upper.hi
    ibp_from, ibp_order = (60.0, 10) if method == "hybrid" else (math.inf, 0)
    n, s_lo, s_hi, _, witness, max_err = _scan_F_max(t_max, step, simpson_base, n_fixed,
                                                    ibp_from, ibp_order)
    t_last = n * step
    # consecutive float nodes k*step are at most step + 2 ulp(t_max) apart
    h = _up(step + 4 * math.ulp(t_last), 2)
    err = grid_error(h, F_D2)
    upper = Interval(s_hi) + err
    # for |t| >= t_last: |f^(t)| <= |f'|_1 / (2 pi |t|)
    tail = 4 * Interval(gsup) + F_PRIME_L1 / (2 * iv.PI * _down(t_last))
    total = Interval(max(upper.hi, tail.hi))
    cert = MaxCertificate("eta2pp_fourier_norm", h, F_D2, Interval(s_lo, s_hi), total,
                          witness, s_lo, Interval(0.0, max_err), (0.0, t_last),
                          {"g_sup": gsup, "tail_bound": tail.hi, "grid_upper": upper.hi,
                           "simpson_base": float(simpson_base)})
    if total.hi > target:
        raise PrecisionError(f"certified bound {total.hi!r} exceeds {target}")
    return cert


# the log-scaled certificate --------------------------------------------------

def _arg_increment(z0: complex, z1: complex) -> float:
    return cmath.phase(z1 / z0)


def _segment_distance(z0: complex, z1: complex) -> float:
    """Distance from 0 to the segment [z0, z1]."""
    d = z1 - z0
    dd = (d * d.conjugate()).real
    if dd == 0:
        return abs(z0)
    s = -(z0 * d.conjugate()).real / dd
    s = min(1.0, max(0.0, s))
    return abs(z0 + s * d)


def _asin_up(x: float) -> float:
    if x >= 1:
        return math.inf
    return _up(math.asin(x), 4)


def phase_check(points: np.ndarray, A: np.ndarray, B: np.ndarray, errA: np.ndarray,
                errB: np.ndarray, interp_A: float, interp_B: float) -> tuple[float, float, float, float]:
    """Bound sup |arg(A(t)/B(t))| over the cells between consecutive points.

    A, B are complex values at the nodes with error bounds. On a cell,
    A(t) = L_A(t) + E with L_A the linear interpolant of the computed values and
    |E| <= interp_A + max node error; arg(L_A(t)/A(t_0)) lies between 0 and
    arg(A(t_1)/A(t_0)). Returns (bound, max node |arg|, min |A|, min |B|).
    """
    worst = 0.0
    node_worst = 0.0
    for j in range(len(points)):
        node_worst = max(node_worst, abs(cmath.phase(A[j] / B[j])))
    for j in range(len(points) - 1):
        a0, a1, b0, b1 = A[j], A[j + 1], B[j], B[j + 1]
        da = _arg_increment(a0, a1)
        db = _arg_increment(b0, b1)
        base = cmath.phase(a0 / b0)
        hi = base + max(0.0, da) - min(0.0, db)
        lo = base + min(0.0, da) - max(0.0, db)
        ea = interp_A + max(errA[j], errA[j + 1])
        eb = interp_B + max(errB[j], errB[j + 1])
        ra = _segment_distance(a0, a1)
        rb = _segment_distance(b0, b1)
        if ra <= ea or rb <= eb:
            return math.inf, node_worst, 0.0, 0.0
        w = max(abs(hi), abs(lo)) + _asin_up(ea / ra) + _asin_up(eb / rb)
        worst = max(worst, w)
    slack = 1e-12 * (1 + worst)
    return worst + slack, node_worst, float(np.min(np.abs(A))), float(np.min(np.abs(B)))


@dataclass
class LogScaledCore:
    """The y-independent parts of the log-scaled certificate."""

    lemma_phase_bound: float       # sup over [-2, 2] of |arg(g/k)|
    region_arg_bound: float        # sup over I of |arg(F / -K)|
    region_node_arg: float
    region_min_F: float
    region_min_K: float
    region_K_sup: float            # sup of |K| over t >= 0.3
    excluded_sup: float            # sup of |F| + |K| / log 4 on the excluded set
    tail_from: float
    tail_coeff: float              # |eta_(y)''^| <= tail_coeff log y for t >= tail_from
    F_sup: float                   # sup |F| from the 31.521 certificate
    budget_F: float
    budget_K: float
    step: float
    samples: int


def _fk_nodes(t0: float, t1: float, step: float, n_fixed: int, ibp_from: float):
    k0 = int(math.floor(t0 / step + 0.5))
    k1 = int(math.ceil(t1 / step - 0.5))
    ts = np.arange(k0, k1 + 1, dtype=np.float64) * step
    out = fo.scan_FK(ts, 200, n_fixed, ibp_from, 10)
    F = out[:, 0] + 1j * out[:, 1]
    K = out[:, 3] + 1j * out[:, 4]
    return ts, F, out[:, 2], K, out[:, 5]


def _node_spacing(ts: np.ndarray) -> float:
    return _up(float(np.max(np.diff(ts))), 2) if len(ts) > 1 else 0.0


@lru_cache(maxsize=2)
def log_scaled_core(step: float = 5e-3, fine_step: float = 1e-3, ibp_from: float = 60.0,
                    excluded_panels: int = 1000) -> LogScaledCore:
    log4 = 2 * iv.LOG2
    # phase lemma on [-2, 2]: arg(g/k), in interval arithmetic
    tp = [Interval(-2.0) + Interval(4.0) * j / 4000 for j in range(4001)]
    G = np.array([complex(z.re.mid, z.im.mid) for z in map(g_interval, tp)])
    Kk = np.array([complex(z.re.mid, z.im.mid) for z in map(k_interval, tp)])
    Ge = np.array([max(z.re.rad, z.im.rad) * 2 for z in map(g_interval, tp)])
    Ke = np.array([max(z.re.rad, z.im.rad) * 2 for z in map(k_interval, tp)])
    hp = (Interval(4.0) / 4000).hi
    lemma, _, _, _ = phase_check(np.array([t.mid for t in tp]), G, Kk, Ge, Ke,
                                 grid_error(hp, G_D2), grid_error(hp, K_D2_EXACT))

    # main region I = [0.3, T] minus [3.25, 3.65], arg(F / -K)
    tail_c = (F_PRIME_L1 + H_PRIME_L1 / log4) / (2 * iv.PI)
    gsup = certify_g_max().certified_upper.hi
    margin = C0 - 4 * Interval(gsup)
    tail_from = math.ceil((tail_c / margin).hi * 1.00001 * 100) / 100
    budget_F = grid_error(step, F_D2)
    budget_K = grid_error(step, 16 * iv.LOG2 * K_D2_LOOSE + HHAT_D2)
    interp_K = grid_error(step, 16 * iv.LOG2 * K_D2_EXACT + HHAT_D2)
    worst = node_worst = 0.0
    min_F = min_K = math.inf
    samples = 0
    for a, b in ((0.3, 3.25), (3.65, tail_from + step)):
        ts, F, Fe, K, Ke2 = _fk_nodes(a, b, step, 0, ibp_from)
        h = _node_spacing(ts)
        w, nw, mf, mk = phase_check(ts, F, -K, Fe, Ke2, grid_error(h, F_D2),
                                    grid_error(h, 16 * iv.LOG2 * K_D2_EXACT + HHAT_D2))
        worst, node_worst = max(worst, w), max(node_worst, nw)
        min_F, min_K = min(min_F, mf), min(min_K, mk)
        samples += len(ts)
    # |K| on t >= 0.3: grid up to T_K, then 16 log 2 |k| + |h^| <= 48 log 2 + |h'|_1/(2 pi t)
    T_K = 10.0
    ts, _, _, K, Ke2 = _fk_nodes(0.3, T_K, step, 0, ibp_from)
    kgrid = float(np.max(np.abs(K) + Ke2)) + interp_K
    ktail = (48 * iv.LOG2 + H_PRIME_L1 / (2 * iv.PI * T_K)).hi
    k_sup = _up(max(kgrid, ktail))

    # excluded set [0, 0.3] and [3.25, 3.65]: |F| + |K| / log 4
    ex = 0.0
    for a, b in ((0.0, 0.3), (3.25, 3.65)):
        ts, F, Fe, K, Ke2 = _fk_nodes(a, b, fine_step, excluded_panels, math.inf)
        h = _node_spacing(ts)
        aF = np.abs(F) + Fe
        aK = np.abs(K) + Ke2
        cellF = np.maximum(aF[:-1], aF[1:])
        cellK = np.maximum(aK[:-1], aK[1:])
        val = float(np.max(cellF + cellK / log4.lo))
        val += grid_error(h, F_D2) + grid_error(h, 16 * iv.LOG2 * K_D2_EXACT + HHAT_D2) / log4.lo
        ex = max(ex, _up(val, 4))
    fcert = fourier_certificate()
    return LogScaledCore(lemma, worst, node_worst, min_F, min_K, k_sup, ex, tail_from,
                         _up((4 * Interval(gsup) + tail_c / tail_from).hi),
                         fcert.certified_upper.hi, budget_F, budget_K, step, samples)


@lru_cache(maxsize=1)
def fourier_certificate() -> MaxCertificate:
    return certify_eta2pp_fourier_norm()


def certify_log_scaled_norm(y: float, core: LogScaledCore | None = None) -> MaxCertificate:
    """Certified sup over t of |(eta_(y)'')^(t)| for eta_(y)(t) = log(yt) eta_2(t).

    With F = 4g + f^ and K = -16 log 2 k + h^ the transform is F log y + K.
    Where |arg(F / -K)| < pi/3, |F log y + K| <= max(|F| log y, |K|); the
    sets [0, 0.3] and [3.25, 3.65] use |F| log y + |K| <= (|F| + |K|/log 4) log y;
    large t uses |g log y - 4 log 2 k| <= 7.87052 log y, which needs
    |arg(g/k)| < pi/3 on [-2, 2].
    """
    if y < 4:
        raise DomainError("y must be at least 4")
    core = core or log_scaled_core()
    third = iv.PI / 3
    if not (core.lemma_phase_bound < third.lo and core.region_arg_bound < third.lo):
        raise PrecisionError("argument condition could not be certified; tighten the grid")
    ly = iv.log(y)
    log4 = 2 * iv.LOG2
    region = Interval.hull_of(Interval(core.F_sup) * ly, Interval(core.region_K_sup))
    excluded = Interval(core.excluded_sup) * ly
    tail = Interval(core.tail_coeff) * ly
    if Interval(core.region_K_sup).hi > (C0 * log4).lo:
        raise PrecisionError("|K| is not below 31.521 log 4")
    upper = max(region.hi, excluded.hi, tail.hi)
    target = C0 * ly
    # sampled maximum of |F log y + K| near the peak of |F|
    ts = np.arange(0, 8001, dtype=np.float64) * 0.005
    out = fo.scan_FK(ts, 200, 0, math.inf, 0)
    vals = np.abs((out[:, 0] + 1j * out[:, 1]) * ly.mid + (out[:, 3] + 1j * out[:, 4]))
    errs = out[:, 2] * ly.hi + out[:, 5] + vals * 1e-15
    j = int(np.argmax(vals - errs))
    sampled = Interval(float(vals[j] - errs[j]), float(np.max(vals + errs)))
    cert = MaxCertificate(f"log_scaled_norm(y={y!r})", core.step, F_D2,
                          sampled, Interval(upper), float(ts[j]), sampled.lo, Interval(0.0),
                          (0.0, core.tail_from),
                          {"y": float(y), "target": target.lo,
                           "lemma_phase_bound": core.lemma_phase_bound,
                           "region_arg_bound": core.region_arg_bound,
                           "excluded_sup": core.excluded_sup,
                           "tail_from": core.tail_from, "budget_F": core.budget_F,
                           "budget_K": core.budget_K})
    if not upper < target.lo:
        raise PrecisionError(f"bound {upper!r} is not below 31.521 log y = {target.lo!r}")
    return cert
