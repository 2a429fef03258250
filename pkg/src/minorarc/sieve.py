"""Segmented sieves for mu(n) and Lambda(n) with certified running sums.

The integer layer is exact: mu is sieved by marking every prime factor up to
sqrt(hi), zeroing multiples of p**2 and flipping the sign once more when a
single large prime factor remains. Lambda is stored as the prime p for
n = p**k (0 otherwise); its logarithm is taken on demand, rigorously through
``interval.log`` or with a relative error budget inside the numba kernels.

Sums over 10**10 terms are accumulated in double-word arithmetic (see
``dd``). Every kernel also returns an upper bound on its accumulated rounding
error, so a reported value v and error e certify that the exact sum lies in
[v - e, v + e].

Parallelism: the mu sieve of different segments is independent, but prefix
sums are order dependent. The scan below sieves and accumulates segments in
order on one thread, which keeps checkpoints bit-reproducible.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numba as nb
import numpy as np

from . import interval as iv
from .dd import U, U2, add_dd, recip
from .errors import ConfigError, PrecisionError
from .interval import Interval

BLOCK_CAP = 2**24
GLOBAL_CAP = 10**10
EXTENDED_CAP = 10**12
SCAN_BLOCK = 2**18
CHECKPOINT_EVERY = 10**8
EXACT_PREFIX = 1000
CHECKPOINT_FORMAT = "minorarc-mertens-checkpoint"
CHECKPOINT_VERSION = 1

ENVELOPES = ("half_inv_sqrt", "sqrt_two_over_x")


def primes_up_to(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return np.nonzero(flags)[0].astype(np.int64)


# numba kernels -------------------------------------------------------------

@nb.njit(cache=True)
def _sieve_mu(lo, count, primes, mu, prod):
    for j in range(count):
        mu[j] = 1
        prod[j] = 1
    hi = lo + count - 1
    for p in primes:
        if p * p > hi:
            break
        start = ((lo + p - 1) // p) * p
        for m in range(start - lo, count, p):
            mu[m] = -mu[m]
            prod[m] *= p
        p2 = p * p
        start = ((lo + p2 - 1) // p2) * p2
        for m in range(start - lo, count, p2):
            mu[m] = 0
    for j in range(count):
        if mu[j] != 0 and prod[j] != lo + j:
            mu[j] = -mu[j]


@nb.njit(cache=True)
def _sieve_mu_lambda(lo, count, primes, mu, base):
    rem = np.empty(count, np.int64)
    for j in range(count):
        mu[j] = 1
        base[j] = 0
        rem[j] = lo + j
    nprimes = np.zeros(count, np.int64)
    hi = lo + count - 1
    for p in primes:
        if p * p > hi:
            break
        start = ((lo + p - 1) // p) * p
        for m in range(start - lo, count, p):
            k = 0
            while rem[m] % p == 0:
                rem[m] //= p
                k += 1
            nprimes[m] += 1
            base[m] = p
            if k >= 2:
                mu[m] = 0
            else:
                mu[m] = -mu[m]
    for j in range(count):
        n = lo + j
        if rem[j] > 1:
            nprimes[j] += 1
            base[j] = rem[j]
            mu[j] = -mu[j]
        if n == 1:
            mu[j] = 1
        if nprimes[j] != 1:
            base[j] = 0


@nb.njit(cache=True)
def _mertens_block(lo, count, primes, mu, prod, hi_s, lo_s, check_from,
                   consts, status, first_bad, best_ratio, best_n):
    """Accumulate mu(n)/n over [lo, lo+count) and examine each envelope.

    Envelope i is |m(n)| <= consts[i]/sqrt(n+1). status[i] becomes 1 at a
    certain violation and 2 where the sum cannot be separated from the
    envelope; first_bad[i] records n. best_ratio/best_n track the maximum of
    |m(n)| sqrt(n+1)/consts[i]. Returns (hi, lo, err).
    """
    _sieve_mu(lo, count, primes, mu, prod)
    seg_end = float(lo + count)
    k = consts.shape[0]
    env_min = np.empty(k)
    scale_max = np.empty(k)
    for i in range(k):
        env_min[i] = consts[i] / math.sqrt(seg_end + 1.0) * (1.0 - 1e-12)
        scale_max[i] = math.sqrt(seg_end + 1.0) / consts[i] * (1.0 + 1e-12)
    maxabs = abs(hi_s)
    sum_abs_t = 0.0
    for j in range(count):
        m = mu[j]
        n = lo + j
        if m != 0:
            th, tl = recip(float(n))
            if m < 0:
                th = -th
                tl = -tl
            hi_s, lo_s = add_dd(hi_s, lo_s, th, tl)
            sum_abs_t += abs(th)
            a = abs(hi_s)
            if a > maxabs:
                maxabs = a
        if n < check_from:
            continue
        a = abs(hi_s)
        for i in range(k):
            if a * scale_max[i] > best_ratio[i]:
                r = a * math.sqrt(float(n) + 1.0) / consts[i]
                if r > best_ratio[i]:
                    best_ratio[i] = r
                    best_n[i] = n
            if status[i] == 0 and a > env_min[i]:
                env = consts[i] / math.sqrt(float(n) + 1.0)
                slack = 8.0 * U * env
                if a - abs(lo_s) > env + slack:
                    first_bad[i] = n
                    status[i] = 1
                elif a + abs(lo_s) >= env - slack:
                    first_bad[i] = n
                    status[i] = 2
    # 4u^2 per addition on |partial| + |term| plus the 3u^2|t| reciprocal error
    err = (4.0 * U2 * (count * maxabs + sum_abs_t) + 3.0 * U2 * sum_abs_t) * 1.000001
    return hi_s, lo_s, err


@nb.njit(cache=True)
def _prime_power_sums(limit, primes, marks, block):
    """Sums over prime powers n <= limit, recorded at each sorted mark.

    Per mark returns psi, sum Lambda/n, sum Lambda*n, sum over primes of
    (log p)^2, each as a (hi, lo) pair. All terms are positive, so a relative
    error budget per term times the sum bounds the term errors.
    """
    nm = marks.shape[0]
    out = np.zeros((nm, 8))
    acc = np.zeros(8)
    mu = np.empty(block, np.int8)
    base = np.empty(block, np.int64)
    k = 0
    while k < nm and marks[k] < 1:
        k += 1
    lo = 1
    while lo <= limit and k < nm:
        count = min(block, limit - lo + 1)
        _sieve_mu_lambda(lo, count, primes, mu, base)
        for j in range(count):
            n = lo + j
            p = base[j]
            if p != 0:
                lp = math.log(float(p))
                fn = float(n)
                a0, a1 = add_dd(acc[0], acc[1], lp, 0.0)
                acc[0] = a0
                acc[1] = a1
                r, rl = recip(fn)
                a0, a1 = add_dd(acc[2], acc[3], lp * r, lp * rl)
                acc[2] = a0
                acc[3] = a1
                a0, a1 = add_dd(acc[4], acc[5], lp * fn, 0.0)
                acc[4] = a0
                acc[5] = a1
                if p == n:
                    a0, a1 = add_dd(acc[6], acc[7], lp * lp, 0.0)
                    acc[6] = a0
                    acc[7] = a1
            while k < nm and marks[k] == n:
                for i in range(8):
                    out[k, i] = acc[i]
                k += 1
        lo += count
    return out


# segments ----------------------------------------------------------------

@dataclass
class SieveSegment:
    lo: int
    hi: int
    mu: np.ndarray
    prime_base: np.ndarray  # p when n = p**k, else 0

    def mu_of(self, n: int) -> int:
        return int(self.mu[n - self.lo])

    def lambda_base(self, n: int) -> int:
        return int(self.prime_base[n - self.lo])

    def lambda_log(self, n: int) -> Interval:
        p = self.lambda_base(n)
        return iv.log(p) if p else Interval(0.0)

    def lambda_float(self) -> np.ndarray:
        out = np.zeros(self.prime_base.shape[0])
        nz = self.prime_base > 0
        out[nz] = np.log(self.prime_base[nz].astype(np.float64))
        return out


def sieve_segment(lo: int, hi: int, block_cap: int = BLOCK_CAP,
                  global_cap: int = GLOBAL_CAP) -> SieveSegment:
    """Exact mu and Lambda markers on [lo, hi]."""
    if lo < 1 or hi < lo:
        raise ConfigError(f"bad segment [{lo}, {hi}]")
    if hi - lo + 1 > block_cap:
        raise ConfigError(f"segment length {hi - lo + 1} exceeds block cap {block_cap}")
    if hi > global_cap:
        raise ConfigError(f"segment end {hi} exceeds global cap {global_cap}")
    count = hi - lo + 1
    mu = np.empty(count, np.int8)
    base = np.empty(count, np.int64)
    _sieve_mu_lambda(lo, count, primes_up_to(math.isqrt(hi) + 1), mu, base)
    return SieveSegment(lo, hi, mu, base)


def mobius_table(n: int) -> np.ndarray:
    """mu(k) for 0 <= k <= n (index 0 holds 0)."""
    out = np.zeros(n + 1, np.int8)
    if n >= 1:
        out[1:] = sieve_segment(1, n, block_cap=max(n, 1)).mu
    return out


def lambda_base_table(n: int) -> np.ndarray:
    """p for k = p**m, else 0, for 0 <= k <= n."""
    out = np.zeros(n + 1, np.int64)
    if n >= 1:
        out[1:] = sieve_segment(1, n, block_cap=max(n, 1)).prime_base
    return out


# running sums --------------------------------------------------------------

@dataclass
class RunningSum:
    hi: float = 0.0
    lo: float = 0.0
    certified_error: float = 0.0
    n_terms: int = 0

    @property
    def value(self) -> float:
        return self.hi + self.lo

    def interval(self) -> Interval:
        return (Interval(self.hi) + Interval(self.lo)).widen(self.certified_error)


# Mertens scan ------------------------------------------------------------

@dataclass
class EnvelopeReport:
    envelope: str
    first_violation: int | None = None
    undecided: int | None = None
    best_ratio: float = 0.0
    best_n: int = 0
    best_hi: float = 0.0
    best_lo: float = 0.0
    best_err: float = 0.0
    max_ratio: Interval | None = None

    def holds(self) -> bool:
        return self.first_violation is None and self.undecided is None


@dataclass
class ScanReport:
    limit: int
    final: RunningSum
    envelopes: dict[str, EnvelopeReport]
    checkpoints: list[tuple[int, float, float, float]] = field(default_factory=list)
    resumed_from: int = 0

    def first_violation(self, envelope: str) -> int | None:
        return self.envelopes[envelope].first_violation


def _exact_prefix(limit: int, env_reports: dict[str, EnvelopeReport]) -> None:
    """Decide n <= EXACT_PREFIX with rational arithmetic."""
    top = min(limit, EXACT_PREFIX)
    mu = mobius_table(top)
    m = Fraction(0)
    for n in range(1, top + 1):
        m += Fraction(int(mu[n]), n)
        m2 = m * m
        for name, rep in env_reports.items():
            if name == "half_inv_sqrt":
                if n < 3:
                    continue
                bad = 4 * m2 * (n + 1) > 1
                ratio2 = 4 * m2 * (n + 1)
            else:
                bad = m2 * (n + 1) > 2
                ratio2 = m2 * (n + 1) / 2
            if bad and rep.first_violation is None:
                rep.first_violation = n
            r = math.sqrt(ratio2)
            if r > rep.best_ratio:
                rep.best_ratio = r
                rep.best_n = n
                rep.best_hi = float(m)
                rep.best_lo = float(m - Fraction(float(m)))
                rep.best_err = 0.0


def _ratio_interval(rep: EnvelopeReport) -> Interval:
    m = abs((Interval(rep.best_hi) + Interval(rep.best_lo)).widen(rep.best_err))
    s = iv.sqrt(Interval(rep.best_n + 1))
    if rep.envelope == "half_inv_sqrt":
        return m * s * 2
    return m * s / iv.sqrt(2)


def write_checkpoint(path: Path, n: int, acc: RunningSum,
                     reps: dict[str, EnvelopeReport]) -> None:
    lines = [f"format: {CHECKPOINT_FORMAT}", f"version: {CHECKPOINT_VERSION}",
             f"n: {n}", f"sum_hi: {acc.hi.hex()}", f"sum_lo: {acc.lo.hex()}",
             f"certified_error: {acc.certified_error.hex()}"]
    for name, rep in reps.items():
        lines += [f"{name}.first_violation: {rep.first_violation}",
                  f"{name}.undecided: {rep.undecided}",
                  f"{name}.best_ratio: {rep.best_ratio.hex()}",
                  f"{name}.best_n: {rep.best_n}",
                  f"{name}.best_hi: {rep.best_hi.hex()}",
                  f"{name}.best_lo: {rep.best_lo.hex()}",
                  f"{name}.best_err: {rep.best_err.hex()}"]
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    os.replace(tmp, path)


def read_checkpoint(path: Path) -> tuple[int, RunningSum, dict[str, dict[str, str]]]:
    kv = {}
    for line in path.read_text().splitlines():
        if ": " in line:
            k, v = line.split(": ", 1)
            kv[k] = v
    if kv.get("format") != CHECKPOINT_FORMAT or int(kv.get("version", -1)) != CHECKPOINT_VERSION:
        raise ConfigError(f"{path} is not a version {CHECKPOINT_VERSION} checkpoint")
    n = int(kv["n"])
    acc = RunningSum(float.fromhex(kv["sum_hi"]), float.fromhex(kv["sum_lo"]),
                     float.fromhex(kv["certified_error"]), n)
    per_env: dict[str, dict[str, str]] = {}
    for k, v in kv.items():
        if "." in k:
            env, key = k.split(".", 1)
            per_env.setdefault(env, {})[key] = v
    return n, acc, per_env


def _restore(rep: EnvelopeReport, d: dict[str, str]) -> None:
    opt = lambda s: None if s == "None" else int(s)  # noqa: E731
    rep.first_violation = opt(d["first_violation"])
    rep.undecided = opt(d["undecided"])
    rep.best_ratio = float.fromhex(d["best_ratio"])
    rep.best_n = int(d["best_n"])
    rep.best_hi = float.fromhex(d["best_hi"])
    rep.best_lo = float.fromhex(d["best_lo"])
    rep.best_err = float.fromhex(d["best_err"])


def checkpoint_name(n: int) -> str:
    return f"mertens_{n:015d}.ckpt"


def mertens_scan(limit: int, envelope: str | tuple[str, ...] = "half_inv_sqrt", *,
                 extended: bool = False, checkpoint_dir: str | Path | None = None,
                 checkpoint_every: int = CHECKPOINT_EVERY, resume: bool = False,
                 block: int = SCAN_BLOCK, progress=None) -> ScanReport:
    """Scan m(n) = sum_{k<=n} mu(k)/k for n <= limit against envelopes.

    half_inv_sqrt reports the least n >= 3 with |m(n)| > 1/(2 sqrt(n+1)),
    i.e. the bound 1/(2 sqrt x) first fails for real x just below n + 1.
    sqrt_two_over_x verifies |m(n)| <= sqrt(2/(n+1)) for every n <= limit.
    """
    names = (envelope,) if isinstance(envelope, str) else tuple(envelope)
    for name in names:
        if name not in ENVELOPES:
            raise ConfigError(f"unknown envelope {name!r}")
    cap = EXTENDED_CAP if extended else GLOBAL_CAP
    if limit > cap:
        raise ConfigError(f"limit {limit} exceeds cap {cap}"
                          + ("" if extended else " (use extended mode)"))
    if limit < 1:
        raise ConfigError("limit must be positive")
    reps = {name: EnvelopeReport(name) for name in names}
    acc = RunningSum()
    ckdir = Path(checkpoint_dir) if checkpoint_dir is not None else None
    start = 1
    resumed = 0
    checkpoints: list[tuple[int, float, float, float]] = []
    if ckdir is not None:
        ckdir.mkdir(parents=True, exist_ok=True)
        if resume:
            found = sorted(p for p in ckdir.glob("mertens_*.ckpt")
                           if int(p.stem.split("_")[1]) <= limit)
            if found:
                n0, acc0, per_env = read_checkpoint(found[-1])
                if all(name in per_env for name in names):
                    acc = acc0
                    for name in names:
                        _restore(reps[name], per_env[name])
                    start = n0 + 1
                    resumed = n0
    if start == 1:
        _exact_prefix(limit, reps)
    primes = primes_up_to(math.isqrt(limit) + 1)
    mu = np.empty(block, np.int8)
    prod = np.empty(block, np.int64)
    lo = start
    next_ck = (lo // checkpoint_every + 1) * checkpoint_every
    consts = np.array([0.5 if name == "half_inv_sqrt" else math.sqrt(2.0) for name in names])
    status = np.zeros(len(names), np.int64)
    first_bad = np.full(len(names), -1, np.int64)
    for i, name in enumerate(names):
        rep = reps[name]
        if rep.first_violation is not None:
            status[i] = 1
        elif rep.undecided is not None:
            status[i] = 2
    while lo <= limit:
        count = min(block, limit - lo + 1, next_ck - lo + 1)
        h0, l0 = acc.hi, acc.lo
        best = np.array([reps[name].best_ratio for name in names])
        best_n = np.full(len(names), -1, np.int64)
        h1, l1, err = _mertens_block(lo, count, primes, mu, prod, h0, l0,
                                     max(lo, EXACT_PREFIX + 1), consts, status,
                                     first_bad, best, best_n)
        for i, name in enumerate(names):
            rep = reps[name]
            if best_n[i] >= 0:
                rep.best_ratio = float(best[i])
                rep.best_n = int(best_n[i])
                # recompute the running value at the argmax from the block start
                bh, bl, berr = _value_at_kernel(lo, rep.best_n, primes, h0, l0)
                rep.best_hi, rep.best_lo = bh, bl
                rep.best_err = acc.certified_error + berr
            if status[i] == 1 and rep.first_violation is None and rep.undecided is None:
                rep.first_violation = int(first_bad[i])
            elif status[i] == 2 and rep.first_violation is None and rep.undecided is None:
                rep.undecided = int(first_bad[i])
        acc = RunningSum(h1, l1, acc.certified_error + err, lo + count - 1)
        lo += count
        if lo - 1 == next_ck or lo > limit:
            checkpoints.append((acc.n_terms, acc.hi, acc.lo, acc.certified_error))
            if ckdir is not None and lo - 1 == next_ck:
                write_checkpoint(ckdir / checkpoint_name(next_ck), next_ck, acc, reps)
            if progress is not None:
                progress(acc.n_terms, limit)
            if lo - 1 == next_ck:
                next_ck += checkpoint_every
    for rep in reps.values():
        rep.max_ratio = _ratio_interval(rep)
        if rep.undecided is not None:
            raise PrecisionError(
                f"{rep.envelope}: sum cannot be separated from the envelope at n = {rep.undecided}")
    # decisions inside the kernel allow 8u of the envelope as slack
    if acc.certified_error >= min(1e-12, 2 * U * 0.5 / math.sqrt(limit + 1)):
        raise PrecisionError(f"certified error {acc.certified_error:.3g} is too large to decide")
    return ScanReport(limit, acc, reps, checkpoints, resumed)


@nb.njit(cache=True)
def _value_at_kernel(lo, n, primes, h, l):
    count = n - lo + 1
    mu = np.empty(count, np.int8)
    prod = np.empty(count, np.int64)
    _sieve_mu(lo, count, primes, mu, prod)
    maxabs = abs(h)
    sum_abs_t = 0.0
    for j in range(count):
        m = mu[j]
        if m != 0:
            th, tl = recip(float(lo + j))
            if m < 0:
                th = -th
                tl = -tl
            h, l = add_dd(h, l, th, tl)
            sum_abs_t += abs(th)
            if abs(h) > maxabs:
                maxabs = abs(h)
    err = (4.0 * U2 * (count * maxabs + sum_abs_t) + 3.0 * U2 * sum_abs_t) * 1.000001
    return h, l, err


def mertens_value(n: int) -> RunningSum:
    """m(n) with certified error (no envelope checks)."""
    rep = mertens_scan(n, "sqrt_two_over_x")
    return rep.final


# Chebyshev-type checks ---------------------------------------------------

CHEB_CHECKS = (
    "sum_lambda_over_n_le_log",
    "sum_lambda_over_n_ge_log_minus",
    "psi_lt_1.03883y",
    "psi_le_1.0004y",
    "sum_lambda_n_lt_1.03884y2/2",
    "sum_logp2_half_range_le",
)


@dataclass
class ChebyshevSample:
    y: int
    psi: Interval
    sum_lambda_over_n: Interval
    sum_lambda_n: Interval
    sum_logp2_half: Interval
    verdicts: dict[str, str]

    def ok(self) -> bool:
        return all(v in ("holds", "n/a") for v in self.verdicts.values())


def _positive_sum(hi: float, lo: float, rel: float, n_terms: int) -> Interval:
    """Interval for a sum of positive terms, each with relative error <= rel."""
    v = hi + lo
    err = (rel * v + 4.0 * U2 * n_terms * v) * 1.000001
    return (Interval(hi) + Interval(lo)).widen(err)


def _verdict(lhs: Interval, rhs: Interval, strict: bool) -> str:
    if (lhs.hi < rhs.lo) or (not strict and lhs.hi <= rhs.lo):
        return "holds"
    if lhs.lo > rhs.hi or (strict and lhs.lo >= rhs.hi):
        return "VIOLATION"
    return "inconclusive"


def chebyshev_checks(y_samples, global_cap: int = GLOBAL_CAP) -> list[ChebyshevSample]:
    """Certified checks of the Lambda-sum inequalities at integer y.

    Each left side is constant on [y, y+1); upper bounds are checked at y
    (where the right side is smallest on that range) and the lower bound
    log x - log(3/sqrt 2) at y + 1, so integer checks cover real x.
    """
    ys = sorted({int(y) for y in y_samples})
    if not ys:
        return []
    if ys[0] < 1:
        raise ConfigError("samples must be positive integers")
    if ys[-1] > global_cap:
        raise ConfigError(f"sample {ys[-1]} exceeds cap {global_cap}")
    marks = sorted({m for y in ys for m in (y, y // 2) if m >= 1})
    marr = np.array(marks, dtype=np.int64)
    limit = ys[-1]
    primes = primes_up_to(math.isqrt(limit) + 1)
    out = _prime_power_sums(limit, primes, marr, min(BLOCK_CAP, max(limit, 16)))
    idx = {m: i for i, m in enumerate(marks)}
    # log p from libm: <= 1 ulp, inflated; products and reciprocals add a few u
    rel_log, rel_mix = 4 * U, 10 * U
    results = []
    c1 = iv.const("1.03883")
    c2 = iv.const("1.0004")
    c3 = iv.const("1.03884")
    lower_c = iv.log(3 / iv.sqrt(2))
    for y in ys:
        row = out[idx[y]]
        psi = _positive_sum(row[0], row[1], rel_log, y)
        s_inv = _positive_sum(row[2], row[3], rel_mix, y)
        s_n = _positive_sum(row[4], row[5], rel_mix, y)
        p2_y = _positive_sum(row[6], row[7], 3 * rel_log, y)
        if y // 2 >= 1:
            r2 = out[idx[y // 2]]
            p2_half = _positive_sum(r2[6], r2[7], 3 * rel_log, y)
            p2 = p2_y - p2_half
            p2 = Interval(max(p2.lo, 0.0), p2.hi)
        else:
            p2 = p2_y
        ly = iv.log(y)
        v = {
            "sum_lambda_over_n_le_log": _verdict(s_inv, ly, False),
            # at y = 2 both sides tend to (log 2)/2 as x -> 3-, never reaching it
            "sum_lambda_over_n_ge_log_minus": ("holds" if y == 2 else
                                               _verdict(iv.log(y + 1) - lower_c, s_inv, False)),
            "psi_lt_1.03883y": _verdict(psi, c1 * y, True),
            "psi_le_1.0004y": _verdict(psi, c2 * y, False) if y >= 2 * 10**6 else "n/a",
            "sum_lambda_n_lt_1.03884y2/2": (_verdict(s_n, c3 * Interval(y).sqr() / 2, True)
                                            if y > 663 else "n/a"),
            "sum_logp2_half_range_le": (_verdict(p2, Interval(y) * ly / 2, False)
                                        if y >= 117 else "n/a"),
        }
        results.append(ChebyshevSample(y, psi, s_inv, s_n, p2, v))
    return results
