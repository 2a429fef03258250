"""Smoothing functions eta_2, eta_1 and their log-weighted variants.

eta_2(t) = 4 max(log 2 - |log 2t|, 0) is supported on (1/4, 1), with
eta_2 = 4 log 4t on (1/4, 1/2] and -4 log t on [1/2, 1). It is the
multiplicative self-convolution of eta_1 = 2 * 1_(1/2, 1].

Pointwise evaluation uses the natural interval extension of each smooth
piece on the part of the argument that meets that piece, so it is sound for
wide arguments too. Outside the support the value is exactly 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import interval as iv
from .errors import DomainError, NotAvailableError, PrecisionError
from .interval import Interval

QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)


class Kind(enum.Enum):
    ETA2 = "eta2"
    ETA1 = "eta1"
    ETA2_LOG_SCALED = "eta2_log_scaled"
    LOG_TIMES_ETA2 = "log_times_eta2"


class Norm(enum.Enum):
    L1 = "L1"
    L1_OF_DERIVATIVE = "L1_of_derivative"
    L1_OF_SECOND_DERIVATIVE = "L1_of_second_derivative"


def _piece(t: Interval, a: Fraction, b: Fraction) -> Interval | None:
    lo = max(t.lo, iv.fraction_down(a)) if t.lo > a else iv.fraction_down(a)
    hi = min(t.hi, iv.fraction_up(b)) if t.hi < b else iv.fraction_up(b)
    if t.hi < a or t.lo > b or lo > hi:
        return None
    return Interval(lo, hi)


@dataclass(frozen=True)
class SmoothingFn:
    kind: Kind
    y: float | None = None

    def __post_init__(self):
        if self.kind is Kind.ETA2_LOG_SCALED:
            if self.y is None or self.y < 4:
                raise DomainError("eta2_log_scaled needs y >= 4")
        elif self.y is not None:
            raise DomainError(f"{self.kind.value} takes no parameter")

    @property
    def support(self) -> Interval:
        if self.kind is Kind.ETA1:
            return Interval(0.5, 1.0)
        return Interval(0.25, 1.0)

    # pieces: (a, b, formula on the open piece)
    def _pieces(self):
        k = self.kind
        if k is Kind.ETA1:
            return [(HALF, Fraction(1), lambda s: Interval(2.0))]
        rising = lambda s: 4 * iv.log(4 * s)  # noqa: E731
        falling = lambda s: -4 * iv.log(s)  # noqa: E731
        if k is Kind.ETA2:
            return [(QUARTER, HALF, rising), (HALF, Fraction(1), falling)]
        if k is Kind.LOG_TIMES_ETA2:
            return [(QUARTER, HALF, lambda s: iv.log(s) * rising(s)),
                    (HALF, Fraction(1), lambda s: iv.log(s) * falling(s))]
        ly = iv.log(self.y)
        return [(QUARTER, HALF, lambda s: (ly + iv.log(s)) * rising(s)),
                (HALF, Fraction(1), lambda s: (ly + iv.log(s)) * falling(s))]

    def eval(self, t) -> Interval:
        t = iv.as_interval(t)
        parts: list[Interval] = []
        covered_lo = 0.25 if self.kind is not Kind.ETA1 else 0.5
        if self.kind is Kind.ETA1:
            # 2 on (1/2, 1]; closed at the right end
            if t.hi > 0.5 and t.lo <= 1.0:
                parts.append(Interval(2.0))
            if t.lo <= 0.5 or t.hi > 1.0:
                parts.append(Interval(0.0))
            return Interval.hull_of(*parts)
        if t.lo <= covered_lo or t.hi >= 1.0:
            parts.append(Interval(0.0))
        for a, b, fn in self._pieces():
            s = _piece(t, a, b)
            if s is not None:
                parts.append(fn(s))
        return Interval.hull_of(*parts)

    __call__ = eval

    def derivative(self, t, order: int = 1) -> Interval:
        """Absolutely continuous part of the derivative of eta_2.

        At the kinks 1/4, 1/2, 1 the hull of the one-sided limits is returned.
        The second derivative omits the point masses
        4(4 delta_1/4 - 4 delta_1/2 + delta_1).
        """
        if self.kind is not Kind.ETA2:
            raise NotAvailableError("derivatives are provided for eta2 only")
        t = iv.as_interval(t)
        if order == 1:
            rising = lambda s: 4 / s  # noqa: E731
            falling = lambda s: -4 / s  # noqa: E731
        elif order == 2:
            rising = lambda s: -4 / s.sqr()  # noqa: E731
            falling = lambda s: 4 / s.sqr()  # noqa: E731
        else:
            raise NotAvailableError("order must be 1 or 2")
        parts = []
        if t.lo <= 0.25 or t.hi >= 1.0:
            parts.append(Interval(0.0))
        for a, b, fn in ((QUARTER, HALF, rising), (HALF, Fraction(1), falling)):
            s = _piece(t, a, b)
            if s is not None:
                parts.append(fn(s))
        return Interval.hull_of(*parts)

    def norm(self, which: Norm | str) -> Interval:
        which = Norm(which)
        log2 = iv.LOG2
        k = self.kind
        if k is Kind.ETA2:
            return {Norm.L1: Interval(1.0), Norm.L1_OF_DERIVATIVE: 8 * log2,
                    Norm.L1_OF_SECOND_DERIVATIVE: Interval(48.0)}[which]
        if k is Kind.ETA1 and which is Norm.L1:
            return Interval(1.0)
        if k is Kind.LOG_TIMES_ETA2:
            if which is Norm.L1:
                return 2 - 2 * log2
            if which is Norm.L1_OF_SECOND_DERIVATIVE:
                return 96 * log2
        if k is Kind.ETA2_LOG_SCALED:
            lr = iv.log(self.y)
            if which is Norm.L1:
                # log(rho t) > 0 on the support, so the norm is log rho - |log eta2|_1
                return lr - (2 - 2 * log2)
            if which is Norm.L1_OF_DERIVATIVE:
                return 2 * (lr - log2) * (4 * log2)
            lr4 = lr - 2 * log2
            return (4 * lr4 + abs(2 * lr - 4 * lr4) + abs(4 * log2 - 4 * lr)
                    + abs(lr - 4 * log2) + abs(lr))
        raise NotAvailableError(f"no closed form for {which.value} of {k.value}")

    def norm_bound(self, which: Norm | str) -> Interval:
        """The simple upper bounds log(rho) times the eta_2 norm."""
        if self.kind is not Kind.ETA2_LOG_SCALED:
            return self.norm(which)
        return iv.log(self.y) * ETA2.norm(which)


ETA2 = SmoothingFn(Kind.ETA2)
ETA1 = SmoothingFn(Kind.ETA1)
LOG_TIMES_ETA2 = SmoothingFn(Kind.LOG_TIMES_ETA2)


def eta2_log_scaled(y: float) -> SmoothingFn:
    return SmoothingFn(Kind.ETA2_LOG_SCALED, y)


def convolution_check(t, quadrature_budget: int = 256, tol: float = 1e-9) -> Interval:
    """Certified value of the integral of eta_1(s) eta_1(t/s) ds/s.

    The integrand is 4/s on the set where both factors are nonzero, which is
    the interval (max(t, 1/2), min(2t, 1)] in s; its endpoints are located
    exactly and 4/s is integrated there by certified Simpson quadrature.
    """
    from .certify import simpson_certified

    t = iv.as_interval(t)
    if t.lo <= 0 or t.hi >= 2:
        raise DomainError("convolution_check needs t inside (0, 2)")
    if quadrature_budget < 2:
        raise PrecisionError("quadrature budget must be at least 2")
    n = quadrature_budget + quadrature_budget % 2
    if not t.is_point():
        # bound the monotone pieces by their endpoint values
        vals = [convolution_check(x, quadrature_budget, tol) for x in (t.lo, t.hi)]
        if t.lo < 0.5 < t.hi:
            vals.append(convolution_check(0.5, quadrature_budget, tol))
        return Interval.hull_of(*vals)
    lo, hi = max(t.lo, 0.5), min(2 * t.lo, 1.0)
    if hi <= lo:
        return Interval(0.0)
    # 4/s has fourth derivative 96/s^5 <= 96 * 2^5 on [1/2, 1]
    val = simpson_certified(lambda s: 4 / s, Interval(lo), Interval(hi), n, Interval(96.0, 96.0 * 32))
    if val.width > tol:
        raise PrecisionError(f"quadrature width {val.width:.3g} exceeds {tol:g}; raise the budget")
    return val
