"""Rigorous interval arithmetic over the reals and over complex rectangles.

Outward rounding is realized without touching the FPU rounding mode. Each
basic operation is carried out in round-to-nearest, and an error-free
transformation (TwoSum, Dekker's TwoProd) recovers the sign of the rounding
error. The endpoint is moved one float outward only when the rounded result
lies on the wrong side of the exact one. This emulates directed rounding
exactly, keeps point operations at most one ulp wide, and involves no global
state, so values can be shared freely between threads.

Transcendental functions use the host libm (glibc, faithfully rounded) and are
inflated by two ulps on each side.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import DomainError

Number = Union[int, float, Fraction]

_INF = math.inf
_SPLIT = 134217729.0  # 2**27 + 1
_TWO_PROD_MAX = 2.0**995
_TWO_PROD_MIN = 2.0**-968
TRANSCENDENTAL_ULPS = 2


def _down(x: float, k: int = 1) -> float:
    for _ in range(k):
        x = math.nextafter(x, -_INF)
    return x


def _up(x: float, k: int = 1) -> float:
    for _ in range(k):
        x = math.nextafter(x, _INF)
    return x


def two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a: float) -> tuple[float, float]:
    c = _SPLIT * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a: float, b: float) -> tuple[float, float]:
    """Dekker's product: p + e == a*b exactly when no over/underflow occurs."""
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _prod_safe(a: float, b: float, p: float) -> bool:
    return (abs(a) < _TWO_PROD_MAX and abs(b) < _TWO_PROD_MAX
            and _TWO_PROD_MIN < abs(p) < _TWO_PROD_MAX)


def _check(x: float) -> float:
    if not math.isfinite(x):
        raise OverflowError("interval endpoint is not finite")
    return x


# directed elementary operations -------------------------------------------

def add_down(a: float, b: float) -> float:
    s, e = two_sum(a, b)
    return _check(s if e >= 0 else _down(s))


def add_up(a: float, b: float) -> float:
    s, e = two_sum(a, b)
    return _check(s if e <= 0 else _up(s))


def mul_down(a: float, b: float) -> float:
    p = a * b
    if a == 0.0 or b == 0.0:
        return 0.0
    if not _prod_safe(a, b, p):
        r = _check(_down(p))
        # underflow must not flip the sign of a nonnegative product
        return max(r, 0.0) if (a > 0) == (b > 0) else r
    _, e = two_prod(a, b)
    return p if e >= 0 else _down(p)


def mul_up(a: float, b: float) -> float:
    p = a * b
    if a == 0.0 or b == 0.0:
        return 0.0
    if not _prod_safe(a, b, p):
        r = _check(_up(p))
        return min(r, 0.0) if (a > 0) != (b > 0) else r
    _, e = two_prod(a, b)
    return p if e <= 0 else _up(p)


def _div_residual_sign(a: float, b: float, q: float) -> int:
    """Sign of a/b - q, or 2 when it cannot be decided by TwoProd."""
    if not _prod_safe(q, b, q * b) or abs(a) < _TWO_PROD_MIN:
        return 2
    p, e = two_prod(q, b)
    r = (a - p) - e
    if r == 0:
        return 0
    return 1 if (r > 0) == (b > 0) else -1


def div_down(a: float, b: float) -> float:
    q = a / b
    if a == 0.0:
        return 0.0
    s = _div_residual_sign(a, b, q)
    if s == 2:
        return _check(_down(q))
    return _check(q if s >= 0 else _down(q))


def div_up(a: float, b: float) -> float:
    q = a / b
    if a == 0.0:
        return 0.0
    s = _div_residual_sign(a, b, q)
    if s == 2:
        return _check(_up(q))
    return _check(q if s <= 0 else _up(q))


def sqrt_down(a: float) -> float:
    r = math.sqrt(a)
    if r == 0.0:
        return 0.0
    if not _prod_safe(r, r, a):
        return _down(r)
    p, e = two_prod(r, r)
    return r if (a - p) - e >= 0 else _down(r)


def sqrt_up(a: float) -> float:
    r = math.sqrt(a)
    if r == 0.0:
        return 0.0
    if not _prod_safe(r, r, a):
        return _up(r)
    p, e = two_prod(r, r)
    return r if (a - p) - e <= 0 else _up(r)


def fraction_down(x: Fraction) -> float:
    f = float(x)
    return f if Fraction(f) <= x else _down(f)


def fraction_up(x: Fraction) -> float:
    f = float(x)
    return f if Fraction(f) >= x else _up(f)


# real intervals -----------------------------------------------------------

class Interval:
    """Closed interval [lo, hi] with finite float endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Number, hi: Number | None = None):
        if hi is None:
            hi = lo
        lo_f = _lower_float(lo)
        hi_f = _upper_float(hi)
        if not (lo_f <= hi_f):
            raise DomainError(f"empty interval [{lo!r}, {hi!r}]")
        self.lo = _check(lo_f)
        self.hi = _check(hi_f)

    @classmethod
    def _raw(cls, lo: float, hi: float) -> "Interval":
        obj = object.__new__(cls)
        obj.lo = lo
        obj.hi = hi
        return obj

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """Tightest interval containing a decimal literal such as '0.27125'."""
        return cls(Fraction(text))

    @classmethod
    def hull_of(cls, *items: "Interval | Number") -> "Interval":
        ivs = [as_interval(x) for x in items]
        return cls._raw(min(i.lo for i in ivs), max(i.hi for i in ivs))

    # ---- inspection
    @property
    def mid(self) -> float:
        return 0.5 * self.lo + 0.5 * self.hi

    @property
    def width(self) -> float:
        return add_up(self.hi, -self.lo)

    @property
    def rad(self) -> float:
        return max(add_up(self.hi, -self.mid), add_up(self.mid, -self.lo))

    @property
    def mag(self) -> float:
        return max(abs(self.lo), abs(self.hi))

    @property
    def mig(self) -> float:
        if self.lo <= 0.0 <= self.hi:
            return 0.0
        return min(abs(self.lo), abs(self.hi))

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: "Number | Interval") -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def overlaps(self, other: "Interval | Number") -> bool:
        o = as_interval(other)
        return self.lo <= o.hi and o.lo <= self.hi

    def intersect(self, other: "Interval | Number") -> "Interval":
        o = as_interval(other)
        lo, hi = max(self.lo, o.lo), min(self.hi, o.hi)
        if lo > hi:
            raise DomainError("intervals do not intersect")
        return Interval._raw(lo, hi)

    def hull(self, other: "Interval | Number") -> "Interval":
        o = as_interval(other)
        return Interval._raw(min(self.lo, o.lo), max(self.hi, o.hi))

    def certainly_lt(self, other: "Interval | Number") -> bool:
        return self.hi < as_interval(other).lo

    def certainly_le(self, other: "Interval | Number") -> bool:
        return self.hi <= as_interval(other).lo

    def certainly_gt(self, other: "Interval | Number") -> bool:
        return self.lo > as_interval(other).hi

    def certainly_ge(self, other: "Interval | Number") -> bool:
        return self.lo >= as_interval(other).hi

    def widen(self, eps: float) -> "Interval":
        """Enlarge by an absolute amount on both sides."""
        return Interval._raw(add_down(self.lo, -eps), add_up(self.hi, eps))

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __str__(self) -> str:
        return f"[{self.lo:.17g}, {self.hi:.17g}]"

    def hex(self) -> tuple[str, str]:
        return self.lo.hex(), self.hi.hex()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    # ---- arithmetic
    def __neg__(self) -> "Interval":
        return Interval._raw(-self.hi, -self.lo)

    def __pos__(self) -> "Interval":
        return self

    def __abs__(self) -> "Interval":
        return Interval._raw(self.mig, self.mag)

    def __add__(self, other) -> "Interval":
        o = as_interval(other)
        return Interval._raw(add_down(self.lo, o.lo), add_up(self.hi, o.hi))

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        o = as_interval(other)
        return Interval._raw(add_down(self.lo, -o.hi), add_up(self.hi, -o.lo))

    def __rsub__(self, other) -> "Interval":
        return as_interval(other) - self

    def __mul__(self, other) -> "Interval":
        o = as_interval(other)
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        if a >= 0 and c >= 0:
            return Interval._raw(mul_down(a, c), mul_up(b, d))
        if b <= 0 and d <= 0:
            return Interval._raw(mul_down(b, d), mul_up(a, c))
        if a >= 0 and d <= 0:
            return Interval._raw(mul_down(b, c), mul_up(a, d))
        if b <= 0 and c >= 0:
            return Interval._raw(mul_down(a, d), mul_up(b, c))
        pairs = ((a, c), (a, d), (b, c), (b, d))
        return Interval._raw(min(mul_down(x, y) for x, y in pairs),
                             max(mul_up(x, y) for x, y in pairs))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        o = as_interval(other)
        if o.lo <= 0.0 <= o.hi:
            raise DomainError("division by an interval containing 0")
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        if c > 0:
            lo = div_down(a, d) if a >= 0 else div_down(a, c)
            hi = div_up(b, c) if b >= 0 else div_up(b, d)
        else:
            lo = div_down(b, d) if b >= 0 else div_down(b, c)
            hi = div_up(a, c) if a >= 0 else div_up(a, d)
        return Interval._raw(lo, hi)

    def __rtruediv__(self, other) -> "Interval":
        return as_interval(other) / self

    def sqr(self) -> "Interval":
        m, g = self.mag, self.mig
        return Interval._raw(mul_down(g, g), mul_up(m, m))

    def __pow__(self, n) -> "Interval":
        if isinstance(n, int):
            return ipow(self, n)
        return power(self, n)

    def __rpow__(self, base) -> "Interval":
        return power(as_interval(base), self)

    def __float__(self) -> float:
        if self.lo != self.hi:
            raise TypeError("only point intervals convert to float")
        return self.lo


def _lower_float(x: Number) -> float:
    if isinstance(x, Interval):
        return x.lo
    if isinstance(x, float):
        return x
    if isinstance(x, int):
        f = float(x)
        return f if int(f) <= x else _down(f)
    if isinstance(x, Fraction):
        return fraction_down(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an interval")


def _upper_float(x: Number) -> float:
    if isinstance(x, Interval):
        return x.hi
    if isinstance(x, float):
        return x
    if isinstance(x, int):
        f = float(x)
        return f if int(f) >= x else _up(f)
    if isinstance(x, Fraction):
        return fraction_up(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an interval")


def as_interval(x: "Interval | Number") -> Interval:
    if isinstance(x, Interval):
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError("non-finite value")
        return Interval._raw(x, x)
    return Interval(x)


def ipow(x: Interval, n: int) -> Interval:
    if n < 0:
        return 1 / ipow(x, -n)
    if n == 0:
        return Interval._raw(1.0, 1.0)
    if n % 2 == 0:
        half = ipow(x, n // 2)
        return half.sqr()
    result = x
    for _ in range(n - 1):
        result = result * x
    return result


# constants ----------------------------------------------------------------

_PI_TEXT = "3.14159265358979323846264338327950288419716939937510"
_E_TEXT = "2.71828182845904523536028747135266249775724709369995"
_LOG2_TEXT = "0.69314718055994530941723212145817656807550013436026"
_GAMMA_TEXT = "0.57721566490153286060651209008240243104215933593992"

PI = Interval.parse(_PI_TEXT)
TWO_PI = Interval._raw(2 * PI.lo, 2 * PI.hi)
HALF_PI = Interval._raw(0.5 * PI.lo, 0.5 * PI.hi)
E = Interval.parse(_E_TEXT)
LOG2 = Interval.parse(_LOG2_TEXT)
EULER_GAMMA = Interval.parse(_GAMMA_TEXT)


def const(text: str) -> Interval:
    """Decimal literal as a tight interval."""
    return Interval.parse(text)


# elementary functions -----------------------------------------------------

def _mono_inc(fn, x: Interval, ulps: int = TRANSCENDENTAL_ULPS) -> Interval:
    return Interval._raw(_check(_down(fn(x.lo), ulps)), _check(_up(fn(x.hi), ulps)))


def sqrt(x: "Interval | Number") -> Interval:
    x = as_interval(x)
    if x.lo < 0:
        raise DomainError("sqrt of an interval with negative part")
    return Interval._raw(sqrt_down(x.lo), sqrt_up(x.hi))


def exp(x: "Interval | Number") -> Interval:
    x = as_interval(x)
    r = _mono_inc(math.exp, x)
    return Interval._raw(max(r.lo, 0.0), r.hi)


def log(x: "Interval | Number") -> Interval:
    x = as_interval(x)
    if x.lo <= 0:
        raise DomainError("log of an interval that is not positive")
    if x.lo == 1.0 and x.hi == 1.0:
        return Interval._raw(0.0, 0.0)
    return _mono_inc(math.log, x)


def log1p(x: "Interval | Number") -> Interval:
    x = as_interval(x)
    if x.lo <= -1:
        raise DomainError("log1p needs x > -1")
    return _mono_inc(math.log1p, x)


def atan(x: "Interval | Number") -> Interval:
    x = as_interval(x)
    r = _mono_inc(math.atan, x)
    return Interval._raw(max(r.lo, -HALF_PI.hi), min(r.hi, HALF_PI.hi))


def arcsin(x: "Interval | Number") -> Interval:
    x = as_interval(x)
    if x.lo < -1 or x.hi > 1:
        raise DomainError("arcsin outside [-1, 1]")
    r = _mono_inc(math.asin, x)
    return Interval._raw(max(r.lo, -HALF_PI.hi), min(r.hi, HALF_PI.hi))


def arccos(x: "Interval | Number") -> Interval:
    return HALF_PI - arcsin(x)


def power(x: "Interval | Number", y: "Interval | Number") -> Interval:
    """x**y for x > 0 (or integer y, any x)."""
    x = as_interval(x)
    if isinstance(y, int):
        return ipow(x, y)
    y = as_interval(y)
    if y.is_point() and float(y).is_integer() and abs(y.lo) < 2**31:
        return ipow(x, int(y.lo))
    if x.lo <= 0:
        raise DomainError("real power of an interval that is not positive")
    return exp(y * log(x))


def _critical_hits(x: Interval, offset: float) -> list[int]:
    """Integers k for which offset*pi + k*pi may lie in x (sound superset)."""
    k_lo = math.floor(x.lo / math.pi - offset) - 1
    k_hi = math.ceil(x.hi / math.pi - offset) + 1
    hits = []
    for k in range(k_lo, k_hi + 1):
        c = PI * (k + offset)
        if c.lo <= x.hi and x.lo <= c.hi:
            hits.append(k)
    return hits


def _trig(fn, x: Interval, offset: float, sign_even: float) -> Interval:
    if x.width >= 6.3:
        return Interval._raw(-1.0, 1.0)
    u = TRANSCENDENTAL_ULPS
    a, b = fn(x.lo), fn(x.hi)
    lo = max(-1.0, _down(min(a, b), u))
    hi = min(1.0, _up(max(a, b), u))
    for k in _critical_hits(x, offset):
        if (k % 2 == 0) == (sign_even > 0):
            hi = 1.0
        else:
            lo = -1.0
    return Interval._raw(lo, hi)


def sin(x: "Interval | Number") -> Interval:
    # maxima at pi/2 + 2k pi, minima at pi/2 + (2k+1) pi
    return _trig(math.sin, as_interval(x), 0.5, 1.0)


def cos(x: "Interval | Number") -> Interval:
    # maxima at 2k pi, minima at (2k+1) pi
    return _trig(math.cos, as_interval(x), 0.0, 1.0)


def floor_exact(x: Interval) -> int:
    """floor(x) when it is the same for every point of x."""
    a, b = math.floor(x.lo), math.floor(x.hi)
    if a != b:
        raise DomainError("floor is not constant on the interval")
    return int(a)


# complex rectangles -------------------------------------------------------

class ComplexInterval:
    """Rectangle re + i*im containing a complex number."""

    __slots__ = ("re", "im")

    def __init__(self, re: "Interval | Number", im: "Interval | Number" = 0.0):
        self.re = as_interval(re)
        self.im = as_interval(im)

    def __repr__(self) -> str:
        return f"ComplexInterval({self.re!r}, {self.im!r})"

    def __add__(self, other) -> "ComplexInterval":
        o = as_complex(other)
        return ComplexInterval(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "ComplexInterval":
        o = as_complex(other)
        return ComplexInterval(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "ComplexInterval":
        return as_complex(other) - self

    def __neg__(self) -> "ComplexInterval":
        return ComplexInterval(-self.re, -self.im)

    def __mul__(self, other) -> "ComplexInterval":
        if isinstance(other, (Interval, int, float, Fraction)):
            o = as_interval(other)
            return ComplexInterval(self.re * o, self.im * o)
        o = as_complex(other)
        return ComplexInterval(self.re * o.re - self.im * o.im,
                               self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ComplexInterval":
        if isinstance(other, (Interval, int, float, Fraction)):
            o = as_interval(other)
            return ComplexInterval(self.re / o, self.im / o)
        o = as_complex(other)
        d = o.abs2()
        num = self * o.conj()
        return ComplexInterval(num.re / d, num.im / d)

    def conj(self) -> "ComplexInterval":
        return ComplexInterval(self.re, -self.im)

    def abs2(self) -> Interval:
        return self.re.sqr() + self.im.sqr()

    def abs(self) -> Interval:
        return sqrt(self.abs2())

    __abs__ = abs

    def contains(self, z: complex) -> bool:
        return self.re.contains(z.real) and self.im.contains(z.imag)

    def arg(self) -> Interval:
        """Argument in (-pi, pi]; the rectangle may not meet the non-positive real axis."""
        re, im = self.re, self.im
        if re.lo > 0:
            return atan(im / re)
        if im.lo > 0:
            return HALF_PI - atan(re / im)
        if im.hi < 0:
            return -HALF_PI - atan(re / im)
        raise DomainError("argument undefined across the branch cut or at 0")


def as_complex(z) -> ComplexInterval:
    if isinstance(z, ComplexInterval):
        return z
    if isinstance(z, complex):
        return ComplexInterval(z.real, z.imag)
    return ComplexInterval(as_interval(z), 0.0)


def unit_phase(t: "Interval | Number") -> ComplexInterval:
    """e(t) = exp(2 pi i t)."""
    t = as_interval(t)
    n = float(round(t.mid)) if abs(t.mid) < 2.0**52 else 0.0
    theta = TWO_PI * (t - n)
    return ComplexInterval(cos(theta), sin(theta))
