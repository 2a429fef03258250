"""Independent 200-bit evaluations of the closed-form bounds, straight from their displays."""

import mpmath
from mpmath import mpf

def _with_prec(fn):
    def wrap(*a, **k):
        with mpmath.workprec(200):
            return fn(*a, **k)
    return wrap


def phi(n: int) -> int:
    r, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            r -= r // p
        p += 1
    if m > 1:
        r -= r // m
    return r


@_with_prec
def C_ref(x, t):
    x, t = mpf(x), mpf(t)
    return mpmath.log(1 + mpmath.log(4 * t) / (2 * mpmath.log(9 * mpmath.cbrt(x) / (mpf("2.004") * t))))


@_with_prec
def R_ref(x, t):
    return mpf("0.27125") * C_ref(x, t) + mpf("0.41415")


@_with_prec
def main_bound_ref(x, q, delta):
    """Right side of the small-q bound, with exact phi(q)."""
    x = mpf(x)
    d0 = max(mpf(2), abs(mpf(delta)) / 4)
    ph = mpf(phi(q))
    t = d0 * q
    L = (min((mpmath.log(d0 ** (mpf(7) / 4) * mpf(q) ** (mpf(13) / 4)) + mpf(80) / 9) / (ph / q),
             mpf(5) / 6 * mpmath.log(x) + mpf(50) / 9)
         + mpmath.log(mpf(q) ** (mpf(80) / 9) * d0 ** (mpf(16) / 9)) + mpf(111) / 5)
    return ((R_ref(x, t) * mpmath.log(t) + mpf("0.5")) / mpmath.sqrt(d0 * ph) * x
            + mpf("2.5") * x / mpmath.sqrt(t) + 2 * x / t * L + mpf("3.2") * x ** (mpf(5) / 6))


@_with_prec
def S_I1_ref(x, q, delta):
    x = mpf(x)
    d0 = max(mpf(2), abs(mpf(delta)) / 4)
    m = mpf(1) if delta == 0 else min(mpf(1), mpf("0.798437") / mpf(delta) ** 2)
    inner = min(mpf(q) / phi(q) * (mpf(7) / 4 * mpmath.log(d0 * q) + mpf("6.11676")),
                mpmath.log(x) / 2 + mpf("5.65787"))
    x23 = x ** (mpf(2) / 3)
    return (x / q * m * inner + x23 / mpmath.sqrt(q * d0) * (mpf("0.67845") * mpmath.log(x) - mpf("1.20818"))
            + mpf("0.0507") * x23)


# frozen outputs of the functions above, 15 significant digits
FROZEN = {
    "R(1e27,2e5)": "0.554599987401132",
    "main(2.16e20,1e5,0)": "8.29876534212625e18",
    "S_I1(1e25,1e5,0)": "3.44402464758587e21",
}
