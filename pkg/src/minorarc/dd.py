"""Double-word (double-double) kernels for long compensated sums.

No fused multiply-add is assumed; products use Dekker's split. With
u = 2**-53 the bounds used by callers are:

* ``recip(n)`` returns r + c with |r + c - 1/n| <= 3 u**2 / n.
* ``add_dd(h, l, th, tl)`` returns a normalized pair whose value differs
  from (h + l) + (th + tl) by at most 4 u**2 (|h| + |th|).
"""

import numba as nb

U = 2.0**-53
U2 = U * U
_SPLIT = 134217729.0


@nb.njit(cache=True, inline="always")
def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@nb.njit(cache=True, inline="always")
def fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


@nb.njit(cache=True, inline="always")
def two_prod(a, b):
    p = a * b
    c = _SPLIT * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLIT * b
    bh = c - (c - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


@nb.njit(cache=True, inline="always")
def recip(n):
    r = 1.0 / n
    p, pe = two_prod(r, n)
    return r, ((1.0 - p) - pe) / n


@nb.njit(cache=True, inline="always")
def add_dd(h, l, th, tl):
    s, e = two_sum(h, th)
    e += l + tl
    return fast_two_sum(s, e)
