"""Numba kernels for the Fourier transforms behind the eta_2'' certificates.

Write eta_2'' = 4(4 delta_1/4 - 4 delta_1/2 + delta_1) + f and
(log * eta_2)'' part h, where on each of the pieces [1/4, 1/2), [1/2, 1)
the densities have the form x**-2 (p + q log x):

    f: (p, q) = (-4, 0) then (4, 0)
    h: (p, q) = (8 - 8 log 2, -8) then (-8, 8)

The transforms F(t) = 4 g(t) + f^(t) and K(t) = -16 log 2 k(t) + h^(t),
with g(t) = 4e(-t/4) - 4e(-t/2) + e(-t) and k(t) = 2e(-t/4) - e(-t/2), are
evaluated at float points t with either composite Simpson or integration by
parts. Every evaluation returns an a-priori bound on its total error
(truncation plus floating point), so |true - computed| <= err.
"""

import math

import numba as nb
import numpy as np

from .dd import U

LOG2 = math.log(2.0)
TWO_PI = 2.0 * math.pi
F_PIECES = np.array([[0.25, 0.5, -4.0, 0.0], [0.5, 1.0, 4.0, 0.0]])
H_PIECES = np.array([[0.25, 0.5, 8.0 - 8.0 * LOG2, -8.0], [0.5, 1.0, -8.0, 8.0]])
# slack for the float constants above (8 log 2 carries one rounding)
_PIECE_SLACK = 16.0 * U

_BINOM4 = np.array([1.0, 4.0, 6.0, 4.0, 1.0])


@nb.njit(cache=True)
def _deriv_coeffs(order):
    """Coefficients with d^j/dx^j x^-2 = a_j x^(-2-j) and
    d^j/dx^j (x^-2 log x) = x^(-2-j) (a_j log x + b_j)."""
    a = np.empty(order + 1)
    b = np.empty(order + 1)
    a[0] = 1.0
    b[0] = 0.0
    for j in range(order):
        m = -2.0 - j
        a[j + 1] = m * a[j]
        b[j + 1] = m * b[j] + a[j]
    return a, b


@nb.njit(cache=True)
def _deriv_abs_bound(x, p, q, j, a, b):
    """Upper bound for |phi^(j)(x)|, decreasing in x on (0, 1]."""
    lx = abs(math.log(x))
    return x ** (-2.0 - j) * (abs(p) * abs(a[j]) + abs(q) * (abs(a[j]) * lx + abs(b[j]))) * (1 + 1e-12)


@nb.njit(cache=True)
def _m4_bound(x, p, q, c, ca, cb):
    """Bound for the 4th derivative of phi(x) e(-xt); decreasing in x on (0, 1]."""
    m4 = 0.0
    for k in range(5):
        m4 += _BINOM4[k] * _deriv_abs_bound(x, p, q, k, ca, cb) * c ** (4 - k)
    return m4


@nb.njit(cache=True)
def simpson_piece(t, a, b, n, p, q):
    """Composite Simpson for int_a^b x^-2 (p + q log x) e(-xt) dx.

    Returns (re, im, err) with err bounding truncation, node rounding and
    floating-point accumulation. The phase e(-xt) is recomputed directly
    every BLOCK nodes and advanced by complex rotation in between.
    """
    BLOCK = 32
    ca, cb = _deriv_coeffs(5)
    h = (b - a) / n
    c = TWO_PI * abs(t)
    rot_r = math.cos(TWO_PI * h * t)
    rot_i = -math.sin(TWO_PI * h * t)
    sr = 0.0
    si = 0.0
    mag = 0.0
    trunc = 0.0
    er = 0.0
    ei = 0.0
    for j in range(n + 1):
        x = a + j * h
        if j % BLOCK == 0:
            th = TWO_PI * x * t
            er = math.cos(th)
            ei = -math.sin(th)
            # the panels starting in this block; the bound is decreasing in x
            panels = min(BLOCK, n - j) // 2
            if panels > 0:
                trunc += panels * _m4_bound(x, p, q, c, ca, cb)
        else:
            nr = er * rot_r - ei * rot_i
            ei = er * rot_i + ei * rot_r
            er = nr
        ix2 = 1.0 / (x * x)
        if q != 0.0:
            lx = math.log(x)
            phi = (p + q * lx) * ix2
            bound = (abs(p) + abs(q) * (abs(lx) + 1.0)) * ix2
        else:
            phi = p * ix2
            bound = abs(p) * ix2
        w = 1.0 if (j == 0 or j == n) else (4.0 if j % 2 == 1 else 2.0)
        sr += w * phi * er
        si += w * phi * ei
        mag += w * bound
    scale = h / 3.0
    sr *= scale
    si *= scale
    mag *= scale
    # Simpson remainder per panel of width 2h: (2h)^5/2880 max|psi''''| = h^5/90 M4,
    # applied to real and imaginary parts separately
    trunc *= h ** 5 / 90.0 * math.sqrt(2.0) * (1 + 1e-12)
    # nodes a + j h are off by at most 2u; the integrand is Lipschitz with
    # constant |phi'| + c |phi| at the left end
    lip = _deriv_abs_bound(a, p, q, 1, ca, cb) + c * _deriv_abs_bound(a, p, q, 0, ca, cb)
    node = (b - a) * lip * 4.0 * U
    # phase: direct evaluation <= 4u theta + 2u, then <= BLOCK rotations of <= 8u each
    fp = mag * U * (n + 40.0 + 8.0 * c * b + 8.0 * BLOCK + 8.0 * BLOCK * c * h) + mag * _PIECE_SLACK
    return sr, si, trunc + node + fp


@nb.njit(cache=True)
def ibp_piece(t, a, b, p, q, order):
    """Integration by parts to the given order; requires t != 0.

    int_a^b phi e^(-cx) = sum_j [-phi^(j) e^(-cx) / c^(j+1)]_a^b
    + c^-order int phi^(order) e^(-cx), c = 2 pi i t.
    """
    ca, cb = _deriv_coeffs(order)
    w = TWO_PI * t
    sr = 0.0
    si = 0.0
    mag = 0.0
    for side in range(2):
        x = b if side == 1 else a
        sign = 1.0 if side == 1 else -1.0
        lx = math.log(x)
        th = w * x
        er = math.cos(th)
        ei = -math.sin(th)
        inv = 1.0 / w
        # (-i)^(j+1)
        pr, pi = 0.0, -1.0
        for j in range(order):
            d = x ** (-2.0 - j) * (p * ca[j] + q * (ca[j] * lx + cb[j]))
            # -d e /c^(j+1) = -d e (-i)^(j+1) / w^(j+1)
            zr = er * pr - ei * pi
            zi = er * pi + ei * pr
            sr -= sign * d * zr * inv
            si -= sign * d * zi * inv
            mag += abs(d) * inv * (1.0 + abs(th) * 8.0 * U)
            inv /= w
            pr, pi = pi, -pr
    rem = (b - a) * _deriv_abs_bound(a, p, q, order, ca, cb) / abs(w) ** order
    return sr, si, rem + mag * U * (4.0 * order + 40.0) + mag * _PIECE_SLACK


@nb.njit(cache=True)
def transform(t, pieces, n_simpson, ibp_order):
    """Sum of the piece transforms; Simpson when ibp_order == 0."""
    sr = 0.0
    si = 0.0
    err = 0.0
    for i in range(pieces.shape[0]):
        a, b, p, q = pieces[i, 0], pieces[i, 1], pieces[i, 2], pieces[i, 3]
        if ibp_order > 0:
            r, m, e = ibp_piece(t, a, b, p, q, ibp_order)
        else:
            r, m, e = simpson_piece(t, a, b, n_simpson, p, q)
        sr += r
        si += m
        err += e
    return sr, si, err * (1 + 1e-12)


@nb.njit(cache=True)
def g_value(t):
    """g(t) and an error bound."""
    r = 0.0
    i = 0.0
    for coef, alpha in ((4.0, 0.25), (-4.0, 0.5), (1.0, 1.0)):
        th = TWO_PI * alpha * t
        r += coef * math.cos(th)
        i -= coef * math.sin(th)
    return r, i, 9.0 * U * (8.0 + abs(TWO_PI * t) * 4.0)


@nb.njit(cache=True)
def k_value(t):
    r = 0.0
    i = 0.0
    for coef, alpha in ((2.0, 0.25), (-1.0, 0.5)):
        th = TWO_PI * alpha * t
        r += coef * math.cos(th)
        i -= coef * math.sin(th)
    return r, i, 9.0 * U * (3.0 + abs(TWO_PI * t) * 2.0)


@nb.njit(cache=True)
def simpson_n(t, base, n_fixed):
    if n_fixed > 0:
        return n_fixed
    m = int(math.floor(math.sqrt(abs(t))))
    return base * max(1, m)


@nb.njit(cache=True)
def F_value(t, base, n_fixed, ibp_order):
    gr, gi, ge = g_value(t)
    n = simpson_n(t, base, n_fixed)
    fr, fi, fe = transform(t, F_PIECES, n, ibp_order)
    return 4.0 * gr + fr, 4.0 * gi + fi, (4.0 * ge + fe + 4.0 * U * 32.0) * (1 + 1e-12)


@nb.njit(cache=True)
def K_value(t, base, n_fixed, ibp_order):
    kr, ki, ke = k_value(t)
    n = simpson_n(t, base, n_fixed)
    hr, hi, he = transform(t, H_PIECES, n, ibp_order)
    c = 16.0 * LOG2
    return -c * kr + hr, -c * ki + hi, (c * ke + 3.0 * c * 4.0 * U + he + 4.0 * U * 100.0) * (1 + 1e-12)


@nb.njit(cache=True)
def scan_F(k0, k1, step, base, n_fixed, ibp_from, ibp_order):
    """|F| and error at t = k * step for k0 <= k < k1."""
    m = k1 - k0
    vals = np.empty(m)
    errs = np.empty(m)
    for j in range(m):
        t = (k0 + j) * step
        order = ibp_order if (ibp_order > 0 and t >= ibp_from) else 0
        r, i, e = F_value(t, base, n_fixed, order)
        vals[j] = math.hypot(r, i)
        errs[j] = e + vals[j] * 2.0 * U
    return vals, errs


@nb.njit(cache=True)
def scan_FK(ts, base, n_fixed, ibp_from, ibp_order):
    """Complex F, K values with error bounds at the given points."""
    m = ts.shape[0]
    out = np.empty((m, 6))
    for j in range(m):
        t = ts[j]
        order = ibp_order if (ibp_order > 0 and t >= ibp_from) else 0
        fr, fi, fe = F_value(t, base, n_fixed, order)
        kr, ki, ke = K_value(t, base, n_fixed, order)
        out[j, 0] = fr
        out[j, 1] = fi
        out[j, 2] = fe
        out[j, 3] = kr
        out[j, 4] = ki
        out[j, 5] = ke
    return out
