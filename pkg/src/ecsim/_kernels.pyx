# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the hot Bell-Mermin kernels.

Twin of ``ecsim._kernels_py`` (same functions, same arithmetic, same
settings packing); see that module's docstring for the math notes.
``mermin_parity``/``mermin_threshold`` expect a C-contiguous float64 buffer
of 12 settings.
"""

from libc.math cimport cos, exp, hypot, sin

BACKEND = "compiled"

MINUS_ALPHA_CUTOFF = 1e-8

cdef double _CUTOFF = 1e-8


cdef inline double complex _cexp(double re, double im) noexcept nogil:
    cdef double m = exp(re)
    return m * cos(im) + 1j * (m * sin(im))


cdef double _parity_corr(double complex alpha, bint minus,
                         double complex b1, double complex b2,
                         double complex b3) noexcept nogil:
    cdef double ar = alpha.real
    cdef double ai = alpha.imag
    cdef double dm = 0.0, dp = 0.0, s = 0.0, v = 0.0
    cdef double br, bi, six, sgn, body
    cdef double complex b
    cdef int i
    cdef double complex bs[3]
    if minus and hypot(ar, ai) < _CUTOFF:
        return _fock_corr(b1, b2, b3)
    sgn = -1.0 if minus else 1.0
    bs[0] = b1
    bs[1] = b2
    bs[2] = b3
    for i in range(3):
        b = bs[i]
        br = b.real
        bi = b.imag
        dm += (br - ar) ** 2 + (bi - ai) ** 2
        dp += (br + ar) ** 2 + (bi + ai) ** 2
        s += br * br + bi * bi
        v += bi * ar - br * ai
    six = 6.0 * (ar * ar + ai * ai)
    body = (exp(-2.0 * dm) + exp(-2.0 * dp)
            + sgn * 2.0 * exp(-2.0 * s) * cos(4.0 * v))
    return body / (2.0 + sgn * 2.0 * exp(-six))


cdef double _fock_corr(double complex b1, double complex b2,
                       double complex b3) noexcept nogil:
    cdef double s = 0.0, tr = 0.0, ti = 0.0
    cdef double br, bi
    cdef double complex b
    cdef int i
    cdef double complex bs[3]
    bs[0] = b1
    bs[1] = b2
    bs[2] = b3
    for i in range(3):
        b = bs[i]
        br = b.real
        bi = b.imag
        s += br * br + bi * bi
        tr += br
        ti += bi
    return exp(-2.0 * s) * (4.0 * (tr * tr + ti * ti) - 3.0) / 3.0


cdef int _weights(double complex alpha, double complex c1, double complex c2,
                  double *w1, double *w2, double complex *wx) except -1:
    cdef double aa = alpha.real * alpha.real + alpha.imag * alpha.imag
    cdef double complex cross = c1.conjugate() * c2
    cdef double m1 = c1.real * c1.real + c1.imag * c1.imag
    cdef double m2 = c2.real * c2.real + c2.imag * c2.imag
    cdef double n2 = m1 + m2 + 2.0 * cross.real * exp(-6.0 * aa)
    if not n2 > 1e-28:
        raise ValueError("coefficient pair gives a (near-)zero-norm state")
    w1[0] = m1 / n2
    w2[0] = m2 / n2
    wx[0] = cross / n2
    return 0


cdef void _jkl(double complex alpha, double complex b,
               double *j, double *k, double complex *l) noexcept nogil:
    cdef double ar = alpha.real
    cdef double ai = alpha.imag
    cdef double br = b.real
    cdef double bi = b.imag
    cdef double aa = ar * ar + ai * ai
    cdef double bb = br * br + bi * bi
    cdef double pr = (ar + br) ** 2 + (ai + bi) ** 2
    cdef double mr = (ar - br) ** 2 + (ai - bi) ** 2
    cdef double complex pre, inner, w
    j[0] = 2.0 * exp(-pr) - 1.0
    k[0] = 2.0 * exp(-mr) - 1.0
    pre = _cexp(-aa - bb, -2.0 * (ar * bi - ai * br))
    w = -(alpha + b).conjugate() * (alpha - b)
    inner = _cexp(w.real, w.imag)
    l[0] = pre * (2.0 - inner.real - 1j * inner.imag)


def ghz_parity_correlator(double complex alpha, bint minus,
                          double complex b1, double complex b2,
                          double complex b3):
    """Three-mode displaced-parity correlator of the GHZ-type state."""
    return _parity_corr(alpha, minus, b1, b2, b3)


def fock_parity_correlator(double complex b1, double complex b2,
                           double complex b3):
    """Displaced-parity correlator of (|100> + |010> + |001>)/sqrt(3)."""
    return _fock_corr(b1, b2, b3)


def ghz_threshold_correlator(double complex alpha, double complex c1,
                             double complex c2, double complex b1,
                             double complex b2, double complex b3):
    """Three-mode displaced-threshold correlator of c1|a,a,a> + c2|-a,-a,-a>."""
    cdef double w1, w2
    cdef double complex wx
    cdef double j1, j2, j3, k1, k2, k3
    cdef double complex l1, l2, l3, prod
    _weights(alpha, c1, c2, &w1, &w2, &wx)
    _jkl(alpha, b1, &j1, &k1, &l1)
    _jkl(alpha, b2, &j2, &k2, &l2)
    _jkl(alpha, b3, &j3, &k3, &l3)
    prod = wx * l1 * l2 * l3
    return w1 * j1 * j2 * j3 + w2 * k1 * k2 * k3 + 2.0 * prod.real


def mermin_parity(double complex alpha, bint minus, double[::1] x):
    """|E(b1 b2 b3) - E(b1 b2' b3') - E(b1' b2 b3') - E(b1' b2' b3)|."""
    cdef double complex b[6]
    cdef double e0, e1, e2, e3
    cdef int i
    for i in range(6):
        b[i] = x[2 * i] + 1j * x[2 * i + 1]
    e0 = _parity_corr(alpha, minus, b[0], b[1], b[2])
    e1 = _parity_corr(alpha, minus, b[0], b[4], b[5])
    e2 = _parity_corr(alpha, minus, b[3], b[1], b[5])
    e3 = _parity_corr(alpha, minus, b[3], b[4], b[2])
    return abs(e0 - e1 - e2 - e3)


def mermin_threshold(double complex alpha, double complex c1,
                     double complex c2, double[::1] x):
    """Same Mermin combination built on the threshold correlator."""
    cdef double complex b[6]
    cdef double j[6]
    cdef double k[6]
    cdef double complex l[6]
    cdef double w1, w2
    cdef double complex wx, prod
    cdef double e[4]
    cdef int i
    cdef int p0, p1, p2
    cdef int patterns[4][3]
    patterns[0][0], patterns[0][1], patterns[0][2] = 0, 1, 2
    patterns[1][0], patterns[1][1], patterns[1][2] = 0, 4, 5
    patterns[2][0], patterns[2][1], patterns[2][2] = 3, 1, 5
    patterns[3][0], patterns[3][1], patterns[3][2] = 3, 4, 2
    _weights(alpha, c1, c2, &w1, &w2, &wx)
    for i in range(6):
        b[i] = x[2 * i] + 1j * x[2 * i + 1]
        _jkl(alpha, b[i], &j[i], &k[i], &l[i])
    for i in range(4):
        p0 = patterns[i][0]
        p1 = patterns[i][1]
        p2 = patterns[i][2]
        prod = wx * l[p0] * l[p1] * l[p2]
        e[i] = (w1 * j[p0] * j[p1] * j[p2]
                + w2 * k[p0] * k[p1] * k[p2]
                + 2.0 * prod.real)
    return abs(e[0] - e[1] - e[2] - e[3])
