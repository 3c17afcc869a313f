"""Pure-Python backend for the hot Bell-Mermin kernels.

These functions sit in the innermost loop of every settings optimization and
figure sweep, so they avoid all state machinery and work on plain scalars.
The compiled twin in ``_kernels.pyx`` implements the same arithmetic
operation for operation; ``ecsim.kernels`` picks whichever is importable.

Math notes
----------
Displaced-parity correlator of N(|a,a,a> + sgn |-a,-a,-a>):

    E(b1,b2,b3) = [T- + T+ + sgn * 2 exp(-2 S) cos(4 V)] / (2 + sgn 2 e^{-6|a|^2})

with  T-+ = exp(-2 sum |b_m -+ a|^2),  S = sum |b_m|^2,
      V = Im((b1+b2+b3) conj(a)).

The cross term's two conjugate exponentials are merged analytically: their
real exponent is -6|a|^2 - 2 sum Re[(b-a)(b+a)*] = -2 S (the 6|a|^2 cancels),
so nothing under/overflows no matter how large |a| gets.  For the odd sign
below |a| = 1e-8 the state is replaced by its exact limit, the single-photon
triple, whose correlator is exp(-2 S) (4 |b1+b2+b3|^2 - 3) / 3.

Displaced-threshold correlator of c1 |a,a,a> + c2 |-a,-a,-a> (unnormalized
coefficients; normalization is folded into the weights):

    E = w1 J1 J2 J3 + w2 K1 K2 K3 + 2 Re(wx L1 L2 L3)

    J(b) = 2 exp(-|a+b|^2) - 1
    K(b) = 2 exp(-|a-b|^2) - 1
    L(b) = exp(-|a|^2 - |b|^2 - 2i Im(conj(a) b)) (2 - exp(-conj(a+b)(a-b)))

    w1 = |c1|^2 / n2,  w2 = |c2|^2 / n2,  wx = conj(c1) c2 / n2,
    n2 = |c1|^2 + |c2|^2 + 2 Re(conj(c1) c2) e^{-6|a|^2}.

Both Mermin objectives combine four correlators over the six settings
(b1,b2,b3,b1',b2',b3') packed as 12 reals (re, im interleaved, unprimed
first):  |E(111) - E(12'3') - E(1'23') - E(1'2'3)|.
"""

import math

BACKEND = "python"

MINUS_ALPHA_CUTOFF = 1e-8

# correlator index triples into the 6 settings: unprimed 0..2, primed 3..5
_PATTERNS = ((0, 1, 2), (0, 4, 5), (3, 1, 5), (3, 4, 2))


def _cexp(re, im):
    """exp(re + i im) as (real, imag); written out so both backends agree."""
    m = math.exp(re)
    return m * math.cos(im), m * math.sin(im)


def ghz_parity_correlator(alpha, minus, b1, b2, b3):
    """Three-mode displaced-parity correlator of the GHZ-type state."""
    ar, ai = alpha.real, alpha.imag
    if minus and math.hypot(ar, ai) < MINUS_ALPHA_CUTOFF:
        return fock_parity_correlator(b1, b2, b3)
    sgn = -1.0 if minus else 1.0
    dm = 0.0
    dp = 0.0
    s = 0.0
    v = 0.0
    for b in (b1, b2, b3):
        br, bi = b.real, b.imag
        dm += (br - ar) ** 2 + (bi - ai) ** 2
        dp += (br + ar) ** 2 + (bi + ai) ** 2
        s += br * br + bi * bi
        v += bi * ar - br * ai  # Im(b conj(a))
    six = 6.0 * (ar * ar + ai * ai)
    body = (
        math.exp(-2.0 * dm)
        + math.exp(-2.0 * dp)
        + sgn * 2.0 * math.exp(-2.0 * s) * math.cos(4.0 * v)
    )
    return body / (2.0 + sgn * 2.0 * math.exp(-six))


def fock_parity_correlator(b1, b2, b3):
    """Displaced-parity correlator of (|100> + |010> + |001>)/sqrt(3)."""
    s = 0.0
    tr = 0.0
    ti = 0.0
    for b in (b1, b2, b3):
        br, bi = b.real, b.imag
        s += br * br + bi * bi
        tr += br
        ti += bi
    return math.exp(-2.0 * s) * (4.0 * (tr * tr + ti * ti) - 3.0) / 3.0


def _threshold_weights(alpha, c1, c2):
    aa = alpha.real * alpha.real + alpha.imag * alpha.imag
    cross = c1.conjugate() * c2
    n2 = abs(c1) ** 2 + abs(c2) ** 2 + 2.0 * cross.real * math.exp(-6.0 * aa)
    if not n2 > 1e-28:
        raise ValueError("coefficient pair gives a (near-)zero-norm state")
    return abs(c1) ** 2 / n2, abs(c2) ** 2 / n2, cross / n2


def _threshold_jkl(alpha, b):
    """(J, K, L) at one setting; L in the merged-exponent form."""
    ar, ai = alpha.real, alpha.imag
    br, bi = b.real, b.imag
    aa = ar * ar + ai * ai
    bb = br * br + bi * bi
    pr = (ar + br) ** 2 + (ai + bi) ** 2  # |a+b|^2
    mr = (ar - br) ** 2 + (ai - bi) ** 2  # |a-b|^2
    j = 2.0 * math.exp(-pr) - 1.0
    k = 2.0 * math.exp(-mr) - 1.0
    # prefactor exp(-aa - bb - 2i Im(conj(a) b))
    pre_re, pre_im = _cexp(-aa - bb, -2.0 * (ar * bi - ai * br))
    # inner: 2 - exp(-conj(a+b)(a-b))
    w = -(alpha + b).conjugate() * (alpha - b)
    in_re, in_im = _cexp(w.real, w.imag)
    l = complex(pre_re, pre_im) * complex(2.0 - in_re, -in_im)
    return j, k, l


def ghz_threshold_correlator(alpha, c1, c2, b1, b2, b3):
    """Three-mode displaced-threshold correlator of c1|a,a,a> + c2|-a,-a,-a>."""
    w1, w2, wx = _threshold_weights(alpha, c1, c2)
    j1, k1, l1 = _threshold_jkl(alpha, b1)
    j2, k2, l2 = _threshold_jkl(alpha, b2)
    j3, k3, l3 = _threshold_jkl(alpha, b3)
    return w1 * j1 * j2 * j3 + w2 * k1 * k2 * k3 + 2.0 * (wx * l1 * l2 * l3).real


def _unpack(x):
    return [complex(x[2 * i], x[2 * i + 1]) for i in range(6)]


def mermin_parity(alpha, minus, x):
    """|E(b1 b2 b3) - E(b1 b2' b3') - E(b1' b2 b3') - E(b1' b2' b3)|."""
    b = _unpack(x)
    e = [
        ghz_parity_correlator(alpha, minus, b[i], b[j], b[k])
        for (i, j, k) in _PATTERNS
    ]
    return abs(e[0] - e[1] - e[2] - e[3])


def mermin_threshold(alpha, c1, c2, x):
    """Same Mermin combination built on the threshold correlator."""
    w1, w2, wx = _threshold_weights(alpha, c1, c2)
    jkls = [_threshold_jkl(alpha, b) for b in _unpack(x)]
    e = []
    for (i, j, k) in _PATTERNS:
        j1, k1, l1 = jkls[i]
        j2, k2, l2 = jkls[j]
        j3, k3, l3 = jkls[k]
        e.append(
            w1 * j1 * j2 * j3 + w2 * k1 * k2 * k3 + 2.0 * (wx * l1 * l2 * l3).real
        )
    return abs(e[0] - e[1] - e[2] - e[3])
