"""Extended-precision reduction of large trigonometric phases modulo 2*pi.

The explicit-formula zero sums need sin/cos of gamma*log(x) where gamma can
reach ~1e4 and the raw product ~1e5.  A naive fmod against double-precision
2*pi loses ~5 digits there; this module keeps the reduced phase accurate to
a few ulps by carrying the product and the constant 2*pi in double-double
(hi + lo) form.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np

TWO_PI_HI = 6.283185307179586
TWO_PI_LO = 2.4492935982947064e-16

_SPLIT = 134217729.0  # 2**27 + 1, Dekker/Veltkamp splitting constant


def _two_prod(a, b):
    """Exact product a*b = hi + lo without fma (Dekker)."""
    p = a * b
    a_big = a * _SPLIT
    a_hi = a_big - (a_big - a)
    a_lo = a - a_hi
    b_big = b * _SPLIT
    b_hi = b_big - (b_big - b)
    b_lo = b - b_hi
    err = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, err


def split_log(x: float) -> tuple[float, float]:
    """log(x) as a double-double pair, computed once at high precision."""
    with mpmath.workdps(40):
        lx = mpmath.log(x)
        hi = float(lx)
        lo = float(lx - mpmath.mpf(hi))
    return hi, lo


def reduce_mod_2pi(mult, scale_hi: float, scale_lo: float = 0.0):
    """Phase of mult*(scale_hi+scale_lo) reduced into [-pi, pi].

    ``mult`` may be a float or a numpy array.  The product is formed in
    double-double arithmetic and the integer multiple of 2*pi is removed
    against the double-double constant, so the reduced phase carries no
    cancellation loss from the (possibly ~1e5) raw magnitude.
    """
    mult = np.asarray(mult, dtype=np.float64)
    hi, lo = _two_prod(mult, scale_hi)
    lo = lo + mult * scale_lo
    n = np.round((hi + lo) / TWO_PI_HI)
    p_hi, p_lo = _two_prod(n, TWO_PI_HI)
    r = ((hi - p_hi) - p_lo) + (lo - n * TWO_PI_LO)
    # one correction pass in case rounding put us just outside [-pi, pi]
    over = r > math.pi
    under = r < -math.pi
    if np.any(over) or np.any(under):
        r = r - over * TWO_PI_HI + under * TWO_PI_HI
    return r if r.ndim else float(r)
