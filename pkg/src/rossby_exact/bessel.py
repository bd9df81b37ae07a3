r"""Bessel functions of the first kind of integer order.

Small arguments (:math:`|x| < 1`) use the ascending series

.. math::
    J_m(x) = \sum_{j\ge 0} \frac{(-1)^j}{j!\,(j+m)!}\left(\frac{x}{2}\right)^{2j+m},

larger ones use Miller's backward recurrence
:math:`J_{k-1} = (2k/x) J_k - J_{k+1}` started well above the turning point
and normalized with :math:`1 = J_0 + 2\sum_{k\ge1} J_{2k}`.

All routines are vectorized over ``x``.
"""
from __future__ import annotations

import numpy as np

from ._numeric import real_array
from .errors import OutOfEnvelope

MAX_ORDER = 50
MAX_ARGUMENT = 1.0e4

_SERIES_CUTOFF = 1.0
_SERIES_TERMS = 20
_RESCALE_ABOVE = 1.0e250
# growth per step is below 2k/x <= 300, so 16 steps cannot overflow past 1e250
_RESCALE_EVERY = 16


def _check_envelope(mmax, x):
    if isinstance(mmax, (bool, np.bool_)) or int(mmax) != mmax:
        raise OutOfEnvelope(f"order must be an integer, got {mmax!r}")
    if not 0 <= mmax <= MAX_ORDER + 1:
        raise OutOfEnvelope(f"order {mmax} outside supported range 0..{MAX_ORDER}")
    if x.size and not np.all(np.isfinite(x)):
        raise OutOfEnvelope("argument contains non-finite values")
    if x.size and np.max(np.abs(x)) > MAX_ARGUMENT:
        raise OutOfEnvelope(f"|x| above {MAX_ARGUMENT:g} is not supported")


def _series(mmax, x):
    out = np.empty((mmax + 1,) + x.shape, dtype=x.dtype)
    half = 0.5 * x
    q = half * half
    lead = np.ones_like(x)  # (x/2)^k / k!
    for k in range(mmax + 1):
        if k:
            lead = lead * half / k
        term = lead.copy()
        total = term.copy()
        for j in range(1, _SERIES_TERMS):
            term = -term * q / (j * (j + k))
            total += term
        out[k] = total
    return out


def _start_order(mmax, xmax):
    n = int(np.ceil(max(xmax, mmax) + 16.0 * np.cbrt(xmax) + 30.0))
    return n + (n % 2)


def _miller(mmax, x):
    """Orders 0..mmax for 1-D positive ``x`` (all >= the series cutoff)."""
    out = np.zeros((mmax + 1, x.size), dtype=x.dtype)
    if x.size == 0:
        return out
    # bucket by magnitude so small arguments do not inherit a huge start order
    buckets = np.floor(np.log2(x)).astype(int)
    for b in np.unique(buckets):
        idx = np.nonzero(buckets == b)[0]
        xs = x[idx]
        n_start = _start_order(mmax, float(xs.max()))
        two_over_x = 2.0 / xs
        j_next = np.zeros_like(xs)  # J_{k+1}
        j_cur = np.ones_like(xs)  # J_k, arbitrary scale
        norm = np.zeros_like(xs)
        stored = np.zeros((mmax + 1, xs.size), dtype=xs.dtype)
        for k in range(n_start, 0, -1):
            if k <= mmax:
                stored[k] = j_cur
            if k % 2 == 0:
                norm += 2.0 * j_cur
            j_prev = k * two_over_x * j_cur - j_next
            j_next, j_cur = j_cur, j_prev
            if k % _RESCALE_EVERY:
                continue
            big = np.abs(j_cur) > _RESCALE_ABOVE
            if np.any(big):
                scale = np.where(big, 1.0 / _RESCALE_ABOVE, 1.0)
                j_cur = j_cur * scale
                j_next = j_next * scale
                norm = norm * scale
                stored *= scale
        stored[0] = j_cur
        norm += j_cur
        out[:, idx] = stored / norm
    return out


def bessel_j_table(mmax: int, x) -> np.ndarray:
    """Values ``J_0(x) .. J_mmax(x)`` stacked along a new leading axis."""
    x = real_array(x)
    _check_envelope(mmax, x)
    mmax = int(mmax)
    ax = np.abs(x)
    out = np.empty((mmax + 1,) + x.shape, dtype=x.dtype)
    small = ax < _SERIES_CUTOFF
    if np.any(small):
        out[:, small] = _series(mmax, ax[small])
    if not np.all(small):
        large = ~small
        out[:, large] = _miller(mmax, ax[large])
    neg = x < 0
    if np.any(neg):
        out[1::2] *= np.where(neg, -1.0, 1.0)
    return out


def bessel_j(m: int, x):
    """Return ``(J_m(x), J_m'(x))``.

    The derivative uses ``J_m' = (J_{m-1} - J_{m+1}) / 2`` with
    ``J_{-1} = -J_1``. Scalars in, scalars out.

    Raises
    ------
    OutOfEnvelope
        For ``m`` outside ``0..50`` or ``|x| > 1e4``.
    """
    if isinstance(m, (bool, np.bool_)) or int(m) != m or not 0 <= m <= MAX_ORDER:
        raise OutOfEnvelope(f"order must be an integer in 0..{MAX_ORDER}, got {m!r}")
    m = int(m)
    scalar = np.ndim(x) == 0
    table = bessel_j_table(m + 1, x)
    value = table[m]
    lower = table[m - 1] if m > 0 else -table[1]
    deriv = 0.5 * (lower - table[m + 1])
    if scalar:
        return float(value), float(deriv)
    return value, deriv
