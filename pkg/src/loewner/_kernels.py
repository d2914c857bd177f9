"""Compiled inner loops for composing many vertical-slit maps.

All kernels take the slit *radii* ``c_k = sqrt(2 a delta_k)`` rather than
capacities, so the speed constant never enters here.
"""

import cmath

import numba
import numpy as np

# status codes returned by kernels that can fail
OK = 0
ON_SLIT = 1
DEGENERATE = 2


@numba.njit(cache=True, inline="always")
def slit_forward(u, c):
    # sqrt(u - c) * sqrt(u + c) is analytic off [-c, c] and behaves like u at
    # infinity; a -0.0 imaginary part would select the lower side of the cut
    u = complex(u.real, u.imag + 0.0)
    return cmath.sqrt(u - c) * cmath.sqrt(u + c)


@numba.njit(cache=True, inline="always")
def slit_inverse(v, c, side):
    """Inverse of ``slit_forward``; returns (value, status).

    ``side`` is -1, +1 or 0 (no hint).  Points on the open slit
    {iy : 0 < y < c} need a nonzero side.
    """
    r = cmath.sqrt((v - 1j * c) * (v + 1j * c))
    x = v.real
    if x > 0.0:
        return r, OK
    if x < 0.0:
        return -r, OK
    if v.imag > 0.0 and v.imag < c:
        if side == 0:
            return r, ON_SLIT
        return complex(side * abs(r.real), 0.0), OK
    if v.imag >= c:
        return r, OK
    # base point of the slit (v == 0): default to the right-hand preimage
    if side < 0:
        return -r, OK
    return r, OK


@numba.njit(cache=True)
def apply_steps(centers, radii, z):
    out = np.empty_like(z)
    n = centers.shape[0]
    for i in range(z.shape[0]):
        w = z[i]
        for k in range(n):
            w = centers[k] + slit_forward(w - centers[k], radii[k])
        out[i] = w
    return out


@numba.njit(cache=True)
def invert_steps(centers, radii, w, side):
    out = np.empty_like(w)
    n = centers.shape[0]
    for i in range(w.shape[0]):
        z = w[i]
        for k in range(n - 1, -1, -1):
            v, status = slit_inverse(z - centers[k], radii[k], side)
            if status != OK:
                return out, i, status
            z = centers[k] + v
        out[i] = z
    return out, -1, OK


@numba.njit(cache=True)
def trace_tips(centers, radii):
    """Tip of the hull generated by steps k..N-1, for every k."""
    n = centers.shape[0]
    tips = np.empty(n, np.complex128)
    for j in range(n):
        ell = centers[j]
        c = radii[j]
        tips[j] = complex(ell, 0.0)
        for k in range(j + 1):
            tips[k] = ell + slit_forward(tips[k] - ell, c)
    return tips


@numba.njit(cache=True)
def support_hull(centers, radii):
    """Smallest interval of the real axis containing every point the steps lift.

    Backward recurrence: with [a, b] the hull for steps k+1..N-1 (in the
    coordinates after step k), pull both ends back through step k, which is
    increasing on the real axis, and widen by step k's own cut.
    """
    n = centers.shape[0]
    a = centers[n - 1] - radii[n - 1]
    b = centers[n - 1] + radii[n - 1]
    for k in range(n - 2, -1, -1):
        ell = centers[k]
        c = radii[k]
        va = a - ell
        vb = b - ell
        # an end sitting exactly on the base pulls back into the cut itself
        pa = ell + (1.0 if va > 0.0 else -1.0) * np.sqrt(va * va + c * c)
        pb = ell + (1.0 if vb >= 0.0 else -1.0) * np.sqrt(vb * vb + c * c)
        a = min(ell - c, pa)
        b = max(ell + c, pb)
    return a, b


@numba.njit(cache=True)
def unzip_points(q):
    """Flatten a root-first polyline with vertical-slit inverse maps.

    Returns (centers, heights, failing_index, status).  ``q`` is modified in
    place: after step j every point up to j lies on the real axis.
    """
    m = q.shape[0]
    centers = np.empty(m - 1)
    heights = np.empty(m - 1)
    base = q[0].real
    for j in range(1, m):
        w = q[j]
        ell = w.real
        h = w.imag
        if not h > 0.0:
            return centers, heights, j, DEGENERATE
        centers[j - 1] = ell
        heights[j - 1] = h
        q[j] = complex(ell, 0.0)
        dx = ell - base
        for k in range(j + 1, m):
            p = q[k]
            side = 0
            if p.real == ell and p.imag > 0.0 and p.imag < h:
                # orientation of p relative to the segment base -> w
                cross = dx * p.imag - h * (p.real - base)
                side = -1 if cross > 0.0 else 1
            v, status = slit_inverse(p - ell, h, side)
            q[k] = ell + v
        base = ell
    return centers, heights, -1, OK
