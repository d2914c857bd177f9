"""Schwarz integral formula on the upper half-plane.

For ``f`` holomorphic in the upper half-plane, continuous up to the boundary
and vanishing at infinity,

    f(z) = (1/pi) * integral  Im f(xi) / (xi - z)  d xi .

Boundary data here always has compact support ``[alpha, beta]``.  Integrals
are taken in the angle variable ``xi = m - r cos(theta)``, which absorbs the
square-root vanishing of ``Im f`` at both ends of the support.  The
trapezoid rule in ``theta`` is spectrally accurate for smooth data and
accepts non-uniform nodes, so samples can be placed adaptively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import EmptySupport


class QuadResult(NamedTuple):
    value: complex
    error: float


@dataclass(frozen=True, eq=False)
class BoundaryImTrace:
    """Samples of ``Im f`` on the real axis; zero outside ``[alpha, beta]``."""

    alpha: float
    beta: float
    xi: np.ndarray
    im_val: np.ndarray

    def __post_init__(self):
        xi = np.array(self.xi, dtype=float).ravel()
        im_val = np.array(self.im_val, dtype=float).ravel()
        if xi.shape != im_val.shape:
            raise ValueError("xi and im_val must have the same length")
        if xi.size > 1 and np.any(np.diff(xi) <= 0):
            raise ValueError("xi must be strictly increasing")
        if np.any(im_val < 0):
            raise ValueError("boundary imaginary parts must be nonnegative")
        inside = (xi >= self.alpha) & (xi <= self.beta)
        xi, im_val = xi[inside], im_val[inside]
        xi.setflags(write=False)
        im_val.setflags(write=False)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "im_val", im_val)

    def __add__(self, other: "BoundaryImTrace") -> "BoundaryImTrace":
        if not (np.array_equal(self.xi, other.xi) and self.alpha == other.alpha and self.beta == other.beta):
            raise ValueError("traces must share the same sample grid")
        return BoundaryImTrace(self.alpha, self.beta, self.xi, self.im_val + other.im_val)

    def scaled(self, k: float) -> "BoundaryImTrace":
        return BoundaryImTrace(self.alpha, self.beta, self.xi, k * self.im_val)


def chebyshev_grid(alpha: float, beta: float, n: int) -> np.ndarray:
    """Points ``m - r cos(k pi / n)``, k = 0..n, clustered at both ends."""
    m, r = 0.5 * (alpha + beta), 0.5 * (beta - alpha)
    return m - r * np.cos(np.pi * np.arange(n + 1) / n)


def sample_trace(fn: Callable, alpha: float, beta: float, n: int, adaptive: bool = True) -> BoundaryImTrace:
    """Sample ``Im fn`` at ``n + 1`` points of ``[alpha, beta]``.

    Half the budget goes on a Chebyshev grid.  With ``adaptive`` the rest is
    spent bisecting (in the angle variable) the intervals where the weighted
    integrand changes most, which catches cliffs that a uniform angle grid
    steps over, e.g. preimages of deep fjords of a hull.  Without it, all
    ``n + 1`` points form a Chebyshev grid.

    Rounding can leave ``Im fn`` a hair below zero next to the support ends;
    those values are clipped.
    """
    if not beta > alpha:
        raise EmptySupport(f"empty support [{alpha}, {beta}]")
    m, r = 0.5 * (alpha + beta), 0.5 * (beta - alpha)

    def im_at(theta):
        vals = np.imag(np.asarray(fn((m - r * np.cos(theta)).astype(np.complex128))))
        return np.clip(vals, 0.0, None)

    base = max(2, n // 2) if adaptive else n
    theta = np.pi * np.arange(base + 1) / base
    vals = im_at(theta)
    while theta.size < n + 1:
        indicator = np.abs(np.diff(vals * np.sin(theta))) * np.diff(theta)
        k = min(n + 1 - theta.size, max(1, theta.size // 8))
        pick = np.sort(np.argpartition(indicator, -k)[-k:])
        new = 0.5 * (theta[pick] + theta[pick + 1])
        theta = np.concatenate([theta, new])
        vals = np.concatenate([vals, im_at(new)])
        order = np.argsort(theta, kind="stable")
        theta, vals = theta[order], vals[order]
    return BoundaryImTrace(alpha, beta, m - r * np.cos(theta), vals)


def _angle_rule(trace: BoundaryImTrace):
    """Nodes in theta (with zero end values appended) and per-node d xi / d theta."""
    a, b = trace.alpha, trace.beta
    if not b > a:
        raise EmptySupport(f"empty support [{a}, {b}]")
    m, r = 0.5 * (a + b), 0.5 * (b - a)
    xi, vals = trace.xi, trace.im_val
    if xi.size == 0 or xi[0] > a:
        xi, vals = np.concatenate([[a], xi]), np.concatenate([[0.0], vals])
    if xi[-1] < b:
        xi, vals = np.concatenate([xi, [b]]), np.concatenate([vals, [0.0]])
    theta = np.arccos(np.clip((m - xi) / r, -1.0, 1.0))
    jac = r * np.sin(theta)
    return theta, xi, vals * jac


def _trapezoid_with_estimate(theta: np.ndarray, integrand: np.ndarray) -> QuadResult:
    fine = np.trapezoid(integrand, theta)
    if theta.size >= 5:
        idx = np.arange(0, theta.size, 2)
        if idx[-1] != theta.size - 1:
            idx = np.append(idx, theta.size - 1)
        coarse = np.trapezoid(integrand[idx], theta[idx])
        err = float(abs(fine - coarse))
    else:
        err = float("inf")
    return QuadResult(fine, err)


def schwarz_reconstruct(trace: BoundaryImTrace, z: complex) -> QuadResult:
    """Value of ``(1/pi) * int Im f(xi) / (xi - z) d xi`` at an interior ``z``.

    The error estimate compares the rule against itself on every other node.
    """
    z = complex(z)
    if not z.imag > 0:
        raise ValueError("z must lie strictly inside the upper half-plane")
    theta, xi, weighted = _angle_rule(trace)
    res = _trapezoid_with_estimate(theta, weighted / (xi - z))
    return QuadResult(complex(res.value) / np.pi, res.error / np.pi)


def capacity_from_boundary(trace: BoundaryImTrace) -> float:
    """``(1/pi) * int Im f(xi) d xi``; the Loewner-time span of the producing map."""
    theta, _, weighted = _angle_rule(trace)
    return float(_trapezoid_with_estimate(theta, weighted).value) / np.pi
