"""Forward Loewner evolution: driving function -> flow maps, hulls, trace.

Time runs as in the erasing picture: the slit is fully present at ``t = 0``
and gone at ``t = T``, so ``g_t = phi_{t,T}`` and ``g_T`` is the identity.
Two independent routes evaluate ``phi_{s,t}``: adaptive RK4 on

    dw/dt = speed / (lambda(t) - w),   w(s) = z,

and an exact composition of vertical-slit maps with frozen driving values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal, Optional

import numpy as np

from . import _kernels
from .errors import InvalidDrive, NumericalHealthError, StepUnderflow
from .halfplane import FlowMap, SlitPolyline, _check_speed
from .schwarz import BoundaryImTrace, sample_trace

Interp = Literal["linear", "constant"]

DEFAULT_ODE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DrivingFunction:
    """Sampled real driving function on ``[0, T]``.

    ``interp="linear"`` joins the samples by straight lines; ``"constant"``
    holds each sample until the next time (the zipper's native output).
    """

    t: np.ndarray
    lam: np.ndarray
    interp: Interp = "linear"
    speed: float = 1.0

    def __post_init__(self):
        t = np.array(self.t, dtype=float).ravel()
        lam = np.array(self.lam, dtype=float).ravel()
        if t.shape != lam.shape:
            raise InvalidDrive("t and lambda must have the same length")
        if t.size < 2:
            raise InvalidDrive("need at least two samples (T > 0)")
        if t[0] != 0.0:
            raise InvalidDrive(f"first sample must be at t = 0, got {t[0]}")
        if np.any(np.diff(t) <= 0):
            raise InvalidDrive("sample times must be strictly increasing")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(lam))):
            raise InvalidDrive("non-finite samples")
        if self.interp not in ("linear", "constant"):
            raise InvalidDrive(f"unknown interpolation {self.interp!r}")
        t.setflags(write=False)
        lam.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "speed", _check_speed(self.speed))

    @classmethod
    def constant(cls, value: float, T: float, speed: float = 1.0) -> "DrivingFunction":
        return cls([0.0, T], [value, value], "linear", speed)

    @classmethod
    def from_function(cls, fn: Callable, T: float, n: int = 1024, speed: float = 1.0) -> "DrivingFunction":
        t = np.linspace(0.0, T, n + 1)
        return cls(t, fn(t), "linear", speed)

    @property
    def T(self) -> float:
        return float(self.t[-1])

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.interp == "linear":
            out = np.interp(t, self.t, self.lam)
        else:
            idx = np.clip(np.searchsorted(self.t, t, side="right") - 1, 0, self.t.size - 1)
            out = self.lam[idx]
        return float(out) if out.ndim == 0 else out

    def shifted(self, x0: float) -> "DrivingFunction":
        return DrivingFunction(self.t, self.lam + x0, self.interp, self.speed)

    def _pieces(self, s: float, t: float):
        """Yield (t0, t1, lam0, slope) for the smooth pieces covering [s, t]."""
        knots = self.t[(self.t > s) & (self.t < t)]
        edges = np.concatenate([[s], knots, [t]])
        for t0, t1 in zip(edges[:-1], edges[1:]):
            t0, t1 = float(t0), float(t1)
            i = int(np.clip(np.searchsorted(self.t, t0, side="right") - 1, 0, self.t.size - 2))
            if self.interp == "linear":
                slope = (self.lam[i + 1] - self.lam[i]) / (self.t[i + 1] - self.t[i])
                lam0 = self.lam[i] + slope * (t0 - self.t[i])
            else:
                slope, lam0 = 0.0, self.lam[i]
            yield t0, t1, float(lam0), float(slope)


@dataclass(frozen=True, eq=False)
class Trace:
    """Time-stamped points of the slit; the tip is at ``t = 0``, the root at ``T``."""

    t: np.ndarray
    points: np.ndarray
    speed: float = 1.0

    def __post_init__(self):
        t = np.array(self.t, dtype=float).ravel()
        pts = np.array(self.points, dtype=np.complex128).ravel()
        if t.shape != pts.shape:
            raise ValueError("t and points must have the same length")
        t.setflags(write=False)
        pts.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "points", pts)

    @property
    def T(self) -> float:
        return float(self.t[-1])

    def to_polyline(self) -> SlitPolyline:
        return SlitPolyline(self.points)

    def max_gap(self) -> float:
        return float(np.max(np.abs(np.diff(self.points))))


def _maxabs(x) -> float:
    if isinstance(x, np.ndarray):
        return float(np.max(np.abs(x))) if x.size else 0.0
    return abs(x)


def _integrate_piece(w, t0, t1, lam0, slope, a, tol, h, hmin):
    """Adaptive RK4 with step doubling over one smooth piece of the drive."""

    def f(tau, ww):
        return a / (lam0 + slope * (tau - t0) - ww)

    def rk4(ww, tau, dt):
        k1 = f(tau, ww)
        k2 = f(tau + 0.5 * dt, ww + 0.5 * dt * k1)
        k3 = f(tau + 0.5 * dt, ww + 0.5 * dt * k2)
        k4 = f(tau + dt, ww + dt * k3)
        return ww + dt * (k1 + 2.0 * (k2 + k3) + k4) / 6.0

    tau = t0
    while t1 - tau > hmin:
        dt = min(h, t1 - tau)
        full = rk4(w, tau, dt)
        half = rk4(rk4(w, tau, 0.5 * dt), tau + 0.5 * dt, 0.5 * dt)
        err = _maxabs(half - full) / 15.0
        if err <= tol:
            w = half + (half - full) / 15.0
            tau += dt
        factor = 4.0 if err == 0 else min(4.0, max(0.2, 0.9 * (tol / err) ** 0.2))
        h = dt * factor
        if h < hmin and t1 - tau > hmin:
            raise StepUnderflow(f"step {h:.3e} below minimum {hmin:.3e} at t = {tau}")
    return w, h


def flow_ode(drive: DrivingFunction, s: float, t: float, z, tol: float = DEFAULT_ODE_TOL):
    """Integrate the chordal Loewner ODE from ``w(s) = z`` to time ``t``.

    ``z`` may be a scalar or an array of interior points sharing one step
    sequence.  Steps never straddle a knot of the driving function.
    """
    if not 0.0 <= s <= t <= drive.T * (1 + 1e-12):
        raise ValueError(f"need 0 <= s <= t <= T, got s={s}, t={t}")
    z0 = np.asarray(z, dtype=np.complex128)
    if np.any(z0.imag <= 0):
        raise ValueError("initial points must be interior")
    if t == s:
        return complex(z0) if z0.ndim == 0 else z0.copy()
    w = complex(z0) if z0.ndim == 0 else z0.copy()
    hmin = 1e-14 * (t - s)
    h = min(0.01, t - s)
    for t0, t1, lam0, slope in drive._pieces(s, t):
        w, h = _integrate_piece(w, t0, t1, lam0, slope, drive.speed, tol, h, hmin)
    if np.any(np.imag(w) < z0.imag):
        raise NumericalHealthError("imaginary part decreased along the flow")
    return w


def flow_composed(drive: DrivingFunction, s: float, t: float, n_steps: int) -> FlowMap:
    """Exact vertical-slit composition with the drive frozen at subinterval midpoints."""
    if t < s:
        raise ValueError("need s <= t")
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    if t == s:
        return FlowMap.identity(s, drive.speed)
    grid = np.linspace(s, t, n_steps + 1)
    mids = 0.5 * (grid[:-1] + grid[1:])
    return FlowMap(drive(mids), np.diff(grid), drive.speed, s, t)


def compute_trace(drive: DrivingFunction, n_steps: int) -> Trace:
    """Slit points ``Gamma(t_k) = g_{t_k}(lambda)`` on a uniform grid of ``[0, T]``.

    Each point is the exact tip of the discrete hull generated after ``t_k``:
    the boundary value at the first step's center, pushed through all later
    steps.  The last sample is the root ``(T, lambda(T))``.
    """
    flow = flow_composed(drive, 0.0, drive.T, n_steps)
    grid = np.linspace(0.0, drive.T, n_steps + 1)
    pts = np.concatenate([flow.tips(), [complex(drive(drive.T), 0.0)]])
    return Trace(grid, pts, drive.speed)


def hull_points(flow: FlowMap) -> np.ndarray:
    """Tips of the discrete hull of ``flow`` plus its root on the real axis."""
    if len(flow) == 0:
        return np.empty(0, np.complex128)
    return np.concatenate([flow.tips(), [complex(flow.centers[-1], 0.0)]])


def flow_support(flow: FlowMap) -> tuple[float, float]:
    """Interval ``[alpha, beta]`` spanned by the real points the flow lifts off the axis.

    Computed exactly (up to rounding) by pulling each step's cut back through
    the earlier steps.  For coarse flows of fast drives the lifted set can have
    gaps; the interval is its convex hull, and ``Im flow`` vanishes outside it.
    """
    if len(flow) == 0:
        raise ValueError("identity flow has empty support")
    alpha, beta = _kernels.support_hull(flow.centers, flow.radii)
    return float(alpha), float(beta)


def hull_support(
    drive: DrivingFunction, s: float, n_steps: int, t: Optional[float] = None
) -> tuple[float, float]:
    """Preimage interval on the real axis of the hull erased over ``[s, t]`` (default ``t = T``)."""
    t = drive.T if t is None else t
    if not s < t:
        raise ValueError("need s < t")
    return flow_support(flow_composed(drive, s, t, n_steps))


def flow_boundary_trace(
    flow: FlowMap, n_samples: int = 10_000, support: Optional[tuple[float, float]] = None
) -> BoundaryImTrace:
    """``Im flow(xi)`` sampled directly on the real axis over the support."""
    alpha, beta = flow_support(flow) if support is None else support
    return sample_trace(flow, alpha, beta, n_samples)

