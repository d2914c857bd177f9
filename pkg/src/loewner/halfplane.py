"""Half-plane primitives: vertical-slit maps, their compositions, Laurent tails.

Points of the closed upper half-plane are plain Python ``complex`` values or
``numpy`` complex arrays; boundary points simply have a zero imaginary part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

import numpy as np
import shapely

from . import _kernels
from .errors import AmbiguousSide, InvalidSlit, RadiusTooSmall

ALLOWED_SPEEDS = (1.0, 2.0)


def _check_speed(speed: float) -> float:
    speed = float(speed)
    if speed not in ALLOWED_SPEEDS:
        raise ValueError(f"speed must be 1 or 2, got {speed}")
    return speed


def is_interior(z) -> np.ndarray | bool:
    """True where ``z`` lies strictly inside the upper half-plane."""
    return np.imag(z) > 0


def _as_points(z):
    arr = np.asarray(z, dtype=np.complex128)
    return arr, arr.ndim == 0


def _upper_zero(u: np.ndarray) -> np.ndarray:
    # normalise a signed-zero imaginary part so sqrt picks the upper side
    out = np.empty_like(u)
    out.real = u.real
    out.imag = u.imag + 0.0
    return out


@dataclass(frozen=True)
class SlitStep:
    """One constant-driving elementary map.

    Represents ``z -> center + sqrt((z - center)**2 - 2*speed*cap)``, which
    removes the vertical slit of height ``sqrt(2*speed*cap)`` at ``center``.
    """

    center: float
    cap: float
    speed: float = 1.0

    def __post_init__(self):
        if not (self.cap > 0 and math.isfinite(self.cap)):
            raise ValueError(f"cap must be positive and finite, got {self.cap}")
        if not math.isfinite(self.center):
            raise ValueError("center must be finite")
        object.__setattr__(self, "speed", _check_speed(self.speed))

    @property
    def height(self) -> float:
        return math.sqrt(2.0 * self.speed * self.cap)

    @property
    def c1(self) -> float:
        return -self.speed * self.cap


def slit_step_apply(step: SlitStep, z):
    """Evaluate the elementary map on the closed upper half-plane.

    Real inputs with ``|z - center| >= height`` stay real and keep their side;
    the rest of the boundary segment is folded onto the two sides of the slit.
    """
    arr, scalar = _as_points(z)
    u = _upper_zero(arr - step.center)
    c = step.height
    out = step.center + np.sqrt(u - c) * np.sqrt(u + c)
    return complex(out) if scalar else out


def slit_step_invert(step: SlitStep, w, side_hint: Optional[int] = None):
    """Inverse of :func:`slit_step_apply`.

    ``side_hint`` (``-1`` or ``+1``) selects the preimage for points on the
    open slit, where the inverse is two-valued.  Without it such points raise
    :class:`AmbiguousSide`.
    """
    arr, scalar = _as_points(w)
    side = 0 if side_hint is None else (1 if side_hint >= 0 else -1)
    c = step.height
    v = arr - step.center
    r = np.sqrt((v - 1j * c) * (v + 1j * c))
    x = v.real
    on_slit = (x == 0) & (v.imag > 0) & (v.imag < c)
    if np.any(on_slit) and side == 0:
        raise AmbiguousSide(f"point on the open slit at {step.center} needs a side_hint")
    sign = np.where(x > 0, 1.0, np.where(x < 0, -1.0, 1.0))
    sign = np.where(on_slit, float(side), sign)
    sign = np.where((x == 0) & (v.imag == 0) & (side < 0), -1.0, sign)
    r = np.where(on_slit, np.abs(r.real) + 0j, r)
    out = step.center + sign * r
    return complex(out) if scalar else out


@dataclass(frozen=True, eq=False)
class FlowMap:
    """Ordered composition of elementary maps, earliest time first.

    Under the standard parametrization the total capacity equals the elapsed
    time, so ``sum(caps) == t_end - t_start``.
    """

    centers: np.ndarray
    caps: np.ndarray
    speed: float = 1.0
    t_start: float = 0.0
    t_end: float = 0.0
    radii: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        centers = np.array(self.centers, dtype=float).ravel()
        caps = np.array(self.caps, dtype=float).ravel()
        if centers.shape != caps.shape:
            raise ValueError("centers and caps must have the same length")
        if np.any(~(caps > 0)) or not np.all(np.isfinite(centers)):
            raise ValueError("caps must be positive and centers finite")
        speed = _check_speed(self.speed)
        span = float(self.t_end) - float(self.t_start)
        if abs(caps.sum() - span) > 1e-9 * max(1.0, abs(span)):
            raise ValueError(f"total capacity {caps.sum()} != t_end - t_start = {span}")
        radii = np.sqrt(2.0 * speed * caps)
        for arr in (centers, caps, radii):
            arr.setflags(write=False)
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "caps", caps)
        object.__setattr__(self, "speed", speed)
        object.__setattr__(self, "radii", radii)

    @classmethod
    def from_steps(cls, steps: Sequence[SlitStep], t_start: float = 0.0) -> "FlowMap":
        steps = list(steps)
        speeds = {s.speed for s in steps} or {1.0}
        if len(speeds) != 1:
            raise ValueError("all steps must share one speed")
        caps = [s.cap for s in steps]
        return cls(
            centers=[s.center for s in steps],
            caps=caps,
            speed=speeds.pop(),
            t_start=t_start,
            t_end=t_start + math.fsum(caps),
        )

    @classmethod
    def identity(cls, t: float = 0.0, speed: float = 1.0) -> "FlowMap":
        return cls(centers=[], caps=[], speed=speed, t_start=t, t_end=t)

    def __len__(self) -> int:
        return self.centers.shape[0]

    @property
    def steps(self) -> Iterator[SlitStep]:
        for ell, cap in zip(self.centers, self.caps):
            yield SlitStep(float(ell), float(cap), self.speed)

    @property
    def capacity(self) -> float:
        return self.t_end - self.t_start

    def __call__(self, z):
        arr, scalar = _as_points(z)
        flat = np.ascontiguousarray(arr.ravel())
        out = _kernels.apply_steps(self.centers, self.radii, flat).reshape(arr.shape)
        return complex(out) if scalar else out

    def inverse(self, w, side_hint: Optional[int] = None):
        """Pull points back through every step, latest first."""
        arr, scalar = _as_points(w)
        side = 0 if side_hint is None else (1 if side_hint >= 0 else -1)
        flat = np.ascontiguousarray(arr.ravel())
        out, bad, status = _kernels.invert_steps(self.centers, self.radii, flat, side)
        if status != _kernels.OK:
            raise AmbiguousSide(f"point {flat[bad]} hits a removed slit; pass side_hint")
        out = out.reshape(arr.shape)
        return complex(out) if scalar else out

    def then(self, later: "FlowMap") -> "FlowMap":
        """Composition ``later o self`` (apply ``self`` first)."""
        if later.speed != self.speed:
            raise ValueError("cannot compose flows with different speeds")
        if abs(later.t_start - self.t_end) > 1e-12 * max(1.0, abs(self.t_end)):
            raise ValueError("flows are not contiguous in time")
        return FlowMap(
            centers=np.concatenate([self.centers, later.centers]),
            caps=np.concatenate([self.caps, later.caps]),
            speed=self.speed,
            t_start=self.t_start,
            t_end=later.t_end,
        )

    def tips(self) -> np.ndarray:
        """Tip of the hull of steps k..N-1, for each k (tip of the full hull first)."""
        return _kernels.trace_tips(self.centers, self.radii)


@dataclass(frozen=True)
class LaurentEstimate:
    """Real Laurent coefficients of ``map(z) - z`` at infinity.

    ``tail[n-1]`` is the coefficient of ``z**-n``; ``c1 == tail[0]``.
    ``c0`` is the free term, zero for hydrodynamically normalized maps.
    """

    c1: float
    tail: tuple
    sample_radius: float
    est_error: float
    c0: float = 0.0


def estimate_laurent(
    fn: Callable,
    radius: float,
    n_max: int = 8,
    n_samples: Optional[int] = None,
    free_term: bool = False,
    max_error: float = 1e-3,
) -> LaurentEstimate:
    """Fit the Laurent tail of ``fn`` from samples on an upper semicircle.

    The lower half of the circle is filled in by Schwarz reflection,
    ``fn(conj(z)) = conj(fn(z))``, so ``fn`` is only ever called on the upper
    half-plane.  Coefficients of non-negative powers other than the free term
    must vanish for a map analytic outside the sampling circle; their size
    (together with a rounding floor) becomes ``est_error``.

    Only low-order coefficients are meaningful when ``radius`` is large
    compared with the singular set: the estimate of ``c_n`` carries rounding
    noise amplified by ``radius**n``.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if not radius > 0:
        raise ValueError("radius must be positive")
    if n_samples is None:
        n_samples = max(256, 1 << int(math.ceil(math.log2(8 * (n_max + 2)))))
    half = n_samples // 2
    theta = np.pi * (np.arange(half) + 0.5) / half
    z = radius * np.exp(1j * theta)
    g_upper = np.asarray(fn(z), dtype=np.complex128) - z
    g = np.concatenate([g_upper, np.conj(g_upper[::-1])])
    full_theta = np.concatenate([theta, -theta[::-1]])

    orders = np.arange(-n_max, n_max + 1)
    coef = (np.exp(1j * np.outer(orders, full_theta)) @ g) / g.size
    # coef[k] multiplies exp(-i * orders[k] * theta)
    neg = coef[n_max + 1:]  # z**-n, n = 1..n_max
    pos = coef[:n_max][::-1]  # z**n, n = 1..n_max
    free = coef[n_max]

    scale = radius ** np.arange(1, n_max + 1, dtype=float)
    tail = neg.real * scale
    floor = 64 * np.finfo(float).eps * float(np.max(np.abs(z) + np.abs(g_upper)))
    residue = max(float(np.max(np.abs(pos))), float(np.max(np.abs(neg.imag))), 0.0)
    if not free_term:
        residue = max(residue, abs(free))
    est_error = radius * (residue + floor)
    if residue > max_error:
        raise RadiusTooSmall(
            f"non-Laurent residue {residue:.3e} at radius {radius}; sample further out"
        )
    return LaurentEstimate(
        c1=float(tail[0]),
        tail=tuple(float(x) for x in tail),
        sample_radius=float(radius),
        est_error=float(est_error),
        c0=float(free.real) if free_term else 0.0,
    )


@dataclass(frozen=True, eq=False)
class SlitPolyline:
    """A slit as a point chain from tip (first) to root (last, on the real axis)."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.complex128).ravel()
        if pts.size < 2:
            raise InvalidSlit("a slit needs at least two points")
        if not np.all(np.isfinite(pts)):
            raise InvalidSlit("non-finite coordinates")
        if pts[-1].imag != 0:
            raise InvalidSlit(f"root {pts[-1]} is not on the real axis")
        if np.any(pts[:-1].imag <= 0):
            raise InvalidSlit("only the root may touch the real axis")
        if np.any(pts[1:] == pts[:-1]):
            raise InvalidSlit("consecutive points coincide")
        if pts.size > 2 and not shapely.LineString(np.column_stack([pts.real, pts.imag])).is_simple:
            raise InvalidSlit("polyline intersects itself")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def tip(self) -> complex:
        return complex(self.points[0])

    @property
    def root(self) -> complex:
        return complex(self.points[-1])

    def __len__(self) -> int:
        return self.points.size

    def translated(self, x0: float) -> "SlitPolyline":
        return SlitPolyline(self.points + float(x0))

    def scaled(self, r: float) -> "SlitPolyline":
        return SlitPolyline(self.points * float(r))
