"""Inverse Loewner evolution by a vertical-slit zipper.

A slit polyline is flattened from its root towards its tip.  At each step the
next (already transformed) vertex ``w = l + i h`` is treated as the tip of a
vertical slit at ``l``; the inverse elementary map of capacity ``h**2 / (2a)``
pushes it to the real axis and carries every remaining vertex along.  The
capacities add up to the total half-plane capacity, and their partial sums
give the standard parametrization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateStep, SideAmbiguity
from .forward import DrivingFunction
from .halfplane import SlitPolyline, _check_speed


@dataclass(frozen=True, eq=False)
class StandardParametrization:
    """Loewner time of every polyline vertex.

    ``index`` runs over vertex positions (tip = 0); ``time`` is 0 at the tip
    and ``total_capacity`` at the root.
    """

    index: np.ndarray
    time: np.ndarray
    total_capacity: float


def refine_polyline(slit: SlitPolyline, max_height: float) -> SlitPolyline:
    """Split every segment longer than ``max_height`` into equal pieces.

    New points lie on the original segments, so refining twice with the same
    bound changes nothing.
    """
    if not max_height > 0:
        raise ValueError("max_height must be positive")
    pts = slit.points
    seg = np.diff(pts)
    pieces = np.maximum(1, np.ceil(np.abs(seg) / max_height - 1e-9)).astype(int)
    if np.all(pieces == 1):
        return slit
    out = [pts[:1]]
    for start, d, k in zip(pts[:-1], seg, pieces):
        out.append(start + d * (np.arange(1, k + 1) / k))
    refined = np.concatenate(out)
    refined[-1] = pts[-1]
    return SlitPolyline(refined)


def unzip(slit: SlitPolyline, speed: float = 1.0) -> tuple[DrivingFunction, StandardParametrization]:
    """Recover the driving function and standard parametrization of a slit.

    The returned drive is piecewise constant: the value recorded at step ``j``
    holds on ``[t_j, t_j + delta_j)``, and the final sample is
    ``(T, root.real)``.
    """
    speed = _check_speed(speed)
    q = np.ascontiguousarray(slit.points[::-1].copy())
    centers, heights, bad, status = _kernels.unzip_points(q)
    if status == _kernels.DEGENERATE:
        raise DegenerateStep(f"vertex {slit.points.size - 1 - bad} maps onto the real axis")
    if status != _kernels.OK:
        raise SideAmbiguity("zipper could not decide the side of a vertex")
    caps = heights**2 / (2.0 * speed)
    elapsed = np.cumsum(caps)
    T = float(elapsed[-1])
    times = T - elapsed  # step j sits at t_j = T - sum_{i<=j} delta_i
    times[-1] = 0.0
    if np.any(np.diff(times) >= 0):
        raise DegenerateStep("capacity increments underflowed")
    drive = DrivingFunction(
        t=np.concatenate([times[::-1], [T]]),
        lam=np.concatenate([centers[::-1], [slit.root.real]]),
        interp="constant",
        speed=speed,
    )
    m = slit.points.size
    param = StandardParametrization(
        index=np.arange(m),
        time=np.concatenate([times[::-1], [T]]),
        total_capacity=T,
    )
    return drive, param


def total_capacity(slit: SlitPolyline, speed: float = 1.0) -> float:
    """Half-plane capacity of the slit, ``-c1`` of its hydrodynamic map."""
    return unzip(slit, speed)[1].total_capacity


def vertical_slit(height: float, root: float = 0.0, n: int = 2) -> SlitPolyline:
    """Straight vertical slit from ``root + i height`` down to ``root``."""
    y = np.linspace(height, 0.0, max(n, 2))
    return SlitPolyline(root + 1j * y)

