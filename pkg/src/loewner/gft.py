"""Numerical checks of the area theorem and the omitted-set bounds.

A flow ``phi`` extends by reflection to a conformal map of the sphere minus
``K1`` (its support segment on the real axis) onto the sphere minus ``K2``
(the hull together with its mirror image).  Two rescalings bring it into
class Sigma (maps of ``|zeta| > 1`` of the form ``zeta + b0 + sum b_n zeta^-n``):

* ``disk``: ``g(zeta) = phi(R zeta + z0) / R`` with ``R = diam K1`` and
  ``z0`` the midpoint of ``K1``;
* ``joukowski``: ``phi`` composed with the Joukowski map of ``|zeta| > 1``
  onto the exterior of ``K1``.  The omitted set is then ``K2`` itself, which
  has zero area for a slit, so the area sum equals one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal, Optional

import numpy as np
from scipy.spatial.distance import pdist

from .forward import flow_support, hull_points
from .halfplane import FlowMap, LaurentEstimate, estimate_laurent

SLACK = 1.01
N_MAX = 32


def area_theorem_check(est: LaurentEstimate) -> float:
    """``sum n * b_n**2`` over the estimated tail; at most 1 in class Sigma."""
    b = np.asarray(est.tail, dtype=float)
    n = np.arange(1, b.size + 1)
    return float(np.sum(n * b * b))


def sigma_rescaling(
    flow: FlowMap, mode: Literal["disk", "joukowski"] = "joukowski",
    support: Optional[tuple[float, float]] = None,
) -> Callable:
    """Class-Sigma normalisation of ``flow`` (see module docstring)."""
    alpha, beta = flow_support(flow) if support is None else support
    mid, half = 0.5 * (alpha + beta), 0.5 * (beta - alpha)
    if mode == "disk":
        R = beta - alpha
        return lambda zeta: flow(R * np.asarray(zeta) + mid) / R
    if mode == "joukowski":
        def g(zeta):
            zeta = np.asarray(zeta, dtype=np.complex128)
            return flow(mid + 0.5 * half * (zeta + 1.0 / zeta)) / (0.5 * half)
        return g
    raise ValueError(f"unknown mode {mode!r}")


def area_sum(flow: FlowMap, mode: str = "joukowski", n_max: int = N_MAX, radius: float = 2.0) -> float:
    """Area-theorem sum of the rescaled flow, from a Laurent fit at ``|zeta| = radius``."""
    est = estimate_laurent(sigma_rescaling(flow, mode), radius, n_max, n_samples=1024, free_term=True)
    return area_theorem_check(est)


def diameter(points: np.ndarray) -> float:
    pts = np.asarray(points, dtype=np.complex128)
    if pts.size < 2:
        return 0.0
    return float(pdist(np.column_stack([pts.real, pts.imag])).max())


@dataclass
class BoundsReport:
    """Outcome of the four omitted-set inequalities for one flow."""

    c1_abs: float
    diam_k1: float
    diam_k2: float
    checks: dict = field(default_factory=dict)

    def record(self, name: str, lhs: float, rhs: float) -> None:
        self.checks[name] = (lhs, rhs, lhs <= SLACK * rhs)

    @property
    def violations(self) -> list[str]:
        return [name for name, (_, _, ok) in self.checks.items() if not ok]

    @property
    def ok(self) -> bool:
        return not self.violations

    def worst_ratio(self) -> float:
        return max((lhs / rhs for lhs, rhs, _ in self.checks.values() if rhs > 0), default=0.0)


def omitted_set_bounds_check(flow: FlowMap, n_ring: int = 64) -> BoundsReport:
    """Test the four omitted-set inequalities on ``flow``.

    ``K1`` is the support segment, ``K2`` the hull polyline joined with its
    reflection.  The displacement bound is probed on rings of points that
    stay more than one diameter away from ``K1`` (forward map) or ``K2``
    (inverse map).  Every inequality is accepted up to a 1% slack.
    """
    if len(flow) == 0:
        raise ValueError("identity flow: omitted sets are empty")
    alpha, beta = flow_support(flow)
    k1 = np.array([alpha, beta], dtype=np.complex128)
    hull = hull_points(flow)
    k2 = np.concatenate([hull, np.conj(hull)])
    d1, d2 = beta - alpha, diameter(k2)
    report = BoundsReport(c1_abs=flow.speed * flow.capacity, diam_k1=d1, diam_k2=d2)

    report.record("c1_vs_diam", report.c1_abs, min(d1, d2) ** 2)
    # farthest-point distances are convex in the centre, so segment ends suffice
    report.record("K1_in_disk_about_K2", float(np.max(np.abs(k1[:, None] - k2[None, :]))), 2 * d2)
    report.record("K2_in_disk_about_K1", float(np.max(np.abs(k2[:, None] - k1[None, :]))), 2 * d1)

    theta = np.pi * (np.arange(n_ring) + 0.5) / n_ring
    mid1 = 0.5 * (alpha + beta)
    worst = 0.0
    for rho in (0.5 * d1 + 1.5 * d1, 0.5 * d1 + 4.0 * d1):
        z1 = mid1 + rho * np.exp(1j * theta)
        worst = max(worst, float(np.max(np.abs(flow(z1) - z1))))
    report.record("displacement_K1", worst, 3 * d1)

    centre2 = 0.5 * (hull.real.min() + hull.real.max())
    reach2 = float(np.max(np.abs(k2 - centre2)))
    worst = 0.0
    for rho in (reach2 + 1.5 * d2, reach2 + 4.0 * d2):
        w = centre2 + rho * np.exp(1j * theta)
        worst = max(worst, float(np.max(np.abs(flow.inverse(w) - w))))
    report.record("displacement_K2", worst, 3 * d2)
    return report
