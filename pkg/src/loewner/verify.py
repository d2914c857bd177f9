"""Randomised invariant suite behind ``loewner verify``.

Every check reduces to a residual that must stay below a fixed threshold;
the suite reports the worst residual per check over all cases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .forward import DrivingFunction, flow_boundary_trace, flow_composed, flow_ode
from .gft import area_sum, omitted_set_bounds_check
from .halfplane import estimate_laurent
from .schwarz import capacity_from_boundary, schwarz_reconstruct

THRESHOLDS = {
    "dual_method": 1e-5,
    "semigroup_ode": 1e-5,
    "semigroup_composed": 1e-12,
    "laurent_c1": 1e-3,
    "boundary_capacity": 1e-3,
    "schwarz": 1e-4,
    "monotone_im": 0.0,
    "gft_bounds": 1.0,
    "area_sum_excess": 1e-3,
}


def random_drive(rng: np.random.Generator, T: float = 1.0, knots: int = 8, amp: float = 2.0,
                 speed: float = 1.0) -> DrivingFunction:
    """Piecewise-linear drive with uniformly random knot values in ``[-amp, amp]``."""
    return DrivingFunction(np.linspace(0.0, T, knots), rng.uniform(-amp, amp, knots), "linear", speed)


def interior_grid(n: int = 5, x: tuple = (-2.0, 2.0), y: tuple = (0.2, 2.0)) -> np.ndarray:
    xs, ys = np.meshgrid(np.linspace(*x, n), np.linspace(*y, n))
    return (xs + 1j * ys).ravel()


@dataclass
class CheckRow:
    name: str
    residual: float
    threshold: float

    @property
    def ok(self) -> bool:
        return self.residual <= self.threshold


def check_case(drive: DrivingFunction, rng: np.random.Generator, tol: float = 1e-9,
               n_per_unit: int = 10_000, fault: bool = False) -> dict[str, float]:
    """Residuals of every invariant for one drive."""
    T, a = drive.T, drive.speed
    res: dict[str, float] = {}
    z = interior_grid()
    n = max(1, int(round(n_per_unit * T)))
    phi = flow_composed(drive, 0.0, T, n)
    ode_drive = DrivingFunction(drive.t, -drive.lam, drive.interp, a) if fault else drive
    res["dual_method"] = float(np.max(np.abs(flow_ode(ode_drive, 0.0, T, z, tol) - phi(z))))
    res["monotone_im"] = float(max(0.0, np.max(z.imag - phi(z).imag)))

    worst_ode, worst_exact = 0.0, 0.0
    for _ in range(3):
        s, u, t = np.sort(rng.uniform(0.0, T, 3))
        z0 = complex(rng.uniform(-2, 2), rng.uniform(0.2, 2))
        direct = flow_ode(drive, s, t, z0, tol)
        split = flow_ode(drive, u, t, flow_ode(drive, s, u, z0, tol), tol)
        worst_ode = max(worst_ode, abs(direct - split))
        first, second = flow_composed(drive, s, u, 200), flow_composed(drive, u, t, 300)
        worst_exact = max(worst_exact, abs(first.then(second)(z0) - second(first(z0))))
    res["semigroup_ode"] = worst_ode
    res["semigroup_composed"] = worst_exact

    s, t = np.sort(rng.uniform(0.0, T, 2))
    if t - s < 0.05 * T:
        s, t = 0.0, T
    span = t - s
    fine = flow_composed(drive, s, t, max(1, int(round(n_per_unit * span))))
    est = estimate_laurent(fine, radius=100.0, n_max=4)
    res["laurent_c1"] = abs(est.c1 + a * span)

    coarse = flow_composed(drive, s, t, 1000)
    trace = flow_boundary_trace(coarse, 4000)
    res["boundary_capacity"] = abs(capacity_from_boundary(trace) - a * span)
    pts = interior_grid(4, y=(0.3, 2.0))[:10]
    res["schwarz"] = max(abs(schwarz_reconstruct(trace, p).value - (coarse(p) - p)) for p in pts)

    gft_flow = flow_composed(drive, s, t, 256)
    report = omitted_set_bounds_check(gft_flow)
    res["gft_bounds"] = report.worst_ratio() / 1.01
    res["area_sum_excess"] = max(
        0.0, area_sum(gft_flow, "joukowski") - 1.0, area_sum(gft_flow, "disk") - 1.0
    )
    return res


def run_suite(seed: int = 42, cases: int = 10, tol: float = 1e-9, fault: bool = False) -> list[CheckRow]:
    if cases < 1:
        raise ValueError("cases must be >= 1")
    rng = np.random.default_rng(seed)
    worst = {name: 0.0 for name in THRESHOLDS}
    for _ in range(cases):
        drive = random_drive(rng)
        for name, value in check_case(drive, rng, tol, fault=fault).items():
            worst[name] = max(worst[name], value)
    return [CheckRow(name, worst[name], THRESHOLDS[name]) for name in THRESHOLDS]


def format_table(rows: list[CheckRow]) -> str:
    lines = [f"{'check':<22}{'max_residual':>14}{'threshold':>12}  status"]
    for r in rows:
        lines.append(f"{r.name:<22}{r.residual:>14.3e}{r.threshold:>12.1e}  {'ok' if r.ok else 'FAIL'}")
    return "\n".join(lines)
