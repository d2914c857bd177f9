"""File formats: driving-function CSV, JSON trace documents, SVG plots."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import InvalidDrive, InvalidSlit
from .forward import DrivingFunction, Trace

DRIVE_HEADER = ["t", "lambda"]
GROWTH = "growth"
ERASURE = "erasure"


def _num(x: float) -> str:
    return repr(float(x))


def read_drive_csv(path, speed: float = 1.0) -> DrivingFunction:
    """Parse a ``t,lambda`` CSV into a piecewise-linear drive."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0]] != DRIVE_HEADER:
        raise InvalidDrive(f"{path}: header must be 't,lambda'")
    t, lam = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise InvalidDrive(f"{path}:{lineno}: expected two columns")
        try:
            t.append(float(row[0]))
            lam.append(float(row[1]))
        except ValueError as exc:
            raise InvalidDrive(f"{path}:{lineno}: {exc}") from None
    return DrivingFunction(t, lam, "linear", speed)


def write_drive_csv(path, drive: DrivingFunction, reverse_time: bool = False) -> None:
    t, lam = drive.t, drive.lam
    if reverse_time:
        t, lam = drive.T - t[::-1], lam[::-1]
    lines = [",".join(DRIVE_HEADER)]
    lines += [f"{_num(a)},{_num(b)}" for a, b in zip(t, lam)]
    Path(path).write_text("\n".join(lines) + "\n")


def write_trace(path, trace: Trace, reverse_time: bool = False) -> None:
    """Write a trace document; growth convention re-indexes by ``T - t``."""
    t, pts = trace.t, trace.points
    if reverse_time:
        t, pts = trace.T - t[::-1], pts[::-1]
    doc = {
        "T": trace.T,
        "speed": trace.speed,
        "time_convention": GROWTH if reverse_time else ERASURE,
        "points": [{"t": float(a), "re": float(z.real), "im": float(z.imag)} for a, z in zip(t, pts)],
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def read_trace(path) -> Trace:
    """Load a trace document into the erasure convention (tip first, root last)."""
    try:
        doc = json.loads(Path(path).read_text())
        T = float(doc["T"])
        speed = float(doc.get("speed", 1.0))
        convention = doc.get("time_convention", ERASURE)
        t = np.array([float(p["t"]) for p in doc["points"]])
        pts = np.array([complex(float(p["re"]), float(p["im"])) for p in doc["points"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidSlit(f"{path}: malformed trace document ({exc})") from None
    if convention not in (GROWTH, ERASURE):
        raise InvalidSlit(f"{path}: unknown time_convention {convention!r}")
    if t.size < 2 or not (math.isfinite(T) and T > 0):
        raise InvalidSlit(f"{path}: need T > 0 and at least two points")
    order = np.argsort(t, kind="stable")
    t, pts = t[order], pts[order]
    if convention == GROWTH:
        t, pts = T - t[::-1], pts[::-1]
    if pts[-1].imag != 0:
        raise InvalidSlit(f"{path}: root {pts[-1]} is off the real axis")
    return Trace(t, pts, speed)


SVG_SIZE = 480
SVG_PAD = 20


def _document(body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _projector(xs, ys, equal_aspect: bool):
    """Affine map from data coordinates to the SVG canvas (y pointing up)."""
    inner = SVG_SIZE - 2 * SVG_PAD
    x0, y0 = float(np.min(xs)), float(np.min(ys))
    sx = max(float(np.max(xs)) - x0, 1e-12)
    sy = max(float(np.max(ys)) - y0, 1e-12)
    if equal_aspect:
        sx = sy = max(sx, sy)

    def project(x, y) -> str:
        px = SVG_PAD + (np.asarray(x) - x0) * inner / sx
        py = SVG_SIZE - SVG_PAD - (np.asarray(y) - y0) * inner / sy
        return " ".join(f"{a:.3f},{b:.3f}" for a, b in zip(px, py))

    return project, (x0, x0 + sx)


def _polyline(points: str, colour: str, width: float) -> str:
    return f'<polyline points="{points}" fill="none" stroke="{colour}" stroke-width="{width}"/>'


def trace_svg(trace: Trace) -> str:
    """Slit drawn as a polyline above the real axis."""
    xs, ys = trace.points.real, trace.points.imag
    project, (xa, xb) = _projector(xs, ys, equal_aspect=True)
    return _document([
        _polyline(project([xa, xb], [0.0, 0.0]), "#999", 1),
        _polyline(project(xs, ys), "#c00", 1.5),
    ])


def drive_svg(drive: DrivingFunction) -> str:
    """Step plot (constant drives) or line plot (linear drives) of lambda against t."""
    t, lam = drive.t, drive.lam
    if drive.interp == "constant":
        t = np.repeat(t, 2)[1:]
        lam = np.repeat(lam, 2)[:-1]
    project, _ = _projector(t, lam, equal_aspect=False)
    return _document([_polyline(project(t, lam), "#036", 1.5)])
