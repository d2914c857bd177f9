"""Drive -> trace -> drive self-convergence for a smooth driving function.

Prints the sup-norm recovery error at successive (n_steps, max_height)
refinements together with the observed order.
"""

import argparse
import time

import numpy as np

from loewner import DrivingFunction, compute_trace, refine_polyline, unzip


def recovery_error(lam0, T, n_steps, max_height, speed):
    drive = DrivingFunction.from_function(lam0, T, n_steps, speed)
    trace = compute_trace(drive, n_steps)
    back, param = unzip(refine_polyline(trace.to_polyline(), max_height), speed)
    t = np.linspace(0.0, min(T, back.T), 20_001)
    return float(np.max(np.abs(back(t) - lam0(t)))), param.total_capacity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, default=4)
    ap.add_argument("--base-steps", type=int, default=4096)
    ap.add_argument("--base-height", type=float, default=0.01)
    ap.add_argument("--speed", type=float, default=1.0)
    ap.add_argument("--amplitude", type=float, default=0.5)
    args = ap.parse_args()

    lam0 = lambda t: args.amplitude * np.sin(2 * np.pi * t)  # noqa: E731
    prev = None
    print(f"{'n_steps':>8} {'1/h':>6} {'sup error':>11} {'order':>6} {'T':>10} {'sec':>6}")
    for k in range(args.levels):
        n, h = args.base_steps * 2**k, args.base_height / 2**k
        t0 = time.perf_counter()
        err, T = recovery_error(lam0, 1.0, n, h, args.speed)
        order = "" if prev is None else f"{np.log2(prev / err):.2f}"
        print(f"{n:>8} {1 / h:>6.0f} {err:>11.3e} {order:>6} {T:>10.6f} {time.perf_counter() - t0:>6.2f}")
        prev = err


if __name__ == "__main__":
    main()
