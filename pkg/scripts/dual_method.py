"""Compare the ODE route and the composed-map route on random drives.

For each composition resolution, reports the worst disagreement with the
adaptive RK4 solution over an interior grid, across a batch of drives.
"""

import argparse

import numpy as np

from loewner import flow_composed, flow_ode
from loewner.verify import interior_grid, random_drive


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--drives", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tol", type=float, default=1e-10)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    drives = [random_drive(rng) for _ in range(args.drives)]
    z = interior_grid()
    reference = [flow_ode(d, 0.0, d.T, z, args.tol) for d in drives]
    print(f"{'n_steps':>8} {'max |ode - composed|':>22}")
    for n in (250, 500, 1000, 2000, 4000, 8000, 16000):
        worst = max(float(np.max(np.abs(flow_composed(d, 0.0, d.T, n)(z) - ref)))
                    for d, ref in zip(drives, reference))
        print(f"{n:>8} {worst:>22.3e}")


if __name__ == "__main__":
    main()
