"""Schwarz reconstruction error: Chebyshev vs adaptive boundary sampling.

Hulls of rough drives have fjords whose preimages on the real axis are tiny
intervals where Im phi rises steeply.  A uniform angle grid steps over them;
the adaptive sampler spends part of the same budget resolving them.
"""

import argparse

import numpy as np

from loewner import flow_composed, flow_support, sample_trace, schwarz_reconstruct
from loewner.verify import interior_grid, random_drive


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--drives", type=int, default=20)
    ap.add_argument("--steps", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    pts = interior_grid(4, y=(0.3, 2.0))[:10]
    print(f"{'samples':>8} {'chebyshev':>11} {'adaptive':>11}")
    flows = [flow_composed(random_drive(rng), 0.0, 1.0, args.steps) for _ in range(args.drives)]
    supports = [flow_support(f) for f in flows]
    for n in (1000, 3000, 10_000, 30_000):
        worst = {}
        for adaptive in (False, True):
            w = 0.0
            for f, (a, b) in zip(flows, supports):
                tr = sample_trace(f, a, b, n, adaptive)
                w = max(w, max(abs(schwarz_reconstruct(tr, p).value - (f(p) - p)) for p in pts))
            worst[adaptive] = w
        print(f"{n:>8} {worst[False]:>11.3e} {worst[True]:>11.3e}")


if __name__ == "__main__":
    main()
