"""Longitudinal score as a function of detection range for several ego speeds.

Prints required range, then s_long at each detection range.  The table shows
where the score leaves 1.0, where the no-impact clamp (0.8) holds, and where
the remaining velocity is high enough to score zero.

Usage: python scripts/range_sweep.py [--speeds 8.33 13.89 22.22 27.78] [--ranges 5 10 ... ]
"""

import argparse
import sys

from lsm.metric import longitudinal_score, required_range
from lsm.types import EgoState, EvalConfig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--speeds", type=float, nargs="+", default=[8.33, 13.89, 22.22, 27.78, 36.11])
    ap.add_argument("--ranges", type=float, nargs="+", default=[5, 10, 15, 20, 30, 40, 60, 80, 100])
    ap.add_argument("--t-delay", type=float, default=0.1)
    ap.add_argument("--decel", type=float, default=7.5)
    args = ap.parse_args(argv)
    cfg = EvalConfig(t_delay=args.t_delay, a=args.decel)

    print(f"{'v0':>7}{'d_long':>8}" + "".join(f"{r:>7.0f}m" for r in args.ranges))
    for v0 in args.speeds:
        ego = EgoState(v0, 2.0)
        scores = [longitudinal_score(ego, cfg, r)[0] for r in args.ranges]
        print(f"{v0:>7.2f}{required_range(ego, cfg):>8.2f}" + "".join(f"{s:>8.2f}" for s in scores))
    return 0


if __name__ == "__main__":
    sys.exit(main())
