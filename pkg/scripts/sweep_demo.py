#!/usr/bin/env python3
"""Export rotation sweeps for a few seeded matrices as CSV files.

Each file has `theta,g` rows ready for any external plotter, plus the
refined radius in a trailing comment, matching the CLI's sweep format.
"""

import os
import sys

from numrad import SampleSpec, numerical_radius, sample


def main() -> int:
    here = os.path.dirname(os.path.abspath(__file__))
    for family, dim, seed in (("ginibre", 4, 7), ("nilpotent_jordan", 4, 7), ("rank_one", 4, 7)):
        t = sample(SampleSpec(family, dim, seed))
        sw = numerical_radius(t, grid_size=720)
        path = os.path.join(here, f"sweep_{family}_{dim}.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("theta,g\n")
            for theta, g in zip(sw.thetas, sw.g_values):
                fh.write(f"{theta!r},{g!r}\n")
            fh.write(f"# omega = {sw.omega!r}\n")
        print(f"{family} dim {dim}: omega = {sw.omega:.12f} -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
