"""Splitting a line measure into pieces of controlled weighted size.

The partition drives the 1-D estimates: n pieces whose worst
piece value decays like n^(-1-a).  Atoms would break any such
guarantee, so they are mollified onto a fine lattice first.
"""

import numpy as np

from eigencount import (
    Measure1D,
    mollify_measure,
    partition_interval,
    partition_piece_value,
    partition_quality,
    partition_target,
)

# density on [0, 4] plus two atoms
nu = Measure1D(
    atoms=np.array([1.0, 2.5]),
    atom_mass=np.array([0.7, 0.4]),
    grid_x0=0.0,
    grid_h=0.1,
    grid_mass=np.full(40, 0.05),
)
print(f"measure: total mass {nu.total_mass:.3f}, atomless: {nu.is_atomless}")

smooth = mollify_measure(nu, 0.02)
print(f"mollified at eps = 0.02: atomless: {smooth.is_atomless}, "
      f"mass {smooth.total_mass:.12f} (machine-exact)")

interval = (-0.5, 4.5)
for n in (4, 8, 16):
    breaks = partition_interval(smooth, interval, n, 1.0)
    theta = partition_quality(smooth, interval, breaks, 1.0)
    target = partition_target(smooth, interval[0], interval[1], n, 1.0)
    print(f"\nn = {n:2d}: worst piece {theta:.6f} <= target {target:.6f}")
    edges = [interval[0], *breaks, interval[1]]
    pieces = [
        partition_piece_value(smooth, edges[i], edges[i + 1], 1.0)
        for i in range(n)
    ]
    print("  piece values:", " ".join(f"{p:.4f}" for p in pieces))
