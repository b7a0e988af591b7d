"""Adaptive square covers, and the two effects that make them necessary.

Centered squares are not enough: (a) for corner-concentrated mass the
centered-square inequality fails outright once the concentration radius
is small; (b) for the Cantor measure every generation of dilated gap
squares recaptures the whole mass, so overlapping covers blow up.
"""

import math

import numpy as np

from eigencount import (
    DiscreteMeasure,
    Grid2D,
    PotentialField,
    adaptive_cover,
    cantor_gap_squares,
    cantor_measure,
    corner_inequality,
    mass_in_rect,
)

print("centered-square inequality at shrinking concentration radius r:")
for r in (0.3, 0.1, 0.03, 0.01):
    gap = corner_inequality(r, c0=1.0, c1=1.0, alpha=1.0)
    verdict = "holds" if gap.holds else "FAILS"
    print(f"  r = {r:5.2f}: lhs {gap.lhs:.4f} vs rhs {gap.rhs:.4f}  {verdict}")

print("\nCantor gap squares, 3x dilated, mass recaptured per generation:")
level = 8
mu = cantor_measure(level)
running = 0.0
for gen in range(1, level + 1):
    side = 3.0 ** -gen
    got = sum(
        mass_in_rect(mu, (cx, cy), 1.5 * s, 1.5 * s)
        for cx, cy, s in cantor_gap_squares(level)
        if abs(s - side) < 1e-12
    )
    running += got
    print(f"  generation {gen}: {got:.12f}   running sum {running:.12f}")
print(f"  total mass of the measure itself: {mu.total_mass}")

print("\nadaptive cover of a uniform potential on the unit square:")
m = 24
cell = 1.0 / m
mu2 = DiscreteMeasure(grid=Grid2D((0.0, 0.0), (cell, cell), np.full((m, m), cell * cell)))
v2 = PotentialField(cell_values=np.ones((m, m)))
cover = adaptive_cover(v2, mu2, (0.0, 1.0, 0.0, 1.0), 64, 1.0, 1.0, 0.5)
print(f"  target norm per square: {cover.target:.6f}")
print(f"  squares used: {len(cover.squares)}, families: {cover.families}, "
      f"flagged: {len(cover.flagged)}")
print(f"  linkage bound (squares any disc of the cover graph can touch): "
      f"{cover.linkage_bound}")
for (cx, cy), side in cover.squares[:4]:
    print(f"    square at ({cx:.3f}, {cy:.3f}), side {side:.3f}")
