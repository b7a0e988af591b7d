"""Plane bounds on three very different potentials.

A radial annulus exercises the Lebesgue-density route (where the
polar-norm sum is redundant), an off-center box the general measure
route, and a Cantor line measure shows the machinery absorbing a
potential that no density can represent.
"""

import math

import numpy as np

from eigencount import (
    DiscreteMeasure,
    Grid2D,
    PotentialField,
    bound_plane_lebesgue,
    bound_plane_measure,
    cantor_measure,
    discretize_plane,
    format_table,
    inertia_count,
    khuri_bound,
    orlicz_terms_plane,
    weighted_terms_plane,
)


def area_grid(x0, y0, nx, ny, cell):
    return DiscreteMeasure(
        grid=Grid2D((x0, y0), (cell, cell), np.full((nx, ny), cell * cell))
    )


def oracle(v, mu, h):
    return inertia_count(discretize_plane(v, mu, 6.0, h), shift=-1e-8).count


# indicator of the annulus 0.5 <= r <= 1.5 sampled on a 32 x 32 grid
n, lo, cell = 32, -1.6, 0.1
centers = lo + cell * (np.arange(n) + 0.5)
gx, gy = np.meshgrid(centers, centers, indexing="ij")
rr = np.hypot(gx, gy)
mu = area_grid(lo, lo, n, n, cell)
v = PotentialField(cell_values=((rr >= 0.5) & (rr <= 1.5)).astype(float))

print("== radial annulus ==")
print(format_table(bound_plane_measure(
    weighted_terms_plane(v, mu), orlicz_terms_plane(v, mu, math.pi, math.pi, 2.0)
)))
print(format_table(bound_plane_lebesgue(v, mu, radial=True)))
print(format_table(khuri_bound(v, mu)))
print(f"oracle at h = 0.125: {oracle(v, mu, 0.125)} negative eigenvalues")

print("\n== off-center box, V = 2 ==")
mu2 = area_grid(0.8, -0.4, 8, 8, 0.1)
v2 = PotentialField(cell_values=np.full((8, 8), 2.0))
print(format_table(bound_plane_measure(
    weighted_terms_plane(v2, mu2), orlicz_terms_plane(v2, mu2, math.pi, math.pi, 2.0)
)))
print(f"oracle at h = 0.125: {oracle(v2, mu2, 0.125)} negative eigenvalues")

print("\n== Cantor measure on the segment [1, 2] ==")
mu3 = cantor_measure(6, (1.0, 2.0), 0.0)
v3 = PotentialField(atom_values=np.ones(mu3.points().shape[0]))
alpha = math.log(2.0) / math.log(3.0)
print(format_table(bound_plane_measure(
    weighted_terms_plane(v3, mu3), orlicz_terms_plane(v3, mu3, 0.3, 1.6, alpha)
)))
print(f"oracle at h = 0.125: {oracle(v3, mu3, 0.125)} negative eigenvalues")
