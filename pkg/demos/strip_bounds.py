"""Counting bounds on the strip, Neumann and Robin walls, with oracle checks."""

import numpy as np

from eigencount import (
    DiscreteMeasure,
    Grid2D,
    PotentialField,
    RobinParams,
    bound_strip_neumann,
    bound_strip_robin,
    discretize_strip,
    format_table,
    inertia_count,
    strip_orlicz_terms,
    strip_terms_neumann,
    strip_terms_robin,
)

WIDTH = 1.0

# constant potential 0.8 on a 2 x 1 patch of the strip, exact area cells
cell = 0.125
mu = DiscreteMeasure(
    grid=Grid2D((-1.0, 0.0), (cell, cell), np.full((16, 8), cell * cell))
)
v = PotentialField(cell_values=np.full((16, 8), 0.8))

neumann = RobinParams(0.0, 0.0, WIDTH)
rep = bound_strip_neumann(strip_terms_neumann(v, mu, WIDTH), strip_orlicz_terms(v, mu, WIDTH))
print(format_table(rep))
for h in (0.125, 0.0625):
    res = inertia_count(discretize_strip(v, mu, neumann, 5.0, h), shift=-1e-8)
    print(f"  oracle, h = {h:6.4f}: {res.count} states below the edge")

# two point charges under Robin walls; the edge moves to lambda_1 < 0
robin = RobinParams(0.5, -0.3, WIDTH)
mu2 = DiscreteMeasure(
    atoms=np.array([[-0.5, 0.7], [0.8, 0.2]]), atom_mass=np.array([0.5, 0.7])
)
v2 = PotentialField(atom_values=np.array([1.0, 1.0]))
rep2 = bound_strip_robin(strip_terms_robin(v2, mu2, robin), strip_orlicz_terms(v2, mu2, WIDTH), robin)
print()
print(format_table(rep2))
for h in (0.125, 0.0625):
    res = inertia_count(discretize_strip(v2, mu2, robin, 5.0, h), shift=-1e-8)
    print(f"  oracle, h = {h:6.4f}: {res.count} states below the edge")
