"""The counting oracle: banded inertia against closed forms.

A constant well on (0, L) with Dirichlet ends has exactly
#{k >= 1 : (k pi / L)^2 < c} negative eigenvalues, which pins down the
discretization error as h shrinks.  A random dense comparison shows the
band factorization counting exactly.
"""

import math

import numpy as np

from eigencount import Measure1D, SymmetricBandMatrix, discretize_1d, inertia_count

length, depth = 5.0, 8.0
closed = sum(1 for k in range(1, 100) if (k * math.pi / length) ** 2 < depth)
print(f"well on (0, {length}), depth {depth}: closed form gives {closed}")
for n_cells in (125, 500, 2000):
    nu = Measure1D(
        grid_x0=0.0,
        grid_h=length / n_cells,
        grid_mass=np.full(n_cells, depth * length / n_cells),
    )
    h = length / n_cells
    res = inertia_count(discretize_1d(nu, (0.0, length), h, bc="dirichlet"), 0.0)
    print(f"  h = L/{n_cells:4d}: count {res.count} "
          f"(order {res.order}, min pivot {res.min_pivot:.3e})")

print("\nband inertia vs dense eigensolver on a random heptadiagonal matrix:")
rng = np.random.default_rng(42)
order, bw = 150, 3
dense = np.zeros((order, order))
for d in range(bw + 1):
    vals = rng.normal(0.0, 1.0, order - d)
    dense += np.diag(vals, d)
    if d:
        dense += np.diag(vals, -d)
eigs = np.sort(np.linalg.eigvalsh(dense))
m = SymmetricBandMatrix.from_dense(dense)
for q in (0.1, 0.5, 0.9):
    shift = float(np.quantile(eigs, q))
    want = int(np.searchsorted(eigs, shift))
    got = inertia_count(m, shift).count
    flag = "ok" if got == want else "MISMATCH"
    print(f"  shift {shift:8.4f}: band {got:3d}  dense {want:3d}  {flag}")
