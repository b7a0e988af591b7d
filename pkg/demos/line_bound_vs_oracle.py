"""1-D eigenvalue-count bounds against a direct finite-difference count.

The printed estimates apply to the half-line form with a doubled
measure, so the oracle discretizes 2*nu.
"""

import numpy as np

from eigencount import (
    Measure1D,
    bound_1d,
    bound_1d_general,
    discretize_1d,
    format_table,
    inertia_count,
    optimize_phi,
    weighted_terms_1d,
)

nu = Measure1D(
    atoms=np.array([-2.0, 3.0]),
    atom_mass=np.array([0.8, 1.5]),
    grid_x0=0.0,
    grid_h=0.05,
    grid_mass=np.full(20, 2.0 / 20.0),
)
terms = weighted_terms_1d(nu)

print(format_table(bound_1d(terms)))

kappa_star, _ = optimize_phi()
print(format_table(bound_1d_general(terms, kappa_star)))

doubled = Measure1D(
    atoms=nu.atoms,
    atom_mass=2.0 * nu.atom_mass,
    grid_x0=nu.grid_x0,
    grid_h=nu.grid_h,
    grid_mass=2.0 * nu.grid_mass,
)
print("direct count on (-40, 40), Neumann ends, shift just below 0:")
for h in (0.1, 0.05, 0.025):
    res = inertia_count(discretize_1d(doubled, (-40.0, 40.0), h), shift=-1e-8)
    print(f"  h = {h:5.3f}: {res.count} negative eigenvalues "
          f"(order {res.order})")
