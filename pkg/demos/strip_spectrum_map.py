"""Transverse spectrum of the Robin Laplacian on a cross-section.

Two wall parameters (alpha at the bottom, beta at the top) split the
plane into five regions by how many transverse modes sit below zero.
"""

import numpy as np

from eigencount import RobinParams, lambda12, region_classify, transverse_spectrum

print("sample parameter pairs on the width-1 strip:")
for alpha, beta in ((0.0, 0.0), (2.0, 2.0), (1.0, -1.0), (4.0, -0.5), (-1.0, -2.0)):
    p = RobinParams(alpha, beta, 1.0)
    sp = transverse_spectrum(p, k=3)
    taus = " ".join(f"{t:10.6f}" for t in sp.taus)
    print(f"  alpha={alpha:5.2f} beta={beta:5.2f}  region {sp.region}  taus: {taus}")

print("\nregion map, width 1 (negative transverse modes: A,B none; C,D one; E two)")
alphas = np.linspace(-4.0, 4.0, 33)
betas = np.linspace(-4.0, 4.0, 33)
for b in betas[::-1]:
    row = "".join(region_classify(RobinParams(a, b, 1.0)) for a in alphas)
    print("  " + row)

print("\nthe 2-D essential-spectrum edge and the first excited level:")
p = RobinParams(3.0, 3.0, 0.5)
lam1, lam2, _ = lambda12(p)
print(f"  alpha=beta=3, width 0.5: lambda_1 = {lam1:.9f} (= -alpha^2 exactly), "
      f"lambda_2 = {lam2:.9f}")
