"""Tour of the Orlicz machinery: the N-function pair, its inverses,
and the three norms the eigenvalue bounds are built from."""

import numpy as np

from eigencount import (
    WeightedSamples,
    average_norm,
    eval_nfunction,
    inverse_nfunction,
    l1w_quasinorm,
    level_norm,
    log_pair,
    luxemburg_norm,
    orlicz_norm,
)

pair = log_pair()

print("The complementary pair: psi(s) = (1+s)ln(1+s)-s, phi(s) = e^s-1-s")
for s in (0.5, 1.0, 2.0):
    print(f"  psi({s}) = {eval_nfunction(pair, 'psi', s):.6f}   "
          f"phi({s}) = {eval_nfunction(pair, 'phi', s):.6f}")

print("\nInverses by bracketed root finding:")
print(f"  psi^-1(1) = {inverse_nfunction(pair, 'psi', 1.0):.12f}")
print(f"  phi^-1(1) = {inverse_nfunction(pair, 'phi', 1.0):.12f}")

# a small weighted sample set standing in for a potential on cells
rng = np.random.default_rng(7)
s = WeightedSamples(rng.uniform(0.2, 3.0, 12), rng.uniform(0.1, 0.8, 12))

lux = luxemburg_norm(s)
orl = orlicz_norm(s)
print("\nThe two classical norms always sandwich within a factor 2:")
print(f"  luxemburg = {lux:.6f}")
print(f"  orlicz    = {orl:.6f}")
print(f"  ratio     = {orl / lux:.6f}  (must sit in [1, 2])")

print("\nLevel norms interpolate; at a = total mass the average norm appears:")
for a in (0.5, 1.0, s.total_mass):
    print(f"  level a = {a:.4f}:  {level_norm(s, a):.6f}")
print(f"  average norm    :  {average_norm(s):.6f}")

harmonic = 1.0 / np.arange(1.0, 101.0)
print("\nWeak-l1 quasinorm of (1/n), n <= 100:", l1w_quasinorm(harmonic))
