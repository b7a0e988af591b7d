"""Complementary N-function pairs and the norms built on them.

All norms act on nonnegative sampled functions carried by discrete weights
(atom masses or cell masses).  The primary pair is

    psi(s) = (1 + s) ln(1 + s) - s,        phi(s) = e^s - 1 - s,

complementary in the Young sense; power pairs t^p/p, t^q/q with
1/p + 1/q = 1 are provided as well.  The level-a norm

    ||f||^(a) = sup { sum f g w : sum phi(|g|) w <= a }

is evaluated through the equivalent one-parameter form

    inf_{k>0} (a + sum psi(k f) w) / k,

a one-dimensional unimodal minimization handled by golden section on a
log scale.  a = 1 gives the Orlicz norm, a = total mass the average norm.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ConvergenceError, InvariantError
from .solvers import bracket_min, golden_min

__all__ = [
    "NFunctionPair",
    "WeightedSamples",
    "log_pair",
    "power_pair",
    "eval_nfunction",
    "inverse_nfunction",
    "binv_asymptotic",
    "luxemburg_norm",
    "level_norm",
    "orlicz_norm",
    "average_norm",
    "tau_average_norm",
    "mixed_norm",
    "l1w_quasinorm",
]

# e^s and s^p overflow past float range; arguments above this cap are
# treated as +inf inside minimization objectives.
_ARG_CAP = 700.0


def _psi_log(s):
    return (1.0 + s) * np.log1p(s) - s


def _phi_exp(s):
    return np.expm1(s) - s


@dataclass(frozen=True)
class NFunctionPair:
    """A complementary pair of N-functions (psi primary, phi dual)."""

    psi: Callable
    phi: Callable
    name: str

    def dual(self):
        return NFunctionPair(psi=self.phi, phi=self.psi, name=self.name + "_dual")


def log_pair():
    """psi = (1+s)ln(1+s) - s with its complementary phi = e^s - 1 - s."""
    return NFunctionPair(psi=_psi_log, phi=_phi_exp, name="log")


def power_pair(p):
    """psi = t^p / p with its complementary phi = t^q / q, 1/p + 1/q = 1."""
    if not p > 1.0:
        raise ValueError("power_pair: need p > 1")
    q = p / (p - 1.0)

    def psi(s, _p=p):
        return np.power(s, _p) / _p

    def phi(s, _q=q):
        return np.power(s, _q) / _q

    return NFunctionPair(psi=psi, phi=phi, name="power(%g)" % p)


@dataclass(frozen=True, eq=False)
class WeightedSamples:
    """Nonnegative function samples against nonnegative carrier weights.

    values[i] is the function on a carrier of measure weights[i]; the pair
    stands for the function on a finite measure space.  total_mass defaults
    to sum(weights) and, when given, must match it to 1e-12 relative.
    """

    values: np.ndarray
    weights: np.ndarray
    total_mass: float = field(default=None)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        w = np.asarray(self.weights, dtype=float).ravel()
        if v.shape != w.shape:
            raise ValueError("WeightedSamples: values and weights differ in length")
        if v.size and (not np.all(np.isfinite(v)) or np.any(v < 0.0)):
            raise ValueError("WeightedSamples: values must be finite and >= 0")
        if w.size and (not np.all(np.isfinite(w)) or np.any(w < 0.0)):
            raise ValueError("WeightedSamples: weights must be finite and >= 0")
        total = float(w.sum())
        if self.total_mass is not None:
            given = float(self.total_mass)
            if abs(given - total) > 1e-12 * max(1.0, abs(total)):
                raise ValueError("WeightedSamples: total_mass does not match weights")
            total = given
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "total_mass", total)

    def subset(self, mask):
        m = np.asarray(mask)
        return WeightedSamples(self.values[m], self.weights[m])


def eval_nfunction(pair, which, s):
    """Evaluate pair.psi or pair.phi at scalar s >= 0."""
    if s < 0.0:
        raise ValueError("eval_nfunction: s must be >= 0")
    f = _pick(pair, which)
    with np.errstate(over="ignore"):
        return float(f(float(s)))


def _pick(pair, which):
    if which == "psi":
        return pair.psi
    if which == "phi":
        return pair.phi
    raise ValueError("which must be 'psi' or 'phi'")


def inverse_nfunction(pair, which, y, tol=1e-10, max_iter=400):
    """Inverse of a monotone N-function: the s >= 0 with f(s) = y.

    Bracketing bisection on the residual; raises ConvergenceError when the
    residual tolerance is unreachable at float resolution.
    """
    if not (y >= 0.0 and math.isfinite(y)):
        raise ValueError("inverse_nfunction: y must be finite and >= 0")
    if y == 0.0:
        return 0.0
    f = _pick(pair, which)

    def val(s):
        with np.errstate(over="ignore"):
            return float(f(s))

    hi = 1.0
    for _ in range(max_iter):
        v = val(hi)
        if math.isnan(v):
            raise ConvergenceError("inverse_nfunction: function overflowed to nan")
        if v >= y:
            break
        hi *= 2.0
    else:
        raise ConvergenceError("inverse_nfunction: no upper bracket")
    lo = 0.0
    best = hi
    best_res = abs(val(hi) - y)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        r = val(mid) - y
        if abs(r) < best_res:
            best, best_res = mid, abs(r)
        if r < 0.0:
            lo = mid
        else:
            hi = mid
    if best_res > tol:
        raise ConvergenceError(
            "inverse_nfunction: residual %.3e above tol %.3e" % (best_res, tol)
        )
    return best


def binv_asymptotic(t, regime):
    """Closed asymptotic forms for t * psi^{-1}(1/t) with the log pair.

    regime 'large_t' returns sqrt(2 t); regime 'small_t' returns
    1 / ln(1/t).  Both are the leading-order forms only.
    """
    if not (t > 0.0 and math.isfinite(t)):
        raise ValueError("binv_asymptotic: t must be finite and > 0")
    if regime == "large_t":
        return math.sqrt(2.0 * t)
    if regime == "small_t":
        if t >= 1.0:
            raise ValueError("binv_asymptotic: small_t regime needs t < 1")
        return 1.0 / math.log(1.0 / t)
    raise ValueError("regime must be 'large_t' or 'small_t'")


def _capped_sum(f, values, weights, k):
    z = k * values
    if z.size and float(z.max()) > _ARG_CAP:
        return math.inf
    return float(np.dot(weights, f(z)))


def luxemburg_norm(samples, pair=None, tol=1e-10, max_iter=300):
    """Gauge norm: inf { kappa > 0 : sum psi(f / kappa) w <= 1 }.

    Returns the feasible (upper) end of the final bisection bracket, so the
    constraint holds at the returned value.
    """
    pair = pair or log_pair()
    v, w = samples.values, samples.weights
    live = (v > 0.0) & (w > 0.0)
    if not np.any(live):
        return 0.0
    # The gauge is positively homogeneous; normalizing by max(v) keeps the
    # bisection range moderate for extreme magnitudes.
    v = v[live]
    w = w[live]
    scale = float(v.max())
    v = v / scale

    def constraint(kappa):
        return _capped_sum(pair.psi, v, w, 1.0 / kappa)

    hi = 1.0
    for _ in range(max_iter):
        if constraint(hi) <= 1.0:
            break
        hi *= 4.0
    else:
        raise ConvergenceError("luxemburg_norm: no feasible kappa found")
    lo = hi
    for _ in range(max_iter):
        lo /= 4.0
        if constraint(lo) > 1.0:
            break
    else:
        return 0.0
    for _ in range(max_iter):
        if hi - lo <= tol * max(1.0, hi):
            break
        mid = 0.5 * (lo + hi)
        if constraint(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return hi * scale


def _check_unimodal(g, u_lo, u_hi, n=17):
    """One sign change of the sampled slope across the bracket, or raise."""
    us = np.linspace(u_lo, u_hi, n)
    vals = [g(math.exp(u)) for u in us]
    rising = False
    for a, b in zip(vals, vals[1:]):
        if b < a:
            if rising:
                raise InvariantError("level_norm objective is not unimodal on bracket")
        elif b > a:
            rising = True


def level_norm(samples, a, pair=None, tol=1e-10):
    """Level-a norm inf_{k>0} (a + sum psi(k f) w) / k.

    a = 1 is the Orlicz norm, a = total mass the average norm.  The
    minimization is golden section in log k, so the returned value sits on
    the upper side of the true infimum by at most the search tolerance,
    preserving every upper-bound use.
    """
    if not (a > 0.0 and math.isfinite(a)):
        raise ValueError("level_norm: need finite a > 0")
    pair = pair or log_pair()
    v, w = samples.values, samples.weights
    live = (v > 0.0) & (w > 0.0)
    if not np.any(live):
        return 0.0
    # Positive homogeneity in f: normalize by max(v) so the optimal k stays
    # within float range even for extreme sample magnitudes.
    v = v[live]
    w = w[live]
    scale = float(v.max())
    v = v / scale

    def objective(k):
        return (a + _capped_sum(pair.psi, v, w, k)) / k

    k_lo, k_hi = bracket_min(objective)
    u_lo, u_hi = math.log(k_lo), math.log(k_hi)
    _check_unimodal(objective, u_lo, u_hi)
    _, val = golden_min(lambda u: objective(math.exp(u)), u_lo, u_hi, rel_tol=tol)
    return val * scale


def orlicz_norm(samples, pair=None, tol=1e-10):
    """Level norm at a = 1."""
    return level_norm(samples, 1.0, pair=pair, tol=tol)


def average_norm(samples, pair=None, tol=1e-10):
    """Level norm at a = total mass of the carrier."""
    if samples.total_mass == 0.0:
        return 0.0
    return level_norm(samples, samples.total_mass, pair=pair, tol=tol)


def tau_average_norm(samples, tau, pair=None, tol=1e-10):
    """Level norm at a = tau * total mass."""
    if not tau > 0.0:
        raise ValueError("tau_average_norm: need tau > 0")
    if samples.total_mass == 0.0:
        return 0.0
    return level_norm(samples, tau * samples.total_mass, pair=pair, tol=tol)


def mixed_norm(values, dx, dy, pair=None, tol=1e-10, plain=False):
    """Iterated norm: outer L1 in x of the per-slice level norm in y.

    values[i, j] samples f at x-node i, y-node j; dx and dy are the
    quadrature weights of the two axes.  Each slice is measured with
    a = sum(dy) (its y-extent); plain=True uses a = 1 instead.
    """
    vals = np.asarray(values, dtype=float)
    if vals.ndim != 2:
        raise ValueError("mixed_norm: values must be 2-D")
    dxa = np.asarray(dx, dtype=float).ravel()
    dya = np.asarray(dy, dtype=float).ravel()
    if vals.shape != (dxa.size, dya.size):
        raise ValueError("mixed_norm: shape mismatch with dx, dy")
    a = 1.0 if plain else float(dya.sum())
    if a <= 0.0:
        raise ValueError("mixed_norm: empty y-axis")
    total = 0.0
    for i in range(dxa.size):
        if dxa[i] == 0.0:
            continue
        s = WeightedSamples(vals[i], dya)
        total += dxa[i] * level_norm(s, a, pair=pair, tol=tol)
    return total


def l1w_quasinorm(seq):
    """Weak-l1 quasinorm sup_k k * a*_k over the decreasing rearrangement."""
    arr = np.abs(np.asarray(seq, dtype=float).ravel())
    if arr.size == 0:
        return 0.0
    if not np.all(np.isfinite(arr)):
        raise ValueError("l1w_quasinorm: entries must be finite")
    arr = np.sort(arr)[::-1]
    ranks = np.arange(1, arr.size + 1, dtype=float)
    return float(np.max(ranks * arr))
