"""One-dimensional machinery: kappa calculus, dyadic terms, bounds,
interval partitions and mollification.

The counted object is the Schrodinger form on the line with a measure
potential,

    E[u] = integral |u'|^2 dx - 2 integral |u|^2 d(nu),

bounded through weighted dyadic terms A_n.  The kappa calculus provides
the coefficient/threshold family behind the numeric constants: C(kappa;
a, b) from the weighted Hardy inequality on [a, b] and its reciprocal
companion Phi(kappa), linked by Phi(kappa) (4 kappa + 1) C(kappa; 1, 2)
= 1.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import THEOREM_CONSTANTS, ConstantInfo
from .errors import InputError, InvariantError
from .measures import Measure1D
from .reporting import BoundReport, SumRule, TermSeries
from .solvers import golden_min

__all__ = [
    "c_kappa",
    "phi_kappa",
    "optimize_phi",
    "KappaCalculus",
    "recompute_constants",
    "DyadicDecomposition",
    "assign_dyadic",
    "weighted_terms_1d",
    "bound_1d",
    "bound_1d_general",
    "partition_interval",
    "partition_piece_value",
    "partition_target",
    "partition_quality",
    "mollify_measure",
]


def c_kappa(kappa, a, b):
    """Hardy constant C(kappa; a, b) on the interval [a, b], 0 < a < b."""
    if not kappa > 0.0:
        raise InputError("c_kappa: kappa must be > 0")
    if not 0.0 < a < b:
        raise InputError("c_kappa: need 0 < a < b")
    g = math.sqrt(1.0 + 4.0 * kappa)
    bg = b**g
    ag = a**g
    return (1.0 + g * (bg + ag) / (bg - ag)) / (2.0 * kappa)


def phi_kappa(kappa):
    """Threshold function Phi(kappa) = 1 / ((4 kappa + 1) C(kappa; 1, 2))."""
    g = math.sqrt(4.0 * kappa + 1.0)
    tg = 2.0**g
    return (2.0 * kappa / (4.0 * kappa + 1.0)) / (1.0 + g * (tg + 1.0) / (tg - 1.0))


def optimize_phi(tol=1e-10):
    """Maximize Phi over kappa in (0.01, 100); returns (kappa, Phi(kappa))."""
    k, neg = golden_min(lambda t: -phi_kappa(t), 0.01, 100.0, rel_tol=tol)
    return k, -neg


@dataclass(frozen=True)
class KappaCalculus:
    """A kappa with its C(kappa; 1, 2) and Phi(kappa), identity-checked."""

    kappa: float
    c_value: float = None
    phi_value: float = None

    def __post_init__(self):
        if not self.kappa > 0.0:
            raise InputError("KappaCalculus: kappa must be > 0")
        c = c_kappa(self.kappa, 1.0, 2.0) if self.c_value is None else self.c_value
        p = phi_kappa(self.kappa) if self.phi_value is None else self.phi_value
        product = p * (4.0 * self.kappa + 1.0) * c
        if abs(product - 1.0) > 1e-10:
            raise InvariantError(
                "Phi(kappa) (4 kappa + 1) C(kappa; 1, 2) = %.17g, not 1" % product
            )
        object.__setattr__(self, "c_value", c)
        object.__setattr__(self, "phi_value", p)


def recompute_constants(kappa):
    """Coefficient/threshold pair derived from a user-chosen kappa:
    2 sqrt(4 kappa + 1) and Phi(kappa)."""
    if not kappa > 0.0:
        raise InputError("recompute_constants: kappa must be > 0")
    coeff = 2.0 * math.sqrt(4.0 * kappa + 1.0)
    return (
        ConstantInfo("coefficient", coeff, "user"),
        ConstantInfo("threshold", phi_kappa(kappa), "user"),
    )


@dataclass(frozen=True)
class DyadicDecomposition:
    """Doubling intervals: I_0 = [-1, 1], I_n = [2^(n-1), 2^n] for n > 0,
    mirrored for n < 0.  Consecutive intervals share endpoints; shared
    points are assigned to the smaller |n| (ties to the right)."""

    n_min: int
    n_max: int

    def __post_init__(self):
        if self.n_min > self.n_max:
            raise InputError("DyadicDecomposition: n_min > n_max")

    def indices(self):
        return range(self.n_min, self.n_max + 1)

    def interval(self, n):
        if n == 0:
            return (-1.0, 1.0)
        if n > 0:
            return (2.0 ** (n - 1), 2.0**n)
        return (-(2.0 ** (-n)), -(2.0 ** (-n - 1)))

    @classmethod
    def covering(cls, xs):
        xs = np.asarray(xs, dtype=float).ravel()
        if xs.size == 0:
            return cls(0, 0)
        ns = [assign_dyadic(x) for x in xs]
        return cls(min(min(ns), 0), max(max(ns), 0))


def assign_dyadic(x):
    """Index n of the dyadic interval containing x (shared endpoints go to
    the smaller |n|)."""
    if not math.isfinite(x):
        raise InputError("assign_dyadic: x must be finite")
    ax = abs(x)
    if ax <= 1.0:
        return 0
    n = math.ceil(math.log2(ax))
    # guard against log rounding right at a power of two
    if 2.0 ** (n - 1) >= ax:
        n -= 1
    elif 2.0**n < ax:
        n += 1
    return n if x > 0.0 else -n


def weighted_terms_1d(nu, label="A"):
    """Dyadic terms A_n = integral over I_n of |x| d(nu), unweighted at
    n = 0.  Grid cells contribute through their centers."""
    pts = nu.points()
    wts = nu.masses()
    terms = {}
    for x, m in zip(pts, wts):
        if m == 0.0:
            continue
        n = assign_dyadic(float(x))
        w = 1.0 if n == 0 else abs(float(x))
        terms[n] = terms.get(n, 0.0) + w * m
    return TermSeries(
        label=label,
        geometry="dyadic intervals on the line, |x|-weighted off the center",
        terms=terms,
    )


def bound_1d(terms, kappa=None):
    """Count bound 1 + coefficient * sum over A_n > threshold of sqrt(A_n).

    Default constants are the published 5.06 / 0.092; passing kappa
    switches to the recomputed pair (2 sqrt(4 kappa + 1), Phi(kappa)).
    """
    if kappa is None:
        cc = THEOREM_CONSTANTS["est1"]
        coeff, thresh = cc["coefficient"], cc["threshold"]
    else:
        coeff, thresh = recompute_constants(kappa)
    rule = SumRule("sqrt", coeff, thresh)
    return BoundReport(method="est1", base=1.0, series=(terms,), rules=(rule,))


def bound_1d_general(terms, kappa):
    """Structural count bound at a chosen kappa:

        1 + sum over n != 0, A_n > Phi(kappa) of ceil(sqrt((4k+1) A_n))
          + sqrt(2 (4k+1) A_0)   (dropped when A_0 <= Phi(kappa))
    """
    if not kappa > 0.0:
        raise InputError("bound_1d_general: kappa must be > 0")
    scale = 4.0 * kappa + 1.0
    thresh = ConstantInfo("threshold", phi_kappa(kappa), "user")
    one = ConstantInfo("coefficient", 1.0, "paper-explicit")
    side = {n: t for n, t in terms.terms.items() if n != 0}
    center = {0: terms.terms.get(0, 0.0)}
    series = (
        TermSeries(terms.label, terms.geometry + " (n != 0)", side),
        TermSeries(terms.label + "0", "central interval, unweighted", center),
    )
    rules = (
        SumRule("ceil_sqrt_scale", one, thresh, scale=scale),
        SumRule("sqrt_scale", one, thresh, scale=2.0 * scale),
    )
    return BoundReport(
        method="xgenest",
        base=1.0,
        series=series,
        rules=rules,
        constants=(ConstantInfo("kappa", kappa, "user"),),
    )


# ---------------------------------------------------------------------------
# Interval partitions with controlled pieces

def partition_piece_value(nu, lo, hi, a_exp):
    """(hi - lo)^a * nu([lo, hi)), the quantity the partition controls."""
    return (hi - lo) ** a_exp * nu.mass_co(lo, hi)


def partition_target(nu, lo, hi, n, a_exp):
    """(hi - lo)^a * n^(-1-a) * nu([lo, hi)), the guaranteed piece bound."""
    return (hi - lo) ** a_exp * float(n) ** (-1.0 - a_exp) * nu.mass_co(lo, hi)


def _peel_right(nu, lo, hi, target, a_exp):
    """Largest y with piece_value(y, hi) <= target, by feasible-side bisection.

    piece_value(y, hi) decreases continuously from the full-interval value
    to 0 as y goes from lo to hi; returning the feasible endpoint keeps the
    peeled piece at or below target in float arithmetic, not only in exact
    arithmetic.
    """
    if partition_piece_value(nu, lo, hi, a_exp) <= target:
        return lo
    y_lo, y_hi = lo, hi
    for _ in range(200):
        mid = 0.5 * (y_lo + y_hi)
        if mid <= y_lo or mid >= y_hi:
            break
        if partition_piece_value(nu, mid, hi, a_exp) <= target:
            y_hi = mid
        else:
            y_lo = mid
    return y_hi


def partition_interval(nu, interval, n, a_exp=1.0):
    """Split [lo, hi] into n pieces with (len_k)^a nu(piece_k) small.

    Every piece of the returned partition satisfies

        (t_k - t_{k-1})^a * nu([t_{k-1}, t_k)) <= l^a n^(-1-a) nu([lo, hi))

    for atomless nu (atoms make the piece functional jump; mollify first).
    Returns the n - 1 interior breakpoints.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not hi > lo:
        raise InputError("partition_interval: interval must be increasing")
    if not (isinstance(n, int) and n >= 1):
        raise InputError("partition_interval: n must be an integer >= 1")
    if not a_exp > 0.0:
        raise InputError("partition_interval: a_exp must be > 0")
    if nu.atoms.size and np.any(
        (nu.atom_mass > 0.0) & (nu.atoms >= lo) & (nu.atoms <= hi)
    ):
        raise InputError(
            "partition_interval: nu has atoms inside the interval; "
            "apply mollify_measure first"
        )
    total = nu.mass_co(lo, hi)
    if total == 0.0:
        return lo + (hi - lo) * np.arange(1, n) / n
    top_target = partition_target(nu, lo, hi, n, a_exp)
    breaks = []
    cur_hi = hi
    for m in range(n, 1, -1):
        tgt = partition_target(nu, lo, cur_hi, m, a_exp)
        # the per-level target never exceeds the top-level one; enforcing
        # the smaller of the two keeps the global guarantee in float
        tgt = min(tgt, top_target)
        y = _peel_right(nu, lo, cur_hi, tgt, a_exp)
        breaks.append(y)
        cur_hi = y
    breaks = np.array(breaks[::-1])
    theta = partition_quality(nu, interval, breaks, a_exp)
    # Peeled pieces are float-feasible by construction.  The leftover
    # leftmost piece equals the target exactly for equality-tight measures
    # (e.g. uniform), where rounding can land one ulp above; allow that
    # hair, reject anything larger.
    if theta > top_target * (1.0 + 1e-13):
        raise InvariantError(
            "partition_interval: piece bound violated (%.17g > %.17g)"
            % (theta, top_target)
        )
    return breaks


def partition_quality(nu, interval, breaks, a_exp=1.0):
    """Largest piece functional over the partition defined by the breaks."""
    lo, hi = float(interval[0]), float(interval[1])
    edges = [lo] + [float(b) for b in np.asarray(breaks).ravel()] + [hi]
    worst = 0.0
    for a, b in zip(edges, edges[1:]):
        if b < a:
            raise InputError("partition_quality: breakpoints must be sorted")
        worst = max(worst, partition_piece_value(nu, a, b, a_exp))
    return worst


# ---------------------------------------------------------------------------
# Mollification

def _bump(t):
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    ti = t[inside]
    out[inside] = np.exp(-1.0 / (1.0 - ti * ti))
    return out


def mollify_measure(nu, eps, cells_per_eps=16):
    """Convolve nu with a compact bump of radius eps.

    Returns a pure density measure on a uniform grid of step
    eps / cells_per_eps.  Each source's smeared weights are normalized, so
    total mass is preserved exactly; support grows by at most eps.
    """
    if not eps > 0.0:
        raise InputError("mollify_measure: eps must be > 0")
    src_x = nu.points()
    src_m = nu.masses()
    if src_x.size == 0 or not np.any(src_m > 0.0):
        raise InputError("mollify_measure: empty measure")
    lo, hi = nu.support_bounds()
    h = eps / float(cells_per_eps)
    x0 = lo - eps
    ncells = int(math.ceil((hi + eps - x0) / h)) + 1
    out = np.zeros(ncells)
    centers = x0 + (np.arange(ncells) + 0.5) * h
    for x, m in zip(src_x, src_m):
        if m == 0.0:
            continue
        j0 = max(int((x - eps - x0) / h) - 1, 0)
        j1 = min(int((x + eps - x0) / h) + 2, ncells)
        w = _bump((centers[j0:j1] - x) / eps)
        s = w.sum()
        if s == 0.0:
            # source sits between cell centers at very coarse resolution
            j = min(max(int((x - x0) / h), 0), ncells - 1)
            out[j] += m
        else:
            out[j0:j1] += m * (w / s)
    return Measure1D(grid_x0=x0, grid_h=h, grid_mass=out)
