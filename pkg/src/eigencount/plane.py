"""Bounds for measure potentials on the whole plane.

Three ring families organize the geometry:

    J:     log-dyadic rings, ln r running over the dyadic intervals
           (J_0 is e^-1 <= r <= e, then doubling in ln r);
    Omega: unit log rings e^n < r < e^(n+1);
    Q:     geometric rings with ratio (2 c1 / c0)^(1/alpha) for measures
           with two-sided alpha-scaling (c0 r^alpha <= mu(B) <= c1 r^alpha).

The weighted terms G_n integrate |ln r| V d(mu) over the J rings
(unweighted at n = 0), which is exactly the dyadic line machinery applied
to ln r.  The companion sums are average norms of V over the Q rings, or
iterated polar norms over the Omega rings in the area-measure case.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constants import THEOREM_CONSTANTS, ConstantInfo
from .errors import InputError, InvariantError
from .line import weighted_terms_1d
from .measures import Measure1D, carriers, spherical_rearrangement
from .orlicz import WeightedSamples, inverse_nfunction, level_norm, log_pair
from .reporting import BoundReport, SumRule, TermSeries

__all__ = [
    "RingDecomposition",
    "weighted_terms_plane",
    "orlicz_terms_plane",
    "bound_plane_measure",
    "bound_plane_lebesgue",
    "khuri_bound",
    "corner_cutoff_energy",
    "corner_inequality",
    "CornerGap",
    "adaptive_cover",
    "CoverReport",
]


@lru_cache(maxsize=1)
def _phi_inv_1():
    return inverse_nfunction(log_pair(), "phi", 1.0)


@dataclass(frozen=True)
class RingDecomposition:
    """One of the three radial ring families; see the module docstring.

    kind 'J' and 'Omega' need no parameters; kind 'Q' needs the scaling
    data (c0, c1, alpha) with c0 < 2 c1.  Ring boundaries belong to the
    ring of smaller |index|.
    """

    kind: str
    c0: float = None
    c1: float = None
    alpha: float = None

    def __post_init__(self):
        if self.kind not in ("J", "Omega", "Q"):
            raise InputError("RingDecomposition: kind must be J, Omega or Q")
        if self.kind == "Q":
            if self.c0 is None or self.c1 is None or self.alpha is None:
                raise InputError("RingDecomposition: Q rings need c0, c1, alpha")
            if not (self.c0 > 0.0 and self.c1 >= self.c0 and self.alpha > 0.0):
                raise InputError("RingDecomposition: need 0 < c0 <= c1, alpha > 0")
            if self.c0 >= 2.0 * self.c1:
                raise InputError("RingDecomposition: need c0 < 2 c1")

    @property
    def ratio(self):
        if self.kind != "Q":
            raise InputError("ratio is defined for Q rings only")
        return (2.0 * self.c1 / self.c0) ** (1.0 / self.alpha)

    def interval(self, n):
        if self.kind == "J":
            if n == 0:
                return (math.exp(-1.0), math.e)
            if n > 0:
                return (math.exp(2.0 ** (n - 1)), math.exp(2.0**n))
            return (math.exp(-(2.0 ** (-n))), math.exp(-(2.0 ** (-n - 1))))
        if self.kind == "Omega":
            return (math.exp(n), math.exp(n + 1.0))
        rho = self.ratio
        return (rho ** (n - 1), rho**n)

    def assign(self, r):
        if not (r > 0.0 and math.isfinite(r)):
            raise InputError("RingDecomposition.assign: r must be finite, > 0")
        if self.kind == "J":
            return _assign_log_dyadic(math.log(r))
        if self.kind == "Omega":
            t = math.log(r)
            n = math.floor(t)
            if t == n:  # shared boundary: smaller |index|
                return int(n) if n <= 0 else int(n) - 1
            return int(n)
        t = math.log(r) / math.log(self.ratio)
        n = math.ceil(t)
        if t == n:  # r = rho^n, shared with ring n + 1: smaller |index|
            return int(n) if n >= 0 else int(n) + 1
        return int(n)


def _assign_log_dyadic(t):
    # same rule as the dyadic line intervals, applied to ln r
    at = abs(t)
    if at <= 1.0:
        return 0
    n = math.ceil(math.log2(at))
    if 2.0 ** (n - 1) >= at:
        n -= 1
    elif 2.0**n < at:
        n += 1
    return n if t > 0.0 else -n


def _log_radial_measure(V, mu):
    pts, wts, vals = carriers(V, mu)
    mass = wts * vals
    live = mass > 0.0
    r = np.sqrt(np.einsum("ij,ij->i", pts[live], pts[live]))
    if np.any(r == 0.0):
        raise InputError("weighted terms need V mass away from the origin")
    return Measure1D(atoms=np.log(r), atom_mass=mass[live])


def weighted_terms_plane(V, mu, label="G"):
    """Ring terms G_n = integral of |ln r| V d(mu) over the J ring
    (unweighted at n = 0).  Carriers with V-mass at r = 0 are rejected."""
    nu = _log_radial_measure(V, mu)
    series = weighted_terms_1d(nu, label=label)
    return TermSeries(
        label=series.label,
        geometry="log-dyadic rings, |ln r|-weighted off the central ring",
        terms=series.terms,
    )


def orlicz_terms_plane(V, mu, c0, c1, alpha, tol=1e-10):
    """Average norms of V over the Q rings of the scaling (c0, c1, alpha).

    On grid measures, rings thinner than two cells merge with their
    neighbors (recorded in the geometry note); each term is the level
    norm at a = mass of the (merged) ring.
    """
    rings = RingDecomposition("Q", c0=c0, c1=c1, alpha=alpha)
    pts, wts, vals = carriers(V, mu)
    live = wts > 0.0
    pts, wts, vals = pts[live], wts[live], vals[live]
    if pts.shape[0] == 0:
        raise InputError("orlicz_terms_plane: empty measure")
    r = np.sqrt(np.einsum("ij,ij->i", pts, pts))
    if np.any(r == 0.0) and np.any(vals[r == 0.0] > 0.0):
        raise InputError("orlicz_terms_plane: V mass at the origin")
    keep = r > 0.0
    pts, wts, vals, r = pts[keep], wts[keep], vals[keep], r[keep]
    idx = np.array([rings.assign(x) for x in r])
    n_lo, n_hi = int(idx.min()), int(idx.max())
    span = list(range(n_lo, n_hi + 1))
    min_width = 0.0
    if mu.grid is not None:
        min_width = 2.0 * max(mu.grid.cell)
    groups = []
    cur = []
    for n in span:
        cur.append(n)
        lo = rings.interval(cur[0])[0]
        hi = rings.interval(n)[1]
        if hi - lo >= min_width:
            groups.append(tuple(cur))
            cur = []
    if cur:
        if groups:
            groups[-1] = groups[-1] + tuple(cur)
        else:
            groups.append(tuple(cur))
    merged_note = ""
    merged = [g for g in groups if len(g) > 1]
    if merged:
        merged_note = "; merged rings: " + ", ".join(
            "%d..%d" % (g[0], g[-1]) for g in merged
        )
    terms = {}
    for g in groups:
        sel = np.isin(idx, g)
        if not np.any(sel):
            continue
        a = float(wts[sel].sum())
        if a <= 0.0:
            continue
        t = level_norm(WeightedSamples(vals[sel], wts[sel]), a, tol=tol)
        if t > 0.0:
            terms[g[0]] = t
    return TermSeries(
        label="D",
        geometry="scaling rings (ratio %.6g), average norms%s"
        % (rings.ratio, merged_note),
        terms=terms,
    )


def bound_plane_measure(terms_g, terms_d, norm_coefficient=None):
    """Count bound for a plane measure potential:

        1 + 4 sum over G_n > 1/4 of sqrt(G_n) + C sum of ring norms D_n.

    C is not pinned down by the source; defaults to 1, tagged accordingly.
    """
    cc = THEOREM_CONSTANTS["mainthm"]
    nc = cc["norm_coefficient"]
    if norm_coefficient is not None:
        nc = nc.as_user(norm_coefficient)
    rules = (
        SumRule("sqrt", cc["coefficient"], cc["threshold"]),
        SumRule("identity", nc, cc["norm_threshold"]),
    )
    return BoundReport(
        method="mainthm", base=1.0, series=(terms_g, terms_d), rules=rules
    )


def _grid_lookup(mu, V):
    g = mu.grid
    vals = V.values_for(mu)[mu.atom_mass.size :].reshape(g.shape)
    ox, oy = g.origin
    hx, hy = g.cell
    nx, ny = g.shape

    def look(x, y):
        i = int(math.floor((x - ox) / hx))
        j = int(math.floor((y - oy) / hy))
        if 0 <= i < nx and 0 <= j < ny:
            return vals[i, j]
        return 0.0

    return look


def _polar_norm_terms(V, mu, tol=1e-10, n_theta=128):
    """Iterated polar norms over the Omega rings for an area grid:
    the radial L1 (weight r dr) of the per-radius angular average norm."""
    g = mu.grid
    look = _grid_lookup(mu, V)
    centers = g.centers()
    rad = np.sqrt(np.einsum("ij,ij->i", centers, centers))
    cvals = V.values_for(mu)[mu.atom_mass.size :]
    live = cvals > 0.0
    if not np.any(live):
        return TermSeries(label="D", geometry="unit log rings, polar norms", terms={})
    half_diag = 0.5 * math.hypot(*g.cell)
    r_min = max(float(rad[live].min()) - half_diag, 1e-12)
    r_max = float(rad[live].max()) + half_diag
    rings = RingDecomposition("Omega")
    n_lo = rings.assign(r_min)
    n_hi = rings.assign(r_max)
    h_min = min(g.cell)
    thetas = (np.arange(n_theta) + 0.5) * (2.0 * math.pi / n_theta)
    dtheta = np.full(n_theta, 2.0 * math.pi / n_theta)
    cos_t, sin_t = np.cos(thetas), np.sin(thetas)
    terms = {}
    for n in range(n_lo, n_hi + 1):
        lo, hi = rings.interval(n)
        lo = max(lo, r_min)
        hi = min(hi, r_max)
        if hi <= lo:
            continue
        nr = int(min(max(math.ceil((hi - lo) / h_min), 8), 384))
        dr = (hi - lo) / nr
        total = 0.0
        for j in range(nr):
            r = lo + (j + 0.5) * dr
            row = np.array([look(r * c, r * s) for c, s in zip(cos_t, sin_t)])
            if not np.any(row > 0.0):
                continue
            nrm = level_norm(
                WeightedSamples(row, dtheta), 2.0 * math.pi, tol=tol
            )
            total += dr * r * nrm
        if total > 0.0:
            terms[n] = total
    return TermSeries(
        label="D",
        geometry="unit log rings, L1(r dr) of the angular average norm",
        terms=terms,
    )


def bound_plane_lebesgue(V, mu, radial=False, norm_coefficient=None, tol=1e-10):
    """Count bound for an area potential on the plane:

        1 + 4 sum over A_n > 1/4 of sqrt(A_n) + C sum of polar norms D_n

    with A_n the |ln r|-weighted J-ring integrals.  For radial V the norm
    sum is redundant and the report says so; C defaults to 1.
    """
    if not mu.is_lebesgue_grid:
        raise InputError("bound_plane_lebesgue: measure must be an area grid")
    terms_a = weighted_terms_plane(V, mu, label="A")
    terms_d = _polar_norm_terms(V, mu, tol=tol)
    cc = THEOREM_CONSTANTS["laptnetrsol"]
    nc = cc["norm_coefficient"]
    if norm_coefficient is not None:
        nc = nc.as_user(norm_coefficient)
    rules = (
        SumRule("sqrt", cc["coefficient"], cc["threshold"]),
        SumRule("identity", nc, cc["norm_threshold"]),
    )
    notes = ()
    if radial:
        notes = (
            "radial potential: the polar-norm sum is redundant and may be dropped",
        )
    return BoundReport(
        method="laptnetrsol",
        base=1.0,
        series=(terms_a, terms_d),
        rules=rules,
        notes=notes,
    )


def khuri_bound(V, mu, coefficient=None):
    """Integral count bound for an area potential:

        1 + C ( integral V ln(2 + r) dx
              + integral over r < 1 of V* ln(1/r) dx )

    with V* the decreasing spherical rearrangement.  C is not specified
    by the source and defaults to 1.  Near-origin cells integrate the log
    weight at an effective radius of a quarter cell diagonal.
    """
    if not mu.is_lebesgue_grid:
        raise InputError("khuri_bound: measure must be an area grid")
    g = mu.grid
    area = g.cell_area
    centers = g.centers()
    r = np.sqrt(np.einsum("ij,ij->i", centers, centers))
    vals = V.values_for(mu)[mu.atom_mass.size :]
    i1 = float(np.dot(vals, np.log(2.0 + r)) * area)
    vstar = spherical_rearrangement(V, mu)
    svals = vstar.cell_values.ravel()
    r_eff = np.maximum(r, 0.25 * math.hypot(*g.cell))
    inside = r_eff < 1.0
    i2 = float(np.dot(svals[inside], np.log(1.0 / r_eff[inside])) * area)
    cc = THEOREM_CONSTANTS["khuri"]
    coeff = cc["coefficient"]
    if coefficient is not None:
        coeff = coeff.as_user(coefficient)
    thresh = ConstantInfo("threshold", 0.0, "default-unspecified")
    series = (
        TermSeries("K1", "ln(2 + r)-weighted integral of V", {0: i1}),
        TermSeries("K2", "near-origin ln(1/r) integral of V*", {0: i2}),
    )
    rules = (SumRule("identity", coeff, thresh), SumRule("identity", coeff, thresh))
    return BoundReport(method="khuri", base=1.0, series=series, rules=rules)


# ---------------------------------------------------------------------------
# The corner obstruction

def corner_cutoff_energy(r):
    """Dirichlet energy of the log cutoff around a square corner.

    The cutoff is 1 on |x - x0| <= r, falls like ln(|x - x0| sqrt(2)) /
    ln(r sqrt(2)) and hits 0 at |x - x0| = 1/sqrt(2); its energy over the
    unit square is (pi/2) / (-ln(r sqrt(2))).
    """
    if not 0.0 < r < 1.0 / math.sqrt(2.0):
        raise InputError("corner_cutoff_energy: need 0 < r < 1/sqrt(2)")
    return (math.pi / 2.0) / (-math.log(r * math.sqrt(2.0)))


@dataclass(frozen=True)
class CornerGap:
    """One evaluation of the candidate corner inequality."""

    r: float
    lhs: float
    rhs: float
    energy: float
    holds: bool


def corner_inequality(r, c0, c1, alpha, c6=1.0):
    """Candidate inequality mu(Q) <= C6 (c1/c0) 2^alpha PhiInv(1) mu(Q) E(r)
    for a measure concentrated at a corner, normalized by mu(Q).

    E(r) is the corner cutoff energy; the right side vanishes as r -> 0
    while the left side stays 1, so the inequality fails for small r: mass
    piled into a corner defeats any such square-local estimate.
    """
    if not (0.0 < c0 <= c1 and alpha > 0.0 and c6 > 0.0):
        raise InputError("corner_inequality: need 0 < c0 <= c1, alpha > 0, c6 > 0")
    energy = corner_cutoff_energy(r)
    rhs = c6 * (c1 / c0) * 2.0**alpha * _phi_inv_1() * energy
    return CornerGap(r=r, lhs=1.0, rhs=rhs, energy=energy, holds=1.0 <= rhs)


# ---------------------------------------------------------------------------
# Adaptive square covers

@dataclass(frozen=True)
class CoverReport:
    """Adaptive cover of a region by norm-calibrated squares.

    squares holds (center, side) pairs; norms the achieved square norms
    (>= target except for capped squares, whose indices are in flagged);
    families groups square indices into pairwise-disjoint sets.
    """

    target: float
    kappa0: float
    squares: tuple
    norms: tuple
    families: tuple
    flagged: tuple
    region: tuple
    n: int

    @property
    def linkage_bound(self):
        return len(self.families)


def _square_norm(d, r, wts, vals, in_region, tol):
    # d holds the sup-metric distances from the square's center to every
    # carrier, so membership is a single comparison
    inside = d <= r
    a = float(wts[inside].sum())
    if a <= 0.0:
        return 0.0
    sel = inside & in_region & (vals > 0.0)
    if not np.any(sel):
        return 0.0
    return level_norm(WeightedSamples(vals[sel], wts[sel]), a, tol=tol)


def adaptive_cover(V, mu, region, n, c0, c1, alpha, families_cap=19, tol=1e-8):
    """Cover the support of mu inside a rectangle by squares whose average
    norm of V (extended by zero off the region) hits a common target.

    The target is kappa0 * families_cap / n times the region norm, with
    kappa0 = (c1/c0) (3 sqrt(2))^alpha from the scaling data.  Squares are
    grown by bisection to the smallest radius reaching the target, thinned
    greedily (largest first, keeping squares whose centers are uncovered),
    and split into pairwise-disjoint families.  The construction asserts
    at most n squares and at most families_cap families.
    """
    xmin, xmax, ymin, ymax = (float(v) for v in region)
    if not (xmax > xmin and ymax > ymin):
        raise InputError("adaptive_cover: empty region")
    kappa0 = (c1 / c0) * (3.0 * math.sqrt(2.0)) ** alpha
    if not (isinstance(n, int) and n > kappa0 * families_cap):
        raise InputError(
            "adaptive_cover: need integer n > kappa0 * families_cap = %.6g"
            % (kappa0 * families_cap)
        )
    pts, wts, vals = carriers(V, mu)
    in_region = (
        (pts[:, 0] >= xmin)
        & (pts[:, 0] <= xmax)
        & (pts[:, 1] >= ymin)
        & (pts[:, 1] <= ymax)
    )
    support = in_region & (wts > 0.0)
    if not np.any(support):
        raise InputError("adaptive_cover: no mass inside the region")
    a_region = float(wts[support].sum())
    sel = support & (vals > 0.0)
    if not np.any(sel):
        raise InputError("adaptive_cover: V vanishes on the region")
    region_norm = level_norm(WeightedSamples(vals[sel], wts[sel]), a_region, tol=tol)
    target = kappa0 * families_cap / float(n) * region_norm

    centers = pts[support]
    squares = []
    capped = []
    for cx, cy in centers:
        d = np.maximum(np.abs(pts[:, 0] - cx), np.abs(pts[:, 1] - cy))
        # a square this large holds every carrier seen from (cx, cy)
        r_cap = max(
            abs(cx - xmin), abs(xmax - cx), abs(cy - ymin), abs(ymax - cy),
            float(d.max()),
        )
        if _square_norm(d, r_cap, wts, vals, in_region, tol) < target:
            # norm saturates below the target: cap at the region-holding
            # square and flag it rather than fail
            squares.append((float(cx), float(cy), r_cap))
            capped.append(len(squares) - 1)
            continue
        # the norm is a nondecreasing step function of r, jumping only where
        # a carrier enters the square: search those radii for the smallest
        # one at or above the target
        radii = np.unique(d)
        lo, hi = 0, radii.size - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if _square_norm(d, float(radii[mid]), wts, vals, in_region, tol) >= target:
                hi = mid
            else:
                lo = mid + 1
        squares.append((float(cx), float(cy), float(radii[lo])))

    # greedy thinning: biggest squares first, keep those with uncovered centers
    order = sorted(range(len(squares)), key=lambda i: -squares[i][2])
    chosen = []
    covered = np.zeros(len(squares), dtype=bool)
    for i in order:
        if covered[i]:
            continue
        cx, cy, r = squares[i]
        chosen.append(i)
        for k, (qx, qy, _) in enumerate(squares):
            if abs(qx - cx) <= r and abs(qy - cy) <= r:
                covered[k] = True
    if len(chosen) > n:
        raise InvariantError(
            "adaptive_cover: %d squares exceed the cardinality bound %d"
            % (len(chosen), n)
        )

    # disjoint families by first-fit on the thinned squares
    families = []
    for i in chosen:
        cx, cy, r = squares[i]
        home = None
        for f, members in enumerate(families):
            ok = all(
                abs(squares[m][0] - cx) > r + squares[m][2]
                or abs(squares[m][1] - cy) > r + squares[m][2]
                for m in members
            )
            if ok:
                home = f
                break
        if home is None:
            families.append([i])
        else:
            families[home].append(i)
    if len(families) > families_cap:
        raise InvariantError(
            "adaptive_cover: %d families exceed the cap %d"
            % (len(families), families_cap)
        )
    norms = tuple(
        _square_norm(
            np.maximum(
                np.abs(pts[:, 0] - squares[i][0]), np.abs(pts[:, 1] - squares[i][1])
            ),
            squares[i][2],
            wts,
            vals,
            in_region,
            tol,
        )
        for i in chosen
    )
    remap = {old: new for new, old in enumerate(chosen)}
    fam_idx = tuple(tuple(remap[m] for m in members) for members in families)
    final = tuple(
        ((float(cx), float(cy)), float(2.0 * r))
        for cx, cy, r in (squares[i] for i in chosen)
    )
    return CoverReport(
        target=target,
        kappa0=kappa0,
        squares=final,
        norms=norms,
        families=fam_idx,
        flagged=tuple(remap[i] for i in capped if i in remap),
        region=(xmin, xmax, ymin, ymax),
        n=n,
    )
