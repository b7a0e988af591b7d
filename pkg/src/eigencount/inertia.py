"""Independent eigenvalue counting through matrix inertia.

Finite-difference form matrices are assembled for the line, the strip and
the plane, mass-normalized so that the generalized pencil reduces to an
ordinary symmetric matrix.  Counting eigenvalues below a shift is then the
number of negative pivots of the band LDL^T factorization of M - shift I
(Sylvester's law); no eigenvalue solver is involved, which keeps the
oracle independent from the bound machinery it cross-checks.

Truncation to a box uses natural (Neumann) walls, which can only lower
eigenvalues, so the discrete count approaches the true count from above
as the box grows and the mesh refines.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InputError
from .measures import carriers
from .strip import lambda12

__all__ = [
    "SymmetricBandMatrix",
    "OracleResult",
    "inertia_count",
    "discretize_1d",
    "discretize_strip",
    "discretize_plane",
]


@dataclass(frozen=True, eq=False)
class SymmetricBandMatrix:
    """Lower band storage: data[j, d] = M[j + d, j], d = 0..bandwidth."""

    order: int
    bandwidth: int
    data: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.data, dtype=float)
        if d.shape != (self.order, self.bandwidth + 1):
            raise InputError("band data must have shape (order, bandwidth + 1)")
        if not np.all(np.isfinite(d)):
            raise InputError("band data must be finite")
        object.__setattr__(self, "data", d)

    @classmethod
    def from_dense(cls, m):
        m = np.asarray(m, dtype=float)
        n = m.shape[0]
        if m.shape != (n, n) or not np.allclose(m, m.T, atol=1e-12):
            raise InputError("from_dense: matrix must be square symmetric")
        bw = 0
        for j in range(n):
            nz = np.nonzero(m[:, j])[0]
            if nz.size:
                bw = max(bw, int(nz.max()) - j)
        data = np.zeros((n, bw + 1))
        for j in range(n):
            top = min(bw, n - 1 - j)
            data[j, : top + 1] = m[j : j + top + 1, j]
        return cls(n, bw, data)

    def to_dense(self):
        n, bw = self.order, self.bandwidth
        m = np.zeros((n, n))
        for j in range(n):
            top = min(bw, n - 1 - j)
            m[j : j + top + 1, j] = self.data[j, : top + 1]
            m[j, j : j + top + 1] = self.data[j, : top + 1]
        return m


@dataclass(frozen=True)
class OracleResult:
    """Inertia count with its factorization diagnostics."""

    count: int
    shift: float
    order: int
    bandwidth: int
    min_pivot: float
    perturbed_pivots: int


def inertia_count(m, shift=0.0):
    """Eigenvalues of m below the shift, by band LDL^T pivot signs.

    Diagonal pivoting only; a vanishing pivot is nudged by
    1e-12 * max|M| so the factorization always completes, and the number
    of nudged pivots is reported (each one marks an eigenvalue at the
    shift up to discretization accuracy).
    """
    n, bw = m.order, m.bandwidth
    w = m.data.copy()
    w[:, 0] -= shift
    scale = float(np.abs(w).max())
    if scale == 0.0:
        return OracleResult(0, shift, n, bw, 0.0, n)
    tiny = 1e-12 * scale
    negatives = 0
    perturbed = 0
    min_pivot = math.inf
    for j in range(n):
        d = w[j, 0]
        if abs(d) <= tiny:
            perturbed += 1
            d = tiny if d >= 0.0 else -tiny
        min_pivot = min(min_pivot, abs(d))
        if d < 0.0:
            negatives += 1
        b = min(bw, n - 1 - j)
        if b <= 0:
            continue
        v = w[j, 1 : b + 1].copy()
        for p in range(1, b + 1):
            if v[p - 1] == 0.0:
                continue
            w[j + p, 0 : b - p + 1] -= v[p - 1 : b] * (v[p - 1] / d)
        if not np.all(np.isfinite(w[j + 1 : j + b + 1, 0])):
            raise ConvergenceError("inertia_count: factorization overflowed")
    return OracleResult(negatives, shift, n, bw, min_pivot, perturbed)


def _deposit(nodes, xs, masses, h_cell):
    """Nearest-node deposition of point masses; ties go to the lower node."""
    out = np.zeros(nodes.size)
    if xs.size == 0:
        return out
    idx = np.clip(np.round((xs - nodes[0]) / h_cell).astype(int), 0, nodes.size - 1)
    np.add.at(out, idx, masses)
    return out


def discretize_1d(nu, interval, h, bc="neumann"):
    """Form matrix of u -> integral u'^2 dx - integral u^2 d(nu) on the
    interval, mass-normalized; bc 'neumann' or 'dirichlet' at both ends.

    Atom masses (and density cells, through their centers) deposit on the
    nearest node.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not hi > lo:
        raise InputError("discretize_1d: interval must be increasing")
    if not 0.0 < h < (hi - lo):
        raise InputError("discretize_1d: h must be in (0, length)")
    if bc not in ("neumann", "dirichlet"):
        raise InputError("discretize_1d: bc must be 'neumann' or 'dirichlet'")
    pts = nu.points()
    if pts.size and (pts.min() < lo or pts.max() > hi):
        raise InputError("discretize_1d: measure support outside the interval")
    nseg = max(int(round((hi - lo) / h)), 2)
    hh = (hi - lo) / nseg
    nodes = lo + hh * np.arange(nseg + 1)
    weights = np.full(nseg + 1, hh)
    weights[0] = weights[-1] = hh / 2.0
    pot = _deposit(nodes, nu.points(), nu.masses(), hh)
    n = nodes.size
    diag = np.zeros(n)
    off = np.full(n - 1, -1.0 / hh)
    diag[0] = diag[-1] = 1.0 / hh
    diag[1:-1] = 2.0 / hh
    diag -= pot
    if bc == "dirichlet":
        keep = slice(1, n - 1)
        diag = diag[keep]
        off = off[1:-1]
        weights = weights[keep]
        n -= 2
    # mass normalization: congruence by diag(weights)^(-1/2)
    rw = 1.0 / np.sqrt(weights)
    diag = diag * rw * rw
    off = off * rw[:-1] * rw[1:]
    data = np.zeros((n, 2))
    data[:, 0] = diag
    data[:-1, 1] = off
    return SymmetricBandMatrix(n, 1, data)


def _grid_nodes(lo, hi, h):
    nseg = max(int(round((hi - lo) / h)), 2)
    hh = (hi - lo) / nseg
    return lo + hh * np.arange(nseg + 1), hh


def _assemble_2d(x_nodes, y_nodes, hx, hy, pot_node, lam_shift,
                 alpha=0.0, beta=0.0, drop_bottom=False, drop_top=False):
    """Mass-normalized form matrix on the tensor node grid.

    pot_node holds the deposited potential mass per node; lam_shift is
    subtracted against the lumped node measure; alpha/beta act on the
    bottom/top node lines with the longitudinal trapezoid weights.
    """
    nx, ny = x_nodes.size, y_nodes.size
    wx = np.full(nx, hx)
    wx[0] = wx[-1] = hx / 2.0
    wy = np.full(ny, hy)
    wy[0] = wy[-1] = hy / 2.0
    wnode = np.outer(wx, wy)

    diag = np.zeros((nx, ny))
    # vertical edges (along y): conductance wx * (1/hy) per edge
    cond_y = np.outer(wx, np.full(ny - 1, 1.0 / hy))
    # horizontal edges (along x): conductance wy * (1/hx)
    cond_x = np.outer(np.full(nx - 1, 1.0 / hx), wy)
    diag[:, :-1] += cond_y
    diag[:, 1:] += cond_y
    diag[:-1, :] += cond_x
    diag[1:, :] += cond_x
    diag -= pot_node
    diag -= lam_shift * wnode
    diag[:, 0] -= alpha * wx
    diag[:, -1] += beta * wx

    keep_lo = 1 if drop_bottom else 0
    keep_hi = ny - 1 if drop_top else ny
    sl = slice(keep_lo, keep_hi)
    diag = diag[:, sl]
    wnode = wnode[:, sl]
    cond_y2 = cond_y[:, keep_lo : keep_hi - 1]
    cond_x2 = cond_x[:, sl]
    nyk = keep_hi - keep_lo

    n = nx * nyk
    bw = nyk
    data = np.zeros((n, bw + 1))
    rw = 1.0 / np.sqrt(wnode)
    data[:, 0] = (diag * rw * rw).ravel()
    # off-diagonal along y: (i, j) <-> (i, j+1), band distance 1
    oy = -cond_y2 * rw[:, :-1] * rw[:, 1:]
    idx = (np.arange(nx)[:, None] * nyk + np.arange(nyk - 1)[None, :]).ravel()
    data[idx, 1] = oy.ravel()
    # off-diagonal along x: (i, j) <-> (i+1, j), band distance nyk
    ox = -cond_x2 * rw[:-1, :] * rw[1:, :]
    idx = (np.arange(nx - 1)[:, None] * nyk + np.arange(nyk)[None, :]).ravel()
    data[idx, bw] = ox.ravel()
    return SymmetricBandMatrix(n, bw, data)


def discretize_strip(V, mu, params, trunc, h):
    """Form matrix of the Robin strip problem, shifted by lambda_1:

        integral |grad u|^2 - alpha u(., 0)^2 + beta u(., width)^2
        - lambda_1 integral u^2 - integral V u^2 d(mu)

    on (-trunc, trunc) x (0, width) with natural walls at x1 = +-trunc.
    Counting below shift 0 counts strip eigenvalues below lambda_1.
    """
    if not trunc > 0.0:
        raise InputError("discretize_strip: trunc must be > 0")
    w = params.width
    x_nodes, hx = _grid_nodes(-trunc, trunc, h)
    y_nodes, hy = _grid_nodes(0.0, w, min(h, w / 4.0))
    lam1, _, _ = lambda12(params)
    pts, wts, vals = carriers(V, mu)
    live = wts * vals > 0.0
    pts, mass = pts[live], (wts * vals)[live]
    if pts.size and (np.any(np.abs(pts[:, 0]) > trunc) or np.any(
        (pts[:, 1] < 0.0) | (pts[:, 1] > w)
    )):
        raise InputError("discretize_strip: potential mass outside the box")
    pot = np.zeros((x_nodes.size, y_nodes.size))
    if pts.size:
        ix = np.clip(np.round((pts[:, 0] - x_nodes[0]) / hx).astype(int), 0, x_nodes.size - 1)
        iy = np.clip(np.round((pts[:, 1] - y_nodes[0]) / hy).astype(int), 0, y_nodes.size - 1)
        np.add.at(pot, (ix, iy), mass)
    alpha = 0.0 if params.dirichlet_bottom else params.alpha
    beta = 0.0 if params.dirichlet_top else params.beta
    return _assemble_2d(
        x_nodes, y_nodes, hx, hy, pot, lam1,
        alpha=alpha, beta=beta,
        drop_bottom=params.dirichlet_bottom, drop_top=params.dirichlet_top,
    )


def discretize_plane(V, mu, trunc, h):
    """Form matrix of u -> integral |grad u|^2 dx - integral V u^2 d(mu)
    on the square [-trunc, trunc]^2 with natural walls.

    The potential must live well inside the box: carriers with positive
    V-mass need |x|_inf < trunc / 2.
    """
    if not trunc > 0.0:
        raise InputError("discretize_plane: trunc must be > 0")
    pts, wts, vals = carriers(V, mu)
    live = wts * vals > 0.0
    pts, mass = pts[live], (wts * vals)[live]
    if pts.size and np.max(np.abs(pts)) >= trunc / 2.0:
        raise InputError(
            "discretize_plane: potential support reaches half the box; "
            "increase trunc"
        )
    x_nodes, hx = _grid_nodes(-trunc, trunc, h)
    y_nodes, hy = _grid_nodes(-trunc, trunc, h)
    pot = np.zeros((x_nodes.size, y_nodes.size))
    if pts.size:
        ix = np.clip(np.round((pts[:, 0] - x_nodes[0]) / hx).astype(int), 0, x_nodes.size - 1)
        iy = np.clip(np.round((pts[:, 1] - y_nodes[0]) / hy).astype(int), 0, y_nodes.size - 1)
        np.add.at(pot, (ix, iy), mass)
    return _assemble_2d(x_nodes, y_nodes, hx, hy, pot, 0.0)
