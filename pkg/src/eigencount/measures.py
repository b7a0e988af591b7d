"""Discrete measures on the plane and the line, with potentials.

A DiscreteMeasure carries point atoms and/or a rectangular grid of cell
masses; a PotentialField holds the nonnegative potential sampled on the
same carriers.  Grid cells act through their centers in every geometric
query (ring and interval assignment, balls, rectangles), so a grid measure
behaves exactly like atoms at cell centers.

The JSON loader accepts two layouts:

    {"type": "grid", "origin": [x, y], "cell": [hx, hy],
     "mass": [[...]], "potential": [[...]]}

    {"type": "atoms", "points": [[x, y, mass, V], ...]}

mass[i][j] belongs to the cell with center origin + ((i+1/2)hx, (j+1/2)hy).
NaN entries and negative masses or potentials are rejected with the line
number of the offending literal.
"""

import itertools
import json
import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import InputError

__all__ = [
    "Grid2D",
    "DiscreteMeasure",
    "PotentialField",
    "Measure1D",
    "LoadedInput",
    "load_measure",
    "loads_measure",
    "mass_in_ball",
    "mass_in_rect",
    "pushforward",
    "radial_projection",
    "line_projection",
    "transverse_projection",
    "spherical_rearrangement",
    "ahlfors_check",
    "AhlforsEstimate",
    "cantor_measure",
    "cantor_gap_squares",
]


@dataclass(frozen=True, eq=False)
class Grid2D:
    """Rectangular cell grid: mass[i, j] sits at origin + ((i+.5)hx, (j+.5)hy)."""

    origin: tuple
    cell: tuple
    mass: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mass, dtype=float)
        if m.ndim != 2 or m.size == 0:
            raise InputError("grid mass must be a non-empty 2-D array")
        if not np.all(np.isfinite(m)) or np.any(m < 0.0):
            raise InputError("grid mass must be finite and >= 0")
        hx, hy = self.cell
        if not (hx > 0.0 and hy > 0.0):
            raise InputError("grid cell sides must be > 0")
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))
        object.__setattr__(self, "cell", (float(hx), float(hy)))
        object.__setattr__(self, "mass", m)

    @property
    def shape(self):
        return self.mass.shape

    @property
    def cell_area(self):
        return self.cell[0] * self.cell[1]

    def centers(self):
        nx, ny = self.mass.shape
        cx = self.origin[0] + (np.arange(nx) + 0.5) * self.cell[0]
        cy = self.origin[1] + (np.arange(ny) + 0.5) * self.cell[1]
        gx, gy = np.meshgrid(cx, cy, indexing="ij")
        return np.column_stack([gx.ravel(), gy.ravel()])


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Atoms plus an optional grid; shift records any recentering applied."""

    atoms: np.ndarray = None
    atom_mass: np.ndarray = None
    grid: Grid2D = None
    shift: tuple = (0.0, 0.0)

    def __post_init__(self):
        a = self.atoms
        m = self.atom_mass
        a = np.zeros((0, 2)) if a is None else np.asarray(a, dtype=float).reshape(-1, 2)
        m = np.zeros(0) if m is None else np.asarray(m, dtype=float).ravel()
        if a.shape[0] != m.size:
            raise InputError("atoms and atom_mass differ in length")
        if a.size and not np.all(np.isfinite(a)):
            raise InputError("atom coordinates must be finite")
        if m.size and (not np.all(np.isfinite(m)) or np.any(m < 0.0)):
            raise InputError("atom masses must be finite and >= 0")
        object.__setattr__(self, "atoms", a)
        object.__setattr__(self, "atom_mass", m)
        object.__setattr__(self, "shift", (float(self.shift[0]), float(self.shift[1])))

    def points(self):
        if self.grid is None:
            return self.atoms
        if self.atoms.shape[0] == 0:
            return self.grid.centers()
        return np.vstack([self.atoms, self.grid.centers()])

    def masses(self):
        if self.grid is None:
            return self.atom_mass
        gm = self.grid.mass.ravel()
        if self.atom_mass.size == 0:
            return gm
        return np.concatenate([self.atom_mass, gm])

    @property
    def total_mass(self):
        return float(self.masses().sum()) if self.masses().size else 0.0

    @property
    def is_lebesgue_grid(self):
        """True when the measure is exactly area on a pure grid."""
        if self.grid is None or self.atom_mass.size:
            return False
        area = self.grid.cell_area
        return bool(np.all(np.abs(self.grid.mass - area) <= 1e-12 * max(area, 1.0)))

    def translated(self, dx, dy):
        atoms = self.atoms + np.array([dx, dy]) if self.atoms.size else self.atoms
        grid = None
        if self.grid is not None:
            grid = Grid2D(
                (self.grid.origin[0] + dx, self.grid.origin[1] + dy),
                self.grid.cell,
                self.grid.mass,
            )
        return DiscreteMeasure(
            atoms, self.atom_mass, grid,
            (self.shift[0] + dx, self.shift[1] + dy),
        )


@dataclass(frozen=True, eq=False)
class PotentialField:
    """Nonnegative potential samples aligned with a measure's carriers."""

    atom_values: np.ndarray = None
    cell_values: np.ndarray = None

    def __post_init__(self):
        av = self.atom_values
        cv = self.cell_values
        av = np.zeros(0) if av is None else np.asarray(av, dtype=float).ravel()
        if av.size and (not np.all(np.isfinite(av)) or np.any(av < 0.0)):
            raise InputError("potential values must be finite and >= 0")
        if cv is not None:
            cv = np.asarray(cv, dtype=float)
            if not np.all(np.isfinite(cv)) or np.any(cv < 0.0):
                raise InputError("potential values must be finite and >= 0")
        object.__setattr__(self, "atom_values", av)
        object.__setattr__(self, "cell_values", cv)

    @classmethod
    def constant(cls, mu, c):
        cv = None if mu.grid is None else np.full(mu.grid.shape, float(c))
        return cls(np.full(mu.atom_mass.size, float(c)), cv)

    def values_for(self, mu):
        if self.atom_values.size != mu.atom_mass.size:
            raise InputError("potential does not align with the measure's atoms")
        if (self.cell_values is None) != (mu.grid is None):
            raise InputError("potential does not align with the measure's grid")
        if mu.grid is None:
            return self.atom_values
        if self.cell_values.shape != mu.grid.shape:
            raise InputError("potential grid shape differs from the measure's")
        cv = self.cell_values.ravel()
        if self.atom_values.size == 0:
            return cv
        return np.concatenate([self.atom_values, cv])


def carriers(V, mu):
    """(points, masses, values) triple aligned across the carriers."""
    return mu.points(), mu.masses(), V.values_for(mu)


@dataclass(frozen=True, eq=False)
class Measure1D:
    """A measure on the line: atoms plus an optional uniform density grid."""

    atoms: np.ndarray = None
    atom_mass: np.ndarray = None
    grid_x0: float = None
    grid_h: float = 0.0
    grid_mass: np.ndarray = None

    def __post_init__(self):
        a = self.atoms
        m = self.atom_mass
        a = np.zeros(0) if a is None else np.asarray(a, dtype=float).ravel()
        m = np.zeros(0) if m is None else np.asarray(m, dtype=float).ravel()
        if a.size != m.size:
            raise InputError("atoms and atom_mass differ in length")
        if a.size and not np.all(np.isfinite(a)):
            raise InputError("atom positions must be finite")
        if m.size and (not np.all(np.isfinite(m)) or np.any(m < 0.0)):
            raise InputError("atom masses must be finite and >= 0")
        g = self.grid_mass
        if g is not None:
            g = np.asarray(g, dtype=float).ravel()
            if not np.all(np.isfinite(g)) or np.any(g < 0.0):
                raise InputError("cell masses must be finite and >= 0")
            if self.grid_x0 is None or not self.grid_h > 0.0:
                raise InputError("density grid needs an origin and h > 0")
        object.__setattr__(self, "atoms", a)
        object.__setattr__(self, "atom_mass", m)
        object.__setattr__(self, "grid_mass", g)

    @property
    def total_mass(self):
        t = float(self.atom_mass.sum()) if self.atom_mass.size else 0.0
        if self.grid_mass is not None:
            t += float(self.grid_mass.sum())
        return t

    @property
    def is_atomless(self):
        return self.atom_mass.size == 0 or not np.any(self.atom_mass > 0.0)

    def points(self):
        parts = [self.atoms]
        if self.grid_mass is not None:
            n = self.grid_mass.size
            parts.append(self.grid_x0 + (np.arange(n) + 0.5) * self.grid_h)
        return np.concatenate(parts)

    def masses(self):
        parts = [self.atom_mass]
        if self.grid_mass is not None:
            parts.append(self.grid_mass)
        return np.concatenate(parts)

    def support_bounds(self):
        pts = []
        if self.atoms.size:
            pts.extend([self.atoms.min(), self.atoms.max()])
        if self.grid_mass is not None and self.grid_mass.size:
            pts.extend(
                [self.grid_x0, self.grid_x0 + self.grid_mass.size * self.grid_h]
            )
        if not pts:
            raise InputError("empty measure has no support")
        return float(min(pts)), float(max(pts))

    def cdf(self, x):
        """Mass of (-inf, x); atoms at x excluded, densities interpolated."""
        total = 0.0
        if self.atoms.size:
            total += float(self.atom_mass[self.atoms < x].sum())
        if self.grid_mass is not None and self.grid_mass.size:
            left = self.grid_x0 + np.arange(self.grid_mass.size) * self.grid_h
            frac = np.clip((x - left) / self.grid_h, 0.0, 1.0)
            total += float(np.dot(frac, self.grid_mass))
        return total

    def mass_co(self, lo, hi):
        """Mass of [lo, hi): density part by interpolation, atoms in [lo, hi).

        cdf excludes atoms at its argument, so the difference alone counts
        atoms at lo in and atoms at hi out; the telescoping sum over a
        partition reproduces the whole interval mass exactly.
        """
        if hi <= lo:
            return 0.0
        return max(self.cdf(hi) - self.cdf(lo), 0.0)


@dataclass(frozen=True)
class LoadedInput:
    """A loaded measure/potential pair with recentering bookkeeping."""

    measure: DiscreteMeasure
    potential: PotentialField
    shift: tuple
    source: str


# ---------------------------------------------------------------------------
# JSON loading with line-precise rejection

_STRING_RE = re.compile(r'"(?:[^"\\]|\\.)*"')
_NUMBER_RE = re.compile(
    r"-?Infinity|NaN|-?(?:0|[1-9]\d*)(?:\.\d+)?(?:[eE][-+]?\d+)?"
)


class _Num(float):
    """Float subclass carrying the index of its literal in the source."""

    __slots__ = ("tok",)


def _token_lines(text):
    # Blank out string literals (offsets preserved) so digits inside them
    # cannot shift the literal count.
    masked = _STRING_RE.sub(lambda m: " " * (m.end() - m.start()), text)
    return [text.count("\n", 0, m.start()) + 1 for m in _NUMBER_RE.finditer(masked)]


def loads_measure(text, source="<memory>", recenter=True):
    lines = _token_lines(text)
    counter = itertools.count()

    def track(raw):
        v = _Num(raw)
        v.tok = next(counter)
        return v

    try:
        obj = json.loads(
            text, parse_float=track, parse_int=track, parse_constant=track
        )
    except json.JSONDecodeError as e:
        raise InputError("%s: line %d: %s" % (source, e.lineno, e.msg)) from None

    def where(x):
        if isinstance(x, _Num) and x.tok < len(lines):
            return "%s: line %d" % (source, lines[x.tok])
        return source

    def number(x, what, minimum=None, allow_zero=True):
        if not isinstance(x, float):
            raise InputError("%s: %s must be a number" % (source, what))
        if math.isnan(x):
            raise InputError("%s: %s is NaN" % (where(x), what))
        if math.isinf(x):
            raise InputError("%s: %s is infinite" % (where(x), what))
        v = float(x)
        if minimum is not None:
            if v < minimum or (v == minimum and not allow_zero):
                raise InputError(
                    "%s: %s = %s is out of range" % (where(x), what, format(v, "g"))
                )
        return v

    if not isinstance(obj, dict):
        raise InputError("%s: top level must be an object" % source)
    kind = obj.get("type")
    if kind == "grid":
        allowed = {"type", "origin", "cell", "mass", "potential"}
        extra = set(obj) - allowed
        missing = allowed - set(obj)
        if extra:
            raise InputError("%s: unknown key %r" % (source, sorted(extra)[0]))
        if missing:
            raise InputError("%s: missing key %r" % (source, sorted(missing)[0]))
        origin = obj["origin"]
        cell = obj["cell"]
        if not (isinstance(origin, list) and len(origin) == 2):
            raise InputError("%s: origin must be [x, y]" % source)
        if not (isinstance(cell, list) and len(cell) == 2):
            raise InputError("%s: cell must be [hx, hy]" % source)
        ox = number(origin[0], "origin[0]")
        oy = number(origin[1], "origin[1]")
        hx = number(cell[0], "cell[0]", minimum=0.0, allow_zero=False)
        hy = number(cell[1], "cell[1]", minimum=0.0, allow_zero=False)
        mass = _matrix(obj["mass"], "mass", source, number)
        pot = _matrix(obj["potential"], "potential", source, number)
        if pot.shape != mass.shape:
            raise InputError("%s: potential shape differs from mass" % source)
        mu = DiscreteMeasure(grid=Grid2D((ox, oy), (hx, hy), mass))
        V = PotentialField(cell_values=pot)
    elif kind == "atoms":
        allowed = {"type", "points"}
        extra = set(obj) - allowed
        if extra:
            raise InputError("%s: unknown key %r" % (source, sorted(extra)[0]))
        rows = obj.get("points")
        if not isinstance(rows, list) or not rows:
            raise InputError("%s: points must be a non-empty list" % source)
        xs, ms, vs = [], [], []
        for i, row in enumerate(rows):
            if not (isinstance(row, list) and len(row) == 4):
                raise InputError(
                    "%s: points[%d] must be [x, y, mass, V]" % (source, i)
                )
            x = number(row[0], "points[%d].x" % i)
            y = number(row[1], "points[%d].y" % i)
            m = number(row[2], "points[%d].mass" % i, minimum=0.0)
            v = number(row[3], "points[%d].V" % i, minimum=0.0)
            xs.append((x, y))
            ms.append(m)
            vs.append(v)
        mu = DiscreteMeasure(np.array(xs), np.array(ms))
        V = PotentialField(atom_values=np.array(vs))
    else:
        raise InputError("%s: type must be 'grid' or 'atoms'" % source)

    shift = (0.0, 0.0)
    if recenter and mu.total_mass > 0.0:
        pts, wts = mu.points(), mu.masses()
        centroid = (wts @ pts) / wts.sum()
        live = wts > 0.0
        d2 = np.einsum("ij,ij->i", pts - centroid, pts - centroid)
        d2 = np.where(live, d2, np.inf)
        anchor = pts[int(np.argmin(d2))]
        shift = (-float(anchor[0]), -float(anchor[1]))
        mu = mu.translated(*shift)
        mu = DiscreteMeasure(mu.atoms, mu.atom_mass, mu.grid, shift)
    return LoadedInput(mu, V, shift, source)


def _matrix(rows, what, source, number):
    if not isinstance(rows, list) or not rows:
        raise InputError("%s: %s must be a non-empty 2-D array" % (source, what))
    width = None
    data = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise InputError("%s: %s[%d] must be a list" % (source, what, i))
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputError("%s: %s[%d] has ragged width" % (source, what, i))
        data.append(
            [number(v, "%s[%d][%d]" % (what, i, j), minimum=0.0) for j, v in enumerate(row)]
        )
    return np.array(data, dtype=float)


def load_measure(path, recenter=True):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return loads_measure(text, source=str(path), recenter=recenter)


# ---------------------------------------------------------------------------
# Geometric queries and transforms

def mass_in_ball(mu, center, r):
    """Mass of the closed ball; grid cells act through their centers."""
    pts, wts = mu.points(), mu.masses()
    if pts.shape[0] == 0:
        return 0.0
    d2 = np.einsum("ij,ij->i", pts - np.asarray(center, float), pts - np.asarray(center, float))
    return float(wts[d2 <= r * r].sum())


def mass_in_rect(mu, center, half_w, half_h):
    """Mass of the closed axis-aligned rectangle around center."""
    pts, wts = mu.points(), mu.masses()
    if pts.shape[0] == 0:
        return 0.0
    cx, cy = center
    inside = (np.abs(pts[:, 0] - cx) <= half_w) & (np.abs(pts[:, 1] - cy) <= half_h)
    return float(wts[inside].sum())


def pushforward(mu, rx, ry, shift=(0.0, 0.0)):
    """Image of mu under the diagonal-affine map (x, y) -> (rx x + sx, ry y + sy).

    Masses are transported unchanged, so carriers stay aligned with any
    PotentialField already sampled on mu.
    """
    if not (rx > 0.0 and ry > 0.0):
        raise InputError("pushforward: scale factors must be > 0")
    sx, sy = shift
    atoms = mu.atoms * np.array([rx, ry]) + np.array([sx, sy]) if mu.atoms.size else mu.atoms
    grid = None
    if mu.grid is not None:
        grid = Grid2D(
            (mu.grid.origin[0] * rx + sx, mu.grid.origin[1] * ry + sy),
            (mu.grid.cell[0] * rx, mu.grid.cell[1] * ry),
            mu.grid.mass,
        )
    return DiscreteMeasure(atoms, mu.atom_mass, grid, mu.shift)


def radial_projection(V, mu):
    """The 1-D measure of V d(mu) pushed to radii r = |x|."""
    pts, wts, vals = carriers(V, mu)
    r = np.sqrt(np.einsum("ij,ij->i", pts, pts))
    return Measure1D(atoms=r, atom_mass=vals * wts)


def line_projection(V, mu):
    """Push V d(mu) to the x1-axis, keeping grid mass as a 1-D density.

    Atoms project to atoms; grid columns sum to density cells of width hx,
    so an atom-free input stays atom-free (as partitioning requires).
    """
    atoms = mu.atoms[:, 0] if mu.atoms.size else np.zeros(0)
    amass = mu.atom_mass * V.values_for(mu)[: mu.atom_mass.size]
    if mu.grid is None:
        return Measure1D(atoms=atoms, atom_mass=amass)
    cv = V.values_for(mu)[mu.atom_mass.size :].reshape(mu.grid.shape)
    col = (mu.grid.mass * cv).sum(axis=1)
    return Measure1D(
        atoms=atoms,
        atom_mass=amass,
        grid_x0=mu.grid.origin[0],
        grid_h=mu.grid.cell[0],
        grid_mass=col,
    )


def transverse_projection(V, mu, u1, width):
    """1-D measure nu(x1) = integral of V |u1(x2)|^2 over the cross-section.

    Carriers must lie in the strip 0 <= x2 <= width; carriers with positive
    V-mass outside are rejected.
    """
    pts, wts, vals = carriers(V, mu)
    live = vals * wts > 0.0
    y = pts[:, 1]
    pad = 1e-12 * max(width, 1.0)
    if np.any(live & ((y < -pad) | (y > width + pad))):
        raise InputError("measure carries V-mass outside the strip cross-section")
    u = np.array([float(u1(t)) for t in np.clip(y, 0.0, width)])
    return Measure1D(atoms=pts[:, 0], atom_mass=vals * wts * u * u)


def spherical_rearrangement(V, mu):
    """Decreasing rearrangement of V about the origin on mu's grid.

    Treats V as a function against cell area (the grid must be present):
    values are sorted decreasing and re-laid onto cells sorted by center
    radius, so sub-level geometry becomes radial.
    """
    if mu.grid is None:
        raise InputError("spherical_rearrangement needs a grid measure")
    vals = V.values_for(mu)
    cv = vals[mu.atom_mass.size :]
    centers = mu.grid.centers()
    r = np.sqrt(np.einsum("ij,ij->i", centers, centers))
    order = np.argsort(r, kind="stable")
    out = np.empty_like(cv)
    out[order] = np.sort(cv)[::-1]
    return PotentialField(
        atom_values=np.zeros(mu.atom_mass.size),
        cell_values=out.reshape(mu.grid.shape),
    )


@dataclass(frozen=True)
class AhlforsEstimate:
    """Empirical two-sided mass-scaling constants over sampled balls."""

    alpha: float
    c0_hat: float
    c1_hat: float
    radii_sampled: tuple
    flagged: bool


def ahlfors_check(mu, alpha, centers, radii, ratio_ceiling=None):
    """Estimate c0, c1 with c0 r^alpha <= mu(B(x, r)) <= c1 r^alpha.

    Every (center, radius) pair is sampled; a ball with no mass makes the
    lower constant vanish and is rejected.
    """
    if not alpha > 0.0:
        raise InputError("ahlfors_check: alpha must be > 0")
    centers = np.asarray(centers, dtype=float).reshape(-1, 2)
    radii = [float(r) for r in np.asarray(radii, dtype=float).ravel()]
    if centers.shape[0] == 0 or not radii:
        raise InputError("ahlfors_check: need at least one center and radius")
    if any(not r > 0.0 for r in radii):
        raise InputError("ahlfors_check: radii must be > 0")
    lo, hi = math.inf, 0.0
    for c in centers:
        for r in radii:
            ratio = mass_in_ball(mu, c, r) / r**alpha
            if ratio == 0.0:
                raise InputError(
                    "ahlfors_check: ball at (%g, %g) with r=%g has no mass"
                    % (c[0], c[1], r)
                )
            lo = min(lo, ratio)
            hi = max(hi, ratio)
    flagged = ratio_ceiling is not None and hi / lo > ratio_ceiling
    return AhlforsEstimate(alpha, lo, hi, tuple(radii), flagged)


_CANTOR_MAX_LEVEL = 24


def cantor_measure(level, span=(0.0, 1.0), y=0.0):
    """Uniform measure on the level-th Cantor construction, on a segment.

    2^level atoms of mass 2^-level at the midpoints of the surviving
    intervals, embedded horizontally at height y.
    """
    if not (isinstance(level, int) and level >= 1):
        raise InputError("cantor_measure: level must be an integer >= 1")
    if level > _CANTOR_MAX_LEVEL:
        raise InputError(
            "cantor_measure: level %d exceeds the resource cap %d"
            % (level, _CANTOR_MAX_LEVEL)
        )
    lo, hi = float(span[0]), float(span[1])
    if not hi > lo:
        raise InputError("cantor_measure: span must be increasing")
    starts = np.array([0.0])
    width = 1.0
    for _ in range(level):
        width /= 3.0
        starts = np.concatenate([starts, starts + 2.0 * width])
    mids = np.sort(starts) + width / 2.0
    xs = lo + (hi - lo) * mids
    pts = np.column_stack([xs, np.full_like(xs, float(y))])
    return DiscreteMeasure(pts, np.full(xs.size, 0.5**level))


def cantor_gap_squares(level, span=(0.0, 1.0), y=0.0):
    """Axis squares sitting on the removed middle thirds, one per gap.

    Returns (center_x, center_y, side) triples for generations 1..level;
    the generation-n gaps have width 3^-n, which is the square side.
    """
    if not (isinstance(level, int) and level >= 1):
        raise InputError("cantor_gap_squares: level must be an integer >= 1")
    lo, hi = float(span[0]), float(span[1])
    scale = hi - lo
    out = []
    starts = np.array([0.0])
    width = 1.0
    for n in range(1, level + 1):
        width /= 3.0
        # gap of generation n sits in the middle of each surviving
        # generation-(n-1) interval
        gap_centers = starts + 1.5 * width
        for c in np.sort(gap_centers):
            out.append((lo + scale * float(c), float(y), scale * width))
        starts = np.concatenate([starts, starts + 2.0 * width])
    return out
