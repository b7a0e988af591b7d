"""Bracketing scalar solvers used throughout the package.

Only derivative-free methods are used: bisection for sign changes and
golden-section search for unimodal minima.  Both are deterministic, which
keeps every downstream report byte-reproducible.
"""

import math

from .errors import ConvergenceError

__all__ = ["bisect_root", "golden_min", "bracket_min"]

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def bisect_root(f, lo, hi, tol=1e-10, max_iter=200):
    """Root of f on [lo, hi] by bisection.

    f(lo) and f(hi) must have opposite signs.  Stops once the bracket is
    shorter than tol (absolute) and returns the bracket midpoint.
    """
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise ValueError("bisect_root: f(lo) and f(hi) have the same sign")
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    else:
        raise ConvergenceError("bisect_root: bracket did not shrink to tol")
    return 0.5 * (lo + hi)


def golden_min(f, lo, hi, rel_tol=1e-10, max_iter=500):
    """Minimize a unimodal f on [lo, hi] by golden-section search.

    Returns (x, f(x)).  rel_tol is relative to max(|lo|, |hi|, 1).
    """
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1 = f(x1)
    f2 = f(x2)
    for _ in range(max_iter):
        if hi - lo <= rel_tol * max(abs(lo), abs(hi), 1.0):
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = f(x2)
    x = 0.5 * (lo + hi)
    return x, f(x)


def bracket_min(g, k0=1.0, factor=4.0, max_steps=200):
    """Geometric bracket (lo, hi) around a minimum of a unimodal g on (0, inf).

    g may return +inf outside its useful range; infinite values count as
    ascent, so the window never expands into them.
    """
    gk = g(k0)
    steps = 0
    while not math.isfinite(gk):
        k0 /= factor
        gk = g(k0)
        steps += 1
        if steps > max_steps:
            raise ConvergenceError("bracket_min: no finite starting value")
    lo = k0 / factor
    hi = k0 * factor
    glo = g(lo)
    ghi = g(hi)
    while glo < gk:
        hi, ghi = k0, gk
        k0, gk = lo, glo
        lo = k0 / factor
        glo = g(lo)
        steps += 1
        if steps > max_steps:
            raise ConvergenceError("bracket_min: descent did not turn (left)")
    while ghi < gk:
        lo, glo = k0, gk
        k0, gk = hi, ghi
        hi = k0 * factor
        ghi = g(hi)
        steps += 1
        if steps > max_steps:
            raise ConvergenceError("bracket_min: descent did not turn (right)")
    return lo, hi
