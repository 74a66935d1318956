"""Bracketed root search over the energy axis for secular-type functions.

The scanned function must be sign-consistent with the secular determinant:
any smooth positive rescaling is allowed (callers rescale the hyperbolic
part to avoid overflow), since only sign changes and refined root
locations matter.  Negative energies are scanned on a geometric grid in
kappa = sqrt(-2E); positive energies on a uniform grid in k = sqrt(2E)
with step pi/(4L), extended in chunks until enough roots are found.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from .errors import NoConvergence

_KAPPA_GRID_N = 1000
_CHUNK = 64


def _refine(fscalar, e_lo, e_hi, root_tol):
    if e_lo > e_hi:
        e_lo, e_hi = e_hi, e_lo
    xtol = max(1e-3 * root_tol * max(1.0, abs(e_lo), abs(e_hi)), 5e-324)
    return brentq(fscalar, e_lo, e_hi, xtol=xtol, rtol=1e-14)


def _brackets_to_roots(fvec, fscalar, E, vals, root_tol, depth=2):
    roots = []
    for i in range(len(E) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            roots.append(E[i])
        elif a * b < 0.0:
            roots.append(_refine(fscalar, E[i], E[i + 1], root_tol))
    if len(E) and vals[-1] == 0.0:
        roots.append(E[-1])
    if depth > 0:
        roots.extend(_dig_local_minima(fvec, fscalar, E, vals, root_tol, depth))
    return roots


def _dig_local_minima(fvec, fscalar, E, vals, root_tol, depth):
    """Subsample around interior minima of |f| without a sign change.

    A pair of roots closer together than the grid step hides as a dip of
    the same-sign values; refining those dips on a 64x finer grid (twice,
    recursively) recovers pairs down to ~1/4000 of the base step.
    """
    av = np.abs(vals)
    roots = []
    for i in range(1, len(E) - 1):
        if not (av[i] < av[i - 1] and av[i] <= av[i + 1]):
            continue
        if vals[i - 1] * vals[i] < 0.0 or vals[i] * vals[i + 1] < 0.0:
            continue  # already bracketed by the caller
        sub = np.linspace(E[i - 1], E[i + 1], 65)
        sv = fvec(sub)
        roots.extend(_brackets_to_roots(fvec, fscalar, sub, sv, root_tol, depth - 1))
    return roots


def _scan_negative(fvec, fscalar, kappa_cap, extra_kappa, root_tol):
    if kappa_cap is None or kappa_cap <= 0.0:
        return []
    kg = np.geomspace(1e-8, kappa_cap, _KAPPA_GRID_N)
    if len(extra_kappa):
        extra = np.asarray([k for k in extra_kappa if 0.0 < k < kappa_cap])
        if extra.size:
            kg = np.unique(np.concatenate([kg, extra]))
    E = -0.5 * kg[::-1] ** 2  # ascending in energy
    vals = fvec(E)
    return _brackets_to_roots(fvec, fscalar, E, vals, root_tol)


def _scan_positive(fvec, fscalar, L, step, needed, k_limit, root_tol):
    roots = []
    k0 = step * 1e-3
    while len(roots) < needed and k0 < k_limit:
        ks = k0 + step * np.arange(_CHUNK + 1)
        E = 0.5 * ks**2
        vals = fvec(E)
        roots.extend(_brackets_to_roots(fvec, fscalar, E, vals, root_tol))
        k0 = ks[-1]
    return roots, k0


def find_spectrum(
    fvec,
    fscalar,
    L,
    count,
    *,
    kappa_cap=None,
    zero_scale=1.0,
    root_tol=1e-10,
    floor=None,
    extra_kappa=(),
    k_step_div=4.0,
    k_limit=None,
):
    """All roots of the secular function up to the ``count``-th one above
    ``floor`` (or above -infinity), in ascending order.

    fvec evaluates the sign-consistent secular function on an energy array;
    fscalar on a scalar.  Roots below ``floor`` are still returned so the
    caller can decide between filtering and erroring.
    """
    neg = _scan_negative(fvec, fscalar, kappa_cap, extra_kappa, root_tol)
    roots = list(neg)
    if abs(fscalar(0.0)) <= root_tol * zero_scale:
        roots.append(0.0)

    def n_above_floor(rts):
        if floor is None:
            return len(rts)
        return sum(1 for e in rts if e >= floor)

    needed_pos = max(count - n_above_floor(roots), 0)
    if k_limit is None:
        k_limit = 3.0 * (count + 15) * math.pi / L
    step = math.pi / (k_step_div * L)
    pos, k_end = _scan_positive(fvec, fscalar, L, step, needed_pos, k_limit, root_tol)

    # Missed-root detector: the counting function of a point interaction
    # stays within 2 of k*L/pi.  Rescan with a halved step on violation.
    retries = 0
    while pos and retries < 2:
        k_top = math.sqrt(2.0 * max(pos))
        if len(pos) >= k_top * L / math.pi - 2.5:
            break
        retries += 1
        step *= 0.5
        pos, k_end = _scan_positive(fvec, fscalar, L, step, needed_pos, k_limit, root_tol)

    roots.extend(pos)
    roots.sort()
    # Merge near-duplicates (grid point coinciding with a refined root).
    merged = []
    for e in roots:
        if merged and abs(e - merged[-1]) <= 1e-9 * max(1.0, abs(e)):
            continue
        merged.append(e)
    if n_above_floor(merged) < count:
        raise NoConvergence(
            f"found only {n_above_floor(merged)} of {count} requested levels "
            f"scanning k up to {k_end:.3g}"
        )
    return merged
