"""Adiabatic tracing of the spectrum along paths in the (alpha, beta) slice.

Around the singular point of the slice the energy surface winds: following
the eigenvalues once around it shifts every level by two spectral slots,
while loops that do not enclose it return each level to itself.  This
module tracks level histories along discretized paths (with adaptive step
halving near ambiguous matches), extracts the loop permutation, verifies
the small-radius analytic branch of the eigen-angle, and builds the
discrete analogue of the adiabatic evolution matrix from inter-step
overlaps of the eigenfunctions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DomainMismatch,
    GaugeAmbiguity,
    NearPole,
    SpectraMismatch,
    StepUnderflow,
    TruncationLeak,
)
from .params import ParameterPath, SliceCoords, winding_number
from .spectrum import (
    ROOT_TOL,
    Domain,
    EnergyLevel,
    Wavefunction,
    _f,
    _fp,
    _Secular,
    _solve_slice_energies,
    _sq_int,
    _build_wavefunction,
)
from .params import from_slice

#: Default energy floor in units of 1/L**2; the bound state diving toward
#: -infinity near the singular angle is marked absorbed below it.
FLOOR_SCALE = -1.0e4


@dataclass
class TraceOptions:
    """Knobs for adaptive spectral-flow tracking."""

    n_buffer: int = 6
    energy_floor: float | None = None  # default FLOOR_SCALE / L**2
    match_tol: float = 1e-8
    ambiguity_factor: float = 2.0
    max_jump_frac: float = 0.4
    min_step: float = 1e-6
    root_tol: float = ROOT_TOL


@dataclass
class TrackedLevel:
    """Continuous energy history of one level along a path.

    ``samples`` holds (path position in [0, 1], energy); ``indices`` the
    position of the level in the ascending spectrum at each sample.
    status is "tracked", "absorbed" (dove below the energy floor) or
    "emitted" (appeared from below it).
    """

    start_index: int
    samples: list = field(default_factory=list)
    indices: list = field(default_factory=list)
    status: str = "tracked"


@dataclass
class LoopResult:
    """Outcome of tracking a closed loop."""

    winding: int
    shift: int
    spectra_match_error: float
    evolution: np.ndarray | None = None
    tracked: list = field(default_factory=list)


@dataclass
class ConnectionMatrix:
    """Finite-difference overlap-derivative matrix at one slice point."""

    direction: tuple
    entries: np.ndarray
    h: float


def _default_floor(opts: TraceOptions, domain: Domain) -> float:
    if opts.energy_floor is not None:
        return opts.energy_floor
    return FLOOR_SCALE / domain.L**2


def _point_at(path: ParameterPath, t):
    pts = path.points
    s = t * (len(pts) - 1)
    i = min(int(math.floor(s)), len(pts) - 2)
    frac = s - i
    (a0, b0), (a1, b1) = pts[i], pts[i + 1]
    return a0 + frac * (a1 - a0), b0 + frac * (b1 - b0)


def _match(old_energies, new_energies, opts: TraceOptions):
    """Map each old energy to an index in the new ascending list.

    Returns the list of new indices, or None when the assignment is
    ambiguous or jumps too far (caller halves the step).
    """
    new = np.asarray(new_energies)
    assigned = []
    for e in old_energies:
        d = np.abs(new - e)
        j1 = int(np.argmin(d))
        d1 = d[j1]
        scale = max(1.0, abs(e))
        if len(new) > 1:
            d2 = np.partition(d, 1)[1]
            if d1 > 1e-12 * scale and d2 < opts.ambiguity_factor * d1:
                return None
        gap = min(
            new[j1] - new[j1 - 1] if j1 > 0 else math.inf,
            new[j1 + 1] - new[j1] if j1 < len(new) - 1 else math.inf,
        )
        if d1 > opts.max_jump_frac * gap and d1 > 1e-12 * scale:
            return None
        assigned.append(j1)
    if len(set(assigned)) != len(assigned):
        return None
    if assigned != sorted(assigned):
        return None
    return assigned


def trace_path(path: ParameterPath, domain: Domain, n_levels, opts: TraceOptions | None = None):
    """Track the lowest ``n_levels`` starting levels along the path.

    Between consecutive path vertices the parameters are interpolated
    linearly and the step is halved whenever nearest-energy matching is
    ambiguous; levels crossing the energy floor are marked absorbed, and
    states rising into the window from below it are reported as emitted.
    """
    opts = opts or TraceOptions()
    floor = _default_floor(opts, domain)
    n_window = n_levels + opts.n_buffer

    def solve(t):
        alpha, beta = _point_at(path, t)
        return _solve_slice_energies(
            SliceCoords(path.gamma0, alpha, beta), domain, n_window, floor, opts.root_tol
        )

    energies = solve(0.0)
    if len(energies) < n_levels:
        raise SpectraMismatch(f"only {len(energies)} levels at the path start")
    tracked = [
        TrackedLevel(j, samples=[(0.0, energies[j])], indices=[j]) for j in range(n_levels)
    ]
    emitted: list[TrackedLevel] = []
    active = list(tracked)
    known_min = energies[0]

    n_seg = len(path.points) - 1
    t_cur = 0.0
    for i in range(n_seg):
        t_goal = (i + 1) / n_seg
        pending = [t_goal]
        while pending:
            t_try = pending[-1]
            new_energies = solve(t_try)
            assigned = _match([tl.samples[-1][1] for tl in active], new_energies, opts)
            if assigned is None:
                if t_try - t_cur <= opts.min_step:
                    # A level close to the floor that cannot be matched has
                    # dived out of the window.
                    dying = [
                        tl for tl in active
                        if tl.samples[-1][1] <= floor + 0.05 * abs(floor)
                    ]
                    if dying:
                        for tl in dying:
                            tl.status = "absorbed"
                            active.remove(tl)
                        continue
                    raise StepUnderflow(
                        f"ambiguous level matching at path position {t_try:.6f}"
                    )
                pending.append(0.5 * (t_cur + t_try))
                continue
            for tl, j in zip(active, assigned):
                tl.samples.append((t_try, new_energies[j]))
                tl.indices.append(j)
            # Report states that rose into the window below everything known.
            lowest_assigned = min(assigned) if assigned else len(new_energies)
            for j in range(lowest_assigned):
                if new_energies[j] < known_min - 1e-9 * max(1.0, abs(known_min)):
                    emitted.append(
                        TrackedLevel(j, samples=[(t_try, new_energies[j])],
                                     indices=[j], status="emitted")
                    )
            known_min = min(known_min, new_energies[0])
            t_cur = t_try
            pending.pop()
    return tracked + emitted


def loop_permutation(path: ParameterPath, domain: Domain, n_levels,
                     opts: TraceOptions | None = None) -> LoopResult:
    """Track a closed loop and extract the spectral-flow index shift.

    The start and end spectra coincide as sets (same endpoint parameters);
    the shift is the common index displacement of the tracked levels.
    """
    if not path.closed:
        raise ValueError("loop_permutation needs a closed path")
    opts = opts or TraceOptions()
    tracked = trace_path(path, domain, n_levels, opts)
    survivors = [tl for tl in tracked if tl.status == "tracked"]
    if not survivors:
        raise SpectraMismatch("no level survived the loop inside the energy window")
    shifts = {tl.indices[-1] - tl.start_index for tl in survivors}
    if len(shifts) != 1:
        raise SpectraMismatch(f"inconsistent index shifts {sorted(shifts)}")
    shift = shifts.pop()

    floor = _default_floor(opts, domain)
    n_window = n_levels + opts.n_buffer
    alpha, beta = path.points[0]
    start = _solve_slice_energies(
        SliceCoords(path.gamma0, alpha, beta), domain, n_window, floor, opts.root_tol
    )
    err = 0.0
    for tl in survivors:
        j = tl.indices[-1]
        if j >= len(start):
            raise SpectraMismatch(f"final index {j} outside the solved window")
        ref = start[j]
        err = max(err, abs(tl.samples[-1][1] - ref) / max(1.0, abs(ref)))
    if err > opts.match_tol:
        raise SpectraMismatch(f"endpoint spectra differ by {err:.3e}")
    return LoopResult(winding_number(path), shift, err, tracked=tracked)


# ---------------------------------------------------------------------------
# Analytic small-radius branch of the eigen-angle


def theta_branch(k, gamma0, domain: Domain, pole_eps=1e-8):
    """Leading-order angle on a small circle at which momentum k is an
    eigenvalue: arctan(tan(k*(1-r)L)/(k*gamma0**2) + tan(k*r*L)/k),
    principal value in (-pi/2, pi/2)."""
    if k <= 0.0:
        raise ValueError("k must be positive")
    xa = k * domain.right_len
    xb = k * domain.left_len
    for x in (xa, xb):
        if abs(math.remainder(x - math.pi / 2.0, math.pi)) < pole_eps:
            raise NearPole(f"tangent argument {x!r} within {pole_eps} of a pole")
    return math.atan(math.tan(xa) / (k * gamma0**2) + math.tan(xb) / k)


def compare_asymptotic(gamma0, rho, domain: Domain, k_window, n_theta=40,
                       pole_margin=0.05, root_tol=ROOT_TOL):
    """Maximum deviation (mod pi) between sampled circle angles and the
    analytic branch, over the eigen-momenta found in ``k_window``.

    First order in rho: shrinking the circle shrinks the deviation.
    """
    k_lo, k_hi = k_window
    star_alpha = 1.0 / gamma0
    kg = np.arange(k_lo, k_hi, 0.01)
    Eg = 0.5 * kg**2
    max_dev = 0.0
    from scipy.optimize import brentq

    for theta in np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False):
        if abs(math.cos(theta)) < 0.05:
            continue
        alpha = star_alpha - rho * math.sin(theta)
        beta = rho * math.cos(theta)
        prob = _Secular.from_slice(gamma0, alpha, beta, domain)
        vals = prob.values(Eg)
        sgn = np.sign(vals)
        for i in np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]:
            e = brentq(prob.value, Eg[i], Eg[i + 1], xtol=1e-12, rtol=1e-14)
            k = math.sqrt(2.0 * e)
            xa, xb = k * domain.right_len, k * domain.left_len
            if (abs(math.remainder(xa - math.pi / 2.0, math.pi)) < pole_margin
                    or abs(math.remainder(xb - math.pi / 2.0, math.pi)) < pole_margin):
                continue
            dev = abs(math.remainder(theta - theta_branch(k, gamma0, domain), math.pi))
            max_dev = max(max_dev, dev)
    return max_dev


# ---------------------------------------------------------------------------
# Overlaps, connection, evolution matrix


def _pair_integral(x, E1, E2):
    """Integral over (0, x) of the two side basis functions, closed form.

    Same-sign energy pairs use the sum-to-product form
    (sin(dk*x)/dk - sin(K*x)/K)/2 with dk = 2*(E2-E1)/K, which stays
    accurate when the energies nearly coincide; the raw Wronskian quotient
    loses ~8 digits there to cancellation.
    """
    dE = E2 - E1
    if abs(dE) <= 1e-14 * max(1.0, abs(E1), abs(E2)):
        return _sq_int(x, 0.5 * (E1 + E2))
    if E1 > 0.0 and E2 > 0.0:
        K = math.sqrt(2.0 * E1) + math.sqrt(2.0 * E2)
        dk = 2.0 * dE / K
        return 0.5 * (math.sin(dk * x) / dk - math.sin(K * x) / K)
    if E1 < 0.0 and E2 < 0.0:
        K = math.sqrt(-2.0 * E1) + math.sqrt(-2.0 * E2)
        dka = -2.0 * dE / K
        return 0.5 * (math.sinh(K * x) / K - math.sinh(dka * x) / dka)
    if abs(dE) <= 1e-6:  # opposite signs straddling zero
        return _sq_int(x, 0.5 * (E1 + E2))
    return (_fp(x, E1) * _f(x, E2) - _f(x, E1) * _fp(x, E2)) / (2.0 * dE)


def overlap(wf1: Wavefunction, wf2: Wavefunction) -> float:
    """L2 inner product of two (real) eigenfunctions on the same box."""
    if wf1.domain != wf2.domain:
        raise DomainMismatch(f"{wf1.domain} != {wf2.domain}")
    b, a = wf1.domain.left_len, wf1.domain.right_len
    E1, E2 = wf1.level.energy, wf2.level.energy
    return (
        wf1.amp_minus * wf2.amp_minus * _pair_integral(b, E1, E2)
        + wf1.amp_plus * wf2.amp_plus * _pair_integral(a, E1, E2)
    )


def _slice_wavefunctions(slc: SliceCoords, domain: Domain, n, floor, root_tol=ROOT_TOL):
    energies = _solve_slice_energies(slc, domain, n, floor, root_tol)
    prob = _Secular.from_slice(slc.gamma0, slc.alpha, slc.beta, domain)
    params = from_slice(slc) if slc.beta != 0.0 else None
    return [
        _build_wavefunction(prob, EnergyLevel(i, e), params, domain)
        for i, e in enumerate(energies)
    ]


def _overlap_matrix(wfs1, wfs2):
    """Matrix of inner products <wfs1[n] | wfs2[m]>, vectorized."""
    b = wfs1[0].domain.left_len
    a = wfs1[0].domain.right_len

    def stacks(wfs):
        E = np.array([w.level.energy for w in wfs])
        return (
            E,
            np.array([w.amp_minus for w in wfs]),
            np.array([w.amp_plus for w in wfs]),
            np.array([_f(b, w.level.energy) for w in wfs]),
            np.array([_fp(b, w.level.energy) for w in wfs]),
            np.array([_f(a, w.level.energy) for w in wfs]),
            np.array([_fp(a, w.level.energy) for w in wfs]),
        )

    E1, am1, ap1, fb1, fpb1, fa1, fpa1 = stacks(wfs1)
    E2, am2, ap2, fb2, fpb2, fa2, fpa2 = stacks(wfs2)
    dE = E2[None, :] - E1[:, None]
    close = np.abs(dE) <= 1e-3 * np.maximum(
        1.0, np.maximum(np.abs(E1)[:, None], np.abs(E2)[None, :])
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        pb = (fpb1[:, None] * fb2[None, :] - fb1[:, None] * fpb2[None, :]) / (2.0 * dE)
        pa = (fpa1[:, None] * fa2[None, :] - fa1[:, None] * fpa2[None, :]) / (2.0 * dE)
    if close.any():
        # Near-degenerate pairs go through the cancellation-safe scalar form.
        for i, j in zip(*np.nonzero(close)):
            pb[i, j] = _pair_integral(b, E1[i], E2[j])
            pa[i, j] = _pair_integral(a, E1[i], E2[j])
    return am1[:, None] * am2[None, :] * pb + ap1[:, None] * ap2[None, :] * pa


def connection(point: SliceCoords, direction, h, n_levels, domain: Domain,
               opts: TraceOptions | None = None) -> ConnectionMatrix:
    """Central-difference overlap-derivative matrix at a regular slice point.

    Entries approximate <psi_n | d/dlambda psi_m> along ``direction`` in the
    (alpha, beta) plane.  Displaced states are sign-aligned to the centre
    point (the residual +- gauge of real eigenstates).
    """
    dx, dy = direction
    nrm = math.hypot(dx, dy)
    if nrm == 0.0:
        raise ValueError("direction must be a nonzero vector")
    dx, dy = dx / nrm, dy / nrm
    opts = opts or TraceOptions()
    floor = _default_floor(opts, domain)

    def states(alpha, beta):
        return _slice_wavefunctions(
            SliceCoords(point.gamma0, alpha, beta), domain, n_levels, floor, opts.root_tol
        )

    center = states(point.alpha, point.beta)
    plus = states(point.alpha + h * dx, point.beta + h * dy)
    minus = states(point.alpha - h * dx, point.beta - h * dy)

    def align(displaced):
        out = []
        for c, d in zip(center, displaced):
            o = overlap(c, d)
            if abs(o) < 0.5:
                raise GaugeAmbiguity(
                    f"centre/displaced overlap {o:.3f} for level {c.level.index}"
                )
            if o < 0.0:
                d = Wavefunction(d.level, -d.amp_minus, -d.amp_plus, d.domain, d.params)
            out.append(d)
        return out

    plus = align(plus)
    minus = align(minus)
    entries = (_overlap_matrix(center, plus) - _overlap_matrix(center, minus)) / (2.0 * h)
    return ConnectionMatrix((dx, dy), entries, h)


def evolution_matrix(path: ParameterPath, domain: Domain, n_levels, n_buffer=8,
                     opts: TraceOptions | None = None, leak_tol=0.5) -> np.ndarray:
    """Ordered product of inter-step overlap matrices along the path,
    truncated to ``n_levels`` (with ``n_buffer`` extra internal levels).

    Levels are labelled by continuity rather than by their position in the
    sorted spectrum, so a bound state rising into the energy window gets a
    fresh internal label instead of renumbering everything above it.  Row n
    is the n-th level of the starting spectrum, column m the level that
    started in slot m: entry (n, m) is the amplitude for that level to end
    the path in slot n.  For a fine closed loop the result is approximately
    a signed permutation: identity when the loop misses the singularity,
    the two-slot shift when it encircles it.
    """
    opts = opts or TraceOptions()
    floor = _default_floor(opts, domain)
    M = n_levels + n_buffer

    def states(pt):
        return _slice_wavefunctions(
            SliceCoords(path.gamma0, pt[0], pt[1]), domain, M, floor, opts.root_tol
        )

    prev = states(path.points[0])
    slots = list(range(M))  # slots[label] = sorted index of that level, or None
    U = np.eye(M)
    for pt in path.points[1:]:
        cur = states(pt)
        Of = _overlap_matrix(prev, cur)
        new_slots = []
        for j in slots:
            if j is None:
                new_slots.append(None)
                continue
            m = int(np.argmax(np.abs(Of[j])))
            # A level pushed above the window leaves only small overlaps.
            new_slots.append(m if abs(Of[j, m]) >= 0.5 else None)
        live = [m for m in new_slots if m is not None]
        if len(set(live)) != len(live):
            raise StepUnderflow(
                "two tracked levels claimed the same slot; refine the path"
            )
        for m in range(len(cur)):  # levels that rose into the window
            if m not in live:
                slots.append(None)
                new_slots.append(m)
        L = len(slots)
        Olab = np.zeros((L, L))
        for a, j in enumerate(slots):
            if j is None:
                continue
            for b, m in enumerate(new_slots):
                if m is not None:
                    Olab[a, b] = Of[j, m]
        if U.shape[1] < L:
            U = np.pad(U, ((0, 0), (0, L - U.shape[1])))
        U = U @ Olab
        slots = new_slots
        prev = cur
    row_norms = np.linalg.norm(U[:n_levels, :], axis=1)
    if (row_norms < leak_tol).any():
        raise TruncationLeak(
            f"evolution rows lost norm below {leak_tol}: {row_norms.round(3)}"
        )
    return U[:n_levels, :n_levels]
