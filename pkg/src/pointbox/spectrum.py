"""Secular function, eigenvalues, and eigenfunctions of the boxed point interaction.

The particle (hbar = m = 1) lives on [-r*L, (1-r)*L] with Dirichlet walls
and the point interaction at x = 0.  Positive-energy eigenfunctions are

    psi(x) = A_minus * sin k(x + r*L)          (x < 0)
    psi(x) = A_plus  * sin k(x - (1-r)*L)      (x > 0)

with k = sqrt(2E); negative energies use sinh/cosh with kappa = sqrt(-2E),
and E = 0 the linear limit.  Writing s(x;E) = sin(kx)/k (resp. sinh(kappa x)/kappa,
resp. x) and c(x;E) = cos(kx) (resp. cosh, resp. 1), the eigenvalues at E != 0
are the zeros of the single entire function

    D(E) = alpha*s(a)*c(b) + gamma*c(a)*s(b) + beta*s(a)*s(b) + delta*c(a)*c(b)

with a = (1-r)*L and b = r*L.  D is smooth through E = 0, where a zero is
checked separately and handled with the linear ansatz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _roots
from .errors import (
    FloorTooHigh,
    NotAnEigenvalue,
    OutOfDomain,
)
from .params import BCParams, SliceCoords, from_slice

#: Default relative tolerance on refined eigenvalues.
ROOT_TOL = 1e-10

#: Relative tolerance on the interface-condition residuals of eigenfunctions.
BC_TOL = 1e-9

#: Relative threshold below which psi(0-) or psi(0+) counts as a zero.
NODE_EPS = 1e-8


@dataclass(frozen=True)
class Domain:
    """Box of length L with the interaction splitting it into r*L and (1-r)*L."""

    L: float
    r: float

    def __post_init__(self):
        if not (self.L > 0.0):
            raise ValueError("L must be positive")
        if not (0.0 < self.r < 1.0):
            raise ValueError("r must lie strictly between 0 and 1")

    @property
    def left_len(self) -> float:
        """Length r*L of the segment left of the interaction."""
        return self.r * self.L

    @property
    def right_len(self) -> float:
        """Length (1-r)*L of the segment right of the interaction."""
        return (1.0 - self.r) * self.L


@dataclass(frozen=True)
class EnergyLevel:
    """An eigenvalue with its position in the ascending spectrum."""

    index: int
    energy: float

    @property
    def momentum(self) -> float:
        """k = sqrt(2E) for E > 0, kappa = sqrt(-2E) for E < 0."""
        return math.sqrt(2.0 * abs(self.energy))


@dataclass(frozen=True)
class Wavefunction:
    """Normalized piecewise eigenfunction with its two side amplitudes."""

    level: EnergyLevel
    amp_minus: float
    amp_plus: float
    domain: Domain
    params: BCParams


# ---------------------------------------------------------------------------
# Entire-function basis: f(u;E) is sin(ku)/sinh(kappa*u)/u and fp its u-derivative.


def _f(u, E):
    if E > 0.0:
        k = math.sqrt(2.0 * E)
        return math.sin(k * u)
    if E < 0.0:
        ka = math.sqrt(-2.0 * E)
        return math.sinh(ka * u)
    return u


def _fp(u, E):
    if E > 0.0:
        k = math.sqrt(2.0 * E)
        return k * math.cos(k * u)
    if E < 0.0:
        ka = math.sqrt(-2.0 * E)
        return ka * math.cosh(ka * u)
    return 1.0


def _sq_int(u, E):
    """Integral of f(t;E)^2 for t from 0 to u, in closed form."""
    if E > 0.0:
        k = math.sqrt(2.0 * E)
        return 0.5 * u - math.sin(2.0 * k * u) / (4.0 * k)
    if E < 0.0:
        ka = math.sqrt(-2.0 * E)
        return math.sinh(2.0 * ka * u) / (4.0 * ka) - 0.5 * u
    return u**3 / 3.0


def _sc_scalar(u, E):
    """(s, c) = (f/k-like entire basis) at scalar E."""
    if E > 0.0:
        k = math.sqrt(2.0 * E)
        return math.sin(k * u) / k, math.cos(k * u)
    if E < 0.0:
        ka = math.sqrt(-2.0 * E)
        return math.sinh(ka * u) / ka, math.cosh(ka * u)
    return u, 1.0


class _Secular:
    """Secular determinant and amplitude rows for one parameter point.

    Covers both the plain quadruple and the fixed-gamma slice: the slice
    form multiplies the delta-carrying row by beta, which removes the
    divergence of delta = (alpha*gamma0 - 1)/beta near beta = 0 while
    keeping the same zeros (the rescaled determinant is beta * D(E)).
    """

    __slots__ = ("A", "B", "C", "D", "w", "dom", "b", "a", "p1", "p2", "p3", "p4", "zero_scale")

    def __init__(self, A, B, C, D, w, dom):
        self.A, self.B, self.C, self.D, self.w = A, B, C, D, w
        self.dom = dom
        self.b = dom.left_len
        self.a = dom.right_len
        self.p1 = w * A
        self.p2 = C
        self.p3 = w * B
        self.p4 = D
        self.zero_scale = max(
            1.0, abs(self.p1 * self.a), abs(self.p2 * self.b),
            abs(self.p3 * self.a * self.b), abs(self.p4),
        )

    @classmethod
    def from_params(cls, p: BCParams, dom: Domain):
        return cls(p.alpha, p.beta, p.gamma, p.delta, 1.0, dom)

    @classmethod
    def from_slice(cls, gamma0, alpha, beta, dom: Domain):
        return cls(alpha, beta, gamma0 * beta, alpha * gamma0 - 1.0, beta, dom)

    # -- sign-consistent secular values (hyperbolic part rescaled by cosh*cosh)

    def values(self, E):
        E = np.asarray(E, dtype=float)
        out = np.empty_like(E)
        pos = E > 0.0
        neg = E < 0.0
        zer = ~(pos | neg)
        if pos.any():
            k = np.sqrt(2.0 * E[pos])
            sa, ca = np.sin(k * self.a) / k, np.cos(k * self.a)
            sb, cb = np.sin(k * self.b) / k, np.cos(k * self.b)
            out[pos] = self.p1 * sa * cb + self.p2 * ca * sb + self.p3 * sa * sb + self.p4 * ca * cb
        if neg.any():
            ka = np.sqrt(-2.0 * E[neg])
            ta, tb = np.tanh(ka * self.a), np.tanh(ka * self.b)
            out[neg] = (self.p1 * ta + self.p2 * tb) / ka + self.p3 * ta * tb / ka**2 + self.p4
        if zer.any():
            out[zer] = self.p1 * self.a + self.p2 * self.b + self.p3 * self.a * self.b + self.p4
        return out

    def value(self, E):
        if E > 0.0:
            k = math.sqrt(2.0 * E)
            sa, ca = math.sin(k * self.a) / k, math.cos(k * self.a)
            sb, cb = math.sin(k * self.b) / k, math.cos(k * self.b)
            return self.p1 * sa * cb + self.p2 * ca * sb + self.p3 * sa * sb + self.p4 * ca * cb
        if E < 0.0:
            ka = math.sqrt(-2.0 * E)
            ta, tb = math.tanh(ka * self.a), math.tanh(ka * self.b)
            return (self.p1 * ta + self.p2 * tb) / ka + self.p3 * ta * tb / ka**2 + self.p4
        return self.p1 * self.a + self.p2 * self.b + self.p3 * self.a * self.b + self.p4

    # -- amplitude construction from the two interface rows

    def rows(self, E):
        sa, ca = _sc_scalar(self.a, E)
        sb, cb = _sc_scalar(self.b, E)
        r1 = (ca, self.A * cb + self.B * sb)
        r2 = (self.w * sa, -(self.C * sb + self.D * cb))
        return r1, r2

    def amplitudes(self, E, bc_tol=BC_TOL):
        """Unnormalized (A_plus, A_minus) with the A_minus >= 0 sign gauge.

        The null vector is taken from the better-conditioned of the two
        interface rows; the residual against the other row certifies that
        E is actually an eigenvalue.
        """
        r1, r2 = self.rows(E)
        n1 = math.hypot(*r1)
        n2 = math.hypot(*r2)
        if n1 >= n2:
            v = (-r1[1], r1[0])
            other, n_other = r2, n2
        else:
            v = (-r2[1], r2[0])
            other, n_other = r1, n1
        nv = math.hypot(*v)
        if nv == 0.0:
            raise NotAnEigenvalue("degenerate interface rows")
        # Relative to the larger row: a vanishing row already makes the
        # determinant zero, so it must not inflate the residual.
        resid = abs(other[0] * v[0] + other[1] * v[1]) / (max(n1, n2) * nv)
        if resid > bc_tol:
            raise NotAnEigenvalue(
                f"E = {E!r} is not an eigenvalue (interface residual {resid:.3e})"
            )
        ap, am = v
        if am < 0.0 or (am == 0.0 and ap < 0.0):
            ap, am = -ap, -am
        return ap, am

    # -- default scan depth on the negative-energy axis

    def kappa_cap(self):
        """Scan depth in kappa, from the asymptotic dominance of the
        delta * kappa * cosh * cosh term of k * D(E)."""
        L = self.dom.L
        if self.w == 0.0:  # slice at beta = 0: no bound states survive there
            return 50.0 / L
        alpha, beta = self.A, self.B
        gamma = self.C / self.w
        delta = self.D / self.w
        cap = 50.0 / L + 10.0 * (abs(alpha) + abs(gamma) + abs(beta) * L) / max(
            abs(delta) / L, 0.01
        )
        return min(cap, 1e6)


def _solve_energies(prob: _Secular, count, floor=None, root_tol=ROOT_TOL):
    kcap = prob.kappa_cap()
    if floor is not None and floor < 0.0:
        kcap = max(kcap, math.sqrt(-2.0 * floor))
    return _roots.find_spectrum(
        prob.values,
        prob.value,
        prob.dom.L,
        count,
        kappa_cap=kcap,
        zero_scale=prob.zero_scale,
        root_tol=root_tol,
        floor=floor,
    )


def _solve_slice_energies(slc: SliceCoords, dom: Domain, count, floor, root_tol=ROOT_TOL):
    """Lowest ``count`` energies at or above ``floor`` on the slice; the
    beta-rescaled secular keeps this finite across beta = 0."""
    prob = _Secular.from_slice(slc.gamma0, slc.alpha, slc.beta, dom)
    kcap = math.sqrt(-2.0 * floor) if floor < 0.0 else None
    roots = _roots.find_spectrum(
        prob.values, prob.value, dom.L, count,
        kappa_cap=kcap, zero_scale=prob.zero_scale, root_tol=root_tol, floor=floor,
    )
    return [e for e in roots if e >= floor][:count]


# ---------------------------------------------------------------------------
# Public operations


def secular(E, params: BCParams, domain: Domain):
    """The entire secular function D(E); its zeros at E != 0 are the spectrum.

    Accepts a scalar or an array of energies.  For deeply negative E the
    unscaled cosh factors may overflow to inf; the eigenvalue search uses
    a rescaled form internally and is not affected.
    """
    prob = _Secular.from_params(params, domain)
    scalar = np.ndim(E) == 0
    E_arr = np.atleast_1d(np.asarray(E, dtype=float))
    vals = prob.values(E_arr)
    neg = E_arr < 0.0
    if neg.any():
        ka = np.sqrt(-2.0 * E_arr[neg])
        with np.errstate(over="ignore"):
            vals[neg] *= np.cosh(ka * prob.a) * np.cosh(ka * prob.b)
    return float(vals[0]) if scalar else vals


def eigenvalues(params: BCParams, domain: Domain, count, floor=None, root_tol=ROOT_TOL):
    """The lowest ``count`` eigenvalues above ``floor``, ascending.

    Raises FloorTooHigh if a bound state is detected below the requested
    floor (the floor is meant as a window edge, not a way to skip levels).
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    prob = _Secular.from_params(params, domain)
    roots = _solve_energies(prob, count, floor=floor, root_tol=root_tol)
    if floor is not None:
        below = [e for e in roots if e < floor]
        if below:
            raise FloorTooHigh(
                f"{len(below)} eigenvalue(s) below floor {floor}, lowest {below[0]:.6g}"
            )
    return [EnergyLevel(i, e) for i, e in enumerate(roots[:count])]


def eigenvalues_slice(slc: SliceCoords, domain: Domain, count, floor=None, root_tol=ROOT_TOL):
    """Slice-coordinate variant of :func:`eigenvalues`, finite across beta = 0."""
    if count < 1:
        raise ValueError("count must be at least 1")
    prob = _Secular.from_slice(slc.gamma0, slc.alpha, slc.beta, domain)
    roots = _solve_energies(prob, count, floor=floor, root_tol=root_tol)
    if floor is not None:
        below = [e for e in roots if e < floor]
        if below:
            raise FloorTooHigh(
                f"{len(below)} eigenvalue(s) below floor {floor}, lowest {below[0]:.6g}"
            )
    return [EnergyLevel(i, e) for i, e in enumerate(roots[:count])]


def amplitude_ratio(E, params: BCParams, domain: Domain):
    """Unnormalized (A_plus, A_minus) at an eigenvalue, A_minus >= 0."""
    prob = _Secular.from_params(params, domain)
    return prob.amplitudes(E)


def _build_wavefunction(prob: _Secular, level: EnergyLevel, params: BCParams, dom: Domain):
    ap, am = prob.amplitudes(level.energy)
    norm2 = am * am * _sq_int(dom.left_len, level.energy) + ap * ap * _sq_int(
        dom.right_len, level.energy
    )
    s = 1.0 / math.sqrt(norm2)
    return Wavefunction(level, am * s, ap * s, dom, params)


def wavefunction(level: EnergyLevel, params: BCParams, domain: Domain) -> Wavefunction:
    """Normalized eigenfunction for a level returned by :func:`eigenvalues`."""
    prob = _Secular.from_params(params, domain)
    return _build_wavefunction(prob, level, params, domain)


def wavefunction_slice(level: EnergyLevel, slc: SliceCoords, domain: Domain) -> Wavefunction:
    """Slice-coordinate variant of :func:`wavefunction` (requires beta != 0
    only for the stored quadruple; the construction itself is rescaled)."""
    prob = _Secular.from_slice(slc.gamma0, slc.alpha, slc.beta, domain)
    return _build_wavefunction(prob, level, from_slice(slc), domain)


def evaluate(wf: Wavefunction, xs, from_right=False):
    """Pointwise values of the eigenfunction.

    x = 0 is evaluated from the left by convention; ``from_right`` flips
    that single point to the right-hand limit.
    """
    xs_arr = np.asarray(xs, dtype=float)
    dom = wf.domain
    b, a = dom.left_len, dom.right_len
    tol = 1e-12 * dom.L
    if np.any(xs_arr < -b - tol) or np.any(xs_arr > a + tol):
        raise OutOfDomain(f"positions outside [{-b}, {a}]")
    E = wf.level.energy
    flat = np.atleast_1d(xs_arr)
    out = np.empty_like(flat)
    for i, x in enumerate(flat):
        left = x < 0.0 or (x == 0.0 and not from_right)
        if left:
            out[i] = wf.amp_minus * _f(max(x, -b) + b, E)
        else:
            out[i] = wf.amp_plus * _f(min(x, a) - a, E)
    if np.ndim(xs) == 0:
        return float(out[0])
    return out


def _boundary_values(wf: Wavefunction):
    """psi and psi' on both sides of x = 0."""
    E = wf.level.energy
    b, a = wf.domain.left_len, wf.domain.right_len
    psi_m = wf.amp_minus * _f(b, E)
    dpsi_m = wf.amp_minus * _fp(b, E)
    psi_p = -wf.amp_plus * _f(a, E)
    dpsi_p = wf.amp_plus * _fp(a, E)  # f' is even
    return psi_m, dpsi_m, psi_p, dpsi_p


def node_count(wf: Wavefunction, node_eps=NODE_EPS) -> int:
    """Interior zeros of the eigenfunction.

    Zeros strictly inside each side are counted analytically from the
    equally spaced zeros of sin (none exist for the hyperbolic or linear
    cases).  The interaction point contributes one node when psi vanishes
    there on either side, or when the sign flips across the jump.
    """
    E = wf.level.energy
    b, a = wf.domain.left_len, wf.domain.right_len
    n = 0
    if E > 0.0:
        k = math.sqrt(2.0 * E)
        n += max(int(math.floor(k * b / math.pi - 1e-9)), 0)
        n += max(int(math.floor(k * a / math.pi - 1e-9)), 0)
    psi_m, _, psi_p, _ = _boundary_values(wf)
    scale = max(abs(psi_m), abs(psi_p), abs(wf.amp_minus), abs(wf.amp_plus))
    thresh = node_eps * scale
    if min(abs(psi_m), abs(psi_p)) <= thresh:
        n += 1
    elif (psi_m > 0.0) != (psi_p > 0.0):
        n += 1
    return n


def check_bc(wf: Wavefunction):
    """The two interface-condition residuals, each normalized by the
    largest contributing term."""
    p = wf.params
    psi_m, dpsi_m, psi_p, dpsi_p = _boundary_values(wf)
    # Floor the normalizer at the state's characteristic magnitude so a row
    # whose terms all vanish (e.g. continuous free states) reads as satisfied.
    psi_scale = max(abs(psi_m), abs(psi_p), abs(wf.amp_minus), abs(wf.amp_plus))
    k_scale = max(wf.level.momentum, 1.0 / wf.domain.L)
    t = (dpsi_p, p.alpha * dpsi_m, p.beta * psi_m)
    res1 = abs(sum(t)) / max(max(abs(v) for v in t), k_scale * psi_scale, 1e-300)
    u = (psi_p, p.gamma * psi_m, p.delta * dpsi_m)
    res2 = abs(sum(u)) / max(max(abs(v) for v in u), psi_scale, 1e-300)
    return res1, res2
