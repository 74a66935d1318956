"""Interface-condition parameters, the fixed-gamma slice, and paths in it.

The point interaction at x = 0 is fixed by four real numbers
(alpha, beta, gamma, delta) subject to alpha*gamma - beta*delta = 1,
which makes the Hamiltonian self-adjoint.  Fixing gamma = gamma0 and
eliminating delta = (alpha*gamma0 - 1)/beta yields a two-parameter slice
(alpha, beta) with a single singular point (1/gamma0, 0) where delta is
indefinite.  Polar coordinates (rho, theta) are centred on that point.

All types are immutable values and all operations are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    ConstraintViolation,
    DegenerateDelta,
    InvalidGamma0,
    PathThroughSingularity,
    SingularPoint,
)

#: Relative tolerance on |alpha*gamma - beta*delta - 1|.
CONSTRAINT_TOL = 1e-12

#: Minimum distance a path segment must keep from the singular point.
WINDING_EPS = 1e-12

_TAU = 2.0 * math.pi


@dataclass(frozen=True)
class BCParams:
    """The four interface parameters.  alpha and gamma are dimensionless,
    beta has units 1/length and delta has units length."""

    alpha: float
    beta: float
    gamma: float
    delta: float


@dataclass(frozen=True)
class SliceCoords:
    """A point (alpha, beta) on the fixed-gamma slice gamma = gamma0."""

    gamma0: float
    alpha: float
    beta: float


@dataclass(frozen=True)
class PolarCoords:
    """Polar coordinates around the singular point of the slice.

    theta is stored unreduced (not mod 2*pi) so multi-turn loops are
    representable; reduction is the caller's choice.
    """

    gamma0: float
    rho: float
    theta: float


@dataclass(frozen=True)
class ParameterPath:
    """A polygonal path in the (alpha, beta) slice.

    If ``closed`` the first and last points must be bitwise equal.  No
    vertex may coincide with the singular point (1/gamma0, 0).
    """

    gamma0: float
    points: tuple[tuple[float, float], ...]
    closed: bool

    def __post_init__(self):
        pts = tuple((float(a), float(b)) for a, b in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise ValueError("a path needs at least two points")
        if self.closed and pts[0] != pts[-1]:
            raise ValueError("closed path must end exactly where it starts")
        star = singular_point(self.gamma0)
        for p in pts:
            if p == star:
                raise PathThroughSingularity(f"path vertex {p} is the singular point")


def make_params(alpha, beta, gamma, delta, constraint_tol=CONSTRAINT_TOL) -> BCParams:
    """Validate and build a BCParams quadruple.

    Raises ConstraintViolation when |alpha*gamma - beta*delta - 1| exceeds
    the tolerance relative to max(1, |alpha*gamma|).
    """
    vals = (alpha, beta, gamma, delta)
    if not all(math.isfinite(v) for v in vals):
        raise ValueError(f"parameters must be finite, got {vals}")
    resid = abs(alpha * gamma - beta * delta - 1.0)
    if resid > constraint_tol * max(1.0, abs(alpha * gamma)):
        raise ConstraintViolation(
            f"alpha*gamma - beta*delta = {alpha * gamma - beta * delta!r}, expected 1"
        )
    return BCParams(float(alpha), float(beta), float(gamma), float(delta))


def from_slice(slc: SliceCoords) -> BCParams:
    """Lift a slice point to the full quadruple via delta = (alpha*gamma0 - 1)/beta."""
    if slc.gamma0 == 0.0:
        raise InvalidGamma0("gamma0 must be nonzero")
    if slc.beta == 0.0:
        raise DegenerateDelta(
            f"delta is indefinite at beta = 0 (alpha = {slc.alpha}, gamma0 = {slc.gamma0})"
        )
    delta = (slc.alpha * slc.gamma0 - 1.0) / slc.beta
    return BCParams(float(slc.alpha), float(slc.beta), float(slc.gamma0), delta)


def slice_from_polar(polar: PolarCoords) -> SliceCoords:
    """Map (rho, theta) to the slice: alpha = 1/gamma0 - rho*sin(theta),
    beta = rho*cos(theta)."""
    if polar.gamma0 == 0.0:
        raise InvalidGamma0("gamma0 must be nonzero")
    if polar.rho == 0.0:
        raise SingularPoint("rho = 0 is the singular point; the energy is indefinite there")
    if polar.rho < 0.0:
        raise ValueError("rho must be nonnegative")
    # Reduce theta so that theta and theta + 2*pi give identical coordinates.
    th = math.remainder(polar.theta, _TAU)
    alpha = 1.0 / polar.gamma0 - polar.rho * math.sin(th)
    beta = polar.rho * math.cos(th)
    return SliceCoords(polar.gamma0, alpha, beta)


def from_polar(polar: PolarCoords) -> BCParams:
    """Lift polar coordinates around the singularity to the full quadruple."""
    return from_slice(slice_from_polar(polar))


def singular_point(gamma0) -> tuple[float, float]:
    """The point of the slice where delta (and the energy) is indefinite."""
    if gamma0 == 0.0:
        raise InvalidGamma0("gamma0 must be nonzero")
    return (1.0 / gamma0, 0.0)


def _seg_point_dist(p, q, c):
    """Distance from point c to segment pq."""
    px, py = p
    qx, qy = q
    cx, cy = c
    dx, dy = qx - px, qy - py
    L2 = dx * dx + dy * dy
    if L2 == 0.0:
        return math.hypot(cx - px, cy - py)
    t = ((cx - px) * dx + (cy - py) * dy) / L2
    t = min(1.0, max(0.0, t))
    return math.hypot(cx - (px + t * dx), cy - (py + t * dy))


def winding_number(path: ParameterPath, winding_eps=WINDING_EPS) -> int:
    """Signed number of turns of a closed path around the singular point.

    Counterclockwise in the (alpha, beta) plane (alpha rightward, beta
    upward) counts positive.  Computed by summing the signed angle
    increments of the polygon vertices about the singular point, which is
    exact for the polygonal representation.
    """
    if not path.closed:
        raise ValueError("winding number is defined for closed paths only")
    cx, cy = singular_point(path.gamma0)
    total = 0.0
    pts = path.points
    for p, q in zip(pts[:-1], pts[1:]):
        if _seg_point_dist(p, q, (cx, cy)) < winding_eps:
            raise PathThroughSingularity(
                f"segment {p} -> {q} passes within {winding_eps} of the singular point"
            )
        ux, uy = p[0] - cx, p[1] - cy
        vx, vy = q[0] - cx, q[1] - cy
        total += math.atan2(ux * vy - uy * vx, ux * vx + uy * vy)
    return round(total / _TAU)


def polar_loop(
    gamma0,
    rho,
    n_steps=400,
    turns=1,
    theta0=0.0,
    center=None,
    closed=True,
) -> ParameterPath:
    """Discretized circle of radius rho in the slice.

    By default the circle is centred on the singular point and traversed
    counterclockwise (theta increasing) for ``turns`` full revolutions;
    negative ``turns`` reverses the orientation.  ``center`` overrides the
    circle centre, e.g. to build loops that do not enclose the singularity.
    """
    if rho <= 0.0:
        raise ValueError("rho must be positive")
    if n_steps < 2:
        raise ValueError("n_steps must be at least 2")
    if center is None:
        center = singular_point(gamma0)
    ca, cb = center
    pts = []
    for i in range(n_steps + 1):
        th = theta0 + _TAU * turns * i / n_steps
        pts.append((ca - rho * math.sin(th), cb + rho * math.cos(th)))
    if closed and turns == round(turns):
        pts[-1] = pts[0]
    return ParameterPath(gamma0, tuple(pts), closed=closed and turns == round(turns))
