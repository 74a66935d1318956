import math

import numpy as np
import pytest

from pointbox import (
    ConstraintViolation,
    DegenerateDelta,
    PathThroughSingularity,
    SliceCoords,
    from_polar,
    from_slice,
    make_params,
    polar_loop,
    singular_point,
    slice_from_polar,
    winding_number,
)
from pointbox.params import ParameterPath, PolarCoords


def test_make_params_accepts_unimodular_quadruples():
    p = make_params(2.0, 1.0, 1.0, 1.0)
    assert (p.alpha, p.beta, p.gamma, p.delta) == (2.0, 1.0, 1.0, 1.0)
    # free particle
    make_params(-1.0, 0.0, -1.0, 0.0)


def test_make_params_rejects_constraint_violation():
    with pytest.raises(ConstraintViolation):
        make_params(1.0, 1.0, 1.0, 1.0)
    with pytest.raises(ConstraintViolation):
        make_params(0.0, 0.0, 0.0, 0.0)


def test_constraint_check_is_relative():
    # huge parameters: alpha*gamma - beta*delta rounds at ~|alpha*gamma|*1e-16,
    # far above any absolute tolerance
    s = 1e8
    make_params(s, math.sqrt(s * s - 1.0), s, math.sqrt(s * s - 1.0))


def test_from_slice_builds_consistent_quadruple():
    slc = SliceCoords(-1.0, -0.5, 0.25)
    p = from_slice(slc)
    assert p.gamma == -1.0
    assert p.alpha == -0.5
    assert p.beta == 0.25
    assert math.isclose(p.alpha * p.gamma - p.beta * p.delta, 1.0, rel_tol=1e-12)


def test_from_slice_rejects_beta_zero():
    with pytest.raises(DegenerateDelta):
        from_slice(SliceCoords(-1.0, -0.5, 0.0))


def test_polar_coordinates_on_the_slice():
    gamma0 = -1.0
    slc = slice_from_polar(PolarCoords(gamma0, 0.5, 0.0))
    assert slc.alpha == 1.0 / gamma0
    assert slc.beta == 0.5
    # quarter turn: alpha offset by -rho, beta = 0 exactly
    slc = slice_from_polar(PolarCoords(gamma0, 0.5, math.pi / 2.0))
    assert math.isclose(slc.alpha, -1.5, abs_tol=1e-15)
    assert abs(slc.beta) < 1e-16


def test_polar_is_two_pi_periodic():
    a = slice_from_polar(PolarCoords(-1.0, 0.3, 0.7))
    b = slice_from_polar(PolarCoords(-1.0, 0.3, 0.7 + 2.0 * math.pi))
    assert math.isclose(a.alpha, b.alpha, rel_tol=0, abs_tol=1e-15)
    assert math.isclose(a.beta, b.beta, rel_tol=0, abs_tol=1e-15)


def test_from_polar_quadruple_matches_slice():
    pol = PolarCoords(-2.0, 0.4, 1.1)
    p = from_polar(pol)
    slc = slice_from_polar(pol)
    assert p.gamma == -2.0
    assert math.isclose(p.alpha, slc.alpha, rel_tol=1e-15)


def test_singular_point():
    assert singular_point(-1.0) == (-1.0, 0.0)
    assert singular_point(2.0) == (0.5, 0.0)


def test_winding_number_of_polar_loops():
    ccw = polar_loop(-1.0, 0.5, n_steps=64)
    assert winding_number(ccw) == 1
    cw = ParameterPath(ccw.gamma0, list(reversed(ccw.points)), True)
    assert winding_number(cw) == -1
    away = polar_loop(-1.0, 0.5, n_steps=64, center=(3.0, 0.0))
    assert winding_number(away) == 0
    double = polar_loop(-1.0, 0.5, n_steps=128, turns=2)
    assert winding_number(double) == 2


def test_winding_number_requires_closed_path():
    pts = [(-1.0, 0.5), (-1.5, 0.0), (-1.0, -0.5)]
    with pytest.raises(ValueError):
        winding_number(ParameterPath(-1.0, pts, False))


def test_path_through_singularity_is_rejected():
    # segment passing exactly through (-1, 0)
    path = ParameterPath(
        -1.0, [(-2.0, -1.0), (0.0, 1.0), (-2.0, 1.0), (-2.0, -1.0)], True
    )
    with pytest.raises(PathThroughSingularity):
        winding_number(path)


def test_polar_loop_shape():
    loop = polar_loop(-1.0, 0.25, n_steps=10, theta0=0.3)
    assert len(loop.points) == 11
    assert loop.points[0] == loop.points[-1]
    rads = [math.hypot(a + 1.0, b) for a, b in loop.points]
    assert np.allclose(rads, 0.25, atol=1e-12)
