import math

import numpy as np
import pytest
from scipy.optimize import brentq

from pointbox import (
    Domain,
    FloorTooHigh,
    NotAnEigenvalue,
    OutOfDomain,
    SliceCoords,
    amplitude_ratio,
    check_bc,
    eigenvalues,
    eigenvalues_slice,
    evaluate,
    make_params,
    node_count,
    secular,
    wavefunction,
    wavefunction_slice,
)

FREE = make_params(-1.0, 0.0, -1.0, 0.0)


# ---------------------------------------------------------------------------
# Independent oracles: roots of the matching conditions written directly in
# trigonometric form, bracketed by hand.


def _delta_even_roots(v, n):
    """Positive k with tan(k/2) = -k/v (centered delta, box [-1/2, 1/2])."""

    def g(k):
        return math.sin(k / 2.0) * v + k * math.cos(k / 2.0)

    roots, k0 = [], 1e-6
    step = 0.05
    while len(roots) < n:
        k1 = k0 + step
        if g(k0) * g(k1) < 0.0:
            roots.append(brentq(g, k0, k1, xtol=1e-14))
        k0 = k1
    return roots


def test_free_particle_energies_match_box_levels():
    for r in (0.3, 0.5, 0.618034):
        dom = Domain(1.0, r)
        levels = eigenvalues(FREE, dom, 12)
        exact = [0.5 * (n * math.pi) ** 2 for n in range(1, 13)]
        got = [l.energy for l in levels]
        assert np.allclose(got, exact, rtol=1e-12)


def test_centered_delta_against_trig_oracle():
    v = 5.0
    dom = Domain(1.0, 0.5)
    p = make_params(-1.0, -2.0 * v, -1.0, 0.0)
    got = [l.energy for l in eigenvalues(p, dom, 8)]
    even = [0.5 * k * k for k in _delta_even_roots(v, 4)]
    odd = [0.5 * (2.0 * n * math.pi) ** 2 for n in range(1, 5)]
    exact = sorted(even + odd)[:8]
    assert np.allclose(got, exact, rtol=1e-10)


def test_attractive_delta_bound_state():
    # strong attractive delta: even bound state with v*tanh(kappa/2) = -kappa
    v = -8.0
    dom = Domain(1.0, 0.5)
    p = make_params(-1.0, -2.0 * v, -1.0, 0.0)

    def g(kappa):
        return v * math.tanh(kappa / 2.0) + kappa

    kappa = brentq(g, 1.0, 16.0, xtol=1e-14)
    e0 = eigenvalues(p, dom, 1)[0].energy
    assert e0 < 0.0
    assert math.isclose(e0, -0.5 * kappa * kappa, rel_tol=1e-10)


def test_slice_spectrum_against_direct_bc_determinant():
    # independent formulation: boundary-condition determinant assembled from
    # the raw sine solutions, without the rescaled secular expansion
    slc = SliceCoords(-1.0, -1.0, 0.5)
    dom = Domain(1.0, 0.618034)
    b, a = dom.left_len, dom.right_len
    alpha, beta, gamma = slc.alpha, slc.beta, slc.gamma0
    delta = (alpha * gamma - 1.0) / beta

    # 2x2 determinant of the two matching conditions in (A, B)
    def det2(k):
        pm, dpm = math.sin(k * b), k * math.cos(k * b)
        pa, dpa = -math.sin(k * a), k * math.cos(k * a)
        return (alpha * dpm + beta * pm) * pa - dpa * (gamma * pm + delta * dpm)

    ks = np.arange(0.2, 18.0, 0.02)
    vals = [det2(k) for k in ks]
    oracle = []
    for i in range(len(ks) - 1):
        if vals[i] * vals[i + 1] < 0.0:
            oracle.append(0.5 * brentq(det2, ks[i], ks[i + 1], xtol=1e-14) ** 2)
    got = [l.energy for l in eigenvalues_slice(slc, dom, len(oracle)) if l.energy > 0.02]
    assert np.allclose(got[: len(oracle)], oracle, rtol=1e-9)


def test_secular_is_smooth_through_zero_energy():
    p = make_params(2.0, 1.0, 1.0, 1.0)
    dom = Domain(1.0, 0.618034)
    lo, hi = secular(-1e-7, p, dom), secular(1e-7, p, dom)
    assert math.isclose(lo, hi, rel_tol=1e-5)
    mid = secular(0.0, p, dom)
    assert math.isclose(mid, 0.5 * (lo + hi), rel_tol=1e-5)


def test_secular_vanishes_only_at_eigenvalues():
    p = make_params(2.0, 1.0, 1.0, 1.0)
    dom = Domain(1.0, 0.618034)
    levels = eigenvalues(p, dom, 5)
    for l in levels:
        assert abs(secular(l.energy, p, dom)) < 1e-8
    for e1, e2 in zip(levels, levels[1:]):
        assert abs(secular(0.5 * (e1.energy + e2.energy), p, dom)) > 1e-6


def test_free_amplitude_ratio_alternates():
    dom = Domain(1.0, 0.5)
    for n, lv in enumerate(eigenvalues(FREE, dom, 6), start=1):
        ap, am = amplitude_ratio(lv.energy, FREE, dom)
        assert am > 0.0
        assert math.isclose(ap / am, (-1.0) ** n, rel_tol=1e-9)


def test_amplitude_ratio_rejects_non_eigenvalue():
    dom = Domain(1.0, 0.5)
    with pytest.raises(NotAnEigenvalue):
        amplitude_ratio(7.0, FREE, dom)


def test_wavefunction_is_normalized_numerically():
    p = make_params(2.0, 1.0, 1.0, 1.0)
    dom = Domain(1.0, 0.618034)
    for lv in eigenvalues(p, dom, 4):
        wf = wavefunction(lv, p, dom)
        xs_l = np.linspace(-dom.left_len, 0.0, 4001)
        xs_r = np.linspace(0.0, dom.right_len, 4001)
        sq = np.trapezoid(evaluate(wf, xs_l) ** 2, xs_l) + np.trapezoid(
            evaluate(wf, xs_r, from_right=True) ** 2, xs_r
        )
        assert math.isclose(sq, 1.0, rel_tol=1e-6)


def test_evaluate_vanishes_at_walls_and_checks_domain():
    dom = Domain(2.0, 0.4)
    wf = wavefunction(eigenvalues(FREE, dom, 1)[0], FREE, dom)
    assert evaluate(wf, -dom.left_len) == pytest.approx(0.0, abs=1e-12)
    assert evaluate(wf, dom.right_len) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(OutOfDomain):
        evaluate(wf, dom.right_len + 0.1)


def test_free_node_counts_follow_box_law():
    dom = Domain(1.0, 0.618034)
    for n, lv in enumerate(eigenvalues(FREE, dom, 6), start=1):
        wf = wavefunction(lv, FREE, dom)
        assert node_count(wf) == n - 1


def test_jump_discontinuity_counts_as_node_on_sign_flip():
    # beta != 0 slice point whose ground state flips sign across x = 0
    slc = SliceCoords(-1.0, -1.0 - 0.5 * math.sin(2.0), 0.5 * math.cos(2.0))
    dom = Domain(1.0, 0.618034)
    lv = eigenvalues_slice(slc, dom, 2)[1]
    wf = wavefunction_slice(lv, slc, dom)
    left = evaluate(wf, 0.0)
    right = evaluate(wf, 0.0, from_right=True)
    assert left * right < 0.0
    assert node_count(wf) == 1


def test_check_bc_residuals_are_small():
    dom = Domain(1.0, 0.618034)
    for p in (FREE, make_params(2.0, 1.0, 1.0, 1.0), make_params(-1.0, -10.0, -1.0, 0.0)):
        for lv in eigenvalues(p, dom, 5):
            wf = wavefunction(lv, p, dom)
            r1, r2 = check_bc(wf)
            assert r1 <= 1e-9 and r2 <= 1e-9


def test_floor_above_roots_raises():
    dom = Domain(1.0, 0.5)
    with pytest.raises(FloorTooHigh):
        eigenvalues(FREE, dom, 3, floor=10.0)


def test_deep_bound_state_on_slice_near_singular_angle():
    # near theta = 0+ the slice hosts a very deep bound state
    slc = SliceCoords(-1.0, -1.0 - 0.1 * math.sin(0.05), 0.1 * math.cos(0.05))
    dom = Domain(1.0, 0.618034)
    e0 = eigenvalues_slice(slc, dom, 1)[0].energy
    assert e0 < -500.0
    wf = wavefunction_slice(eigenvalues_slice(slc, dom, 1)[0], slc, dom)
    r1, r2 = check_bc(wf)
    assert r1 <= 1e-9 and r2 <= 1e-9
