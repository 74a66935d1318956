import math

import numpy as np
import pytest
from scipy.integrate import quad

from pointbox import (
    Domain,
    DomainMismatch,
    NearPole,
    SliceCoords,
    TraceOptions,
    compare_asymptotic,
    connection,
    eigenvalues,
    eigenvalues_slice,
    evaluate,
    evolution_matrix,
    loop_permutation,
    make_params,
    overlap,
    polar_loop,
    theta_branch,
    trace_path,
    wavefunction,
)

DOM = Domain(1.0, 0.618034)


def _states(params, n):
    return [wavefunction(l, params, DOM) for l in eigenvalues(params, DOM, n)]


def test_eigenstates_are_orthonormal():
    wfs = _states(make_params(2.0, 1.0, 1.0, 1.0), 6)
    gram = np.array([[overlap(u, v) for v in wfs] for u in wfs])
    assert np.abs(gram - np.eye(6)).max() < 1e-10


def test_overlap_matches_numerical_quadrature():
    p1 = make_params(2.0, 1.0, 1.0, 1.0)
    p2 = make_params(-1.0, -4.0, -1.0, 0.0)
    w1 = _states(p1, 2)[1]
    w2 = _states(p2, 2)[0]
    left, _ = quad(lambda x: evaluate(w1, x) * evaluate(w2, x), -DOM.left_len, 0.0,
                   limit=200)
    right, _ = quad(
        lambda x: evaluate(w1, x, from_right=True) * evaluate(w2, x, from_right=True),
        0.0, DOM.right_len, limit=200,
    )
    assert math.isclose(overlap(w1, w2), left + right, rel_tol=0, abs_tol=1e-9)


def test_overlap_checks_domain():
    w1 = _states(make_params(-1.0, 0.0, -1.0, 0.0), 1)[0]
    other = Domain(1.0, 0.5)
    w2 = wavefunction(
        eigenvalues(make_params(-1.0, 0.0, -1.0, 0.0), other, 1)[0],
        make_params(-1.0, 0.0, -1.0, 0.0),
        other,
    )
    with pytest.raises(DomainMismatch):
        overlap(w1, w2)


def test_theta_branch_principal_value_and_poles():
    val = theta_branch(2.0, -1.0, DOM)
    assert -math.pi / 2.0 < val < math.pi / 2.0
    # k placing the right-segment phase at a tangent pole
    k_pole = (math.pi / 2.0) / DOM.right_len
    with pytest.raises(NearPole):
        theta_branch(k_pole, -1.0, DOM)


def test_asymptotic_branch_deviation_shrinks_with_rho():
    d1 = compare_asymptotic(-1.0, 1e-2, DOM, (1.0, 10.0))
    d2 = compare_asymptotic(-1.0, 1e-3, DOM, (1.0, 10.0))
    assert d1 < 0.1
    assert d2 < d1 / 5.0


def test_trace_path_histories_are_continuous():
    path = polar_loop(-1.0, 0.5, n_steps=60, theta0=1.0, turns=1, closed=True)
    tracked = trace_path(path, DOM, 3)
    for tl in tracked:
        if tl.status != "tracked":
            continue
        es = [e for _, e in tl.samples]
        steps = np.abs(np.diff(es)) / np.maximum(1.0, np.abs(es[:-1]))
        assert steps.max() < 0.5


def test_non_encircling_loop_has_zero_shift():
    loop = polar_loop(-1.0, 0.4, n_steps=120, center=(1.5, 0.2))
    res = loop_permutation(loop, DOM, 3)
    assert res.winding == 0
    assert res.shift == 0
    assert res.spectra_match_error <= 1e-8


def test_non_encircling_evolution_is_identity():
    loop = polar_loop(-1.0, 0.4, n_steps=200, center=(1.5, 0.2))
    U = evolution_matrix(loop, DOM, 3)
    assert np.abs(np.abs(U) - np.eye(3)).max() < 5e-3


def test_connection_diagonal_and_antisymmetry():
    pt = SliceCoords(-1.0, -1.3, 0.45)
    C = connection(pt, (0.6, -0.8), 1e-5, 4, DOM)
    assert np.abs(np.diag(C.entries)).max() < 1e-6
    assert np.abs(C.entries + C.entries.T).max() < 1e-4
    assert C.entries.shape == (4, 4)


def test_connection_entries_match_overlap_derivative():
    # independent finite difference of <psi_n | psi_m(lambda + h)> at fixed n
    from pointbox import wavefunction_slice

    pt = SliceCoords(-1.0, -1.3, 0.45)
    h = 1e-5
    C = connection(pt, (1.0, 0.0), h, 3, DOM)

    def states(alpha):
        slc = SliceCoords(-1.0, alpha, pt.beta)
        return [wavefunction_slice(l, slc, DOM) for l in eigenvalues_slice(slc, DOM, 3)]

    center = states(pt.alpha)
    plus = states(pt.alpha + h)
    minus = states(pt.alpha - h)
    n, m = 0, 2
    d = (overlap(center[n], plus[m]) - overlap(center[n], minus[m])) / (2.0 * h)
    assert math.isclose(C.entries[n, m], d, rel_tol=1e-6, abs_tol=1e-9)


def test_trace_options_floor_default_scales_with_box():
    opts = TraceOptions()
    assert opts.energy_floor is None
    loop = polar_loop(-1.0, 0.3, n_steps=80, center=(2.0, 0.0))
    res = loop_permutation(loop, Domain(2.0, 0.618034), 2)
    assert res.shift == 0
