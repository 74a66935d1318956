import math

import numpy as np
import pytest

from pointbox import (
    Domain,
    UnrepresentableParams,
    convergence_study,
    eigenvalues,
    jump_matrix,
    make_params,
    segment_matrix,
    spectrum_finite_a,
    strengths,
)


def test_strengths_closed_forms():
    td = strengths(0.01, make_params(2.0, 1.0, 1.0, 1.0))
    assert math.isclose(td.v_minus, -1.0 / 0.02 + (1.0 - 1.0) / 2.0)
    assert math.isclose(td.v_minus, -50.0)
    assert math.isclose(td.v_plus, -1.0 / 0.02 + (2.0 - 1.0) / 2.0)
    assert math.isclose(td.v_plus, -49.5)
    assert math.isclose(td.u, -1.0 / 0.01 - (2.0 * 1.0 - 1.0) / (2.0 * 1.0 * 0.01**2))
    assert math.isclose(td.u, -5100.0)


def test_strengths_reject_unrepresentable_params():
    with pytest.raises(UnrepresentableParams):
        strengths(0.01, make_params(-1.0, 0.0, -1.0, 0.0))  # beta = delta = 0


def test_transfer_matrices_are_unimodular():
    for E in (-3.0, 0.0, 2.5, 40.0):
        m = np.array(segment_matrix(0.3, E))
        assert math.isclose(np.linalg.det(m), 1.0, rel_tol=1e-12)
    j = np.array(jump_matrix(7.0))
    assert math.isclose(np.linalg.det(j), 1.0, rel_tol=1e-15)
    assert np.allclose(j, [[1.0, 0.0], [14.0, 1.0]])


def test_segment_matrix_free_propagation():
    # E > 0: rotation-like block with sin/cos entries
    E = 2.0
    k = 2.0
    m = np.array(segment_matrix(0.5, E))
    assert math.isclose(m[0, 0], math.cos(k * 0.5), rel_tol=1e-12)
    assert math.isclose(m[0, 1], math.sin(k * 0.5) / k, rel_tol=1e-12)
    assert math.isclose(m[1, 0], -k * math.sin(k * 0.5), rel_tol=1e-12)


def test_single_delta_transfer_matrix_equals_point_interaction():
    # v+- = 0 and u = v realizes a plain delta of strength v
    from pointbox.regularize import TripleDelta

    dom = Domain(1.0, 0.618034)
    for v in (1.0, -5.0):
        td = TripleDelta(1e-9, 0.0, 0.0, v)
        finite = spectrum_finite_a(td, dom, 6)
        point = eigenvalues(make_params(-1.0, -2.0 * v, -1.0, 0.0), dom, 6)
        assert np.allclose(
            [l.energy for l in finite], [l.energy for l in point], rtol=1e-7
        )


def test_convergence_study_errors_shrink_first_order():
    p = make_params(2.0, 1.0, 1.0, 1.0)
    dom = Domain(1.0, 0.618034)
    rows = convergence_study(p, dom, [1e-2, 1e-3], 3)
    errs = {}
    for a, n, _, err in rows:
        errs.setdefault(n, []).append((a, err))
    for n, pairs in errs.items():
        pairs.sort(reverse=True)  # descending a
        (a1, e1), (a2, e2) = pairs
        assert e2 < e1
        assert 5.0 <= e1 / e2 <= 20.0
