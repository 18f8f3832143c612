import math

import numpy as np
import pytest

import qroof


def test_identity_has_zero_concurrence():
    phi = qroof.identity_map()
    sol = qroof.solve_w0(phi)
    assert sol.w0 == pytest.approx(1.0, abs=1e-12)
    assert sol.flat
    assert qroof.concurrence(phi, qroof.FourVector.state([0.1, 0.2, 0.3])) < 1e-6


def test_unital_matches_closed_form():
    lam = np.array([0.2, 0.5, 0.8])
    phi = qroof.unital(lam)
    assert np.allclose(phi.lambda_, np.diag(lam))
    x = qroof.FourVector(1.0, 0.3, -0.2, 0.4)
    assert qroof.concurrence(phi, x) == pytest.approx(qroof.unital_concurrence_closed_form(lam, x), abs=1e-12)
    assert qroof.solve_w0(phi).w0 == pytest.approx(0.64, abs=1e-14)


def test_axial_example():
    cf = qroof.axial_w0_closed_form(0.9, 0.1, 0.3)
    assert cf.beta_c_squared == pytest.approx(0.06504545830264968, abs=1e-14)
    assert not cf.flat
    sol = qroof.solve_w0(qroof.axial(0.9, 0.1, 0.3))
    assert sol.w0 == pytest.approx(cf.w0, abs=1e-12)
    assert sol.n.x[2] == pytest.approx(cf.z0, rel=1e-9)
    lo, hi = sol.psd_interval
    assert lo <= hi


def test_build_q_shape_and_symmetry():
    q = qroof.build_q(qroof.amplitude_damping(0.3), 0.2)
    assert q.shape == (4, 4)
    assert np.allclose(q, q.T)


def test_decomposition_reconstructs():
    phi = qroof.phase_damping(0.6)
    x = qroof.FourVector.state([0.6, 0.0, 0.2])
    d = qroof.optimal_decomposition(phi, x)
    weights = sorted(c.weight for c in d.components)
    assert weights == pytest.approx([0.375, 0.625], abs=1e-12)
    assert np.allclose(d.reconstruct().coeffs(), x.coeffs(), atol=1e-12)


def test_bipartite_against_wootters():
    r = 1 / math.sqrt(2)
    bell = np.array([r, 0, 0, r], dtype=complex)
    zz = np.array([1, 0, 0, 0], dtype=complex)
    s = qroof.BipartiteState.from_mixture(2, [(0.5, bell), (0.5, zz)])
    assert s.rank == 2
    assert qroof.concurrence_2xn(s) == pytest.approx(qroof.wootters_concurrence(s), abs=1e-6)
    m = qroof.induced_map(s)
    assert qroof.is_completely_positive(m.map)
    assert qroof.eof_from_concurrence(0.5) == pytest.approx(0.35457890266527003, abs=1e-14)


def test_oracle_upper_bound():
    cfg = qroof.OracleConfig()
    cfg.grid_resolution = 32
    cfg.restarts = 2
    phi = qroof.amplitude_damping(0.5)
    x = qroof.FourVector(1.0, 0.0, 0.0, 0.0)
    value = qroof.brute_force_concurrence(phi, x, cfg)
    assert value >= qroof.concurrence(phi, x) - 1e-9
    assert value == pytest.approx(0.5, abs=1e-3)


def test_errors_are_value_errors():
    bad = qroof.AffineMap(0.5 * np.eye(3), np.array([0.0, 0.0, 0.6]))
    assert not qroof.is_positive(bad)
    with pytest.raises(qroof.Error):
        qroof.solve_w0(bad)
    with pytest.raises(ValueError):
        qroof.concurrence(qroof.identity_map(), qroof.FourVector(1.0, 2.0, 0.0, 0.0))
