"""Tests for the symplectic linear algebra routines."""

import numpy as np
import pytest

from bosonic import symplectic as sp

TOL = 1e-10
SEED = 20260815


def test_symplectic_form_structure():
    delta = sp.symplectic_form(3)
    assert delta.shape == (6, 6)
    assert np.abs(delta + delta.T).max() == 0
    assert np.abs(delta @ delta + np.eye(6)).max() == 0


def test_symplectic_form_rejects_bad_mode_count():
    with pytest.raises(ValueError):
        sp.symplectic_form(0)


def test_eigenvalues_frozen_examples():
    assert np.allclose(sp.symplectic_eigenvalues(np.eye(2)), [1.0], atol=TOL)
    assert np.allclose(sp.symplectic_eigenvalues(np.diag([4.0, 1.0])), [2.0], atol=TOL)
    assert np.allclose(sp.symplectic_eigenvalues(3 * np.eye(4)), [3.0, 3.0], atol=TOL)


def test_eigenvalues_match_determinant():
    rng = np.random.default_rng(SEED)
    for n in (1, 2, 4):
        sigma = sp.random_covariance(n, rng, nu_max=3.0)
        nu = sp.symplectic_eigenvalues(sigma)
        assert len(nu) == n
        assert np.all(np.diff(nu) >= -TOL)
        assert abs(np.prod(nu**2) - np.linalg.det(sigma)) < 1e-8 * abs(np.linalg.det(sigma))


def test_eigenvalues_input_validation():
    with pytest.raises(ValueError):
        sp.symplectic_eigenvalues(np.eye(3))
    with pytest.raises(ValueError):
        sp.symplectic_eigenvalues(np.array([[1.0, 0.5], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        sp.symplectic_eigenvalues(np.diag([1.0, -1.0]))


def test_williamson_frozen_example():
    sigma = np.diag([4.0, 0.25])
    s, nu = sp.williamson(sigma)
    assert np.allclose(nu, [1.0], atol=TOL)
    assert np.abs(s @ sigma @ s.T - np.eye(2)).max() < TOL


def test_williamson_random_round_trip():
    rng = np.random.default_rng(SEED)
    for n in (1, 2, 3, 5):
        sigma = sp.random_covariance(n, rng, nu_max=4.0)
        s, nu = sp.williamson(sigma)
        d = np.diag(np.repeat(nu, 2))
        delta = sp.symplectic_form(n)
        err1 = np.abs(s @ sigma @ s.T - d).max()
        err2 = np.abs(s @ delta @ s.T - delta).max()
        err3 = np.abs(nu - sp.symplectic_eigenvalues(sigma)).max()
        assert err1 + err2 + err3 < 1e-8


def test_williamson_degenerate_spectrum():
    s, nu = sp.williamson(3 * np.eye(6))
    assert np.allclose(nu, [3.0, 3.0, 3.0], atol=TOL)
    assert sp.is_symplectic(s, tol=1e-8)


def test_williamson_rejects_indefinite():
    with pytest.raises(ValueError):
        sp.williamson(np.diag([1.0, 0.0]))


def test_is_symplectic_frozen_examples():
    assert sp.is_symplectic(np.diag([2.0, 0.5]))
    assert not sp.is_symplectic(np.diag([2.0, 2.0]))
    assert sp.is_symplectic(np.eye(4))


def test_is_symplectic_matches_unit_determinant_for_one_mode():
    rng = np.random.default_rng(SEED)
    for _ in range(50):
        m = rng.standard_normal((2, 2))
        det = np.linalg.det(m)
        if abs(det) > 1e-6:
            assert sp.is_symplectic(m / np.sqrt(abs(det)), tol=1e-8) == (det > 0)


def test_random_symplectic_is_symplectic():
    rng = np.random.default_rng(SEED)
    for n in (1, 2, 4):
        s = sp.random_symplectic(n, rng)
        assert sp.is_symplectic(s, tol=1e-9)
        assert abs(np.linalg.det(s) - 1.0) < 1e-9


def test_valid_covariance_frozen_examples():
    assert sp.is_valid_covariance(np.eye(2))
    assert not sp.is_valid_covariance(0.5 * np.eye(2))
    assert sp.is_valid_covariance(np.diag([2.0, 0.5]))
    assert not sp.is_valid_covariance(np.diag([2.0, 0.4]))


def test_random_covariance_always_valid():
    rng = np.random.default_rng(SEED)
    for n in (1, 2, 3):
        for _ in range(10):
            sigma = sp.random_covariance(n, rng, nu_max=3.0)
            assert sp.is_valid_covariance(sigma)
