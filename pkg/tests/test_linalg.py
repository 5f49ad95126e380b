import numpy as np
import pytest

from oscquad import linalg
from helpers import gauss_solve, random_unitary


def test_svd_identity():
    factors = linalg.svd(np.eye(3))
    np.testing.assert_allclose(factors.sigma, [1.0, 1.0, 1.0], atol=1e-15)


def test_svd_diagonal_with_complex_entry():
    factors = linalg.svd(np.diag([3.0, 2.0j, 0.0]))
    np.testing.assert_allclose(factors.sigma, [3.0, 2.0, 0.0], atol=1e-15)


def test_svd_recovers_planted_spectrum():
    rng = np.random.default_rng(0)
    k = 12
    u0 = random_unitary(rng, k)
    v0 = random_unitary(rng, k)
    s = np.sort(rng.uniform(0.1, 10.0, k))[::-1]
    a = (u0 * s) @ v0.conj().T
    factors = linalg.svd(a)
    assert np.abs(factors.sigma - s).max() <= 1e-12 * s[0]


def test_svd_factor_invariants():
    rng = np.random.default_rng(1)
    for _ in range(5):
        a = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
        factors = linalg.svd(a)
        recon = (factors.u * factors.sigma) @ factors.v.conj().T
        norm = np.linalg.norm(a)
        assert np.linalg.norm(recon - a) <= 1e-12 * norm
        assert np.all(np.diff(factors.sigma) <= 0)
        assert factors.sigma[-1] >= 0
        eye = np.eye(9)
        assert np.linalg.norm(factors.u.conj().T @ factors.u - eye) <= 1e-12
        assert np.linalg.norm(factors.v.conj().T @ factors.v - eye) <= 1e-12


def test_svd_rejects_nonfinite():
    with pytest.raises(linalg.LinalgError):
        linalg.svd(np.array([[1.0, np.nan], [0.0, 1.0]]))


def test_tsvd_identity_passthrough():
    y = np.array([1.0, -2.0, 3.0j])
    x, report = linalg.tsvd_solve(np.eye(3), y, 1e-16)
    np.testing.assert_allclose(x, y, atol=1e-15)
    assert report.rank_used == 3


def test_tsvd_truncates_tiny_direction():
    a = np.diag([1.0, 1e-20])
    x, report = linalg.tsvd_solve(a, np.array([1.0, 1.0]), 1e-12)
    np.testing.assert_allclose(x, [1.0, 0.0], atol=1e-15)
    assert report.rank_used == 1


def test_tsvd_all_below_threshold_returns_zero():
    a = 1e-20 * np.eye(4)
    x, report = linalg.tsvd_solve(a, np.ones(4), 1e-12)
    assert np.all(x == 0)
    assert report.rank_used == 0


def test_tsvd_matches_elimination_oracle():
    # expected values from the hand-rolled partial-pivot solver
    rng = np.random.default_rng(2)
    k = 12
    for _ in range(6):
        u0 = random_unitary(rng, k)
        v0 = random_unitary(rng, k)
        s = np.logspace(0, -2.5, k)  # condition <= 1e3
        a = (u0 * s) @ v0.conj().T
        y = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        want = gauss_solve(a, y)
        x, report = linalg.tsvd_solve(a, y, linalg.EPS0 * s[0])
        assert report.rank_used == k
        assert np.linalg.norm(x - want) <= 1e-11 * np.linalg.norm(want)


def test_tsvd_threshold_validation():
    with pytest.raises(ValueError):
        linalg.tsvd_solve(np.eye(2), np.ones(2), 0.0)


def test_qr_identity_passthrough():
    y = np.array([2.0, 1.0j, -1.0])
    x, report = linalg.qr_solve_pivoted(np.eye(3), y, 1e-16)
    np.testing.assert_allclose(x, y, atol=1e-15)
    assert report.rank_used == 3


def test_qr_rank_one_minimum_norm():
    rng = np.random.default_rng(3)
    k = 8
    u = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    u /= np.linalg.norm(u)
    v = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    v /= np.linalg.norm(v)
    a = np.outer(u, v.conj())
    x, report = linalg.qr_solve_pivoted(a, u, 1e-12)
    assert report.rank_used == 1
    assert np.linalg.norm(a @ x - u) <= 1e-12
    # minimum-norm solution is parallel to v
    proj = v * (v.conj() @ x)
    assert np.linalg.norm(x - proj) <= 1e-12 * np.linalg.norm(x)


def test_qr_matches_elimination_oracle():
    rng = np.random.default_rng(4)
    k = 12
    for _ in range(6):
        a = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
        y = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        want = gauss_solve(a, y)
        x, _report = linalg.qr_solve_pivoted(a, y, linalg.EPS0 * np.linalg.norm(a))
        assert np.linalg.norm(x - want) <= 1e-11 * np.linalg.norm(want)


def test_qr_rejects_nonfinite():
    with pytest.raises(linalg.LinalgError):
        linalg.qr_solve_pivoted(np.array([[np.inf, 0.0], [0.0, 1.0]]),
                                np.ones(2), 1e-16)


def test_op_norm_estimate_bounds():
    v = linalg.op_norm_estimate(np.eye(4))
    assert 1.0 <= v <= 2.0
    v = linalg.op_norm_estimate(np.diag([5.0, 1.0]))
    assert 5.0 <= v <= 5.0 * np.sqrt(2.0)
    assert linalg.op_norm_estimate(np.zeros((3, 3))) == 0.0


def test_op_norm_estimate_brackets_sigma1():
    rng = np.random.default_rng(5)
    for _ in range(5):
        k = 12
        a = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
        sigma1 = np.linalg.svd(a, compute_uv=False)[0]
        v = linalg.op_norm_estimate(a)
        assert sigma1 * (1 - 1e-13) <= v <= np.sqrt(k) * sigma1 * (1 + 1e-13)


def test_tsvd_residual_norm_property():
    # planted near-consistent systems, including rank-deficient ones:
    # the computed solution keeps a bounded norm and a small residual
    rng = np.random.default_rng(6)
    for trial in range(20):
        k = 12
        u0 = random_unitary(rng, k)
        v0 = random_unitary(rng, k)
        s = 10.0 ** (-rng.uniform(0.3, 1.5) * np.arange(k, dtype=float))
        if trial % 4 == 0:
            s[rng.integers(4, k):] = 0.0
        a = (u0 * s) @ v0.conj().T
        xbar = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        eps = 10.0 ** rng.uniform(-13, -6)
        delta = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        delta *= eps * s[0] * np.linalg.norm(xbar) / np.linalg.norm(delta)
        y = a @ xbar - delta
        z, _rep = linalg.tsvd_solve(a, y, eps * s[0])
        c = 10.0
        assert np.linalg.norm(z) <= c * np.linalg.norm(xbar)
        assert np.linalg.norm(a @ z - y) <= c * eps * s[0] * np.linalg.norm(xbar)
