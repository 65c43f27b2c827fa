import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from numrad import (
    adjoint,
    fov_oracle,
    numerical_radius,
    operator_norm,
    rotated_real_norm,
    sample,
    SampleSpec,
    spectral_radius,
    sweep_many,
)
from conftest import ginibre

GOLDEN = (1.0 + np.sqrt(5.0)) / 2.0


def test_operator_norm_examples():
    assert operator_norm(np.diag([3.0, -4.0])) == pytest.approx(4.0, abs=1e-12)
    assert operator_norm(np.zeros((3, 3))) == 0.0
    assert operator_norm([[1.0, 1.0], [0.0, 1.0]]) == pytest.approx(GOLDEN, abs=1e-12)


def test_spectral_radius_examples(shift2):
    assert spectral_radius(shift2) <= 1e-9
    assert spectral_radius(np.diag([1.0, -2.0j])) == pytest.approx(2.0, abs=1e-12)
    assert spectral_radius([[0.0, 2.0], [1.0, 0.0]]) == pytest.approx(np.sqrt(2.0), abs=1e-9)


def test_rotated_real_norm_examples(shift2):
    for theta in (0.0, 0.4, 2.0):
        assert rotated_real_norm(np.array([[1.0]]), theta) == pytest.approx(np.cos(theta), abs=1e-14)
        assert rotated_real_norm(shift2, theta) == pytest.approx(0.5, abs=1e-14)
    h = np.diag([3.0, -4.0])
    assert rotated_real_norm(h, 0.0) == pytest.approx(3.0, abs=1e-14)


class TestNumericalRadius:
    def test_shift(self, shift2):
        sw = numerical_radius(shift2)
        assert sw.omega == pytest.approx(0.5, abs=1e-12)
        assert sw.grid_size == 1024
        assert sw.thetas.shape == (1024,)

    def test_selfadjoint(self):
        assert numerical_radius(np.diag([3.0, -4.0])).omega == pytest.approx(4.0, abs=1e-12)

    def test_antidiagonal(self):
        # radius of [[0, a], [b, 0]] is (|a| + |b|)/2; cross-checked with
        # the sampling oracle below before being trusted as an anchor
        t = np.array([[0.0, 2.0], [1.0, 0.0]])
        sw = numerical_radius(t)
        assert sw.omega == pytest.approx(1.5, abs=1e-9)
        assert fov_oracle(t) == pytest.approx(1.5, abs=1e-8)

    def test_zero_matrix(self):
        assert numerical_radius(np.zeros((3, 3))).omega == 0.0

    def test_grid_size_floor(self):
        with pytest.raises(ValueError):
            numerical_radius(np.eye(2), grid_size=3)

    def test_omega_dominates_grid(self):
        for seed in range(10):
            t = ginibre(5, seed)
            sw = numerical_radius(t, grid_size=256)
            assert sw.omega >= sw.g_values.max() - 1e-15
            assert sw.omega >= 0.0

    def test_sweep_lipschitz(self):
        for seed in range(5):
            t = ginibre(4, seed)
            sw = numerical_radius(t, grid_size=512)
            step = 2 * np.pi / 512
            bound = operator_norm(t) * step + 1e-12
            assert np.abs(np.diff(sw.g_values)).max() <= bound


def test_sweep_many_matches_single():
    mats = np.stack([ginibre(4, s) for s in range(6)])
    om, arg, thetas, g = sweep_many(mats, grid_size=512)
    for i in range(6):
        assert om[i] == pytest.approx(numerical_radius(mats[i], grid_size=512).omega, abs=1e-10)


class TestFovOracle:
    def test_hermitian(self):
        assert fov_oracle(np.diag([3.0, -4.0])) == pytest.approx(4.0, abs=1e-10)

    def test_zero(self):
        assert fov_oracle(np.zeros((2, 2))) == 0.0

    def test_lower_bound_on_random(self):
        for seed in range(30):
            t = ginibre(4, seed)
            omega = numerical_radius(t).omega
            lower = fov_oracle(t, seed=seed)
            assert lower <= omega + 1e-9
            assert lower >= omega - 1e-6 * max(1.0, omega)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 5))
def test_adjoint_symmetry(seed, dim):
    t = ginibre(dim, seed)
    w1 = numerical_radius(t, grid_size=256).omega
    w2 = numerical_radius(adjoint(t), grid_size=256).omega
    assert abs(w1 - w2) <= 1e-9 * max(1.0, w1)


def test_homogeneity_200_samples():
    rng = np.random.default_rng(0)
    for k in range(200):
        dim = 1 + k % 5
        t = ginibre(dim, k)
        c = complex(rng.normal(), rng.normal())
        w = numerical_radius(t, grid_size=256).omega
        wc = numerical_radius(c * t, grid_size=256).omega
        assert abs(wc - abs(c) * w) <= 1e-9 * max(1.0, abs(c) * w)


def test_unitary_similarity_invariance():
    for seed in range(25):
        dim = 2 + seed % 4
        t = ginibre(dim, seed)
        q = sample(SampleSpec("unitary", dim, seed + 1000))
        w1 = numerical_radius(t, grid_size=384).omega
        w2 = numerical_radius(q.conj().T @ t @ q, grid_size=384).omega
        assert abs(w1 - w2) <= 1e-9 * max(1.0, w1)


def test_norm_radius_chain_on_samples():
    # r <= w <= ||T|| and ||T||/2 <= w on every sampled matrix
    for fam in ("ginibre", "hermitian", "skew", "rank_one", "nilpotent_jordan"):
        for seed in range(10):
            t = sample(SampleSpec(fam, 4, seed))
            w = numerical_radius(t, grid_size=512).omega
            n = operator_norm(t)
            r = spectral_radius(t)
            tol = 1e-9 * max(1.0, n)
            assert r <= w + tol
            assert w <= n + tol
            assert n / 2 <= w + tol


def test_normal_matrices_collapse_chain():
    for seed in range(10):
        t = sample(SampleSpec("normal_diag", 5, seed))
        w = numerical_radius(t, grid_size=512).omega
        tol = 1e-9 * max(1.0, operator_norm(t))
        assert abs(w - operator_norm(t)) <= tol
        assert abs(w - spectral_radius(t)) <= tol
