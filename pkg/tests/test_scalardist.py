import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from numrad import (
    DimensionMismatch,
    min_block_scalar_distance,
    min_scalar_distance,
    off_diag_block,
    operator_norm,
    sample,
    SampleSpec,
)
from conftest import ginibre


def sigma1(t, lam):
    n = t.shape[0]
    return float(np.linalg.svd(t - lam * np.eye(n), compute_uv=False)[0])


def grid_oracle(t, half_width=2.0, coarse=0.05):
    """Independent minimizer: coarse grid plus two local refinement zooms."""
    best_lam, best_val = 0.0 + 0.0j, sigma1(t, 0.0)
    step = coarse
    center = 0.0 + 0.0j
    width = half_width
    for _ in range(3):
        xs = np.arange(center.real - width, center.real + width + step / 2, step)
        ys = np.arange(center.imag - width, center.imag + width + step / 2, step)
        for x in xs:
            for y in ys:
                val = sigma1(t, complex(x, y))
                if val < best_val:
                    best_val, best_lam = val, complex(x, y)
        center, width, step = best_lam, 2 * step, step / 20
    return best_lam, best_val


def welzl_center(points):
    """Smallest enclosing circle of a finite point set (exact, recursive)."""
    pts = [complex(p) for p in points]
    rng = np.random.default_rng(12345)
    rng.shuffle(pts)

    def circle_two(a, b):
        c = (a + b) / 2
        return c, abs(a - c)

    def circle_three(a, b, c):
        ax, ay, bx, by, cx, cy = a.real, a.imag, b.real, b.imag, c.real, c.imag
        d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
        if abs(d) < 1e-14:
            return None
        ux = ((ax**2 + ay**2) * (by - cy) + (bx**2 + by**2) * (cy - ay) + (cx**2 + cy**2) * (ay - by)) / d
        uy = ((ax**2 + ay**2) * (cx - bx) + (bx**2 + by**2) * (ax - cx) + (cx**2 + cy**2) * (bx - ax)) / d
        center = complex(ux, uy)
        return center, abs(a - center)

    def contains(circ, p, eps=1e-12):
        c, r = circ
        return abs(p - c) <= r + eps

    def mec(boundary):
        if len(boundary) == 0:
            circ = (0j, 0.0)
        elif len(boundary) == 1:
            circ = (boundary[0], 0.0)
        elif len(boundary) == 2:
            circ = circle_two(*boundary)
        else:
            circ = circle_three(*boundary)
            if circ is None:
                # collinear boundary: widest pair
                best = (0j, -1.0)
                for i in range(3):
                    for j in range(i + 1, 3):
                        c = circle_two(boundary[i], boundary[j])
                        if c[1] > best[1]:
                            best = c
                circ = best
            return circ
        return circ

    circ = (0j, 0.0)
    for i, p in enumerate(pts):
        if contains(circ, p):
            continue
        circ = (p, 0.0)
        for j in range(i):
            q = pts[j]
            if contains(circ, q):
                continue
            circ = circle_two(p, q)
            for k in range(j):
                s = pts[k]
                if contains(circ, s):
                    continue
                circ = mec([p, q, s])
    return circ


def test_chebyshev_center_of_two_points():
    r = min_scalar_distance(np.diag([0.0, 2.0]))
    assert abs(r.lambda_star - 1.0) < 1e-6
    assert r.distance == pytest.approx(1.0, abs=1e-9)
    assert r.converged


def test_scalar_matrix():
    c = 1.5 - 0.5j
    r = min_scalar_distance(c * np.eye(3))
    assert abs(r.lambda_star - c) < 1e-6
    assert r.distance == pytest.approx(0.0, abs=1e-8)


def test_shift_minimizer_at_origin(shift2):
    # independent grid oracle confirms the minimum sits at 0 with value 1
    r = min_scalar_distance(shift2)
    lam_o, val_o = grid_oracle(shift2)
    assert abs(r.distance - val_o) < 1e-5
    assert r.distance == pytest.approx(1.0, abs=1e-8)
    assert abs(r.lambda_star) < 1e-6


def test_block_distance_examples():
    z = np.zeros((2, 2))
    r = min_block_scalar_distance(z, z)
    assert r.distance == pytest.approx(0.0, abs=1e-10)
    r = min_block_scalar_distance(np.eye(2), np.eye(2))
    assert r.distance == pytest.approx(1.0, abs=1e-8)
    assert abs(r.lambda_star) < 1e-6
    with pytest.raises(DimensionMismatch):
        min_block_scalar_distance(np.eye(2), np.eye(3))


def test_block_distance_matches_grid_oracle():
    for seed in (0, 1, 2):
        a, b = ginibre(3, 2 * seed), ginibre(3, 2 * seed + 1)
        r = min_block_scalar_distance(a, b)
        _, val = grid_oracle(off_diag_block(a, b), half_width=2.5)
        assert r.distance <= val + 1e-6
        assert r.distance >= val - 1e-4


def test_normal_matrices_match_chebyshev_radius():
    for seed in range(10):
        t = sample(SampleSpec("normal_diag", 4 + seed % 3, seed))
        r = min_scalar_distance(t)
        center, radius = welzl_center(np.diag(t))
        assert abs(r.distance - radius) < 1e-6
        assert abs(r.lambda_star - center) < 1e-4


def test_feasibility_invariants():
    for seed in range(10):
        t = ginibre(4, seed)
        r = min_scalar_distance(t)
        assert abs(r.distance - sigma1(t, r.lambda_star)) < 1e-10 * max(1, r.distance)
        assert r.distance <= operator_norm(t) + 1e-10


@settings(max_examples=50, deadline=None)
@given(
    seed=st.integers(0, 2**31),
    re1=st.floats(-3, 3), im1=st.floats(-3, 3),
    re2=st.floats(-3, 3), im2=st.floats(-3, 3),
)
def test_midpoint_convexity(seed, re1, im1, re2, im2):
    t = ginibre(3, seed % 100)
    l1, l2 = complex(re1, im1), complex(re2, im2)
    h1, h2, hm = sigma1(t, l1), sigma1(t, l2), sigma1(t, (l1 + l2) / 2)
    assert hm <= (h1 + h2) / 2 + 1e-10


def test_translation_equivariance():
    for seed in range(8):
        t = ginibre(3, seed)
        mu = complex(0.7, -1.2)
        base = min_scalar_distance(t)
        shifted = min_scalar_distance(t + mu * np.eye(3))
        assert abs(shifted.lambda_star - (base.lambda_star + mu)) < 1e-5
        assert abs(shifted.distance - base.distance) < 1e-6
