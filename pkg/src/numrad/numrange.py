"""Numerical radius via rotation sweep, plus an independent sampling oracle.

The radius of T is computed as the maximum over theta of
``g(theta) = lambda_max(Re(e^{i theta} T))``.  Over a full period the
maximum of ``lambda_max`` already equals ``sup ||Re e^{i theta} T||``:
the norm of a Hermitian S is ``max(lambda_max(S), -lambda_min(S))`` and
``-lambda_min(Re e^{i theta} T) = lambda_max(Re e^{i (theta+pi)} T)``,
so sweeping ``lambda_max`` alone suffices.

The sweep takes a coarse maximum on a uniform grid, then refines with
golden-section search every bracket whose grid value is within the
Lipschitz slack ``||T|| * (2 pi / grid_size)`` of the coarse maximum
(|g(a) - g(b)| <= ||T|| |a - b|, so the bracket nearest the true argmax
is always among the candidates).  Candidate nodes are deduplicated to
circular local maxima of the grid sequence and capped at
``max_brackets`` per matrix, keeping refinement cheap on plateaus where
every node ties (golden section on a plateau converges to a point of the
plateau, which is fine since only the value matters).

All heavy evaluation is batched: ``sweep_many`` processes a stack of
same-size matrices with one LAPACK gufunc call per refinement step, which
is what makes large verification campaigns affordable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .opcore import as_operator
from .sampler import GaussianStream

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
#: largest number of refinement brackets retained per matrix
MAX_BRACKETS = 12
#: elements per chunk when materializing Hermitian stacks
_CHUNK_ELEMS = 1 << 23


@dataclass(frozen=True)
class AngleSweep:
    """Sampled rotation function with its refined maximum."""

    thetas: np.ndarray
    g_values: np.ndarray
    argmax_theta: float
    omega: float
    grid_size: int
    refinement_passes: int


def operator_norm(t) -> float:
    """Largest singular value."""
    m = as_operator(t)
    return float(np.linalg.svd(m, compute_uv=False)[0])


def operator_norms(stack: np.ndarray) -> np.ndarray:
    """Largest singular value of each matrix in a (M, n, n) stack."""
    if stack.shape[0] == 0:
        return np.zeros(0)
    return np.linalg.svd(stack, compute_uv=False)[..., 0]


def spectral_radius(t) -> float:
    """Largest eigenvalue modulus (general complex eigenproblem)."""
    m = as_operator(t)
    return float(np.max(np.abs(np.linalg.eigvals(m))))


def rotated_real_norm(t, theta: float) -> float:
    """lambda_max(Re(e^{i theta} T)); see the module docstring for why
    the lambda_max convention is the right sweep integrand."""
    m = as_operator(t)
    s = np.exp(1j * float(theta)) * m
    h = (s + s.conj().T) / 2.0
    return float(np.linalg.eigvalsh(h)[-1])


def _g_eval(mats: np.ndarray, items: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """g over (matrix index, angle) pairs, one batched eigvalsh call."""
    return _g_eval_base(mats[items], thetas)


def _g_eval_base(base: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    ph = np.exp(1j * thetas)
    s = ph[:, None, None] * base
    h = (s + s.conj().swapaxes(-1, -2)) * 0.5
    return np.linalg.eigvalsh(h)[..., -1]


def _grid_g(mats: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """g on the full grid for every matrix: (M, G) array, chunked for memory."""
    m_count, n = mats.shape[0], mats.shape[1]
    g_count = thetas.shape[0]
    out = np.empty((m_count, g_count))
    ph = np.exp(1j * thetas)
    rows_per_chunk = max(1, _CHUNK_ELEMS // max(1, g_count * n * n))
    for lo in range(0, m_count, rows_per_chunk):
        hi = min(m_count, lo + rows_per_chunk)
        s = ph[None, :, None, None] * mats[lo:hi, None, :, :]
        h = (s + s.conj().swapaxes(-1, -2)) * 0.5
        out[lo:hi] = np.linalg.eigvalsh(h.reshape(-1, n, n))[:, -1].reshape(hi - lo, g_count)
    return out


def _golden_lockstep(mats, items, lo, hi, tol, best_v, best_t):
    """Vectorized golden-section maximization on per-item brackets.

    Tracks the best evaluated point per bracket, so the returned value is a
    true g value even when a bracket is not perfectly unimodal.
    """
    a = lo.astype(float).copy()
    b = hi.astype(float).copy()
    width = float(np.max(b - a, initial=0.0))
    if width <= tol or items.size == 0:
        return best_v, best_t
    base = np.ascontiguousarray(mats[items])
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1 = _g_eval_base(base, x1)
    f2 = _g_eval_base(base, x2)
    for pts, vals in ((x1, f1), (x2, f2)):
        better = vals > best_v
        best_v = np.where(better, vals, best_v)
        best_t = np.where(better, pts, best_t)
    iters = int(math.ceil(math.log(width / tol) / math.log(1.0 / _INVPHI)))
    for _ in range(iters):
        keep_left = f1 >= f2
        b = np.where(keep_left, x2, b)
        a = np.where(keep_left, a, x1)
        old_x1, old_f1 = x1, f1
        x1 = np.where(keep_left, b - _INVPHI * (b - a), x2)
        x2 = np.where(keep_left, old_x1, a + _INVPHI * (b - a))
        new_x = np.where(keep_left, x1, x2)
        new_f = _g_eval_base(base, new_x)
        f1 = np.where(keep_left, new_f, f2)
        f2 = np.where(keep_left, old_f1, new_f)
        better = new_f > best_v
        best_v = np.where(better, new_f, best_v)
        best_t = np.where(better, new_x, best_t)
    return best_v, best_t


def sweep_many(
    mats,
    grid_size: int = 1024,
    refine_passes: int = 2,
    refine_tol: float = 1e-12,
    max_brackets: int = MAX_BRACKETS,
):
    """Numerical radii of a stack of same-size matrices.

    Returns ``(omega, argmax_theta, thetas, g_values)`` with shapes
    (M,), (M,), (G,), (M, G).
    """
    mats = np.ascontiguousarray(np.asarray(mats, dtype=np.complex128))
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError(f"expected a (M, n, n) stack, got {mats.shape}")
    if grid_size < 4:
        raise ValueError("grid_size must be at least 4")
    m_count = mats.shape[0]
    thetas = 2.0 * np.pi * np.arange(grid_size) / grid_size
    if m_count == 0:
        return np.zeros(0), np.zeros(0), thetas, np.zeros((0, grid_size))
    g = _grid_g(mats, thetas)
    norms = operator_norms(mats)
    coarse_val = g.max(axis=1)
    coarse_idx = g.argmax(axis=1)
    delta = 2.0 * np.pi / grid_size

    # candidate nodes: within Lipschitz slack of the coarse max, deduplicated
    # to circular local maxima, capped by value (coarse argmax always kept)
    slack = norms * delta
    is_local_max = (g >= np.roll(g, 1, axis=1)) & (g >= np.roll(g, -1, axis=1))
    in_band = g >= (coarse_val - slack)[:, None]
    items_list = []
    nodes_list = []
    for i in range(m_count):
        cand = np.flatnonzero(is_local_max[i] & in_band[i])
        if cand.size == 0 or coarse_idx[i] not in cand:
            cand = np.union1d(cand, [coarse_idx[i]])
        if cand.size > max_brackets:
            order = np.lexsort((cand, -g[i, cand]))
            cand = cand[order[:max_brackets]]
        items_list.append(np.full(cand.size, i))
        nodes_list.append(cand)
    items = np.concatenate(items_list)
    nodes = np.concatenate(nodes_list)
    centers = thetas[nodes]
    best_v = g[items, nodes].astype(float)
    best_t = centers.copy()

    best_v, best_t = _golden_lockstep(
        mats, items, centers - delta, centers + delta, refine_tol, best_v, best_t
    )
    omega = coarse_val.copy()
    arg = thetas[coarse_idx].astype(float)
    np.maximum.at(omega, items, best_v)
    for i in range(m_count):
        mask = items == i
        if mask.any():
            j = np.argmax(best_v[mask])
            if best_v[mask][j] >= omega[i] - 0.0:
                arg[i] = best_t[mask][j]

    # later passes re-polish each winner with a narrow bracket
    for _ in range(max(0, refine_passes - 1)):
        w = max(64.0 * refine_tol, refine_tol)
        all_items = np.arange(m_count)
        v2, t2 = _golden_lockstep(
            mats, all_items, arg - w, arg + w, refine_tol, omega.copy(), arg.copy()
        )
        improved = v2 > omega
        omega = np.where(improved, v2, omega)
        arg = np.where(improved, t2, arg)

    return omega, np.mod(arg, 2.0 * np.pi), thetas, g


def numerical_radius(
    t,
    grid_size: int = 1024,
    refine_passes: int = 2,
    refine_tol: float = 1e-12,
) -> AngleSweep:
    """Numerical radius of a single operator with the full sweep record."""
    m = as_operator(t)
    omega, arg, thetas, g = sweep_many(
        m[None, :, :], grid_size=grid_size, refine_passes=refine_passes, refine_tol=refine_tol
    )
    # periodicity guard: g(0) must match g(2*pi)
    g_wrap = _g_eval(m[None, :, :], np.zeros(1, dtype=int), np.array([2.0 * np.pi]))[0]
    scale = max(1.0, float(np.max(np.abs(m), initial=0.0)))
    if abs(g_wrap - g[0, 0]) > 1e-9 * scale:
        raise ArithmeticError("sweep integrand failed the g(0) = g(2 pi) periodicity guard")
    return AngleSweep(
        thetas=thetas,
        g_values=g[0],
        argmax_theta=float(arg[0]),
        omega=float(max(omega[0], 0.0)),
        grid_size=grid_size,
        refinement_passes=refine_passes,
    )


def fov_oracle(
    t,
    n_starts: int = 64,
    ascent_iters: int = 200,
    seed: int = 0,
    grid_points: int = 64,
) -> float:
    """Certified lower bound on the numerical radius by direct sampling.

    Maximizes |<Tx, x>| over unit vectors drawn two ways: seeded random
    starts, and top eigenvectors of Re(e^{i theta} T) on a uniform theta
    grid.  Every candidate is improved by normalized power-type ascent on
    x -> Re(e^{-i phi(x)} T) x with phi(x) = arg<Tx, x>; the maximum over
    every iterate ever evaluated is returned, so the result is always an
    attained value of |<Tx, x>| and hence a true lower bound.
    """
    m = as_operator(t)
    n = m.shape[0]
    starts = []
    if n_starts > 0:
        stream = GaussianStream(seed)
        raw = stream.complex_gaussians(n_starts * n).reshape(n_starts, n)
        nrm = np.linalg.norm(raw, axis=1, keepdims=True)
        nrm[nrm == 0.0] = 1.0
        starts.append(raw / nrm)
    if grid_points > 0:
        thetas = 2.0 * np.pi * np.arange(grid_points) / grid_points
        s = np.exp(1j * thetas)[:, None, None] * m[None, :, :]
        h = (s + s.conj().swapaxes(-1, -2)) * 0.5
        _, vecs = np.linalg.eigh(h)
        starts.append(vecs[:, :, -1])
    if not starts:
        return 0.0
    x = np.concatenate(starts, axis=0)

    t_rows = m.T
    t_star_rows = m.conj()
    scale = max(1.0, float(np.max(np.abs(m), initial=0.0)))
    tx = x @ t_rows
    ip = np.einsum("ki,ki->k", x.conj(), tx)
    best = float(np.max(np.abs(ip), initial=0.0))
    stall = 0
    for _ in range(ascent_iters):
        mod = np.abs(ip)
        phase = np.where(mod > 0.0, ip / np.where(mod > 0.0, mod, 1.0), 1.0)
        y = (np.conj(phase)[:, None] * tx + phase[:, None] * (x @ t_star_rows)) * 0.5
        ny = np.linalg.norm(y, axis=1)
        alive = ny > 1e-300
        x = np.where(alive[:, None], y / np.where(alive, ny, 1.0)[:, None], x)
        tx = x @ t_rows
        ip = np.einsum("ki,ki->k", x.conj(), tx)
        new_best = float(np.max(np.abs(ip), initial=0.0))
        if new_best <= best + 1e-15 * scale:
            stall += 1
            if stall >= 4:
                break
        else:
            stall = 0
        best = max(best, new_best)
    return best
