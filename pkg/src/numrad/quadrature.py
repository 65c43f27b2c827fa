"""Adaptive Simpson integration over [0, 1] with Richardson error estimates.

The engine integrates many scalar maps in lockstep: every refinement wave
gathers the midpoints needed by every pending interval of every integrand
and evaluates them in one batched call.  For the segment integrands (the
numerical radius or norm along the affine path between an operator and
its adjoint) that batching is what keeps full verification campaigns
affordable, because each integrand evaluation is itself a rotation sweep.

Adaptive Simpson is exact (up to roundoff) on cubics and the kink
patterns of the segment maps (|1 - 2t| factors for skew parts) localize
refinement automatically.

Every segment integral is guarded by the convexity sandwich
``f(1/2) <= integral <= (f(0) + f(1))/2``: the integrands are norms of
affine paths, hence convex, so a violation beyond the error estimate
signals an implementation bug and raises ArithmeticError.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numrange import operator_norms, sweep_many
from .opcore import as_operator
from .transforms import off_diag_block

#: default sweep grid for radius integrands (the integral smooths per-point error)
SEGMENT_SWEEP_GRID = 512


@dataclass(frozen=True)
class QuadResult:
    """One integral: value, error allowance, work, and status.

    ``error_estimate`` is the accumulated error *allowance* granted to the
    accepted intervals: every interval is accepted only once its Richardson
    residue fits its local share of the requested tolerance, and it then
    contributes that share.  A converged integral therefore reports exactly
    the requested tolerance, and halving the tolerance halves the report;
    intervals cut off by the depth or evaluation budget contribute their
    measured residue instead and clear ``converged``.
    """

    value: float
    error_estimate: float
    evaluations: int
    converged: bool


def integrate01_many(
    eval_batch,
    count: int,
    tol: float = 1e-8,
    max_depth: int = 20,
    max_evals: int = 100_000,
) -> list[QuadResult]:
    """Integrate ``count`` maps on [0, 1] in lockstep.

    ``eval_batch(items, ts)`` must return the integrand values for the
    paired arrays of integrand indices and abscissae.  Intervals that
    exhaust ``max_depth`` or ``max_evals`` contribute their current
    Richardson extrapolation and mark the integrand unconverged.
    """
    values = np.zeros(count)
    errors = np.zeros(count)
    evals = np.zeros(count, dtype=int)
    converged = np.ones(count, dtype=bool)

    items0 = np.repeat(np.arange(count), 3)
    ts0 = np.tile(np.array([0.0, 0.5, 1.0]), count)
    f0 = np.asarray(eval_batch(items0, ts0), dtype=float)
    evals += 3
    # queue rows: (item, a, fa, mid, fmid, b, fb, simpson, depth, tol_local)
    queue = []
    for i in range(count):
        fa, fm, fb = f0[3 * i], f0[3 * i + 1], f0[3 * i + 2]
        s = (fa + 4.0 * fm + fb) / 6.0
        queue.append((i, 0.0, fa, 0.5, fm, 1.0, fb, s, 0, tol))

    while queue:
        k = len(queue)
        items = np.empty(2 * k, dtype=int)
        ts = np.empty(2 * k)
        for j, row in enumerate(queue):
            i, a, _, mid, _, b, _, _, _, _ = row
            items[2 * j] = i
            items[2 * j + 1] = i
            ts[2 * j] = (a + mid) / 2.0
            ts[2 * j + 1] = (mid + b) / 2.0
        fnew = np.asarray(eval_batch(items, ts), dtype=float)
        next_queue = []
        for j, row in enumerate(queue):
            i, a, fa, mid, fm, b, fb, s, depth, tol_local = row
            evals[i] += 2
            flm = fnew[2 * j]
            frm = fnew[2 * j + 1]
            h = b - a
            s_left = (h / 2.0) * (fa + 4.0 * flm + fm) / 6.0
            s_right = (h / 2.0) * (fm + 4.0 * frm + fb) / 6.0
            s2 = s_left + s_right
            delta = s2 - s
            if abs(delta) <= 15.0 * tol_local or depth >= max_depth or evals[i] >= max_evals:
                values[i] += s2 + delta / 15.0
                if abs(delta) <= 15.0 * tol_local:
                    errors[i] += tol_local
                else:
                    errors[i] += abs(delta) / 15.0
                    converged[i] = False
            else:
                next_queue.append(
                    (i, a, fa, (a + mid) / 2.0, flm, mid, fm, s_left, depth + 1, tol_local / 2.0)
                )
                next_queue.append(
                    (i, mid, fm, (mid + b) / 2.0, frm, b, fb, s_right, depth + 1, tol_local / 2.0)
                )
        queue = next_queue

    return [
        QuadResult(
            value=float(values[i]),
            error_estimate=float(errors[i]),
            evaluations=int(evals[i]),
            converged=bool(converged[i]),
        )
        for i in range(count)
    ]


def integrate01(f, tol: float = 1e-8, max_depth: int = 20) -> QuadResult:
    """Integrate a scalar function on [0, 1]."""

    def eval_batch(items, ts):
        return np.array([f(float(t)) for t in ts])

    return integrate01_many(eval_batch, 1, tol=tol, max_depth=max_depth)[0]


def _segment_stack(mats: np.ndarray, flags: np.ndarray, items: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """Segment matrices for paired (matrix index, t) requests."""
    base = mats[items]
    adj = base.conj().swapaxes(-1, -2)
    t = ts[:, None, None]
    plain = (1.0 - t) * base + t * adj
    star = (1.0 - t) * adj - t * base
    choose = flags[items][:, None, None]
    return np.where(choose, star, plain)


def _check_convexity_sandwich(res: QuadResult, f_mid: float, f_ends: float, scale: float) -> None:
    slack = res.error_estimate + 1e-9 * max(1.0, scale)
    if res.value < f_mid - slack or res.value > f_ends + slack:
        raise ArithmeticError(
            f"convexity sandwich violated: f(1/2)={f_mid:.6g}, integral={res.value:.6g}, "
            f"chord={f_ends:.6g}"
        )


def int_numrad_segments_many(
    mats,
    star_minus,
    tol: float = 1e-8,
    grid_size: int = SEGMENT_SWEEP_GRID,
    refine_tol: float = 1e-12,
    max_depth: int = 20,
) -> list[QuadResult]:
    """Radius integrals of segment paths for a stack of same-size matrices."""
    mats = np.asarray(mats, dtype=np.complex128)
    flags = np.asarray(star_minus, dtype=bool)
    sandwich = {}

    def eval_batch(items, ts):
        segs = _segment_stack(mats, flags, items, ts)
        omega, _, _, _ = sweep_many(segs, grid_size=grid_size, refine_tol=refine_tol)
        for i, t, v in zip(items, ts, omega):
            if t in (0.0, 0.5, 1.0):
                sandwich[(int(i), float(t))] = float(v)
        return omega

    results = integrate01_many(eval_batch, mats.shape[0], tol=tol, max_depth=max_depth)
    for i, res in enumerate(results):
        f_mid = sandwich[(i, 0.5)]
        f_ends = (sandwich[(i, 0.0)] + sandwich[(i, 1.0)]) / 2.0
        _check_convexity_sandwich(res, f_mid, f_ends, float(np.abs(mats[i]).max(initial=0.0)))
    return results


def int_norm_segments_many(
    mats,
    star_minus,
    tol: float = 1e-8,
    max_depth: int = 20,
) -> list[QuadResult]:
    """Norm integrals of segment paths (one batched SVD per refinement wave)."""
    mats = np.asarray(mats, dtype=np.complex128)
    flags = np.asarray(star_minus, dtype=bool)
    sandwich = {}

    def eval_batch(items, ts):
        segs = _segment_stack(mats, flags, items, ts)
        vals = operator_norms(segs)
        for i, t, v in zip(items, ts, vals):
            if t in (0.0, 0.5, 1.0):
                sandwich[(int(i), float(t))] = float(v)
        return vals

    results = integrate01_many(eval_batch, mats.shape[0], tol=tol, max_depth=max_depth)
    for i, res in enumerate(results):
        f_mid = sandwich[(i, 0.5)]
        f_ends = (sandwich[(i, 0.0)] + sandwich[(i, 1.0)]) / 2.0
        _check_convexity_sandwich(res, f_mid, f_ends, float(np.abs(mats[i]).max(initial=0.0)))
    return results


def int_numrad_segment(t, tol: float = 1e-8, grid_size: int = SEGMENT_SWEEP_GRID) -> QuadResult:
    """Integral over [0, 1] of the radius of (1-s) T + s T*."""
    m = as_operator(t)
    return int_numrad_segments_many(m[None], [False], tol=tol, grid_size=grid_size)[0]


def int_numrad_segment_star(t, tol: float = 1e-8, grid_size: int = SEGMENT_SWEEP_GRID) -> QuadResult:
    """Integral over [0, 1] of the radius of (1-s) T* - s T."""
    m = as_operator(t)
    return int_numrad_segments_many(m[None], [True], tol=tol, grid_size=grid_size)[0]


def int_norm_segment(t, tol: float = 1e-8) -> QuadResult:
    """Integral over [0, 1] of the norm of (1-s) T + s T*."""
    m = as_operator(t)
    return int_norm_segments_many(m[None], [False], tol=tol)[0]


def int_norm_segment_star(t, tol: float = 1e-8) -> QuadResult:
    """Integral over [0, 1] of the norm of (1-s) T* - s T."""
    m = as_operator(t)
    return int_norm_segments_many(m[None], [True], tol=tol)[0]


def int_block_numrad(a, b, tol: float = 1e-8, grid_size: int = SEGMENT_SWEEP_GRID) -> QuadResult:
    """Integral of the radius of [[0, (1-s)A + sB], [(1-s)B* + sA*, 0]].

    The integrand equals the radius of the segment path of the block
    [[0, A], [B*, 0]], so it reuses the segment machinery.
    """
    blk = off_diag_block(as_operator(a), as_operator(b).conj().T)
    return int_numrad_segments_many(blk[None], [False], tol=tol, grid_size=grid_size)[0]
