"""Minimization of ||T - lambda I|| over complex lambda.

``h(lambda) = sigma_1(T - lambda I)`` is a convex function of
(Re lambda, Im lambda), nonsmooth where singular values coalesce, so a
derivative-free Nelder-Mead search is used instead of a subgradient
method.  Two starts are run (the spectral centroid trace(T)/n, and 0);
convexity makes the better of the two global within tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import DimensionMismatch
from .opcore import as_operator
from .transforms import off_diag_block


@dataclass(frozen=True)
class ScalarDistResult:
    """Minimizer and value of inf_lambda ||T - lambda I||."""

    lambda_star: complex
    distance: float
    iterations: int
    converged: bool


def min_scalar_distance(t, tol: float = 1e-9, max_iters: int = 500) -> ScalarDistResult:
    m = as_operator(t)
    n = m.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    norm_t = float(np.linalg.svd(m, compute_uv=False)[0])

    def h(xy):
        lam = complex(xy[0], xy[1])
        return float(np.linalg.svd(m - lam * eye, compute_uv=False)[0])

    centroid = complex(np.trace(m)) / n
    step = tol * max(1.0, norm_t)
    best = None
    iterations = 0
    converged = False
    for start in ((centroid.real, centroid.imag), (0.0, 0.0)):
        res = minimize(
            h,
            np.asarray(start, dtype=float),
            method="Nelder-Mead",
            options={
                "xatol": step,
                "fatol": step,
                "maxiter": max_iters,
                "maxfev": 4 * max_iters,
            },
        )
        iterations += int(res.nit)
        if best is None or res.fun < best.fun:
            best = res
            converged = bool(res.success)
    lam = complex(best.x[0], best.x[1])
    return ScalarDistResult(
        lambda_star=lam,
        distance=float(best.fun),
        iterations=iterations,
        converged=converged,
    )


def min_block_scalar_distance(a, b, tol: float = 1e-9, max_iters: int = 500) -> ScalarDistResult:
    """Distance of the off-diagonal block [[0, A], [B, 0]] to the scalars."""
    a = as_operator(a)
    b = as_operator(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"operands must share dimensions, got {a.shape} and {b.shape}")
    return min_scalar_distance(off_diag_block(a, b), tol=tol, max_iters=max_iters)
