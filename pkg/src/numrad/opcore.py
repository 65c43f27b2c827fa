"""Dense complex matrix core: validation, decompositions, spectral calculus.

Operators are plain ``numpy.ndarray`` values of dtype complex128, square,
with every entry finite.  All functions are pure; nothing mutates its
arguments.  Matrix equality is always "entrywise within tolerance" --
tests compare with :func:`allclose_tol`, never bitwise.

Conventions fixed here and relied on everywhere else:

* unit roundoff ``EPS = 2**-52``;
* default comparison tolerance ``1e-10 * max(1, scale)`` where ``scale``
  is the largest operator norm among the operands (:func:`default_tol`);
* eigenvalues of nominally positive matrices within ``n * EPS * lmax * 64``
  of zero are clamped to exactly zero before fractional powers;
* ``frac_power(P, 0)`` is the support projection (0**0 := 0), which keeps
  the isometric polar factor composable with zero singular values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPositive, ParseError

EPS = 2.0 ** -52
#: clamping factor for nominally-positive eigenvalues (times n * EPS * lmax)
CLAMP_FACTOR = 64.0


def as_operator(a) -> np.ndarray:
    """Coerce ``a`` to a validated square complex128 matrix.

    Raises DimensionMismatch for non-square input and ParseError for
    non-finite entries.
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ParseError("matrix has non-finite entries")
    return m


def default_tol(*scales: float) -> float:
    """Scale-aware comparison tolerance: 1e-10 * max(1, largest scale)."""
    s = max((abs(float(x)) for x in scales), default=0.0)
    return 1e-10 * max(1.0, s)


def allclose_tol(a, b, tol: float | None = None) -> bool:
    """Entrywise comparison within an absolute tolerance (never bitwise)."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        return False
    if tol is None:
        tol = default_tol(
            np.abs(a).max(initial=0.0), np.abs(b).max(initial=0.0)
        )
    return bool(np.max(np.abs(a - b), initial=0.0) <= tol)


def adjoint(t) -> np.ndarray:
    """Conjugate transpose."""
    return as_operator(t).conj().T


@dataclass(frozen=True)
class HermEigResult:
    """Hermitian eigendecomposition: ascending eigenvalues, orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class SvdResult:
    """Singular value decomposition T = W diag(sigma) V*.

    ``sigma`` is descending and nonnegative; W and V have orthonormal columns.
    """

    w: np.ndarray
    sigma: np.ndarray
    v: np.ndarray


@dataclass(frozen=True)
class PolarResult:
    """Polar decomposition T = U P with U = W V* unitary and P = V diag(sigma) V*."""

    u: np.ndarray
    p: np.ndarray


def hermitian_defect(t) -> float:
    """Max-entry distance between t and its adjoint."""
    m = as_operator(t)
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def herm_eig(h) -> HermEigResult:
    """Eigendecomposition of a Hermitian matrix.

    The input must be Hermitian within ``default_tol`` of its largest entry;
    it is symmetrized before calling LAPACK so the result is exactly
    Hermitian-consistent.
    """
    m = as_operator(h)
    scale = float(np.max(np.abs(m), initial=0.0))
    if hermitian_defect(m) > default_tol(scale):
        raise NotHermitian(f"matrix is not Hermitian within tolerance ({hermitian_defect(m):.3e})")
    sym = (m + m.conj().T) / 2.0
    vals, vecs = np.linalg.eigh(sym)
    return HermEigResult(eigenvalues=vals, eigenvectors=vecs)


def svd(t) -> SvdResult:
    """Full SVD with descending, clamped-nonnegative singular values."""
    m = as_operator(t)
    w, s, vh = np.linalg.svd(m)
    return SvdResult(w=w, sigma=np.maximum(s, 0.0), v=vh.conj().T)


def abs_op(t) -> np.ndarray:
    """Operator absolute value |T| = (T*T)^(1/2), computed from the SVD."""
    r = svd(t)
    return (r.v * r.sigma) @ r.v.conj().T


def _clamp_threshold(n: int, lam_max: float) -> float:
    return n * EPS * max(lam_max, 0.0) * CLAMP_FACTOR


def _psd_power_from_eig(vals: np.ndarray, vecs: np.ndarray, s: float, n: int) -> np.ndarray:
    """Spectral power with clamping; 0**0 := 0 gives the support projection."""
    lam_max = float(vals.max(initial=0.0))
    thresh = _clamp_threshold(n, lam_max)
    lam = np.where(vals <= thresh, 0.0, vals)
    powered = np.zeros_like(lam)
    pos = lam > 0.0
    powered[pos] = lam[pos] ** s
    return (vecs * powered) @ vecs.conj().T


def psd_power(p, s: float) -> np.ndarray:
    """P**s for positive semidefinite P and any s >= 0 (spectral calculus).

    Eigenvalues below the clamping threshold are treated as exactly zero,
    so s = 0 yields the support projection rather than the identity.
    Raises NotPositive if P has an eigenvalue below -tol * ||P||.
    """
    m = as_operator(p)
    if s < 0:
        raise NotPositive("negative powers are outside the positive calculus")
    eig = herm_eig(m)
    lam_max_abs = float(np.max(np.abs(eig.eigenvalues), initial=0.0))
    if eig.eigenvalues.min(initial=0.0) < -default_tol(lam_max_abs):
        raise NotPositive(
            f"matrix has eigenvalue {eig.eigenvalues.min():.3e}, below the positivity tolerance"
        )
    return _psd_power_from_eig(eig.eigenvalues, eig.eigenvectors, s, m.shape[0])


def frac_power(p, s: float) -> np.ndarray:
    """Fractional power P**s for positive semidefinite P and s in [0, 1]."""
    if not 0.0 <= s <= 1.0:
        from .errors import DomainError

        raise DomainError(f"fractional power exponent must lie in [0, 1], got {s}")
    return psd_power(p, s)


def polar(t) -> PolarResult:
    """Polar decomposition via the SVD; the isometric factor is unitary.

    On the kernel of |T| the factor U = W V* is one of several valid
    conventions; it is the one used consistently by the transform layer.
    """
    r = svd(t)
    u = r.w @ r.v.conj().T
    p = (r.v * r.sigma) @ r.v.conj().T
    return PolarResult(u=u, p=p)


# ---------------------------------------------------------------------------
# Matrix file format: {"n": int, "entries": [[[re, im], ...], ...]} row-major.


def matrix_from_obj(obj) -> np.ndarray:
    """Build a validated operator from the parsed JSON object."""
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise ParseError('matrix object must have keys "n" and "entries"')
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise ParseError(f'"n" must be a positive integer, got {n!r}')
    rows = obj["entries"]
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"expected {n} rows, got {len(rows) if isinstance(rows, list) else type(rows)}")
    out = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i} is ragged (expected {n} entries)")
        for j, pair in enumerate(row):
            if (
                not isinstance(pair, (list, tuple))
                or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
            ):
                raise ParseError(f"entry ({i},{j}) is not a [re, im] pair")
            re, im = float(pair[0]), float(pair[1])
            if not (np.isfinite(re) and np.isfinite(im)):
                raise ParseError(f"entry ({i},{j}) is not finite")
            out[i, j] = complex(re, im)
    return out


def load_matrix(path) -> np.ndarray:
    """Load a matrix from a JSON file in the toolkit's exchange format."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return matrix_from_obj(obj)


def matrix_to_obj(t) -> dict:
    """Serialize an operator to the JSON exchange structure."""
    m = as_operator(t)
    n = m.shape[0]
    return {
        "n": n,
        "entries": [[[float(m[i, j].real), float(m[i, j].imag)] for j in range(n)] for i in range(n)],
    }


def save_matrix(t, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_obj(t), fh)
        fh.write("\n")
