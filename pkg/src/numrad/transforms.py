"""Operator constructions: Cartesian parts, rotations, segments, blocks, Aluthge.

Everything here materializes plain dense matrices.  Blocks are built as
explicit 2n x 2n arrays; at the dimensions this toolkit targets (n <= 32)
copying is cheap and keeps downstream code uniform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError
from .opcore import as_operator, polar, psd_power


def real_part(t) -> np.ndarray:
    """Hermitian part (T + T*)/2."""
    m = as_operator(t)
    return (m + m.conj().T) / 2.0


def imag_part(t) -> np.ndarray:
    """Skew part mapped to Hermitian form: (T - T*)/(2i)."""
    m = as_operator(t)
    return (m - m.conj().T) / 2.0j


def rotate(t, theta: float) -> np.ndarray:
    """Multiply by the unimodular scalar exp(i*theta)."""
    return np.exp(1j * float(theta)) * as_operator(t)


def segment(t, s: float, star_minus: bool = False) -> np.ndarray:
    """Affine path between an operator and its adjoint.

    ``(1-s) T + s T*`` by default, or ``(1-s) T* - s T`` when
    ``star_minus`` is set.  ``s`` must lie in [0, 1].
    """
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"segment parameter must lie in [0, 1], got {s}")
    m = as_operator(t)
    if star_minus:
        return (1.0 - s) * m.conj().T - s * m
    return (1.0 - s) * m + s * m.conj().T


@dataclass(frozen=True)
class BlockSpec:
    """A 2x2 block layout: either off-diagonal [[0,A],[B,0]] or full [[X1,X2],[X3,X4]]."""

    kind: str
    blocks: tuple

    @classmethod
    def off_diag(cls, a, b) -> "BlockSpec":
        return cls(kind="off_diag", blocks=(as_operator(a), as_operator(b)))

    @classmethod
    def full(cls, x1, x2, x3, x4) -> "BlockSpec":
        return cls(kind="full", blocks=tuple(as_operator(x) for x in (x1, x2, x3, x4)))


def make_block(spec: BlockSpec) -> np.ndarray:
    """Materialize the 2n x 2n matrix described by ``spec``."""
    dims = {b.shape[0] for b in spec.blocks}
    if len(dims) != 1:
        raise DimensionMismatch(f"block operands must share one dimension, got {sorted(dims)}")
    n = dims.pop()
    zero = np.zeros((n, n), dtype=np.complex128)
    if spec.kind == "off_diag":
        a, b = spec.blocks
        return np.block([[zero, a], [b, zero]])
    if spec.kind == "full":
        x1, x2, x3, x4 = spec.blocks
        return np.block([[x1, x2], [x3, x4]])
    raise DimensionMismatch(f"unknown block kind {spec.kind!r}")


def off_diag_block(a, b) -> np.ndarray:
    """[[0, A], [B, 0]] for equal-dimension A, B."""
    return make_block(BlockSpec.off_diag(a, b))


def full_block(x1, x2, x3, x4) -> np.ndarray:
    """[[X1, X2], [X3, X4]] for equal-dimension blocks."""
    return make_block(BlockSpec.full(x1, x2, x3, x4))


def aluthge(t, s: float = 0.5) -> np.ndarray:
    """Weighted transform |T|^s U |T|^(1-s) from the polar factors T = U |T|.

    At s in {0, 1} the zeroth power is the support projection, which keeps
    the transform well-defined for singular T.
    """
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"weight must lie in [0, 1], got {s}")
    m = as_operator(t)
    pr = polar(m)
    left = psd_power(pr.p, s)
    right = psd_power(pr.p, 1.0 - s)
    return left @ pr.u @ right
