"""Seeded, reproducible random matrix generation.

The random stream is fully specified so that an independent implementation
reproduces every matrix bit for bit:

* ``derive_seed(c, i)`` is the splitmix64 finalizer applied to
  ``c XOR (i * 0x9E3779B97F4A7C15 mod 2**64)``.
* The per-sample stream is xoshiro256++ whose four state words are the
  first four outputs of a splitmix64 sequence started at the seed
  (state += golden gamma, then finalize).
* A uniform draw maps a 64-bit output x to ``(x >> 11) * 2**-53`` in [0, 1).
* A Gaussian pair comes from one Box-Muller transform using
  ``u1 = ((x >> 11) + 1) * 2**-53`` in (0, 1] and ``u2 = (y >> 11) * 2**-53``:
  ``z0 = sqrt(-2 ln u1) cos(2 pi u2)``, ``z1 = sqrt(-2 ln u1) sin(2 pi u2)``.
* A standard complex Gaussian is ``(z0 + i z1) / sqrt(2)`` (unit variance:
  E|z|^2 = 1); matrices are filled row-major.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadSpec

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

FAMILIES = (
    "ginibre",
    "hermitian",
    "skew",
    "positive",
    "psd_singular",
    "unitary",
    "normal_diag",
    "nilpotent_jordan",
    "shift",
    "rank_one",
)

#: families that produce positive semidefinite matrices
POSITIVE_FAMILIES = ("positive", "psd_singular")

MAX_DIM = 32


def splitmix64_finalizer(z: int) -> int:
    """The splitmix64 output mix, a bijection on 64-bit words."""
    z &= _MASK
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK
    z ^= z >> 31
    return z


def derive_seed(campaign_seed: int, sample_index: int) -> int:
    """Per-sample seed: finalizer(campaign_seed XOR sample_index * gamma). Injective in the index."""
    x = (campaign_seed ^ ((sample_index * _GAMMA) & _MASK)) & _MASK
    return splitmix64_finalizer(x)


def derive_seeds(campaign_seed: int, sample_indices) -> np.ndarray:
    """Vectorized ``derive_seed`` over an array of indices (uint64)."""
    idx = np.asarray(sample_indices, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(campaign_seed) ^ (idx * np.uint64(_GAMMA))
        z ^= z >> np.uint64(30)
        z *= np.uint64(0xBF58476D1CE4E5B9)
        z ^= z >> np.uint64(27)
        z *= np.uint64(0x94D049BB133111EB)
        z ^= z >> np.uint64(31)
    return z


class GaussianStream:
    """xoshiro256++ stream seeded through splitmix64, yielding Box-Muller Gaussians."""

    def __init__(self, seed: int):
        s = seed & _MASK
        state = []
        for _ in range(4):
            s = (s + _GAMMA) & _MASK
            state.append(splitmix64_finalizer(s))
        self._s = state

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s0 + s3) & _MASK, 23) + s0) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def next_gaussian_pair(self) -> tuple[float, float]:
        x = self.next_u64()
        y = self.next_u64()
        u1 = ((x >> 11) + 1) * 2.0 ** -53
        u2 = (y >> 11) * 2.0 ** -53
        r = math.sqrt(-2.0 * math.log(u1))
        return r * math.cos(2.0 * math.pi * u2), r * math.sin(2.0 * math.pi * u2)

    def complex_gaussians(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.complex128)
        inv_sqrt2 = 1.0 / math.sqrt(2.0)
        for k in range(count):
            z0, z1 = self.next_gaussian_pair()
            out[k] = complex(z0, z1) * inv_sqrt2
        return out


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


@dataclass(frozen=True)
class SampleSpec:
    """One reproducible draw: family name, dimension 1..32, 64-bit seed.

    ``factor`` scales the generated matrix exactly (the "scaled" variant
    of any base family).
    """

    family: str
    dim: int
    seed: int
    factor: complex = 1.0

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise BadSpec(f"unknown family {self.family!r}")
        if not isinstance(self.dim, int) or not 1 <= self.dim <= MAX_DIM:
            raise BadSpec(f"dim must be an integer in [1, {MAX_DIM}], got {self.dim!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed <= _MASK:
            raise BadSpec(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")


def _ginibre(stream: GaussianStream, n: int) -> np.ndarray:
    return stream.complex_gaussians(n * n).reshape(n, n)


def _gram_schmidt_unitary(g: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt on columns, positive-real diagonal convention."""
    n = g.shape[0]
    q = g.astype(np.complex128).copy()
    for j in range(n):
        for i in range(j):
            q[:, j] -= (q[:, i].conj() @ q[:, j]) * q[:, i]
        nrm = float(np.linalg.norm(q[:, j]))
        assert nrm > 1e-12, "Gaussian columns were numerically dependent"
        q[:, j] /= nrm
        piv = q[j, j]
        if abs(piv) > 0.0:
            q[:, j] *= piv.conjugate() / abs(piv)
    return q


def sample(spec: SampleSpec) -> np.ndarray:
    """Deterministic matrix draw for ``spec``; identical specs give identical bits."""
    spec.validate()
    n = spec.dim
    stream = GaussianStream(spec.seed)
    fam = spec.family
    if fam == "ginibre":
        m = _ginibre(stream, n)
    elif fam == "hermitian":
        g = _ginibre(stream, n)
        m = (g + g.conj().T) / 2.0
    elif fam == "skew":
        g = _ginibre(stream, n)
        m = (g - g.conj().T) / 2.0
    elif fam == "positive":
        g = _ginibre(stream, n)
        m = (g.conj().T @ g) / n
    elif fam == "psd_singular":
        g = _ginibre(stream, n)
        g[:, n - 1] = 0.0
        m = (g.conj().T @ g) / n
    elif fam == "unitary":
        m = _gram_schmidt_unitary(_ginibre(stream, n))
    elif fam == "normal_diag":
        m = np.diag(stream.complex_gaussians(n))
    elif fam == "nilpotent_jordan":
        m = np.zeros((n, n), dtype=np.complex128)
        if n > 1:
            m[np.arange(n - 1), np.arange(1, n)] = stream.complex_gaussians(n - 1)
    elif fam == "shift":
        m = np.zeros((n, n), dtype=np.complex128)
        if n > 1:
            m[np.arange(n - 1), np.arange(1, n)] = 1.0
    elif fam == "rank_one":
        u = stream.complex_gaussians(n)
        v = stream.complex_gaussians(n)
        m = np.outer(u, v.conj())
    else:  # pragma: no cover - guarded by validate()
        raise BadSpec(f"unknown family {fam!r}")
    if spec.factor != 1.0:
        m = m * spec.factor
    return m
