"""Catalog of verified radius/norm inequalities and identities.

Every entry binds a mathematical statement about operators to an
evaluation procedure producing :class:`CheckReport` records.  A report
carries the numbers appearing in the inequality chain (left to right,
several chains concatenated where an entry asserts more than one), the
minimum adjacent-pair slack, and a pass flag.  Equalities are encoded as
the two opposite inequalities, so their slack is ``-|lhs - rhs|``.

Soundness contract: every entry encodes a theorem for the operand class
it declares, so ``holds`` must come back true on every sampled operand
tuple; a violation beyond tolerance is a defect in the toolkit, not in
the statement.

Tolerance policy: ``holds            iff slack >= -(atol + rtol * scale + extra)``
where ``scale = max(1, largest operator norm among operands and chain
values)`` and ``extra`` folds in reported quadrature error estimates and
entry-specific identity tolerances.  Chains whose statements quantify
over t in (0, 1) with 1/min(t, 1-t) factors are evaluated on open grids
only.

Statements quantified over every rotation angle are checked on finite
grids (a documented limitation).  Two of those checks are anchored at
the rotation maximizer located by the sweep, where the underlying
sandwich pinches to an identity, so the finite grid does not weaken
them.
"""

from __future__ import annotations

import dataclasses
import hashlib
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import OperandMismatch, UnknownEntry
from .numrange import fov_oracle, operator_norms, spectral_radius, sweep_many
from .opcore import abs_op, as_operator, default_tol, hermitian_defect, psd_power
from .quadrature import (
    int_norm_segments_many,
    int_numrad_segments_many,
)
from .scalardist import min_scalar_distance
from .transforms import full_block, imag_part, off_diag_block, real_part

DEGENERATE_NORM = 1e-12

_T_CLOSED = tuple(round(k / 10.0, 1) for k in range(11))
_T_OPEN = tuple(round(k / 10.0, 1) for k in range(1, 10))


@dataclass(frozen=True)
class EvalSettings:
    """Numerical knobs for evaluating catalog entries.

    The defaults favor accuracy (stand-alone use); campaigns swap in a
    faster profile.  Sweep correctness does not depend on the grid size,
    only the work per evaluation does, because candidate brackets are
    always refined to ``refine_tol``.
    """

    atol: float = 1e-10
    rtol: float = 1e-8
    t_grid_closed: tuple = _T_CLOSED
    t_grid_open: tuple = _T_OPEN
    t_grid_aluthge: tuple = (0.0, 0.25, 0.5, 0.75, 1.0)
    theta_grid_e11: int = 4
    theta_grid_e12: int = 12
    theta_grid_e18: int = 360
    theta_grid_e30: int = 360
    sweep_grid: int = 512
    refine_tol: float = 1e-12
    quad_tol: float = 1e-8
    quad_grid: int = 512
    block_quad_tol: float = 1e-8
    #: angle tolerance for sweeps inside integrands; the induced value bias
    #: (at most ||T|| * tol^2 / 2 per evaluation, one-sided) is added to the
    #: integral's error estimate by the callers
    integrand_refine_tol: float = 1e-12
    e11_quad_tol: float = 1e-4
    e03_identity_rtol: float = 1e-4
    oracle_starts: int = 64
    oracle_iters: int = 200
    oracle_grid: int = 64
    dist_tol: float = 1e-9
    dist_max_iters: int = 500
    e30_top_k: int = 3

    def base_tol(self, scale: float) -> float:
        return self.atol + self.rtol * max(1.0, scale)


#: profile used by verification campaigns: coarser sweep grids (still exact
#: after bracket refinement, whose angle tolerance keeps value errors two
#: orders below the report tolerance), looser quadrature with the error
#: estimate folded into the reported tolerance, and bounded oracle work.
CAMPAIGN_SETTINGS = EvalSettings(
    sweep_grid=64,
    refine_tol=1e-5,
    quad_tol=2.5e-4,
    quad_grid=64,
    block_quad_tol=1.5e-3,
    integrand_refine_tol=3e-3,
    e11_quad_tol=3e-3,
    theta_grid_e11=2,
    t_grid_closed=(0.0, 0.5, 1.0),
    t_grid_open=(0.1, 0.5, 0.9),
    t_grid_aluthge=(0.5,),
    oracle_starts=16,
    oracle_iters=120,
    oracle_grid=24,
    dist_tol=1e-5,
    dist_max_iters=150,
    e30_top_k=1,
)


def _with_sweep_bias(results, norm: float, settings: EvalSettings):
    """Fold the one-sided integrand sweep bias into quadrature error estimates."""
    bias = 0.5 * norm * settings.integrand_refine_tol ** 2
    if bias == 0.0:
        return list(results)
    return [dataclasses.replace(r, error_estimate=r.error_estimate + bias) for r in results]


@dataclass(frozen=True)
class CheckReport:
    """One evaluated check; serializes to one JSONL object."""

    entry_id: str
    operand_digest: str
    params: dict
    chain_values: list
    slack: float
    holds: bool
    tolerance: float
    elapsed_s: float
    status: str = "ok"

    def to_obj(self) -> dict:
        return {
            "entry_id": self.entry_id,
            "operand_digest": self.operand_digest,
            "params": self.params,
            "chain_values": [float(v) for v in self.chain_values],
            "slack": float(self.slack),
            "holds": bool(self.holds),
            "tolerance": float(self.tolerance),
            "elapsed_s": float(self.elapsed_s),
            "status": self.status,
        }


@dataclass(frozen=True)
class InequalityEntry:
    """Catalog record: identifier, operand signature, statement, evaluator."""

    entry_id: str
    title: str
    operand_kind: str  # single | pair | pair_positive | quad | single_or_pair
    statement: str
    param_desc: str
    evaluator: object = field(repr=False)


def operand_digest(operands) -> str:
    h = hashlib.sha256()
    for m in operands:
        a = np.ascontiguousarray(np.asarray(m, dtype=np.complex128))
        h.update(int(a.shape[0]).to_bytes(8, "little"))
        h.update(a.tobytes())
    return h.hexdigest()[:16]


def _herm_abs_norm(h: np.ndarray) -> float:
    w = np.linalg.eigvalsh(h)
    return float(max(abs(w[0]), abs(w[-1])))


def _is_positive(m: np.ndarray) -> bool:
    scale = float(np.max(np.abs(m), initial=0.0))
    if hermitian_defect(m) > default_tol(scale):
        return False
    w = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
    return bool(w.min(initial=0.0) >= -default_tol(scale))


# ---------------------------------------------------------------------------
# evaluation contexts (lazy, batched)


class SingleCtx:
    """Shared computations for a single operand, built lazily in batches."""

    def __init__(self, t, settings: EvalSettings):
        self.t = as_operator(t)
        self.s = settings
        self.n = self.t.shape[0]
        self._cache = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def norm(self) -> float:
        return self._get("norm", lambda: float(np.linalg.svd(self.t, compute_uv=False)[0]))

    @property
    def specrad(self) -> float:
        return self._get("specrad", lambda: spectral_radius(self.t))

    @property
    def re_norm(self) -> float:
        return self._get("re_norm", lambda: _herm_abs_norm(real_part(self.t)))

    @property
    def im_norm(self) -> float:
        return self._get("im_norm", lambda: _herm_abs_norm(imag_part(self.t)))

    def _sweep(self):
        def run():
            omega, arg, thetas, g = sweep_many(
                self.t[None],
                grid_size=self.s.sweep_grid,
                refine_tol=self.s.refine_tol,
            )
            return float(max(omega[0], 0.0)), float(arg[0]), g[0]

        return self._get("sweep", run)

    @property
    def omega(self) -> float:
        return self._sweep()[0]

    @property
    def argmax_theta(self) -> float:
        return self._sweep()[1]

    @property
    def g_values(self) -> np.ndarray:
        return self._sweep()[2]

    @property
    def fov(self) -> float:
        return self._get(
            "fov",
            lambda: fov_oracle(
                self.t,
                n_starts=self.s.oracle_starts,
                ascent_iters=self.s.oracle_iters,
                grid_points=self.s.oracle_grid,
            ),
        )

    def _interior_grid(self):
        return sorted({t for t in (*self.s.t_grid_closed, *self.s.t_grid_open) if 0.0 < t < 1.0})

    def _seg_tables(self, star: bool):
        # plain and star tables are built independently: block contexts
        # only ever touch the plain path, and building both would double
        # the dominant sweep cost of pair entries
        def run():
            interior = self._interior_grid()
            adj = self.t.conj().T
            if star:
                mats = [(1.0 - t) * adj - t * self.t for t in interior]
            else:
                mats = [(1.0 - t) * self.t + t * adj for t in interior]
            stack = np.stack(mats) if mats else np.zeros((0, self.n, self.n), dtype=np.complex128)
            omegas, _, _, _ = sweep_many(
                stack, grid_size=self.s.sweep_grid, refine_tol=self.s.refine_tol
            )
            norms = operator_norms(stack)
            seg_o = {t: float(omegas[i]) for i, t in enumerate(interior)}
            seg_n = {t: float(norms[i]) for i, t in enumerate(interior)}
            return seg_o, seg_n

        return self._get(f"seg_tables_{star}", run)

    def seg_omega(self, t: float) -> float:
        if t in (0.0, 1.0):
            return self.omega
        return self._seg_tables(False)[0][t]

    def seg_star_omega(self, t: float) -> float:
        if t in (0.0, 1.0):
            return self.omega
        return self._seg_tables(True)[0][t]

    def seg_norm(self, t: float) -> float:
        if t in (0.0, 1.0):
            return self.norm
        return self._seg_tables(False)[1][t]

    def seg_star_norm(self, t: float) -> float:
        if t in (0.0, 1.0):
            return self.norm
        return self._seg_tables(True)[1][t]

    def _integrals_omega(self):
        def run():
            tol = self.s.quad_tol * max(1.0, self.norm)
            res = int_numrad_segments_many(
                np.stack([self.t, self.t]),
                [False, True],
                tol=tol,
                grid_size=self.s.quad_grid,
                refine_tol=self.s.integrand_refine_tol,
            )
            return _with_sweep_bias(res, self.norm, self.s)

        return self._get("integrals_omega", run)

    @property
    def int_omega_seg(self):
        return self._integrals_omega()[0]

    @property
    def int_omega_seg_star(self):
        return self._integrals_omega()[1]

    def _integrals_norm(self):
        def run():
            tol = self.s.quad_tol * max(1.0, self.norm)
            return int_norm_segments_many(np.stack([self.t, self.t]), [False, True], tol=tol)

        return self._get("integrals_norm", run)

    @property
    def int_norm_seg(self):
        return self._integrals_norm()[0]

    @property
    def int_norm_seg_star(self):
        return self._integrals_norm()[1]

    @property
    def dist(self):
        return self._get(
            "dist",
            lambda: min_scalar_distance(self.t, tol=self.s.dist_tol, max_iters=self.s.dist_max_iters),
        )

    @property
    def omega_sq(self) -> float:
        def run():
            omega, _, _, _ = sweep_many(
                (self.t @ self.t)[None], grid_size=self.s.sweep_grid, refine_tol=self.s.refine_tol
            )
            return float(max(omega[0], 0.0))

        return self._get("omega_sq", run)


class PairCtx:
    """Shared computations for an ordered operand pair (A, B)."""

    def __init__(self, a, b, settings: EvalSettings):
        self.a = as_operator(a)
        self.b = as_operator(b)
        if self.a.shape != self.b.shape:
            raise OperandMismatch(
                f"pair operands must share dimensions, got {self.a.shape} and {self.b.shape}"
            )
        self.s = settings
        self.n = self.a.shape[0]
        self._cache = {}
        # [[0, A], [B*, 0]] and [[0, A], [B, 0]] drive most block statements;
        # their segment paths are again off-diagonal blocks, so the single-
        # operand context provides every block sweep these entries need.
        self.blk_star = SingleCtx(off_diag_block(self.a, self.b.conj().T), settings)
        self.blk_plain = SingleCtx(off_diag_block(self.a, self.b), settings)

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def norm_a(self) -> float:
        return self._get("norm_a", lambda: float(np.linalg.svd(self.a, compute_uv=False)[0]))

    @property
    def norm_b(self) -> float:
        return self._get("norm_b", lambda: float(np.linalg.svd(self.b, compute_uv=False)[0]))

    def _combo_norms(self):
        def run():
            bstar = self.b.conj().T
            stack = np.stack([self.a + self.b, self.a - self.b, self.a + bstar, self.a - bstar])
            n = operator_norms(stack)
            return {"sum": float(n[0]), "diff": float(n[1]), "sum_star": float(n[2]), "diff_star": float(n[3])}

        return self._get("combo_norms", run)

    @property
    def norm_sum(self) -> float:
        return self._combo_norms()["sum"]

    @property
    def norm_diff(self) -> float:
        return self._combo_norms()["diff"]

    @property
    def norm_sum_star(self) -> float:
        return self._combo_norms()["sum_star"]

    @property
    def norm_diff_star(self) -> float:
        return self._combo_norms()["diff_star"]

    def _combo_omegas(self):
        def run():
            bstar = self.b.conj().T
            stack = np.stack(
                [
                    self.a + self.b,
                    self.a - self.b,
                    self.a + bstar,
                    self.a - bstar,
                    self.a @ self.b,
                    self.b @ self.a,
                ]
            )
            om, _, _, _ = sweep_many(stack, grid_size=self.s.sweep_grid, refine_tol=self.s.refine_tol)
            keys = ("sum", "diff", "sum_star", "diff_star", "ab", "ba")
            return {k: float(max(v, 0.0)) for k, v in zip(keys, om)}

        return self._get("combo_omegas", run)

    @property
    def omega_sum(self) -> float:
        return self._combo_omegas()["sum"]

    @property
    def omega_diff(self) -> float:
        return self._combo_omegas()["diff"]

    @property
    def omega_sum_star(self) -> float:
        return self._combo_omegas()["sum_star"]

    @property
    def omega_diff_star(self) -> float:
        return self._combo_omegas()["diff_star"]

    @property
    def omega_ab(self) -> float:
        return self._combo_omegas()["ab"]

    @property
    def omega_ba(self) -> float:
        return self._combo_omegas()["ba"]

    def _abs_halves(self):
        def run():
            out = {}
            out["a"] = psd_power(abs_op(self.a), 0.5)
            out["b"] = psd_power(abs_op(self.b), 0.5)
            out["a_star"] = psd_power(abs_op(self.a.conj().T), 0.5)
            out["b_star"] = psd_power(abs_op(self.b.conj().T), 0.5)
            return out

        return self._get("abs_halves", run)

    def cross_norm(self, left: str, right: str) -> float:
        halves = self._abs_halves()
        key = f"cross_{left}_{right}"
        return self._get(
            key,
            lambda: float(np.linalg.svd(halves[left] @ halves[right], compute_uv=False)[0]),
        )

    @property
    def dist_blk_plain(self):
        return self._get(
            "dist_blk_plain",
            lambda: min_scalar_distance(
                self.blk_plain.t, tol=self.s.dist_tol, max_iters=self.s.dist_max_iters
            ),
        )

    @property
    def omega_blk_plain_sq(self) -> float:
        def run():
            m = self.blk_plain.t
            om, _, _, _ = sweep_many(
                (m @ m)[None], grid_size=self.s.sweep_grid, refine_tol=self.s.refine_tol
            )
            return float(max(om[0], 0.0))

        return self._get("omega_blk_plain_sq", run)

    @property
    def selfadjoint_pair(self) -> bool:
        def run():
            ta = default_tol(float(np.abs(self.a).max(initial=0.0)))
            tb = default_tol(float(np.abs(self.b).max(initial=0.0)))
            return hermitian_defect(self.a) <= ta and hermitian_defect(self.b) <= tb

        return self._get("selfadjoint_pair", run)

    @property
    def int_blk_star_omega(self):
        def run():
            tol = self.s.block_quad_tol * max(1.0, self.blk_star.norm)
            res = int_numrad_segments_many(
                self.blk_star.t[None],
                [False],
                tol=tol,
                grid_size=self.s.quad_grid,
                refine_tol=self.s.integrand_refine_tol,
            )
            return _with_sweep_bias(res, self.blk_star.norm, self.s)[0]

        return self._get("int_blk_star_omega", run)


class QuadCtx:
    """Shared computations for a quadruple (X1, X2, X3, X4)."""

    def __init__(self, xs, settings: EvalSettings):
        self.xs = tuple(as_operator(x) for x in xs)
        dims = {x.shape[0] for x in self.xs}
        if len(dims) != 1:
            raise OperandMismatch(f"quadruple operands must share dimensions, got {sorted(dims)}")
        self.s = settings
        self.n = dims.pop()
        self._cache = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def _omegas(self):
        def run():
            x1, x2, x3, x4 = self.xs
            small = np.stack([x1, x4, x2 @ x3, x3 @ x2])
            om_s, _, _, _ = sweep_many(small, grid_size=self.s.sweep_grid, refine_tol=self.s.refine_tol)
            big = np.stack([full_block(*self.xs), off_diag_block(x2, x3)])
            om_b, _, _, _ = sweep_many(big, grid_size=self.s.sweep_grid, refine_tol=self.s.refine_tol)
            return {
                "x1": float(max(om_s[0], 0.0)),
                "x4": float(max(om_s[1], 0.0)),
                "x2x3": float(max(om_s[2], 0.0)),
                "x3x2": float(max(om_s[3], 0.0)),
                "full": float(max(om_b[0], 0.0)),
                "e": float(max(om_b[1], 0.0)),
            }

        return self._get("omegas", run)

    @property
    def dist_e(self):
        x1, x2, x3, x4 = self.xs
        return self._get(
            "dist_e",
            lambda: min_scalar_distance(
                off_diag_block(x2, x3), tol=self.s.dist_tol, max_iters=self.s.dist_max_iters
            ),
        )

    def alphas(self):
        def run():
            _, x2, x3, _ = self.xs
            om = self._omegas()
            m1 = x2.conj().T @ x2 + x3 @ x3.conj().T  # |X2|^2 + |X3*|^2
            m2 = x2 @ x2.conj().T + x3.conj().T @ x3  # |X2*|^2 + |X3|^2
            a1 = 0.5 * np.sqrt(_herm_abs_norm(m1) + 2.0 * om["x3x2"])
            a2 = 0.5 * np.sqrt(_herm_abs_norm(m2) + 2.0 * om["x2x3"])
            return float(a1), float(a2)

        return self._get("alphas", run)


# ---------------------------------------------------------------------------
# evaluator helpers


def _chain_slack(chains) -> float:
    slack = np.inf
    for chain in chains:
        for left, right in zip(chain, chain[1:]):
            slack = min(slack, right - left)
    return 0.0 if slack is np.inf or np.isinf(slack) else float(slack)


def _eq(a: float, b: float):
    """Two chains encoding equality: slack is -|a - b|."""
    return [[a, b], [b, a]]


@dataclass
class RawReport:
    params: dict
    chains: list
    extra_tol: float = 0.0
    status: str = "ok"


def _finalize(entry_id, digest, raws, operand_norms_, settings, elapsed_total) -> list:
    reports = []
    per = elapsed_total / max(1, len(raws))
    for raw in raws:
        flat = [float(v) for chain in raw.chains for v in chain]
        if any(not np.isfinite(v) for v in flat):
            raise ArithmeticError(f"{entry_id}: non-finite chain value {flat}")
        scale = max([1.0, *[abs(v) for v in flat], *operand_norms_])
        tolerance = settings.atol + settings.rtol * scale + raw.extra_tol
        slack = _chain_slack(raw.chains)
        reports.append(
            CheckReport(
                entry_id=entry_id,
                operand_digest=digest,
                params=raw.params,
                chain_values=flat,
                slack=slack,
                holds=bool(slack >= -tolerance) if raw.status == "ok" else True,
                tolerance=tolerance,
                elapsed_s=per,
                status=raw.status,
            )
        )
    return reports


# ---------------------------------------------------------------------------
# entry evaluators (ctx -> list[RawReport])


def _e01(ctx: SingleCtx, s):
    return [RawReport({}, [[ctx.specrad, ctx.omega, ctx.norm], [ctx.norm / 2.0, ctx.omega]])]


def _e02(ctx: SingleCtx, s):
    return [RawReport({}, [[ctx.re_norm, ctx.omega], [ctx.im_norm, ctx.omega]])]


def _e03(ctx: SingleCtx, s):
    extra = s.e03_identity_rtol * max(1.0, ctx.norm)
    return [RawReport({}, _eq(ctx.fov, ctx.omega), extra_tol=extra)]


def _e04(ctx: PairCtx, s):
    chain = [ctx.norm_sum, 2.0 * ctx.blk_star.omega, ctx.norm_a + ctx.norm_b]
    return [RawReport({}, [chain])]


def _e05(ctx: PairCtx, s):
    chain = [max(ctx.omega_sum, ctx.omega_diff) / 2.0, ctx.blk_plain.omega]
    return [RawReport({}, [chain])]


def _e06(ctx: PairCtx, s):
    chain = [ctx.blk_plain.omega, (ctx.omega_sum + ctx.omega_diff) / 2.0]
    return [RawReport({}, [chain])]


def _e07(ctx: PairCtx, s):
    rhs = max(ctx.norm_a, ctx.norm_b) + 0.5 * (
        ctx.cross_norm("a", "b") + ctx.cross_norm("b_star", "a_star")
    )
    return [RawReport({}, [[2.0 * ctx.blk_star.omega, rhs]])]


def _e08(ctx: PairCtx, s):
    rhs = max(ctx.norm_a, ctx.norm_b) + max(
        ctx.cross_norm("a", "b_star"), ctx.cross_norm("a_star", "b")
    )
    return [RawReport({}, [[ctx.norm_sum_star, rhs]])]


def _e09(ctx: SingleCtx, s):
    q = ctx.int_omega_seg
    return [
        RawReport({}, [[ctx.re_norm, q.value, ctx.omega]], extra_tol=q.error_estimate)
    ]


def _e10(ctx: SingleCtx, s):
    qo, qs = ctx.int_omega_seg, ctx.int_omega_seg_star
    no, ns = ctx.int_norm_seg, ctx.int_norm_seg_star
    chains = [
        [ctx.re_norm, qo.value, ctx.omega],
        [ctx.im_norm, qs.value, ctx.omega],
        [ctx.re_norm, no.value, ctx.norm],
        [ctx.im_norm, ns.value, ctx.norm],
    ]
    extra = qo.error_estimate + qs.error_estimate + no.error_estimate + ns.error_estimate
    return [RawReport({}, chains, extra_tol=extra)]


def _rotations(anchor: float, count: int) -> np.ndarray:
    return np.mod(anchor + 2.0 * np.pi * np.arange(count) / count, 2.0 * np.pi)


def _e11(ctx: SingleCtx, s):
    # sup over rotations of the two segment-radius integrals equals the
    # radius; anchoring each grid at its own maximizer (theta* for the
    # plain path, theta* + pi/2 for the star path) makes the sup side
    # tight, since there the convex integrand pinches to a constant.
    m = s.theta_grid_e11
    th_plain = _rotations(ctx.argmax_theta, m)
    th_star = _rotations(ctx.argmax_theta + np.pi / 2.0, m)
    mats = np.concatenate(
        [
            np.exp(1j * th_plain)[:, None, None] * ctx.t[None],
            np.exp(1j * th_star)[:, None, None] * ctx.t[None],
        ]
    )
    flags = np.array([False] * m + [True] * m)
    tol = s.e11_quad_tol * max(1.0, ctx.norm)
    results = _with_sweep_bias(
        int_numrad_segments_many(
            mats, flags, tol=tol, grid_size=s.quad_grid, refine_tol=s.integrand_refine_tol
        ),
        ctx.norm,
        s,
    )
    chains = []
    extra = 0.0
    for j in range(m):
        chains.append([results[j].value, ctx.omega])
        chains.append([results[m + j].value, ctx.omega])
        extra += results[j].error_estimate + results[m + j].error_estimate
    chains.append([ctx.omega, results[0].value])
    chains.append([ctx.omega, results[m].value])
    return [RawReport({"theta_grid": m}, chains, extra_tol=extra)]


def _e12(ctx: SingleCtx, s):
    m = s.theta_grid_e12
    th_plain = _rotations(ctx.argmax_theta, m)
    th_star = _rotations(ctx.argmax_theta + np.pi / 2.0, m)
    mats = np.concatenate(
        [
            np.exp(1j * th_plain)[:, None, None] * ctx.t[None],
            np.exp(1j * th_star)[:, None, None] * ctx.t[None],
        ]
    )
    flags = np.array([False] * m + [True] * m)
    tol = s.quad_tol * max(1.0, ctx.norm)
    results = int_norm_segments_many(mats, flags, tol=tol)
    lam1 = max(results[j].value for j in range(m))
    lam2 = max(results[m + j].value for j in range(m))
    extra = sum(r.error_estimate for r in results)
    chains = [
        [ctx.omega, lam1],
        [lam1, ctx.norm],
        [ctx.omega, lam2],
        [lam2, ctx.norm],
    ]
    return [RawReport({"theta_grid": m}, chains, extra_tol=extra)]


def _e13(ctx: SingleCtx, s):
    qo, qs = ctx.int_omega_seg, ctx.int_omega_seg_star
    chains = [[ctx.omega / 2.0, qo.value], [ctx.omega / 2.0, qs.value]]
    return [RawReport({}, chains, extra_tol=qo.error_estimate + qs.error_estimate)]


def _e14(ctx: SingleCtx, s):
    if ctx.norm < DEGENERATE_NORM:
        return [RawReport({}, [], status="skipped-degenerate")]
    qn, qo = ctx.int_norm_seg, ctx.int_omega_seg
    chains = [
        [ctx.norm, 2.0 * qn.value, 2.0 * ctx.norm],
        [ctx.omega, 2.0 * qo.value, 2.0 * ctx.omega],
    ]
    return [RawReport({}, chains, extra_tol=2.0 * (qn.error_estimate + qo.error_estimate))]


def _e15(ctx: SingleCtx, s):
    out = []
    for t in s.t_grid_open:
        r, big_r = min(t, 1.0 - t), max(t, 1.0 - t)
        gap_o = ctx.omega - ctx.seg_omega(t)
        gap_n = ctx.norm - ctx.seg_norm(t)
        chains = [
            [gap_o / (2.0 * big_r), ctx.omega - ctx.re_norm, gap_o / (2.0 * r)],
            [gap_n / (2.0 * big_r), ctx.norm - ctx.re_norm, gap_n / (2.0 * r)],
        ]
        out.append(RawReport({"t": t}, chains))
    return out


def _e16(ctx: SingleCtx, s):
    out = []
    for t in s.t_grid_closed:
        big_r = max(t, 1.0 - t)
        lhs = ctx.norm / 2.0 + (
            2.0 * ctx.omega - (ctx.seg_star_omega(t) + ctx.seg_omega(t))
        ) / (4.0 * big_r)
        out.append(RawReport({"t": t}, [[lhs, ctx.omega]]))
    return out


def _e17(ctx: SingleCtx, s):
    first = ctx.norm / 2.0 + abs(ctx.im_norm - ctx.re_norm) / 2.0
    mid = ctx.norm / 2.0 + (2.0 * ctx.omega - (ctx.im_norm + ctx.re_norm)) / 2.0
    return [RawReport({}, [[first, mid, ctx.omega]])]


def _e18(ctx: SingleCtx, s):
    cond_tol = s.base_tol(max(ctx.norm, ctx.omega))
    if abs(ctx.omega - ctx.norm / 2.0) > cond_tol:
        return [RawReport({"condition": False}, [])]
    m = s.theta_grid_e18
    thetas = 2.0 * np.pi * np.arange(m) / m
    rot = np.exp(1j * thetas)[:, None, None] * ctx.t[None]
    re_h = (rot + rot.conj().swapaxes(-1, -2)) * 0.5
    im_h = (rot - rot.conj().swapaxes(-1, -2)) * -0.5j
    re_w = np.linalg.eigvalsh(re_h)
    im_w = np.linalg.eigvalsh(im_h)
    re_norms = np.maximum(np.abs(re_w[:, 0]), np.abs(re_w[:, -1]))
    im_norms = np.maximum(np.abs(im_w[:, 0]), np.abs(im_w[:, -1]))
    half = ctx.norm / 2.0
    chains = [
        [half, float(re_norms.min())],
        [float(re_norms.max()), half],
        [half, float(im_norms.min())],
        [float(im_norms.max()), half],
    ]
    # when omega differs from ||T||/2 by delta <= cond_tol, every rotated
    # Cartesian norm stays within delta of ||T||/2, so the condition
    # tolerance is the exact perturbation allowance for the probe
    return [RawReport({"condition": True, "theta_grid": m}, chains, extra_tol=cond_tol)]


def _e19(ctx: PairCtx, s):
    blk = ctx.blk_plain
    quarter_sum = (ctx.norm_diff_star + ctx.norm_sum_star) / 4.0
    first = blk.norm / 2.0 + abs(ctx.norm_diff_star - ctx.norm_sum_star) / 4.0
    mid = blk.norm / 2.0 + blk.omega - quarter_sum
    return [RawReport({}, [[first, mid, blk.omega]])]


def _e20(ctx: SingleCtx, s):
    out = []
    for t in s.t_grid_open:
        r, big_r = min(t, 1.0 - t), max(t, 1.0 - t)
        gap_o = ctx.omega - ctx.seg_omega(t)
        gap_n = ctx.norm - ctx.seg_norm(t)
        chains = [
            [ctx.norm, ctx.omega + gap_n / (2.0 * r) - gap_o / (2.0 * big_r)],
            [gap_o / (2.0 * big_r), gap_n / (2.0 * r)],
        ]
        out.append(RawReport({"t": t}, chains))
    return out


def _e21(ctx: PairCtx, s):
    out = []
    for t in s.t_grid_closed:
        big_r = max(t, 1.0 - t)
        gap = ctx.blk_star.omega - ctx.blk_star.seg_omega(t)
        chain = [ctx.norm_sum, ctx.norm_a + ctx.norm_b - gap / big_r]
        out.append(RawReport({"t": t}, [chain]))
    return out


def _e22(ctx: PairCtx, s):
    re_a, im_a = real_part(ctx.a), imag_part(ctx.a)
    re_b, im_b = real_part(ctx.b), imag_part(ctx.b)
    max_diff = max(_herm_abs_norm(im_a - im_b), _herm_abs_norm(re_a - re_b))
    max_sum = max(_herm_abs_norm(re_a + re_b), _herm_abs_norm(im_a + im_b))
    mid = ctx.norm_sum + ctx.norm_diff
    chains = [
        [max_diff + max_sum, mid, 4.0 * ctx.blk_star.omega],
        [mid / 2.0, 2.0 * ctx.blk_star.omega, ctx.omega_sum_star + ctx.omega_diff_star],
    ]
    return [RawReport({}, chains)]


def _e23(ctx: PairCtx, s):
    q = ctx.int_blk_star_omega
    chain = [ctx.norm_sum, 2.0 * q.value, ctx.norm_a + ctx.norm_b]
    return [RawReport({}, [chain], extra_tol=2.0 * q.error_estimate)]


def _e24(ctx: PairCtx, s):
    rhs = max(ctx.norm_a, ctx.norm_b) + 0.5 * (
        ctx.cross_norm("a", "b") + ctx.cross_norm("b_star", "a_star")
    )
    rhs_sa = max(ctx.norm_a, ctx.norm_b) + ctx.cross_norm("a", "b")
    out = []
    for t in s.t_grid_closed:
        big_r = max(t, 1.0 - t)
        lhs = ctx.norm_sum + (ctx.blk_star.omega - ctx.blk_star.seg_omega(t)) / big_r
        chains = [[lhs, rhs]]
        if ctx.selfadjoint_pair:
            chains.append([lhs, rhs_sa])
        out.append(RawReport({"t": t}, chains))
    return out


def _e25(ctx: PairCtx, s):
    target = ctx.norm_sum / 2.0
    out = []
    for t in s.t_grid_closed:
        out.append(RawReport({"t": t}, _eq(ctx.blk_plain.seg_omega(t), target)))
    return out


def _e26(ctx: PairCtx, s):
    lhs = np.sqrt(max(ctx.omega_ab, 0.0))
    out = []
    for t in s.t_grid_open:
        r = min(t, 1.0 - t)
        rhs = ctx.norm_sum_star / 2.0 + (
            ctx.blk_plain.omega - ctx.blk_plain.seg_omega(t)
        ) / (2.0 * r)
        out.append(RawReport({"t": t}, [[float(lhs), rhs]]))
    return out


def _e27(ctx: PairCtx, s):
    halves = ctx._abs_halves()
    # for positive operands |A|^(1/2) = A^(1/2)
    amgm = float(np.linalg.svd(halves["a"] @ halves["b"], compute_uv=False)[0])
    rad = max(spectral_radius(ctx.a @ ctx.b), 0.0)
    chains = [[amgm, float(np.sqrt(max(ctx.omega_ab, 0.0))), ctx.norm_sum / 2.0]]
    chains.extend(_eq(amgm, float(np.sqrt(rad))))
    return [RawReport({}, chains)]


def _e28(ctx, s):
    if isinstance(ctx, SingleCtx):
        d = ctx.dist.distance
        chains = [
            [ctx.omega ** 2 - d ** 2, ctx.omega_sq],
            [ctx.omega_sq, ctx.omega ** 2],
        ]
        return [RawReport({"form": "single"}, chains)]
    blk = ctx.blk_plain
    d = ctx.dist_blk_plain.distance
    rhs = float(np.sqrt(max(ctx.omega_ab, ctx.omega_ba) + d ** 2))
    chains = [
        [blk.omega, rhs],
        [blk.omega ** 2 - d ** 2, ctx.omega_blk_plain_sq],
        [ctx.omega_blk_plain_sq, blk.omega ** 2],
    ]
    return [RawReport({"form": "pair"}, chains)]


def _e29(ctx: QuadCtx, s):
    om = ctx._omegas()
    d = ctx.dist_e.distance
    a1, a2 = ctx.alphas()
    base = max(om["x1"], om["x4"])
    spread = om["x1"] - om["x4"]
    rhs1 = base + float(np.sqrt(max(om["x2x3"], om["x3x2"]) + d ** 2))
    rhs2 = 0.5 * (om["x1"] + om["x4"] + float(np.sqrt(spread ** 2 + 4.0 * om["e"] ** 2)))
    rhs4 = 0.5 * (om["x1"] + om["x4"] + float(np.sqrt(spread ** 2 + 4.0 * min(a1, a2) ** 2)))
    chains = [
        [om["full"], rhs1],
        [om["full"], rhs2],
        [om["e"], min(a1, a2)],
        [om["full"], rhs4],
    ]
    return [RawReport({}, chains)]


def _top_theta_indices(values: np.ndarray, k: int) -> np.ndarray:
    order = np.lexsort((np.arange(values.size), -values))
    return np.sort(order[: max(1, min(k, values.size))])


def _omegas_of(mats_list, s: EvalSettings) -> list:
    if not mats_list:
        return []
    om, _, _, _ = sweep_many(
        np.stack(mats_list), grid_size=s.sweep_grid, refine_tol=s.refine_tol
    )
    return [float(max(v, 0.0)) for v in om]


def _e30_pair(ctx: PairCtx, s):
    a, b = ctx.a, ctx.b
    m = s.theta_grid_e30
    thetas = 2.0 * np.pi * np.arange(m) / m
    ab = a @ b
    rot = np.exp(1j * thetas)[:, None, None] * ab[None]
    h = (rot + rot.conj().swapaxes(-1, -2)) * 0.5
    w = np.linalg.eigvalsh(h)
    lhs_all = np.maximum(np.abs(w[:, 0]), np.abs(w[:, -1]))
    sel = _top_theta_indices(lhs_all, s.e30_top_k)

    ba = b @ a
    bbs = b @ b.conj().T
    asa = a.conj().T @ a
    degenerate = min(ctx.norm_a, ctx.norm_b) < DEGENERATE_NORM
    blocks = []
    labels = []
    for idx in sel:
        th = float(thetas[idx])
        ph = np.exp(1j * th)
        lhs = float(lhs_all[idx])
        blocks.append(np.block([[ph * ba, np.conj(ph) * bbs], [ph * asa, (ph * ba).conj().T]]))
        labels.append((th, lhs, "product-block"))
        if not degenerate:
            ratio = ctx.norm_a / ctx.norm_b
            blocks.append(
                np.block(
                    [[ph * ba, np.conj(ph) * ratio * bbs], [ph * (1.0 / ratio) * asa, (ph * ba).conj().T]]
                )
            )
            labels.append((th, lhs, "product-block-rescaled"))
    block_omegas = _omegas_of(blocks, s)
    out = [
        RawReport({"theta": round(th, 12), "part": part}, [[lhs, 0.5 * om]])
        for (th, lhs, part), om in zip(labels, block_omegas)
    ]
    if degenerate:
        out.append(RawReport({"part": "product-block-rescaled"}, [], status="skipped-degenerate"))

    prod1, prod2 = _omegas_of([asa @ bbs, bbs @ asa], s)  # |A|^2 |B*|^2 and its swap
    quartic = _herm_abs_norm(bbs @ bbs + asa @ asa)
    rhs = 0.5 * ctx.omega_ba + 0.25 * float(np.sqrt(quartic + 2.0 * min(prod1, prod2)))
    out.append(RawReport({"part": "closing"}, [[ctx.omega_ab, rhs]]))
    if not degenerate:
        ratio2 = (ctx.norm_a / ctx.norm_b) ** 2
        quartic_r = _herm_abs_norm(ratio2 * (bbs @ bbs) + (1.0 / ratio2) * (asa @ asa))
        rhs_r = 0.5 * ctx.omega_ba + 0.25 * float(np.sqrt(quartic_r + 2.0 * min(prod1, prod2)))
        out.append(RawReport({"part": "closing-rescaled"}, [[ctx.omega_ab, rhs_r]]))
    else:
        out.append(RawReport({"part": "closing-rescaled"}, [], status="skipped-degenerate"))
    return out


def _e30_single(ctx: SingleCtx, s):
    # transform instantiation: the product factors U |T|^(1-t) and |T|^t
    # recover T itself, so the left side is the rotated Cartesian norm of T
    from .opcore import polar as _polar

    g = ctx.g_values
    grid = g.size
    half = grid // 2
    lhs_all = np.maximum(g, np.roll(g, -half))
    sel = _top_theta_indices(lhs_all, s.e30_top_k)
    thetas = 2.0 * np.pi * np.arange(grid) / grid

    pr = _polar(ctx.t)
    absT = pr.p
    vals, vecs = np.linalg.eigh((absT + absT.conj().T) / 2.0)
    vals = np.maximum(vals, 0.0)

    def power(sx: float) -> np.ndarray:
        lam_max = float(vals.max(initial=0.0))
        thresh = ctx.n * (2.0 ** -52) * lam_max * 64.0
        lam = np.where(vals <= thresh, 0.0, vals)
        powered = np.zeros_like(lam)
        pos = lam > 0.0
        powered[pos] = lam[pos] ** sx
        return (vecs * powered) @ vecs.conj().T

    degenerate = ctx.norm < DEGENERATE_NORM
    sel_thetas = [round(float(thetas[i]), 12) for i in sel]
    blocks = []
    slots = []  # (t, lhs, rescaled)
    for t in s.t_grid_aluthge:
        left = power(t)
        right = power(1.0 - t)
        tilde = left @ pr.u @ right
        p2t = power(2.0 * t)
        p2mt = power(2.0 * (1.0 - t))
        for idx in sel:
            th = float(thetas[idx])
            ph = np.exp(1j * th)
            lhs = float(lhs_all[idx])
            blocks.append(
                np.block([[ph * tilde, np.conj(ph) * p2t], [ph * p2mt, (ph * tilde).conj().T]])
            )
            slots.append((t, lhs, False))
            if not degenerate:
                blocks.append(
                    np.block(
                        [
                            [ph * tilde, np.conj(ph) * ctx.norm ** (1.0 - 2.0 * t) * p2t],
                            [ph * ctx.norm ** (2.0 * t - 1.0) * p2mt, (ph * tilde).conj().T],
                        ]
                    )
                )
                slots.append((t, lhs, True))
    omegas = _omegas_of(blocks, s)
    chains_13 = {t: [] for t in s.t_grid_aluthge}
    chains_14 = {t: [] for t in s.t_grid_aluthge}
    for (t, lhs, rescaled), om in zip(slots, omegas):
        (chains_14 if rescaled else chains_13)[t].append([lhs, 0.5 * om])
    out = []
    for t in s.t_grid_aluthge:
        params = {"t": t, "form": "transform", "thetas": sel_thetas}
        out.append(RawReport(params, chains_13[t]))
        if degenerate:
            out.append(
                RawReport({"t": t, "form": "transform-rescaled"}, [], status="skipped-degenerate")
            )
        else:
            params = {"t": t, "form": "transform-rescaled", "thetas": sel_thetas}
            out.append(RawReport(params, chains_14[t]))
    return out


def _e30(ctx, s):
    if isinstance(ctx, SingleCtx):
        return _e30_single(ctx, s)
    return _e30_pair(ctx, s)


# ---------------------------------------------------------------------------
# catalog

_CATALOG = [
    InequalityEntry(
        "E01",
        "norm-radius equivalence chain",
        "single",
        "r(T) <= w(T) <= ||T||  and  ||T||/2 <= w(T)",
        "none",
        _e01,
    ),
    InequalityEntry(
        "E02",
        "Cartesian part bounds",
        "single",
        "||Re T|| <= w(T)  and  ||Im T|| <= w(T)",
        "none",
        _e02,
    ),
    InequalityEntry(
        "E03",
        "rotation sweep agrees with the sampling oracle",
        "single",
        "sup_theta lambda_max(Re e^{i theta} T) = sup_{|x|=1} |<Tx,x>|",
        "none",
        _e03,
    ),
    InequalityEntry(
        "E04",
        "block refinement of the triangle inequality",
        "pair",
        "||A+B|| <= 2 w([[0,A],[B*,0]]) <= ||A|| + ||B||",
        "none",
        _e04,
    ),
    InequalityEntry(
        "E05",
        "block radius lower bound from sum and difference",
        "pair",
        "max{w(S+T), w(S-T)}/2 <= w([[0,S],[T,0]])",
        "none",
        _e05,
    ),
    InequalityEntry(
        "E06",
        "block radius upper bound from sum and difference",
        "pair",
        "w([[0,S],[T,0]]) <= (w(S+T) + w(S-T))/2",
        "none",
        _e06,
    ),
    InequalityEntry(
        "E07",
        "block radius against mixed half-power norms",
        "pair",
        "2 w([[0,A],[B*,0]]) <= max{||A||,||B||} + (|| |A|^(1/2)|B|^(1/2) || + || |B*|^(1/2)|A*|^(1/2) ||)/2",
        "none",
        _e07,
    ),
    InequalityEntry(
        "E08",
        "sum-with-adjoint norm bound",
        "pair",
        "||A+B*|| <= max{||A||,||B||} + max{|| |A|^(1/2)|B*|^(1/2) ||, || |A*|^(1/2)|B|^(1/2) ||}",
        "none",
        _e08,
    ),
    InequalityEntry(
        "E09",
        "convexity sandwich for the segment radius",
        "single",
        "f(1/2) <= int_0^1 f <= (f(0)+f(1))/2  for f(t) = w((1-t)T + tT*)",
        "none",
        _e09,
    ),
    InequalityEntry(
        "E10",
        "segment integral refinements of the Cartesian bounds",
        "single",
        "||Re T|| <= int w(seg) <= w(T); ||Im T|| <= int w(seg*) <= w(T); same with norms",
        "none",
        _e10,
    ),
    InequalityEntry(
        "E11",
        "rotation suprema of segment radius integrals",
        "single",
        "sup_theta int_0^1 w((1-t) e^{i theta} T + t e^{-i theta} T*) dt = w(T), both path variants",
        "theta grid (anchored at the sweep maximizer)",
        _e11,
    ),
    InequalityEntry(
        "E12",
        "rotation suprema of segment norm integrals bracket w",
        "single",
        "w(T) <= min{lam1, lam2} <= ||T|| with lam_i = sup_theta int ||seg variants|| dt",
        "theta grid (anchored at the sweep maximizer)",
        _e12,
    ),
    InequalityEntry(
        "E13",
        "half-radius lower bound on segment integrals",
        "single",
        "w(T)/2 <= int w(seg) dt  and  w(T)/2 <= int w(seg*) dt",
        "none",
        _e13,
    ),
    InequalityEntry(
        "E14",
        "two-sided doubling bounds for segment integrals",
        "single",
        "||T|| <= 2 int ||seg|| dt <= 2||T||  and  w(T) <= 2 int w(seg) dt <= 2 w(T)",
        "none",
        _e14,
    ),
    InequalityEntry(
        "E15",
        "weighted refinement and reverse for the Cartesian gap",
        "single",
        "(w - w(seg_t))/(2R) <= w - ||Re T|| <= (w - w(seg_t))/(2r), and the norm analog",
        "t in (0,1)",
        _e15,
    ),
    InequalityEntry(
        "E16",
        "refined lower bound on the radius from both segment paths",
        "single",
        "||T||/2 + (2w - (w(seg*_t) + w(seg_t)))/(4R) <= w(T)",
        "t in [0,1]",
        _e16,
    ),
    InequalityEntry(
        "E17",
        "double refinement of the half-norm bound",
        "single",
        "||T||/2 + | ||Im T|| - ||Re T|| |/2 <= ||T||/2 + (2w - (||Im T|| + ||Re T||))/2 <= w(T)",
        "none",
        _e17,
    ),
    InequalityEntry(
        "E18",
        "equality case w = ||T||/2 forces constant rotated Cartesian norms",
        "single",
        "if w(T) = ||T||/2 then ||Re e^{i theta} T|| = ||Im e^{i theta} T|| = ||T||/2 for all theta",
        "conditional probe on a theta grid",
        _e18,
    ),
    InequalityEntry(
        "E19",
        "block specialization of the double refinement",
        "pair",
        "||blk||/2 + | ||A-B*|| - ||A+B*|| |/4 <= ||blk||/2 + w(blk) - (||A-B*|| + ||A+B*||)/4 <= w(blk), blk = [[0,A],[B,0]]",
        "none",
        _e19,
    ),
    InequalityEntry(
        "E20",
        "reverse bound for the norm-radius gap",
        "single",
        "||T|| <= w + (||T|| - ||seg_t||)/(2r) - (w - w(seg_t))/(2R); quotient form",
        "t in (0,1)",
        _e20,
    ),
    InequalityEntry(
        "E21",
        "triangle refinement through the block segment gap",
        "pair",
        "||A+B|| <= ||A|| + ||B|| - (w(blk) - w(seg_t(blk)))/R, blk = [[0,A],[B*,0]]",
        "t in [0,1]",
        _e21,
    ),
    InequalityEntry(
        "E22",
        "sum/difference chains through the block radius",
        "pair",
        "max-norm combinations <= ||A+B|| + ||A-B|| <= 4 w(blk); averaged two-sided variant",
        "none",
        _e22,
    ),
    InequalityEntry(
        "E23",
        "integral form of the block triangle refinement",
        "pair",
        "||A+B|| <= 2 int w(seg_t(blk)) dt <= ||A|| + ||B||",
        "none",
        _e23,
    ),
    InequalityEntry(
        "E24",
        "improved mixed-power bound with the block segment gap",
        "pair",
        "||A+B|| + (w(blk) - w(seg_t(blk)))/R <= max{||A||,||B||} + half-power terms",
        "t in [0,1]",
        _e24,
    ),
    InequalityEntry(
        "E25",
        "positive pairs: block radius identity",
        "pair_positive",
        "w(seg_t([[0,A],[B,0]])) = w([[0,A],[B,0]]) = ||A+B||/2 for positive A, B",
        "t in [0,1]",
        _e25,
    ),
    InequalityEntry(
        "E26",
        "product radius bound through the block segment gap",
        "pair",
        "w(AB)^(1/2) <= ||A+B*||/2 + (w(blk) - w(seg_t(blk)))/(2r), blk = [[0,A],[B,0]]",
        "t in (0,1)",
        _e26,
    ),
    InequalityEntry(
        "E27",
        "positive pairs: arithmetic-geometric mean chain",
        "pair_positive",
        "||A^(1/2)B^(1/2)|| = r(AB)^(1/2) <= w(AB)^(1/2) <= ||A+B||/2",
        "none",
        _e27,
    ),
    InequalityEntry(
        "E28",
        "product lower bound via distance to scalars",
        "single_or_pair",
        "w(blk)^2 <= max{w(AB), w(BA)} + inf_lam ||blk - lam||^2; w(T^2) >= w(T)^2 - inf_lam ||T - lam||^2; w(T^2) <= w(T)^2",
        "none",
        _e28,
    ),
    InequalityEntry(
        "E29",
        "full 2x2 block radius bounds",
        "quad",
        "w([[X1,X2],[X3,X4]]) <= max{w(X1),w(X4)} + sqrt(max{w(X2X3),w(X3X2)} + d^2); eigen-style bound with the off-diagonal radius and its quadratic estimates",
        "none",
        _e29,
    ),
    InequalityEntry(
        "E30",
        "product bounds from rotated Cartesian norms",
        "single_or_pair",
        "||Re e^{i theta} AB|| <= w(4-block)/2 (plain and rescaled); polar-factor instantiation; closing product bounds",
        "theta grid (worst angles from a scan)",
        _e30,
    ),
]

_BY_ID = {e.entry_id: e for e in _CATALOG}

SINGLE_ENTRIES = tuple(
    e.entry_id for e in _CATALOG if e.operand_kind in ("single", "single_or_pair")
)
PAIR_ENTRIES = tuple(e.entry_id for e in _CATALOG if e.operand_kind in ("pair", "single_or_pair"))
POSITIVE_PAIR_ENTRIES = tuple(e.entry_id for e in _CATALOG if e.operand_kind == "pair_positive")
QUAD_ENTRIES = tuple(e.entry_id for e in _CATALOG if e.operand_kind == "quad")


def catalog() -> list:
    """All entries in fixed id order."""
    return list(_CATALOG)


def get_entry(entry_id: str) -> InequalityEntry:
    if entry_id not in _BY_ID:
        raise UnknownEntry(f"no catalog entry {entry_id!r}")
    return _BY_ID[entry_id]


def _make_ctx(entry: InequalityEntry, operands, settings: EvalSettings):
    ops = [as_operator(m) for m in operands]
    kind = entry.operand_kind
    if kind == "single" or (kind == "single_or_pair" and len(ops) == 1):
        if len(ops) != 1:
            raise OperandMismatch(f"{entry.entry_id} expects one operand, got {len(ops)}")
        return SingleCtx(ops[0], settings)
    if kind in ("pair", "pair_positive") or (kind == "single_or_pair" and len(ops) == 2):
        if len(ops) != 2:
            raise OperandMismatch(f"{entry.entry_id} expects two operands, got {len(ops)}")
        if kind == "pair_positive" and not (_is_positive(ops[0]) and _is_positive(ops[1])):
            raise OperandMismatch(f"{entry.entry_id} requires positive semidefinite operands")
        return PairCtx(ops[0], ops[1], settings)
    if kind == "quad":
        if len(ops) != 4:
            raise OperandMismatch(f"{entry.entry_id} expects four operands, got {len(ops)}")
        return QuadCtx(ops, settings)
    raise OperandMismatch(f"{entry.entry_id} cannot take {len(ops)} operands")


def _apply_param_overrides(settings: EvalSettings, t_grid=None, theta_grid=None) -> EvalSettings:
    updates = {}
    if t_grid is not None:
        closed = tuple(float(t) for t in t_grid)
        if any(not 0.0 <= t <= 1.0 for t in closed):
            raise OperandMismatch(f"t grid values must lie in [0,1], got {t_grid}")
        updates["t_grid_closed"] = closed
        updates["t_grid_aluthge"] = closed
        # entries dividing by min(t, 1-t) never see the endpoints
        updates["t_grid_open"] = tuple(t for t in closed if 0.0 < t < 1.0)
    if theta_grid is not None:
        m = int(theta_grid)
        if m < 1:
            raise OperandMismatch("theta grid must have at least one point")
        updates.update(
            theta_grid_e11=min(m, 16),
            theta_grid_e12=min(m, 64),
            theta_grid_e18=m,
            theta_grid_e30=m,
        )
    return dataclasses.replace(settings, **updates) if updates else settings


def evaluate(entry_id, operands, settings: EvalSettings | None = None, t_grid=None, theta_grid=None):
    """Evaluate one catalog entry; returns one report per grid point."""
    entry = get_entry(entry_id)
    s = _apply_param_overrides(settings or EvalSettings(), t_grid, theta_grid)
    ops = [as_operator(m) for m in operands]
    ctx = _make_ctx(entry, ops, s)
    digest = operand_digest(ops)
    norms = [float(np.linalg.svd(m, compute_uv=False)[0]) for m in ops]
    t0 = time.perf_counter()
    raws = entry.evaluator(ctx, s)
    elapsed = time.perf_counter() - t0
    return _finalize(entry_id, digest, raws, norms, s, elapsed)


def evaluate_all(operands, settings: EvalSettings | None = None, entries=None, t_grid=None, theta_grid=None):
    """Evaluate every compatible entry (optionally restricted) on the operands.

    One operand runs the single-operand entries; two run the pair entries,
    plus the positive-pair ones when both operands are positive; four run
    the quadruple entries.  Reports come back in catalog order.
    """
    ops = [as_operator(m) for m in operands]
    if len(ops) == 1:
        wanted = list(SINGLE_ENTRIES)
    elif len(ops) == 2:
        if ops[0].shape != ops[1].shape:
            raise OperandMismatch(
                f"pair operands must share dimensions, got {ops[0].shape} and {ops[1].shape}"
            )
        wanted = list(PAIR_ENTRIES)
        if _is_positive(ops[0]) and _is_positive(ops[1]):
            wanted = sorted(set(wanted) | set(POSITIVE_PAIR_ENTRIES))
    elif len(ops) == 4:
        dims = {m.shape[0] for m in ops}
        if len(dims) != 1:
            raise OperandMismatch(f"quadruple operands must share dimensions, got {sorted(dims)}")
        wanted = list(QUAD_ENTRIES)
    else:
        raise OperandMismatch(f"cannot dispatch {len(ops)} operands")
    if entries is not None:
        requested = list(entries)
        for e in requested:
            get_entry(e)
        wanted = [e for e in wanted if e in set(requested)]
    s = _apply_param_overrides(settings or EvalSettings(), t_grid, theta_grid)

    reports = []
    shared_ctx = {}
    digest = operand_digest(ops)
    norms = [float(np.linalg.svd(m, compute_uv=False)[0]) for m in ops]
    for entry_id in wanted:
        entry = get_entry(entry_id)
        key = entry.operand_kind if entry.operand_kind != "single_or_pair" else (
            "single" if len(ops) == 1 else "pair"
        )
        if key not in shared_ctx:
            if key == "single":
                shared_ctx[key] = SingleCtx(ops[0], s)
            elif key in ("pair", "pair_positive"):
                if "pair" in shared_ctx:
                    shared_ctx[key] = shared_ctx["pair"]
                else:
                    shared_ctx[key] = PairCtx(ops[0], ops[1], s)
            else:
                shared_ctx[key] = QuadCtx(ops, s)
        ctx = shared_ctx[key]
        t0 = time.perf_counter()
        raws = entry.evaluator(ctx, s)
        elapsed = time.perf_counter() - t0
        reports.extend(_finalize(entry_id, digest, raws, norms, s, elapsed))
    return reports
