"""Finite-dimensional operator toolkit: numerical radius, norm inequalities,
block constructions, and a machine-checked catalog of radius/norm bounds."""

from .errors import (
    BadSpec,
    ConfigError,
    DimensionMismatch,
    DomainError,
    NotHermitian,
    NotPositive,
    OperandMismatch,
    ParseError,
    ToolkitError,
    UnknownEntry,
)
from .harness import CampaignConfig, CampaignReport, bounds_report, run_campaign, sweep_rows
from .numrange import (
    AngleSweep,
    fov_oracle,
    numerical_radius,
    operator_norm,
    rotated_real_norm,
    spectral_radius,
    sweep_many,
)
from .opcore import (
    HermEigResult,
    PolarResult,
    SvdResult,
    abs_op,
    adjoint,
    as_operator,
    frac_power,
    herm_eig,
    load_matrix,
    matrix_from_obj,
    matrix_to_obj,
    polar,
    psd_power,
    save_matrix,
    svd,
)
from .quadrature import (
    QuadResult,
    int_block_numrad,
    int_norm_segment,
    int_norm_segment_star,
    int_numrad_segment,
    int_numrad_segment_star,
    integrate01,
)
from .registry import (
    CAMPAIGN_SETTINGS,
    CheckReport,
    EvalSettings,
    InequalityEntry,
    catalog,
    evaluate,
    evaluate_all,
    operand_digest,
)
from .sampler import (
    FAMILIES,
    POSITIVE_FAMILIES,
    GaussianStream,
    SampleSpec,
    derive_seed,
    derive_seeds,
    sample,
    splitmix64_finalizer,
)
from .scalardist import ScalarDistResult, min_block_scalar_distance, min_scalar_distance
from .transforms import (
    BlockSpec,
    aluthge,
    full_block,
    imag_part,
    make_block,
    off_diag_block,
    real_part,
    rotate,
    segment,
)

__version__ = "0.1.0"
