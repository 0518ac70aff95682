"""Numerics for time-frequency norms and oscillatory integral operators.

The package samples functions on uniform symmetric grids, computes
short-time Fourier transforms and the modulation-type norms built from
them, applies operators defined by a symbol and a phase, and runs
threshold experiments that compare measured norm growth with predicted
boundedness regions.
"""

from .errors import (
    DomainError,
    FiolabError,
    ResourceError,
    StructuralError,
    ValidationError,
)
from .experiments import (
    ExperimentRow,
    SweepTuple,
    emit_report,
    estimate_operator_ratio,
    fast_modulation_norms,
    render_report_svg,
    rows_from_csv,
    rows_to_csv,
    thm1_default_tuples,
    thm2_default_tuples,
    thm3_default_tuples,
    threshold_sweep,
)
from .extremal import (
    Bump,
    CoefficientSeq,
    annulus_profile,
    build_F,
    build_G,
    build_chirp_train,
    build_modulated_train,
    chirp_modulate,
    decay_grid,
    default_bump,
    default_dispersive_grid,
    dispersive_sup,
    high_growth_decay,
)
from .fio import (
    BANDLIMIT_TOL,
    SymbolSpec,
    apply_fio,
    apply_kernel,
    apply_multiplier,
    bandlimit_leakage,
    constant_symbol,
    decaying_symbol,
    ensure_bandlimited,
    kernel,
    make_symbol,
    weak_pairing,
)
from .grid import (
    Grid,
    SampledFunction,
    SampledFunction2D,
    default_grid,
    dilate2,
    fourier_transform,
    inner,
    inverse_fourier_transform,
    sampled_from_csv,
    sampled_to_csv,
    translate_modulate,
)
from .phase import (
    ConditionVerdict,
    GrowthParams,
    PartitionSpec,
    PhaseSpec,
    bilinear,
    bracket_power,
    check_phase,
    high_growth,
    k_alpha,
    make_phase,
    mild_growth,
    mollifier,
    mu_gradient,
    nonseparated_x,
    nonseparated_xi,
    separable_phase,
    separation_margin,
    sep_deviation,
    taylor_remainder,
    verify_growth,
    verify_separation,
)
from .spaces import (
    INF,
    MixedSpec,
    SpaceSpec,
    Weight,
    amalgam_norm,
    bracket,
    embedding_holds,
    embedding_witness,
    mixed_modulation_norm,
    mixed_norm,
    modulation_norm,
    sequence_norm,
    special_amalgam_norm,
    stft_norms,
    thm1_predicate,
    thm2_predicate,
    thm3_predicate,
)
from .tf import (
    DEFAULT_WINDOW,
    TFMatrix,
    TFMatrix4,
    fundamental_identity_residual,
    make_window,
    stft,
    stft4,
    tf4_to_csv,
    tf_from_csv,
    tf_to_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BANDLIMIT_TOL",
    "Bump",
    "CoefficientSeq",
    "ConditionVerdict",
    "DEFAULT_WINDOW",
    "DomainError",
    "ExperimentRow",
    "FiolabError",
    "Grid",
    "GrowthParams",
    "INF",
    "MixedSpec",
    "PartitionSpec",
    "PhaseSpec",
    "ResourceError",
    "SampledFunction",
    "SampledFunction2D",
    "SpaceSpec",
    "StructuralError",
    "SweepTuple",
    "SymbolSpec",
    "TFMatrix",
    "TFMatrix4",
    "ValidationError",
    "Weight",
    "amalgam_norm",
    "annulus_profile",
    "apply_fio",
    "apply_kernel",
    "apply_multiplier",
    "bandlimit_leakage",
    "bilinear",
    "bracket",
    "bracket_power",
    "build_F",
    "build_G",
    "build_chirp_train",
    "build_modulated_train",
    "check_phase",
    "chirp_modulate",
    "constant_symbol",
    "decay_grid",
    "decaying_symbol",
    "default_bump",
    "default_dispersive_grid",
    "default_grid",
    "dilate2",
    "dispersive_sup",
    "embedding_holds",
    "embedding_witness",
    "emit_report",
    "ensure_bandlimited",
    "estimate_operator_ratio",
    "fast_modulation_norms",
    "fourier_transform",
    "fundamental_identity_residual",
    "high_growth",
    "high_growth_decay",
    "inner",
    "inverse_fourier_transform",
    "k_alpha",
    "kernel",
    "make_phase",
    "make_symbol",
    "make_window",
    "mild_growth",
    "mixed_modulation_norm",
    "mixed_norm",
    "modulation_norm",
    "mollifier",
    "mu_gradient",
    "nonseparated_x",
    "nonseparated_xi",
    "render_report_svg",
    "rows_from_csv",
    "rows_to_csv",
    "sampled_from_csv",
    "sampled_to_csv",
    "sep_deviation",
    "separable_phase",
    "separation_margin",
    "sequence_norm",
    "special_amalgam_norm",
    "stft",
    "stft4",
    "stft_norms",
    "taylor_remainder",
    "tf4_to_csv",
    "tf_from_csv",
    "tf_to_csv",
    "thm1_default_tuples",
    "thm1_predicate",
    "thm2_default_tuples",
    "thm2_predicate",
    "thm3_default_tuples",
    "thm3_predicate",
    "threshold_sweep",
    "translate_modulate",
    "verify_growth",
    "verify_separation",
    "weak_pairing",
]
