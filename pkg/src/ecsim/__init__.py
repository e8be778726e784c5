"""Two-mode truncated Fock-space simulator for post-selected weak
measurements on entangled coherent states, with non-classicality and
metrology diagnostics and a deterministic sweep CLI."""

__version__ = "0.1.0"

from .config import RangeSpec, WeakMeasurementConfig, default_config
from .errors import (
    DegeneratePostSelectionError,
    NumericalRangeError,
    TruncationWarning,
)
from .fock import (
    FockCutoff,
    ModeOperator,
    TwoModeState,
    annihilation_matrix,
    apply_annihilation,
    apply_creation,
    apply_to_mode,
    coherent_column,
    creation_matrix,
    displacement_matrix,
    embed,
    expectation,
    identity_matrix,
    inner,
    norm,
    normalize,
    number_matrix,
    parity_matrix,
    tail_mass,
    unitarity_defect,
    vacuum,
)
from .measurement import (
    CouplingParams,
    EcsParams,
    PostSelectedOutcome,
    WeakValueParams,
    build_ecs,
    build_pointer_state,
    fix_global_phase,
    meter_overlap,
    unnormalized_pointer_state,
    weak_value_x,
    weak_value_y,
)
from .observables import (
    MetrologyReport,
    SqueezingReport,
    WignerGrid,
    hz_correlation,
    joint_wigner_grid,
    joint_wigner_point,
    qcrb,
    qfi_analytic,
    qfi_finite_difference,
    qfi_from_family,
    squeezing_report,
    sum_squeezing_direct,
    sum_squeezing_normal_ordered,
)

__all__ = [
    "__version__",
    "CouplingParams",
    "DegeneratePostSelectionError",
    "EcsParams",
    "FockCutoff",
    "MetrologyReport",
    "ModeOperator",
    "NumericalRangeError",
    "PostSelectedOutcome",
    "RangeSpec",
    "SqueezingReport",
    "TruncationWarning",
    "TwoModeState",
    "WeakMeasurementConfig",
    "WeakValueParams",
    "WignerGrid",
    "annihilation_matrix",
    "apply_annihilation",
    "apply_creation",
    "apply_to_mode",
    "build_ecs",
    "build_pointer_state",
    "coherent_column",
    "creation_matrix",
    "default_config",
    "displacement_matrix",
    "embed",
    "expectation",
    "fix_global_phase",
    "hz_correlation",
    "identity_matrix",
    "inner",
    "joint_wigner_grid",
    "joint_wigner_point",
    "meter_overlap",
    "norm",
    "normalize",
    "number_matrix",
    "parity_matrix",
    "qcrb",
    "qfi_analytic",
    "qfi_finite_difference",
    "qfi_from_family",
    "squeezing_report",
    "sum_squeezing_direct",
    "sum_squeezing_normal_ordered",
    "tail_mass",
    "unitarity_defect",
    "unnormalized_pointer_state",
    "vacuum",
    "weak_value_x",
    "weak_value_y",
]
