"""Fault-tolerant conversion between QRM(m) and QRM(m+1), and its higher-order variant."""

from .extended import (
    COMMON_ROLES,
    EXTENDED_ROLES,
    ConversionPlan,
    ExtendedGeneratorSet,
    RecursiveASets,
    build_extended_set,
    conversion_plan,
    recursive_a_sets,
    superfluous_check,
    times,
)
from .higher_rank import (
    GaugeConflictError,
    convert_down_rank,
    convert_up_rank,
    gauge_code,
    higher_rank_conversion,
    logical_basis_state,
)
from .protocol import (
    BACKENDS,
    BackendError,
    ConversionReport,
    bloch,
    bridge_generators,
    convert_down,
    convert_up,
    encoded_state,
    fault_injection_sweep,
    logical_t_via_conversion,
    logical_y,
    prepare_bridge_state,
    same_output,
    uncorrectable_demo,
)
from .subsystem import SubsystemView, gauge_fix, randomize_gauge, subsystem_equivalence, subsystem_view

__all__ = [
    "BACKENDS",
    "BackendError",
    "COMMON_ROLES",
    "ConversionPlan",
    "ConversionReport",
    "EXTENDED_ROLES",
    "ExtendedGeneratorSet",
    "GaugeConflictError",
    "RecursiveASets",
    "SubsystemView",
    "bloch",
    "bridge_generators",
    "build_extended_set",
    "conversion_plan",
    "convert_down",
    "convert_down_rank",
    "convert_up",
    "convert_up_rank",
    "encoded_state",
    "fault_injection_sweep",
    "gauge_code",
    "gauge_fix",
    "higher_rank_conversion",
    "logical_basis_state",
    "logical_t_via_conversion",
    "logical_y",
    "prepare_bridge_state",
    "randomize_gauge",
    "recursive_a_sets",
    "same_output",
    "subsystem_equivalence",
    "subsystem_view",
    "superfluous_check",
    "times",
    "uncorrectable_demo",
]
