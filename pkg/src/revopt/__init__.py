"""Quantum-cost optimization of reversible circuits built from
multiple-control Toffoli gates with positive and negative controls."""

from .core import (
    MAX_SIM_WIDTH,
    Circuit,
    Control,
    Gate,
    Polarity,
    WidthLimitError,
    WidthMismatchError,
    apply_gate,
    commutes,
    equivalent,
    gate_fires,
    matches_spec,
    mct,
    same_function,
    simulate,
)
from .cost import circuit_cost, gate_cost
from .ctr import (
    Cover,
    Cube,
    Kmap,
    Window,
    build_kmap,
    cover_to_gates,
    ctr_optimize,
    extract_windows,
    minimize_cover,
)
from .io import ParseError, parse_circuit, parse_spec, write_circuit
from .pipeline import (
    OptimizeConfig,
    OptimizeReport,
    improvement_percent,
    improvement_percent_rounded,
    optimize,
)
from .rules import (
    RewriteResult,
    apply_gpr,
    apply_rctr,
    apply_rewrite,
    cancel_not_pairs,
    pass_not,
    try_delete,
    try_move,
)

__all__ = [
    "MAX_SIM_WIDTH",
    "Circuit",
    "Control",
    "Cover",
    "Cube",
    "Gate",
    "Kmap",
    "OptimizeConfig",
    "OptimizeReport",
    "ParseError",
    "Polarity",
    "RewriteResult",
    "WidthLimitError",
    "WidthMismatchError",
    "Window",
    "apply_gate",
    "apply_gpr",
    "apply_rctr",
    "apply_rewrite",
    "build_kmap",
    "cancel_not_pairs",
    "circuit_cost",
    "commutes",
    "cover_to_gates",
    "ctr_optimize",
    "equivalent",
    "extract_windows",
    "gate_cost",
    "gate_fires",
    "improvement_percent",
    "improvement_percent_rounded",
    "matches_spec",
    "mct",
    "minimize_cover",
    "optimize",
    "parse_circuit",
    "parse_spec",
    "pass_not",
    "same_function",
    "simulate",
    "try_delete",
    "try_move",
    "write_circuit",
]
