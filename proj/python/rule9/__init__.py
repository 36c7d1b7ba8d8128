"""Rule 9 (narrow channel) applicability assessment."""

from ._core import (
    KNOT,
    IoError,
    ParseError,
    ProtocolError,
    Rule9Error,
    ValidationError,
    ais_stats,
    assess,
    classify_encounter,
    collision_risk,
    cpa,
    estimate_swing_rate,
    feasible_overlay,
    g_d_dot,
    g_d_is_nonblocking,
    project_arc,
    run_g_d,
    scaled_swing_rate,
    simulate,
    swing_rate,
    turning_circles,
)

__all__ = [
    "KNOT",
    "IoError",
    "ParseError",
    "ProtocolError",
    "Rule9Error",
    "ValidationError",
    "ais_stats",
    "assess",
    "classify_encounter",
    "collision_risk",
    "cpa",
    "estimate_swing_rate",
    "feasible_overlay",
    "g_d_dot",
    "g_d_is_nonblocking",
    "project_arc",
    "run_g_d",
    "scaled_swing_rate",
    "simulate",
    "swing_rate",
    "turning_circles",
]
