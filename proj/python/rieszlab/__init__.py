"""Generalized Riesz systems, frame operators and ladder operators."""

from ._rieszlab import (
    ParseError,
    RieszError,
    build_system,
    ccr_check,
    check_system,
    frame_operator,
    frame_operators,
    hermite,
    ladder_operators,
    omega,
    polar_decompose,
    report,
    run,
)

__all__ = [
    "ParseError",
    "RieszError",
    "build_system",
    "ccr_check",
    "check_system",
    "frame_operator",
    "frame_operators",
    "hermite",
    "ladder_operators",
    "omega",
    "polar_decompose",
    "report",
    "run",
]
