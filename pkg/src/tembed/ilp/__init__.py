"""Exact 0-1 ILP machinery: model builder, LP file io, search kernels."""

from .lp_format import (
    LpFormatError,
    UnsupportedLpError,
    export_lp,
    parse_lp,
    read_lp,
    write_lp,
)
from .model import (
    EQ,
    GE,
    LE,
    IlpModel,
    MalformedModelError,
    ModelArrays,
    SolveOutcome,
    SolveStatus,
)
from .solve import LP_ROWS_MAX, lp_relaxation_bound, solve

__all__ = [
    "EQ",
    "GE",
    "LE",
    "LP_ROWS_MAX",
    "IlpModel",
    "LpFormatError",
    "MalformedModelError",
    "ModelArrays",
    "SolveOutcome",
    "SolveStatus",
    "UnsupportedLpError",
    "export_lp",
    "lp_relaxation_bound",
    "parse_lp",
    "read_lp",
    "solve",
    "write_lp",
]
