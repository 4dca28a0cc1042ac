"""Variable-exponent fractional p-Laplacian toolkit."""

from ._core import (
    ConditionReport,
    DeGiorgiResult,
    Error,
    ExponentField,
    Grid,
    GridSpec,
    HolderFit,
    NonlocalProblem,
    NormResult,
    SolveResult,
    TailResult,
    TailSign,
    algebraic_inequality_holds,
    check_log_holder,
    check_P1,
    check_P2,
    degiorgi_iterate,
    gagliardo_modular,
    holder_exponent_fit,
    lebesgue_modular,
    lebesgue_norm,
    minimize,
    sobolev_seminorm,
)

__all__ = [name for name in dir() if not name.startswith("_")]
