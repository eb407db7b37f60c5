"""Low-rank CUR approximation of truncated bivariate Fourier series."""

from fourcur._core import (
    CapacityError,
    CoeffOracle,
    CurModel,
    EvalGrid,
    IoError,
    NumericDomainError,
    NumericFailure,
    Quad1D,
    RunStats,
    algorithm1,
    algorithm2,
    algorithm_c1,
    cur_fixed,
    estimate_orders,
    eval_cur,
    eval_truncated,
    index_band,
    integrate2d,
    l2_gap,
    linspace_grid,
    make_rule,
    maxvol_bruteforce,
    norm,
    pinv,
    registered_functions,
    sigma_min,
    svd,
    test_function,
    volume,
)

__all__ = [
    "CapacityError",
    "CoeffOracle",
    "CurModel",
    "EvalGrid",
    "IoError",
    "NumericDomainError",
    "NumericFailure",
    "Quad1D",
    "RunStats",
    "algorithm1",
    "algorithm2",
    "algorithm_c1",
    "cur_fixed",
    "estimate_orders",
    "eval_cur",
    "eval_truncated",
    "index_band",
    "integrate2d",
    "l2_gap",
    "linspace_grid",
    "make_rule",
    "maxvol_bruteforce",
    "norm",
    "pinv",
    "registered_functions",
    "sigma_min",
    "svd",
    "test_function",
    "volume",
]
