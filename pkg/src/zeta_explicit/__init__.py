"""High-precision evaluation and cross-checking of explicit-formula
identities, zeta-zero sums, and special-constant identities.

Modules:
  mpcore    precision contexts, Gamma, Hurwitz zeta, formal Laurent series
  arith     von Mangoldt sieve, weighted prime-power sums, Kronecker
            characters, imaginary-quadratic class data
  zeros     zero-table ingestion, zero sums, tail estimates
  explicit  explicit-formula right-hand sides and identity checks
  liconst   Stieltjes constants, eta constants, Li coefficients
  analysis  sign-change zero finder, Dirichlet L values, Chowla-Selberg
  cli       command-line interface
"""

from .analysis import (
    chowla_selberg_check,
    class_number_check,
    find_zeros_gt1,
    find_zeros_lt1,
)
from .explicit import (
    descriptor_dirichlet,
    descriptor_zeta,
    f_rhs_gt1,
    f_rhs_lt1,
    partial_fractions,
    verify_identity,
)
from .liconst import (
    build_stieltjes_table,
    lambda_direct,
    li_lambda_identity,
    rh_statistic,
    stieltjes,
)
from .mpcore import (
    FormalSeries,
    HComplex,
    HReal,
    PrecisionContext,
    gamma_fn,
    hurwitz_zeta,
    series_ops,
    zeta_int,
)
from .zeros import (
    SumSpec,
    ZeroTable,
    fixture_table,
    load_zeros,
    sum_inv_rho,
)

__version__ = "0.1.0"

__all__ = [
    "FormalSeries",
    "HComplex",
    "HReal",
    "PrecisionContext",
    "SumSpec",
    "ZeroTable",
    "build_stieltjes_table",
    "chowla_selberg_check",
    "class_number_check",
    "descriptor_dirichlet",
    "descriptor_zeta",
    "f_rhs_gt1",
    "f_rhs_lt1",
    "find_zeros_gt1",
    "find_zeros_lt1",
    "fixture_table",
    "gamma_fn",
    "hurwitz_zeta",
    "lambda_direct",
    "li_lambda_identity",
    "load_zeros",
    "partial_fractions",
    "rh_statistic",
    "series_ops",
    "stieltjes",
    "sum_inv_rho",
    "verify_identity",
    "zeta_int",
    "__version__",
]
