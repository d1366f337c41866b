"""Exact coefficients of products of power series with constant term 1."""

from .bell import (
    BellQuery,
    bell_general,
    bell_ordinary_direct,
    bell_via_main,
    binomial_via_main,
    multinomial_via_main,
)
from .cache import FormulaCache
from .combinatorics import EnumerationCaps, Partition, Permutation, partitions_of
from .convergence import truncation_sequence
from .exceptions import (
    InvalidArgumentError,
    ProdSeriesError,
    ResourceLimitError,
    TableFormatError,
)
from .formula import (
    FormulaPolynomial,
    TermKey,
    distinct_index_formula,
    formula,
    symmetrized_formula,
    xk_formula,
    xk_formula_collapsed,
)
from .render import render
from .series import SeriesTable, evaluate_formula, truncated_product

__version__ = "0.1.0"

__all__ = [
    "BellQuery",
    "EnumerationCaps",
    "FormulaCache",
    "FormulaPolynomial",
    "InvalidArgumentError",
    "Partition",
    "Permutation",
    "ProdSeriesError",
    "ResourceLimitError",
    "SeriesTable",
    "TableFormatError",
    "TermKey",
    "__version__",
    "bell_general",
    "bell_ordinary_direct",
    "bell_via_main",
    "binomial_via_main",
    "distinct_index_formula",
    "evaluate_formula",
    "formula",
    "multinomial_via_main",
    "partitions_of",
    "render",
    "symmetrized_formula",
    "truncated_product",
    "truncation_sequence",
    "xk_formula",
    "xk_formula_collapsed",
]
