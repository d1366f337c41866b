"""
Truncation runs: X_k of the product of the first N factors, as N grows.

Rows come from named generators. Each generator gives a float column
function (vectorized over row indices) and, where the entries are rational,
an exact entry function.
"""

from __future__ import annotations

import asyncio
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

import numpy as np

from .cache import FormulaCache, cached_formula
from .combinatorics import EnumerationCaps
from .const import (
    GEN_ALT_QUARTIC,
    GEN_BINOMIAL,
    GEN_EULER,
    GEN_GEOMETRIC,
    GEN_ZERO,
    GENERATORS,
    MODE_EXACT,
    MODE_FLOAT,
    MODES,
    PARAMETRIC_GENERATORS,
)
from .exceptions import InvalidArgumentError
from .formula import FormulaPolynomial
from .rational import parse_rational
from .series import SeriesTable, evaluate_formula, evaluate_formula_float

_LOGGER = logging.getLogger(__name__)

ExactEntry = Callable[[int, int], Fraction]
FloatColumn = Callable[[np.ndarray, int], np.ndarray]


@dataclass(frozen=True)
class RowGenerator:
    """A named rule producing a_{n,k} for every row n and column k."""

    name: str
    column: FloatColumn
    exact: ExactEntry | None = None

    def float_rows(self, n_rows: int, width: int) -> np.ndarray:
        """Return rows 1..n_rows as an n_rows x width float64 array."""
        indices = np.arange(1, n_rows + 1, dtype=np.float64)
        array = np.empty((n_rows, width), dtype=np.float64)
        for k in range(1, width + 1):
            array[:, k - 1] = self.column(indices, k)
        return array

    def exact_table(self, n_rows: int, width: int) -> SeriesTable:
        """Return rows 1..n_rows as an exact table."""
        if self.exact is None:
            msg = f"Generator {self.name!r} has irrational entries; use float mode"
            raise InvalidArgumentError(msg)
        return SeriesTable(
            tuple(
                tuple(self.exact(n, k) for k in range(1, width + 1))
                for n in range(1, n_rows + 1)
            )
        )


def _alt_quartic_column(indices: np.ndarray, k: int) -> np.ndarray:
    # (-1)^(nk) / (k! n^(k/4)) == ((-1)^n n^(-1/4))^k / k!
    base = np.where(indices % 2 == 0, 1.0, -1.0) * indices**-0.25
    return base**k / math.factorial(k)


def _euler_column(indices: np.ndarray, k: int) -> np.ndarray:
    return np.where(indices == k, -1.0, 0.0)


def _zero_column(indices: np.ndarray, k: int) -> np.ndarray:
    return np.zeros_like(indices)


def resolve_generator(label: str) -> RowGenerator:
    """
    Return the generator named by ``label``.

    Names: ``alt_quartic``, ``euler``, ``zero``, ``geometric:x`` and
    ``binomial:x`` where x is a rational such as ``1/2``.
    """
    name, _, argument = label.partition(":")
    x = Fraction(0)
    if name not in GENERATORS:
        msg = f"Unknown generator {label!r}, expected one of {GENERATORS}"
        raise InvalidArgumentError(msg)
    if name in PARAMETRIC_GENERATORS:
        if not argument:
            msg = f"Generator {name!r} needs a parameter, e.g. '{name}:1/2'"
            raise InvalidArgumentError(msg)
        x = parse_rational(argument)
    elif argument:
        msg = f"Generator {name!r} takes no parameter"
        raise InvalidArgumentError(msg)

    if name == GEN_ALT_QUARTIC:
        return RowGenerator(name, _alt_quartic_column)
    if name == GEN_EULER:
        return RowGenerator(
            name, _euler_column, lambda n, k: Fraction(-1 if n == k else 0)
        )
    if name == GEN_ZERO:
        return RowGenerator(name, _zero_column, lambda _n, _k: Fraction(0))
    if name == GEN_GEOMETRIC:
        return RowGenerator(
            label,
            lambda indices, k: np.full_like(indices, float(x) ** k),
            lambda _n, k: x**k,
        )
    if name == GEN_BINOMIAL:
        return RowGenerator(
            label,
            lambda indices, k: np.full_like(indices, float(x) if k == 1 else 0.0),
            lambda _n, k: x if k == 1 else Fraction(0),
        )
    msg = f"Generator {name!r} is not implemented"
    raise InvalidArgumentError(msg)


def _check_request(k: int, sizes: Sequence[int], mode: str) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        msg = f"k must be a non-negative integer, got {k!r}"
        raise InvalidArgumentError(msg)
    if mode not in MODES:
        msg = f"Unknown mode {mode!r}, expected one of {MODES}"
        raise InvalidArgumentError(msg)
    for size in sizes:
        if isinstance(size, bool) or not isinstance(size, int) or size < 1:
            msg = f"Row counts must be positive integers, got {size!r}"
            raise InvalidArgumentError(msg)


@dataclass(frozen=True)
class _TruncationRun:
    polynomial: FormulaPolynomial
    rows: np.ndarray | SeriesTable

    def value_at(self, size: int) -> float | Fraction:
        if isinstance(self.rows, SeriesTable):
            return evaluate_formula(self.polynomial, self.rows.prefix(size))
        return evaluate_formula_float(self.polynomial, self.rows[:size])


def _prepare(
    generator: RowGenerator | str,
    k: int,
    sizes: Sequence[int],
    mode: str,
    caps: EnumerationCaps | None,
    cache: FormulaCache | None,
) -> _TruncationRun:
    if isinstance(generator, str):
        generator = resolve_generator(generator)
    polynomial = cached_formula(k, caps, cache)
    largest = max(sizes)
    rows = (
        generator.exact_table(largest, k)
        if mode == MODE_EXACT
        else generator.float_rows(largest, k)
    )
    _LOGGER.debug(
        "Truncation run of X_%s for %s up to N=%s in %s mode",
        k,
        generator.name,
        largest,
        mode,
    )
    return _TruncationRun(polynomial, rows)


def _constant_term(sizes: Sequence[int], mode: str) -> list[float | Fraction]:
    one: float | Fraction = Fraction(1) if mode == MODE_EXACT else 1.0
    return [one] * len(sizes)


def truncation_sequence(
    generator: RowGenerator | str,
    k: int,
    sizes: Sequence[int],
    *,
    mode: str = MODE_FLOAT,
    caps: EnumerationCaps | None = None,
    cache: FormulaCache | None = None,
) -> list[float | Fraction]:
    """Return X_k of the first N rows for each N in ``sizes``."""
    if isinstance(generator, str):
        generator = resolve_generator(generator)
    _check_request(k, sizes, mode)
    if k == 0 or not sizes:
        return _constant_term(sizes, mode)
    run = _prepare(generator, k, sizes, mode, caps, cache)
    return [run.value_at(size) for size in sizes]


async def async_truncation_sequence(
    generator: RowGenerator | str,
    k: int,
    sizes: Sequence[int],
    *,
    mode: str = MODE_FLOAT,
    caps: EnumerationCaps | None = None,
    cache: FormulaCache | None = None,
) -> list[float | Fraction]:
    """Evaluate each N in the default executor and gather in order."""
    if isinstance(generator, str):
        generator = resolve_generator(generator)
    _check_request(k, sizes, mode)
    if k == 0 or not sizes:
        return _constant_term(sizes, mode)
    loop = asyncio.get_running_loop()
    run = await loop.run_in_executor(
        None, partial(_prepare, generator, k, sizes, mode, caps, cache)
    )
    return list(
        await asyncio.gather(
            *(loop.run_in_executor(None, run.value_at, size) for size in sizes)
        )
    )


def averaged_tail_estimate(values: Sequence[float | Fraction]) -> float:
    """
    Return the mean of the last two values of a truncation sequence.

    For alternating generators consecutive truncations straddle the limit,
    so the mean is a better guess than either. No error bound is attached.
    """
    if len(values) < 2:
        msg = "The averaged tail estimate needs at least two values"
        raise InvalidArgumentError(msg)
    estimate = (float(values[-1]) + float(values[-2])) / 2
    _LOGGER.warning("Averaged tail estimate %.12g is heuristic", estimate)
    return estimate


def alternating_limit(terms: Sequence[float] | np.ndarray, depth: int = 40) -> float:
    """
    Return the sum of an alternating series from its leading terms.

    The partial sums are averaged pairwise ``depth`` times; each pass cancels
    the leading oscillation of the previous one.
    """
    partial_sums = np.cumsum(np.asarray(terms, dtype=np.float64))
    if depth < 0 or depth >= len(partial_sums):
        msg = f"Depth must be in 0..{len(partial_sums) - 1}, got {depth}"
        raise InvalidArgumentError(msg)
    for _ in range(depth):
        partial_sums = (partial_sums[:-1] + partial_sums[1:]) / 2
    return float(partial_sums[-1])
