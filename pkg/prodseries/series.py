"""
Evaluation of forms and formulas on coefficient tables.

A SeriesTable holds the nonconstant coefficients a_{n,k} of N factors
1 + a_{n,1} x + ... + a_{n,K} x^K. Exact evaluation uses Fractions
throughout. The truncated product is the independent oracle: it multiplies
the factors directly and never touches the formula machinery.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np
import voluptuous as vol

from .combinatorics import Partition
from .exceptions import InvalidArgumentError, TableFormatError
from .formula import FormulaPolynomial
from .rational import format_rational, parse_rational

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeriesTable:
    """An N x K matrix of exact rationals; row n is factor n."""

    a: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        """Check the shape and convert the entries to Fractions."""
        rows = tuple(tuple(parse_rational(value) for value in row) for row in self.a)
        if not rows:
            msg = "A series table needs at least one row"
            raise InvalidArgumentError(msg)
        width = len(rows[0])
        if width < 1:
            msg = "A series table needs at least one column"
            raise InvalidArgumentError(msg)
        for index, row in enumerate(rows, start=1):
            if len(row) != width:
                msg = f"Row {index} has {len(row)} entries, expected {width}"
                raise InvalidArgumentError(msg)
        object.__setattr__(self, "a", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction | int | str]]) -> SeriesTable:
        """Build a table from nested sequences of rationals."""
        return cls(tuple(tuple(row) for row in rows))

    @property
    def N(self) -> int:
        """Return the number of factors."""
        return len(self.a)

    @property
    def K(self) -> int:
        """Return the truncation degree."""
        return len(self.a[0])

    def entry(self, n: int, k: int) -> Fraction:
        """Return a_{n,k} with 1-based indices."""
        if not (1 <= n <= self.N and 1 <= k <= self.K):
            msg = f"Entry ({n}, {k}) is outside a {self.N}x{self.K} table"
            raise InvalidArgumentError(msg)
        return self.a[n - 1][k - 1]

    def prefix(self, n: int) -> SeriesTable:
        """Return the table of the first n rows."""
        if not 1 <= n <= self.N:
            msg = f"Prefix length {n} is outside 1..{self.N}"
            raise InvalidArgumentError(msg)
        return SeriesTable(self.a[:n])

    def to_float_array(self) -> np.ndarray:
        """Return the entries as a float64 array."""
        return np.array([[float(value) for value in row] for row in self.a])


@dataclass(frozen=True)
class CoefficientVector:
    """The coefficients X_1..X_K of a product, indexed from 1."""

    values: tuple[Any, ...]

    @property
    def K(self) -> int:
        """Return the truncation degree."""
        return len(self.values)

    def coefficient(self, k: int) -> Any:
        """Return X_k; X_0 is the constant term 1."""
        if k == 0:
            return Fraction(1)
        return self[k]

    def __getitem__(self, k: int) -> Any:
        if not 1 <= k <= len(self.values):
            msg = f"X_{k} is outside 1..{len(self.values)}"
            raise InvalidArgumentError(msg)
        return self.values[k - 1]

    def __iter__(self) -> Iterator[Any]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


def identical_rows_table(
    n_rows: int,
    row: Sequence[Fraction | int | str],
    width: int | None = None,
) -> SeriesTable:
    """Return N copies of one row, padded with zeros to ``width`` columns."""
    if n_rows < 1:
        msg = f"N must be a positive integer, got {n_rows!r}"
        raise InvalidArgumentError(msg)
    width = len(row) if width is None else width
    if width < len(row):
        msg = f"Width {width} is narrower than the row ({len(row)} entries)"
        raise InvalidArgumentError(msg)
    padded = tuple(parse_rational(value) for value in row) + (Fraction(0),) * (
        width - len(row)
    )
    return SeriesTable((padded,) * n_rows)


def binomial_table(n_rows: int, x: Fraction | int | str, width: int) -> SeriesTable:
    """Return N factors 1 + x t, as a table of the given width."""
    return identical_rows_table(n_rows, [x], width)


def _check_parts(partition: Partition, table: SeriesTable) -> None:
    if partition.parts and partition.parts[-1] > table.K:
        msg = (
            f"Part {partition.parts[-1]} of {partition} exceeds the table "
            f"truncation K={table.K}"
        )
        raise InvalidArgumentError(msg)


def evaluate_form(partition: Partition, table: SeriesTable) -> Fraction:
    """Return S[L] = sum_n prod_j a_{n, L_j} exactly."""
    _check_parts(partition, table)
    columns = [part - 1 for part in partition.parts]
    return sum(
        (math.prod((row[c] for c in columns), start=Fraction(1)) for row in table.a),
        start=Fraction(0),
    )


def evaluate_formula(polynomial: FormulaPolynomial, table: SeriesTable) -> Fraction:
    """Return the exact value of a formula on a table."""
    forms: dict[Partition, Fraction] = {}
    total = Fraction(0)
    for key, coefficient in polynomial.terms.items():
        value = coefficient
        for factor in key.factors:
            if factor not in forms:
                forms[factor] = evaluate_form(factor, table)
            value *= forms[factor]
        total += value
    return total


def evaluate_formula_float(
    polynomial: FormulaPolynomial,
    rows: SeriesTable | np.ndarray,
) -> float:
    """
    Return the value of a formula in float64.

    Each generating form is reduced over rows with numpy's pairwise sum; the
    terms are then combined with ``math.fsum``.
    """
    array = rows.to_float_array() if isinstance(rows, SeriesTable) else rows
    if array.ndim != 2:
        msg = f"Expected an N x K array, got shape {array.shape}"
        raise InvalidArgumentError(msg)
    forms: dict[Partition, float] = {}
    terms: list[float] = []
    for key, coefficient in polynomial.terms.items():
        value = float(coefficient)
        for factor in key.factors:
            if factor not in forms:
                if factor.parts[-1] > array.shape[1]:
                    msg = f"Part {factor.parts[-1]} exceeds K={array.shape[1]}"
                    raise InvalidArgumentError(msg)
                columns = [part - 1 for part in factor.parts]
                forms[factor] = float(np.prod(array[:, columns], axis=1).sum())
            value *= forms[factor]
        terms.append(value)
    return math.fsum(terms)


def truncated_product(table: SeriesTable, degree: int) -> CoefficientVector:
    """Multiply the factors directly, dropping powers above ``degree``."""
    if isinstance(degree, bool) or not isinstance(degree, int) or degree < 1:
        msg = f"K must be a positive integer, got {degree!r}"
        raise InvalidArgumentError(msg)
    if degree > table.K:
        msg = f"Requested K={degree} but the table only holds K={table.K}"
        raise InvalidArgumentError(msg)
    product = [Fraction(1)] + [Fraction(0)] * degree
    for row in table.a:
        factor = [Fraction(1), *row[:degree]]
        # descending so lower coefficients are still the previous product
        for target in range(degree, 0, -1):
            product[target] = sum(
                (product[target - j] * factor[j] for j in range(target + 1)),
                start=Fraction(0),
            )
    return CoefficientVector(tuple(product[1:]))


def distinct_sum_bruteforce(partition: Partition, table: SeriesTable) -> Fraction:
    """Sum prod_j a_{n_j, L_j} over pairwise distinct row tuples."""
    _check_parts(partition, table)
    parts = partition.parts
    total = Fraction(0)
    for rows in itertools.permutations(range(table.N), len(parts)):
        total += math.prod(
            (table.a[n][part - 1] for n, part in zip(rows, parts, strict=True)),
            start=Fraction(1),
        )
    return total


def sorted_distinct_sum_bruteforce(partition: Partition, table: SeriesTable) -> Fraction:
    """Sum over increasing row tuples and over every distinct ordering of L."""
    _check_parts(partition, table)
    orderings = sorted(set(itertools.permutations(partition.parts)))
    total = Fraction(0)
    for rows in itertools.combinations(range(table.N), len(partition.parts)):
        for parts in orderings:
            total += math.prod(
                (table.a[n][part - 1] for n, part in zip(rows, parts, strict=True)),
                start=Fraction(1),
            )
    return total


def _positive_int(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        msg = f"expected a positive integer, got {value!r}"
        raise vol.Invalid(msg)
    return value


TABLE_SCHEMA = vol.Schema(
    {
        vol.Required("N"): _positive_int,
        vol.Required("K"): _positive_int,
        vol.Required("a"): [list],
    }
)


def table_from_json(text: str) -> SeriesTable:
    """
    Read a SeriesTable from ``{"N": .., "K": .., "a": [["p/q", ..], ..]}``.

    Entries are strings "p/q" or integers. Floats are rejected. Errors carry
    the source line and column for syntax problems and the 1-based row and
    column for bad entries.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as err:
        msg = f"Malformed table JSON: {err.msg}"
        raise TableFormatError(msg, line=err.lineno, column=err.colno) from err
    try:
        payload = TABLE_SCHEMA(payload)
    except vol.Invalid as err:
        msg = f"Invalid table JSON: {err}"
        raise TableFormatError(msg) from err

    n_rows, width, raw_rows = payload["N"], payload["K"], payload["a"]
    if len(raw_rows) != n_rows:
        msg = f"Table declares N={n_rows} but holds {len(raw_rows)} rows"
        raise TableFormatError(msg)
    rows: list[tuple[Fraction, ...]] = []
    for n, raw_row in enumerate(raw_rows, start=1):
        if len(raw_row) != width:
            msg = f"Row holds {len(raw_row)} entries, expected K={width}"
            raise TableFormatError(msg, row=n)
        row = []
        for k, value in enumerate(raw_row, start=1):
            if not isinstance(value, (int, str)) or isinstance(value, bool):
                msg = f"Entry must be a string 'p/q' or an integer, got {value!r}"
                raise TableFormatError(msg, row=n, column=k)
            try:
                row.append(parse_rational(value))
            except InvalidArgumentError as err:
                raise TableFormatError(str(err), row=n, column=k) from err
        rows.append(tuple(row))
    table = SeriesTable(tuple(rows))
    _LOGGER.debug("Read a %sx%s series table", table.N, table.K)
    return table


def table_to_json(table: SeriesTable) -> str:
    """Write a table in the format read by ``table_from_json``."""
    return json.dumps(
        {
            "N": table.N,
            "K": table.K,
            "a": [[format_rational(value) for value in row] for row in table.a],
        },
        separators=(",", ":"),
    )
