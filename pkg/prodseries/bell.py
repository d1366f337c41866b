"""
Ordinary Bell polynomials and the alternating multinomial expansion.

Indexing: ``BellQuery(n, k, xs)`` is the classical B^_{n,k}(x_1, ..., x_{n-k+1}),
the coefficient of t^n in (x_1 t + x_2 t^2 + ...)^k. The product form of the
same number uses k identical factors with leading entry x_0 = x_1 and
shifted entries, so B^_{n,k} = B^_{(n-k)+k, k}(x_0, a_1, ..., a_{n-k}).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .cache import FormulaCache, cached_formula
from .combinatorics import EnumerationCaps
from .exceptions import InvalidArgumentError
from .rational import parse_rational
from .series import evaluate_formula, identical_rows_table

_LOGGER = logging.getLogger(__name__)


def _require_positive(value: object, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        msg = f"{name} must be a positive integer, got {value!r}"
        raise InvalidArgumentError(msg)
    return value


@dataclass(frozen=True)
class BellQuery:
    """B^_{n,k} at x_1..x_{n-k+1}."""

    n: int
    k: int
    xs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        """Check n >= k >= 1 and the number of arguments."""
        _require_positive(self.n, "n")
        _require_positive(self.k, "k")
        if self.k > self.n:
            msg = f"k={self.k} exceeds n={self.n}"
            raise InvalidArgumentError(msg)
        xs = tuple(parse_rational(x) for x in self.xs)
        if len(xs) != self.n - self.k + 1:
            msg = (
                f"B^_{{{self.n},{self.k}}} takes {self.n - self.k + 1} "
                f"arguments, got {len(xs)}"
            )
            raise InvalidArgumentError(msg)
        object.__setattr__(self, "xs", xs)


def _exponent_vectors(count: int, weight: int, slots: int) -> Iterator[list[int]]:
    # j_1..j_slots >= 0 with sum j_i = count and sum i * j_i = weight
    if slots == 0:
        if count == 0 and weight == 0:
            yield []
        return
    for j in range(min(count, weight // slots) + 1):
        for rest in _exponent_vectors(count - j, weight - slots * j, slots - 1):
            yield [*rest, j]


def bell_ordinary_direct(query: BellQuery) -> Fraction:
    """Sum k!/prod j_i! * prod x_i^j_i over the admissible exponent vectors."""
    total = Fraction(0)
    k_factorial = math.factorial(query.k)
    for exponents in _exponent_vectors(query.k, query.n, len(query.xs)):
        multinomial = k_factorial // math.prod(math.factorial(j) for j in exponents)
        total += multinomial * math.prod(
            (x**j for x, j in zip(query.xs, exponents, strict=True)),
            start=Fraction(1),
        )
    return total


def bell_via_main(
    k: int,
    n_rows: int,
    a: Sequence[Fraction | int | str],
    caps: EnumerationCaps | None = None,
    cache: FormulaCache | None = None,
) -> Fraction:
    """
    Return B^_{k+N,N}(1, a_1, ..., a_k) as X_k of N identical factors.

    Every row of the table is a_1..a_k, so the coefficient of t^k in
    (1 + a_1 t + ... + a_k t^k)^N is read off the main formula.
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        msg = f"k must be a non-negative integer, got {k!r}"
        raise InvalidArgumentError(msg)
    _require_positive(n_rows, "N")
    if len(a) != k:
        msg = f"Expected {k} entries a_1..a_{k}, got {len(a)}"
        raise InvalidArgumentError(msg)
    if k == 0:
        return Fraction(1)
    table = identical_rows_table(n_rows, a)
    return evaluate_formula(cached_formula(k, caps, cache), table)


def bell_general(
    n: int,
    k: int,
    x0: Fraction | int | str,
    xs: Sequence[Fraction | int | str],
    caps: EnumerationCaps | None = None,
    cache: FormulaCache | None = None,
) -> Fraction:
    """
    Return B^_{n,k}(x0, x_1, ..., x_{n-k}) through the product form.

    ``x0`` is the leading argument and ``xs`` the n - k after it. A zero x0
    factors t^k out of every factor, so the value is B^_{n-k,k}(x_1, ...)
    when n >= 2k and 0 below that. x0 = 1 is the main formula directly, and
    any other x0 is scaled out: x0^k times the value at (1, x_1/x0, ...).
    """
    _require_positive(n, "n")
    _require_positive(k, "k")
    if k > n:
        msg = f"k={k} exceeds n={n}"
        raise InvalidArgumentError(msg)
    x0 = parse_rational(x0)
    rest = tuple(parse_rational(x) for x in xs)
    if len(rest) != n - k:
        msg = f"Expected {n - k} arguments after x0, got {len(rest)}"
        raise InvalidArgumentError(msg)
    if n == k:
        return x0**k
    if x0 == 0:
        if n < 2 * k:
            return Fraction(0)
        return bell_general(n - k, k, rest[0], rest[1 : n - 2 * k + 1], caps, cache)
    if x0 == 1:
        return bell_via_main(n - k, k, rest, caps, cache)
    scaled = [x / x0 for x in rest]
    return x0**k * bell_via_main(n - k, k, scaled, caps, cache)


def multinomial_via_main(
    a: Sequence[Fraction | int | str],
    n_rows: int,
    caps: EnumerationCaps | None = None,
    cache: FormulaCache | None = None,
) -> Fraction:
    """
    Return (1 + a_1 + ... + a_alpha)^N as 1 + sum_k X_k.

    X_k is evaluated for every k up to alpha * N on N identical factors, so
    the largest formula needed is X_{alpha N}. Desk scale only.
    """
    _require_positive(n_rows, "N")
    if not a:
        msg = "Expected at least one entry a_1"
        raise InvalidArgumentError(msg)
    top = len(a) * n_rows
    table = identical_rows_table(n_rows, a, top)
    _LOGGER.debug("Multinomial expansion of %s factors up to X_%s", n_rows, top)
    total = Fraction(1)
    for k in range(1, top + 1):
        total += evaluate_formula(cached_formula(k, caps, cache), table)
    return total


def binomial_via_main(
    x: Fraction | int | str,
    n_rows: int,
    caps: EnumerationCaps | None = None,
    cache: FormulaCache | None = None,
) -> Fraction:
    """Return (1 + x)^N through the alternating expansion."""
    return multinomial_via_main([x], n_rows, caps, cache)
