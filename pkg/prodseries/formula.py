"""
Symbolic construction of the coefficient formula X_k.

A formula is a polynomial with exact rational coefficients over the
generating forms S[L] = sum_n prod_j a_{n, L_j}. A monomial is a TermKey: a
multiset of partitions, one generating form per factor.

X_k is built as the sum over L |- k of a signed sum over the permutations of
L's positions, grouped by cycles. The collapsed path re-indexes that sum by
set partitions, weighting a block of size s by (-1)^(s-1) (s-1)!.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType

from .combinatorics import (
    DEFAULT_CAPS,
    EnumerationCaps,
    Partition,
    Permutation,
    cycles_of_images,
    partition_number,
    partitions_of,
    permutations_of,
    restricted_growth_strings,
    sign,
    stabilizer_count,
)
from .const import (
    METHOD_AUTO,
    METHOD_COLLAPSED,
    METHOD_PERMUTATION,
    METHODS,
    PROVENANCE_DISTINCT,
    PROVENANCE_SYMMETRIZED,
    PROVENANCE_XK,
    PROVENANCE_XK_COLLAPSED,
)
from .exceptions import InvalidArgumentError, ResourceLimitError

_LOGGER = logging.getLogger(__name__)

# Raw keys used inside the enumeration loops: sorted tuples of sorted parts
RawKey = tuple[tuple[int, ...], ...]


def _block_order(block: tuple[int, ...]) -> tuple[int, int, tuple[int, ...]]:
    return (sum(block), len(block), block)


def _canonical(blocks: Iterable[tuple[int, ...]]) -> RawKey:
    return tuple(sorted(blocks, key=_block_order))


@dataclass(frozen=True, slots=True)
class TermKey:
    """A monomial over the generating forms, as a multiset of partitions."""

    factors: tuple[Partition, ...]

    def __post_init__(self) -> None:
        """Canonicalize the factor order."""
        factors = tuple(self.factors)
        if not factors:
            msg = "A term key needs at least one factor"
            raise InvalidArgumentError(msg)
        for factor in factors:
            if not isinstance(factor, Partition) or not factor.parts:
                msg = f"Term key factors must be non-empty partitions: {factors!r}"
                raise InvalidArgumentError(msg)
        object.__setattr__(self, "factors", tuple(sorted(factors)))

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> TermKey:
        """Build a key from lists of parts, e.g. ``TermKey.of([1], [1, 2])``."""
        return cls(tuple(Partition(tuple(block)) for block in blocks))

    @classmethod
    def from_raw(cls, raw: RawKey) -> TermKey:
        """Build a key from an already canonical raw tuple."""
        return cls(tuple(Partition(block) for block in raw))

    @property
    def degree(self) -> int:
        """Return the total of all parts over all factors."""
        return sum(factor.size for factor in self.factors)

    @property
    def union(self) -> Partition:
        """Return all parts of all factors as one partition."""
        return Partition(tuple(part for f in self.factors for part in f.parts))

    @property
    def sort_key(self) -> tuple:
        """
        Return the display order of keys within a formula.

        Keys with fewer, larger parts come first; keys over the same parts
        are ordered from the most split to the least split.
        """
        union = self.union
        return (
            self.degree,
            union.length,
            union.parts,
            -len(self.factors),
            tuple(factor.sort_key for factor in self.factors),
        )

    def as_lists(self) -> list[list[int]]:
        """Return the key as nested lists of parts."""
        return [list(factor.parts) for factor in self.factors]

    def __len__(self) -> int:
        return len(self.factors)


@dataclass(frozen=True, eq=False)
class FormulaPolynomial:
    """
    An element of Q[S]: a finite map TermKey -> exact rational.

    Zero coefficients are dropped, every key must have degree ``degree`` and
    terms are kept in display order. Equality ignores provenance.
    """

    degree: int
    terms: Mapping[TermKey, Fraction]
    provenance: str = field(default="")

    def __post_init__(self) -> None:
        """Validate, drop zeros and freeze the term map."""
        cleaned: dict[TermKey, Fraction] = {}
        for key, coefficient in self.terms.items():
            if key.degree != self.degree:
                msg = (
                    f"Term {key.as_lists()} has degree {key.degree}, "
                    f"expected {self.degree}"
                )
                raise InvalidArgumentError(msg)
            value = Fraction(coefficient)
            if value:
                cleaned[key] = value
        ordered = dict(sorted(cleaned.items(), key=lambda item: item[0].sort_key))
        object.__setattr__(self, "terms", MappingProxyType(ordered))

    def coefficient(self, key: TermKey) -> Fraction:
        """Return the coefficient of a key, zero when absent."""
        return self.terms.get(key, Fraction(0))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormulaPolynomial):
            return NotImplemented
        return self.degree == other.degree and tuple(self.terms.items()) == tuple(
            other.terms.items()
        )

    def __hash__(self) -> int:
        return hash((self.degree, tuple(self.terms.items())))


def _from_counts(
    counts: Mapping[RawKey, int | Fraction],
    degree: int,
    provenance: str,
    divisor: int = 1,
) -> FormulaPolynomial:
    return FormulaPolynomial(
        degree,
        {
            TermKey.from_raw(raw): Fraction(count) / divisor
            for raw, count in counts.items()
        },
        provenance,
    )


def merge_formulas(
    formulas: Iterable[FormulaPolynomial],
    degree: int,
    provenance: str = "",
) -> FormulaPolynomial:
    """Add polynomials of one degree; the merge is exact and order free."""
    totals: dict[TermKey, Fraction] = defaultdict(Fraction)
    for formula_part in formulas:
        if formula_part.degree != degree:
            msg = f"Cannot merge degree {formula_part.degree} into degree {degree}"
            raise InvalidArgumentError(msg)
        for key, value in formula_part.terms.items():
            totals[key] += value
    return FormulaPolynomial(degree, totals, provenance)


def _grouped_parts(sigma: Permutation, parts: tuple[int, ...]) -> RawKey:
    return _canonical(
        tuple(sorted(parts[point - 1] for point in cycle))
        for cycle in cycles_of_images(sigma.images)
    )


def term_key_of(sigma: Permutation, partition: Partition) -> TermKey:
    """Group the parts of L along the cycles of sigma."""
    if sigma.size != partition.length:
        msg = (
            f"Permutation acts on {sigma.size} points but L has "
            f"{partition.length} parts"
        )
        raise InvalidArgumentError(msg)
    return TermKey.from_raw(_grouped_parts(sigma, partition.parts))


def _permutation_counts(
    parts: tuple[int, ...],
    caps: EnumerationCaps,
) -> dict[RawKey, int]:
    counts: dict[RawKey, int] = defaultdict(int)
    for sigma in permutations_of(len(parts), caps):
        counts[_grouped_parts(sigma, parts)] += sign(sigma)
    return counts


def _block_weight(size: int) -> int:
    return (-1) ** (size - 1) * math.factorial(size - 1)


def _collapsed_counts(parts: tuple[int, ...]) -> dict[RawKey, int]:
    m = len(parts)
    weights = [0] + [_block_weight(size) for size in range(1, m + 1)]
    counts: dict[RawKey, int] = defaultdict(int)
    for labels in restricted_growth_strings(m):
        blocks: list[list[int]] = [[] for _ in range(max(labels) + 1)]
        for index, label in enumerate(labels):
            blocks[label].append(parts[index])
        weight = 1
        for block in blocks:
            weight *= weights[len(block)]
        # parts are sorted, so every block already is
        counts[_canonical(tuple(block) for block in blocks)] += weight
    return counts


def _check_permutation_cap(m: int, caps: EnumerationCaps, hint: str = "") -> None:
    if m > caps.permutations:
        raise ResourceLimitError("permutation", caps.permutations, m, hint)


def _check_set_partition_cap(m: int, caps: EnumerationCaps) -> None:
    if m > caps.set_partitions:
        raise ResourceLimitError("set partition", caps.set_partitions, m)


def _require_partition(partition: Partition) -> None:
    if not isinstance(partition, Partition) or not partition.parts:
        msg = f"Expected a non-empty partition, got {partition!r}"
        raise InvalidArgumentError(msg)


def distinct_index_formula(
    partition: Partition,
    caps: EnumerationCaps | None = None,
) -> FormulaPolynomial:
    """Return the signed permutation sum equal to the pairwise distinct sum."""
    _require_partition(partition)
    caps = caps or DEFAULT_CAPS
    _check_permutation_cap(partition.length, caps)
    counts = _permutation_counts(partition.parts, caps)
    return _from_counts(counts, partition.size, PROVENANCE_DISTINCT)


def symmetrized_formula(
    partition: Partition,
    caps: EnumerationCaps | None = None,
) -> FormulaPolynomial:
    """Return the distinct index formula divided by the stabilizer count."""
    _require_partition(partition)
    caps = caps or DEFAULT_CAPS
    _check_permutation_cap(partition.length, caps)
    counts = _permutation_counts(partition.parts, caps)
    return _from_counts(
        counts, partition.size, PROVENANCE_SYMMETRIZED, stabilizer_count(partition)
    )


def single_factor_coefficient(partition: Partition) -> Fraction:
    """Return the coefficient of the one-factor key [L] in X_k."""
    _require_partition(partition)
    m = partition.length
    return Fraction(
        (-1) ** (m - 1) * math.factorial(m - 1), stabilizer_count(partition)
    )


def _require_degree(k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        msg = f"k must be a positive integer, got {k!r}"
        raise InvalidArgumentError(msg)


def _switch_length(caps: EnumerationCaps) -> int:
    return min(caps.direct_path_length, caps.permutations)


@lru_cache(maxsize=64)
def _build(k: int, method: str, caps: EnumerationCaps) -> FormulaPolynomial:
    totals: dict[RawKey, Fraction] = defaultdict(Fraction)
    direct = collapsed = 0
    for partition in partitions_of(k):
        use_permutations = method == METHOD_PERMUTATION or (
            method == METHOD_AUTO and partition.length <= _switch_length(caps)
        )
        if use_permutations:
            counts = _permutation_counts(partition.parts, caps)
            direct += 1
        else:
            counts = _collapsed_counts(partition.parts)
            collapsed += 1
        stabilizer = stabilizer_count(partition)
        for raw, count in counts.items():
            totals[raw] += Fraction(count, stabilizer)
    provenance = PROVENANCE_XK_COLLAPSED if method == METHOD_COLLAPSED else PROVENANCE_XK
    result = _from_counts(totals, k, provenance)
    _LOGGER.debug(
        "Built X_%s (%s) from %s partitions: %s direct, %s collapsed, %s terms",
        k,
        method,
        partition_number(k),
        direct,
        collapsed,
        len(result),
    )
    return result


def xk_formula(k: int, caps: EnumerationCaps | None = None) -> FormulaPolynomial:
    """Return X_k built literally from the permutation sums."""
    _require_degree(k)
    caps = caps or DEFAULT_CAPS
    _check_permutation_cap(k, caps, "use the collapsed evaluator for larger k")
    return _build(k, METHOD_PERMUTATION, caps)


def xk_formula_collapsed(
    k: int,
    caps: EnumerationCaps | None = None,
) -> FormulaPolynomial:
    """Return X_k built from set partitions of each L's positions."""
    _require_degree(k)
    caps = caps or DEFAULT_CAPS
    _check_set_partition_cap(k, caps)
    return _build(k, METHOD_COLLAPSED, caps)


def formula(
    k: int,
    caps: EnumerationCaps | None = None,
    method: str = METHOD_AUTO,
) -> FormulaPolynomial:
    """
    Return X_k by the requested construction path.

    The auto path sums permutations for partitions of length up to
    ``caps.direct_path_length``, lowered to ``caps.permutations`` when that
    is smaller, and set partitions above. All paths give the
    same polynomial; results are cached per (k, method, caps).
    """
    if method not in METHODS:
        msg = f"Unknown method {method!r}, expected one of {METHODS}"
        raise InvalidArgumentError(msg)
    if method == METHOD_PERMUTATION:
        return xk_formula(k, caps)
    if method == METHOD_COLLAPSED:
        return xk_formula_collapsed(k, caps)
    _require_degree(k)
    caps = caps or DEFAULT_CAPS
    if k > _switch_length(caps):
        _check_set_partition_cap(k, caps)
    return _build(k, METHOD_AUTO, caps)


xk_formula_auto = formula
