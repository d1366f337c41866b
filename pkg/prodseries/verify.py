"""
Randomized cross-checks of the formula path against brute force.

Three suites run on seeded random tables:

- oracle: X_k from the formula equals the truncated product, for k <= k_max,
- lemma: the distinct index and symmetrized formulas equal their brute-force
  sums,
- collapsed: the set-partition construction equals the permutation one.

Failures are collected, never raised, with a recipe that reproduces them.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cache import FormulaCache, cached_formula
from .combinatorics import DEFAULT_CAPS, EnumerationCaps, Partition
from .const import (
    LEMMA_MAX_LENGTH,
    LEMMA_MAX_PART,
    LEMMA_MAX_ROWS,
    RANDOM_DENOMINATOR_BOUND,
    RANDOM_NUMERATOR_BOUND,
)
from .exceptions import InvalidArgumentError
from .formula import (
    distinct_index_formula,
    symmetrized_formula,
    xk_formula,
    xk_formula_collapsed,
)
from .series import (
    SeriesTable,
    distinct_sum_bruteforce,
    evaluate_formula,
    sorted_distinct_sum_bruteforce,
    table_to_json,
    truncated_product,
)

_LOGGER = logging.getLogger(__name__)

SUITE_ORACLE = "oracle"
SUITE_LEMMA = "lemma"
SUITE_COLLAPSED = "collapsed"


@dataclass
class SuiteResult:
    """Pass and fail counts of one suite, with the first failure recipe."""

    name: str
    passed: int = 0
    failed: int = 0
    first_failure: str | None = None

    @property
    def ok(self) -> bool:
        """Return True when nothing failed."""
        return self.failed == 0

    def record(self, success: bool, recipe: str) -> None:
        """Count one check."""
        if success:
            self.passed += 1
            return
        self.failed += 1
        if self.first_failure is None:
            self.first_failure = recipe
            _LOGGER.warning("Suite %s failed: %s", self.name, recipe)


@dataclass
class VerificationReport:
    """Results of all suites of one run."""

    seed: int
    trials: int
    suites: list[SuiteResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Return True when every suite passed."""
        return all(suite.ok for suite in self.suites)

    def summary(self) -> str:
        """Return the report as text, one line per suite then a verdict."""
        lines = [
            f"{suite.name}: {suite.passed} passed, {suite.failed} failed"
            + (f" (first failure: {suite.first_failure})" if suite.first_failure else "")
            for suite in self.suites
        ]
        failing = sum(not suite.ok for suite in self.suites)
        if failing:
            lines.append(f"{failing} of {len(self.suites)} suites failed")
        else:
            lines.append(f"all {len(self.suites)} suites passed")
        return "\n".join(lines)


def random_rational(rng: random.Random) -> Fraction:
    """Return p/q with |p| <= 9 and 1 <= q <= 9."""
    return Fraction(
        rng.randint(-RANDOM_NUMERATOR_BOUND, RANDOM_NUMERATOR_BOUND),
        rng.randint(1, RANDOM_DENOMINATOR_BOUND),
    )


def random_table(rng: random.Random, n_rows: int, width: int) -> SeriesTable:
    """Return an n_rows x width table of random rationals."""
    return SeriesTable(
        tuple(
            tuple(random_rational(rng) for _ in range(width)) for _ in range(n_rows)
        )
    )


def random_partition(rng: random.Random, max_length: int, max_part: int) -> Partition:
    """Return a random partition with bounded length and parts."""
    length = rng.randint(1, max_length)
    return Partition(tuple(rng.randint(1, max_part) for _ in range(length)))


def _recipe(k: object, seed: int, trial: int, table: SeriesTable) -> str:
    return f"k={k} seed={seed} trial={trial} table={table_to_json(table)}"


def _oracle_suite(
    k_max: int,
    n_max: int,
    trials: int,
    seed: int,
    caps: EnumerationCaps,
    cache: FormulaCache | None,
) -> SuiteResult:
    result = SuiteResult(SUITE_ORACLE)
    rng = random.Random(seed)
    formulas = {k: cached_formula(k, caps, cache) for k in range(1, k_max + 1)}
    for trial in range(trials):
        table = random_table(rng, rng.randint(1, n_max), k_max)
        oracle = truncated_product(table, k_max)
        for k, polynomial in formulas.items():
            agree = evaluate_formula(polynomial, table) == oracle[k]
            result.record(agree, _recipe(k, seed, trial, table))
    return result


def _lemma_suite(n_max: int, trials: int, seed: int, caps: EnumerationCaps) -> SuiteResult:
    result = SuiteResult(SUITE_LEMMA)
    rng = random.Random(seed + 1)
    rows = min(n_max, LEMMA_MAX_ROWS)
    for trial in range(trials):
        partition = random_partition(rng, LEMMA_MAX_LENGTH, LEMMA_MAX_PART)
        table = random_table(rng, rng.randint(1, rows), LEMMA_MAX_PART)
        recipe = _recipe(str(partition), seed, trial, table)
        distinct = evaluate_formula(distinct_index_formula(partition, caps), table)
        result.record(distinct == distinct_sum_bruteforce(partition, table), recipe)
        symmetrized = evaluate_formula(symmetrized_formula(partition, caps), table)
        result.record(
            symmetrized == sorted_distinct_sum_bruteforce(partition, table), recipe
        )
    return result


def _collapsed_suite(k_max: int, caps: EnumerationCaps) -> SuiteResult:
    result = SuiteResult(SUITE_COLLAPSED)
    for k in range(1, k_max + 1):
        agree = xk_formula_collapsed(k, caps) == xk_formula(k, caps)
        result.record(agree, f"k={k}")
    return result


def run_verification(
    k_max: int,
    n_max: int,
    trials: int,
    seed: int,
    caps: EnumerationCaps | None = None,
    cache: FormulaCache | None = None,
) -> VerificationReport:
    """Run the oracle, lemma and collapsed suites."""
    for value, name in ((k_max, "k_max"), (n_max, "n_max")):
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            msg = f"{name} must be a positive integer, got {value!r}"
            raise InvalidArgumentError(msg)
    if trials < 0:
        msg = f"trials must be non-negative, got {trials}"
        raise InvalidArgumentError(msg)
    caps = caps or DEFAULT_CAPS
    if trials == 0:
        _LOGGER.warning("No trials requested; the random suites pass vacuously")

    report = VerificationReport(seed, trials)
    report.suites.append(_oracle_suite(k_max, n_max, trials, seed, caps, cache))
    report.suites.append(_lemma_suite(n_max, trials, seed, caps))
    report.suites.append(_collapsed_suite(k_max, caps))
    _LOGGER.info(
        "Verification with seed %s: %s",
        seed,
        "passed" if report.ok else "failed",
    )
    return report
