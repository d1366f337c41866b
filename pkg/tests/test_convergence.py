"""Tests for truncation runs and limit estimates."""

import math
from fractions import Fraction

import numpy as np
import pytest

from prodseries.cache import FormulaCache
from prodseries.const import MODE_EXACT, MODE_FLOAT
from prodseries.convergence import (
    alternating_limit,
    async_truncation_sequence,
    averaged_tail_estimate,
    resolve_generator,
    truncation_sequence,
)
from prodseries.exceptions import InvalidArgumentError

LARGE_SIZES = [1_000, 10_000, 100_000]
RAW_TOLERANCE = 2e-2
TAIL_TOLERANCE = 1e-2
LIMIT_TERMS = 4_000
LIMIT_DIGITS = 1e-9
LN2 = math.log(2)


def _quartic_limit() -> float:
    """Return M = sum (-1)^n n^(-1/4)."""
    indices = np.arange(1, LIMIT_TERMS + 1, dtype=np.float64)
    return alternating_limit(np.where(indices % 2 == 0, 1.0, -1.0) * indices**-0.25)


class TestResolveGenerator:
    """Test generator lookup."""

    def test_fixed_names(self) -> None:
        """Test the parameterless generators."""
        for name in ("alt_quartic", "euler", "zero"):
            assert resolve_generator(name).name == name

    def test_euler_rows(self) -> None:
        """Test the diagonal -1 entries."""
        rows = resolve_generator("euler").float_rows(3, 3)
        assert rows.tolist() == [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]

    def test_alt_quartic_rows(self) -> None:
        """Test (-1)^(nk) / (k! n^(k/4)) for a few entries."""
        rows = resolve_generator("alt_quartic").float_rows(16, 3)
        assert rows[0, 0] == pytest.approx(-1.0)
        assert rows[15, 0] == pytest.approx(0.5)
        assert rows[15, 1] == pytest.approx(0.125)
        assert rows[0, 2] == pytest.approx(-1 / 6)

    def test_parametric(self) -> None:
        """Test that the parameter reaches the exact entries."""
        table = resolve_generator("geometric:1/2").exact_table(2, 3)
        assert table.a[0] == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))

    @pytest.mark.parametrize(
        "label", ["harmonic", "geometric", "binomial:", "euler:2", "geometric:0.5"]
    )
    def test_rejects_bad_labels(self, label: str) -> None:
        """Test unknown names and missing or malformed parameters."""
        with pytest.raises(InvalidArgumentError):
            resolve_generator(label)

    def test_alt_quartic_is_float_only(self) -> None:
        """Test that irrational entries refuse exact mode."""
        with pytest.raises(InvalidArgumentError):
            truncation_sequence("alt_quartic", 2, [3], mode=MODE_EXACT)


class TestTruncationSequence:
    """Test X_k of the first N rows."""

    def test_zero_generator(self) -> None:
        """Test that zero rows give zero for every k >= 1."""
        assert truncation_sequence("zero", 3, [1, 5, 20]) == [0.0, 0.0, 0.0]

    def test_euler_stabilizes(self) -> None:
        """Test the pentagonal coefficient of x^5 once N >= 5."""
        assert truncation_sequence("euler", 5, [5, 6, 10]) == [1.0, 1.0, 1.0]

    def test_exact_mode(self) -> None:
        """Test Fraction values in exact mode."""
        values = truncation_sequence("euler", 6, [6, 8], mode=MODE_EXACT)
        assert values == [Fraction(0), Fraction(0)]
        assert all(isinstance(value, Fraction) for value in values)

    def test_geometric(self) -> None:
        """Test C(N+k-1, k) x^k for 1/(1-x)^N."""
        values = truncation_sequence("geometric:1/3", 3, [1, 2, 4], mode=MODE_EXACT)
        assert values == [
            math.comb(n + 2, 3) * Fraction(1, 27) for n in (1, 2, 4)
        ]

    def test_binomial(self) -> None:
        """Test C(N, k) x^k for (1+x)^N."""
        values = truncation_sequence("binomial:2", 2, [1, 3, 5], mode=MODE_EXACT)
        assert values == [0, 12, 40]

    def test_constant_term(self) -> None:
        """Test that k=0 is one for every N."""
        assert truncation_sequence("alt_quartic", 0, [1, 10]) == [1.0, 1.0]
        assert truncation_sequence("euler", 0, [3], mode=MODE_EXACT) == [Fraction(1)]

    @pytest.mark.parametrize(
        ("k", "sizes", "mode"),
        [(-1, [1], MODE_FLOAT), (2, [0], MODE_FLOAT), (2, [1], "interval")],
    )
    def test_rejects_bad_requests(self, k: int, sizes: list[int], mode: str) -> None:
        """Test k, N and mode validation."""
        with pytest.raises(InvalidArgumentError):
            truncation_sequence("euler", k, sizes, mode=mode)

    def test_uses_cache(self, formula_cache: FormulaCache) -> None:
        """Test that the run stores the formula it needs."""
        truncation_sequence("euler", 4, [4], cache=formula_cache)
        assert formula_cache.path_for(4).is_file()

    async def test_async_matches_sync(self) -> None:
        """Test that gathering in the executor keeps the order."""
        sizes = [3, 1, 7, 5]
        assert await async_truncation_sequence(
            "geometric:1/2", 3, sizes
        ) == truncation_sequence("geometric:1/2", 3, sizes)

    async def test_async_constant_term(self) -> None:
        """Test the k=0 shortcut."""
        assert await async_truncation_sequence("zero", 0, [2]) == [1.0]


class TestLimits:
    """Test limit estimation of alternating sequences."""

    def test_alternating_harmonic(self) -> None:
        """Test 1 - 1/2 + 1/3 - ... = ln 2."""
        terms = [(-1) ** (n + 1) / n for n in range(1, 200)]
        assert alternating_limit(terms) == pytest.approx(LN2, abs=1e-10)

    def test_quartic_limit_is_stable(self) -> None:
        """Test that doubling the term count does not move M."""
        indices = np.arange(1, 2 * LIMIT_TERMS + 1, dtype=np.float64)
        doubled = alternating_limit(
            np.where(indices % 2 == 0, 1.0, -1.0) * indices**-0.25
        )
        assert doubled == pytest.approx(_quartic_limit(), abs=LIMIT_DIGITS)
        assert _quartic_limit() == pytest.approx(-0.5545, abs=1e-3)

    @pytest.mark.parametrize("depth", [-1, 5])
    def test_rejects_bad_depth(self, depth: int) -> None:
        """Test depth bounds against the term count."""
        with pytest.raises(InvalidArgumentError):
            alternating_limit([1.0, -0.5, 0.25, -0.125, 0.0625], depth)

    def test_averaged_tail(self) -> None:
        """Test the mean of the last two values."""
        assert averaged_tail_estimate([5.0, 1.0, 2.0]) == 1.5
        with pytest.raises(InvalidArgumentError):
            averaged_tail_estimate([1.0])

    @pytest.mark.timeout(120)
    def test_quartic_square_approaches_half_square(self) -> None:
        """Test X_2 of the alternating quartic rows against M^2/2."""
        target = _quartic_limit() ** 2 / 2
        values = truncation_sequence("alt_quartic", 2, LARGE_SIZES)
        errors = [abs(value - target) for value in values]
        assert errors[0] > errors[1] > errors[2]
        assert errors[2] <= RAW_TOLERANCE

        tail = truncation_sequence(
            "alt_quartic", 2, [LARGE_SIZES[-1], LARGE_SIZES[-1] + 1]
        )
        assert abs(averaged_tail_estimate(tail) - target) <= TAIL_TOLERANCE
