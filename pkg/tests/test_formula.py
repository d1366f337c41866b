"""Tests for formula construction."""

from collections import defaultdict
from fractions import Fraction

import pytest

from prodseries.combinatorics import (
    EnumerationCaps,
    Partition,
    Permutation,
    partitions_of,
    permutations_of,
    sign,
    stabilizer_count,
)
from prodseries.const import PROVENANCE_XK, PROVENANCE_XK_COLLAPSED
from prodseries.exceptions import InvalidArgumentError, ResourceLimitError
from prodseries.formula import (
    FormulaPolynomial,
    TermKey,
    distinct_index_formula,
    formula,
    merge_formulas,
    single_factor_coefficient,
    symmetrized_formula,
    term_key_of,
    xk_formula,
    xk_formula_collapsed,
)
from prodseries.series import evaluate_formula

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)
SIXTH = Fraction(1, 6)
MAX_CHECKED_K = 8
SINGLE_ROW_TABLES = 5

X1 = {TermKey.of([1]): Fraction(1)}
X2 = {
    TermKey.of([2]): Fraction(1),
    TermKey.of([1], [1]): HALF,
    TermKey.of([1, 1]): -HALF,
}
X3 = {
    TermKey.of([3]): Fraction(1),
    TermKey.of([1], [2]): Fraction(1),
    TermKey.of([1, 2]): Fraction(-1),
    TermKey.of([1], [1], [1]): SIXTH,
    TermKey.of([1], [1, 1]): -HALF,
    TermKey.of([1, 1, 1]): THIRD,
}


class TestTermKey:
    """Test term key canonicalization."""

    def test_factor_order_is_canonical(self) -> None:
        """Test that factor order does not matter."""
        assert TermKey.of([2, 1], [3]) == TermKey.of([3], [1, 2])
        assert TermKey.of([1, 2], [3]).factors == (Partition.of(3), Partition.of(1, 2))

    def test_degree(self) -> None:
        """Test the total degree."""
        assert TermKey.of([1, 1], [3], [2]).degree == 7

    def test_rejects_empty(self) -> None:
        """Test that keys need a non-empty factor."""
        with pytest.raises(InvalidArgumentError):
            TermKey(())
        with pytest.raises(InvalidArgumentError):
            TermKey.of([])

    def test_cycle_grouping(self) -> None:
        """Test grouping the parts of L along (1 2 4)(3 6)(5)."""
        sigma = Permutation((2, 4, 6, 1, 5, 3))
        key = term_key_of(sigma, Partition.of(1, 2, 3, 4, 5, 6))
        assert key == TermKey.of([1, 2, 4], [3, 6], [5])

    def test_identity_and_full_cycle(self) -> None:
        """Test the identity and a single full cycle."""
        assert term_key_of(Permutation.identity(3), Partition.of(1, 2, 3)) == (
            TermKey.of([1], [2], [3])
        )
        assert term_key_of(Permutation((2, 3, 1)), Partition.of(1, 1, 1)) == (
            TermKey.of([1, 1, 1])
        )

    def test_size_mismatch(self) -> None:
        """Test the invalid-argument error on mismatched sizes."""
        with pytest.raises(InvalidArgumentError):
            term_key_of(Permutation.identity(2), Partition.of(1, 2, 3))


class TestFormulaPolynomial:
    """Test the polynomial container."""

    def test_drops_zero_coefficients(self) -> None:
        """Test that zero terms are not stored."""
        polynomial = FormulaPolynomial(1, {TermKey.of([1]): Fraction(0)})
        assert len(polynomial) == 0
        assert not polynomial

    def test_rejects_wrong_degree(self) -> None:
        """Test that keys must match the declared degree."""
        with pytest.raises(InvalidArgumentError):
            FormulaPolynomial(2, {TermKey.of([1]): Fraction(1)})

    def test_equality_ignores_provenance(self) -> None:
        """Test equality and hashing by degree and terms only."""
        first = FormulaPolynomial(2, X2, "a")
        second = FormulaPolynomial(2, dict(reversed(list(X2.items()))), "b")
        assert first == second
        assert hash(first) == hash(second)

    def test_merge(self) -> None:
        """Test exact merging with cancellation."""
        merged = merge_formulas(
            [FormulaPolynomial(2, X2), FormulaPolynomial(2, {TermKey.of([2]): -1})], 2
        )
        assert TermKey.of([2]) not in merged.terms
        assert len(merged) == 2

    def test_merge_rejects_mixed_degrees(self) -> None:
        """Test that merging across degrees fails."""
        with pytest.raises(InvalidArgumentError):
            merge_formulas([FormulaPolynomial(1, X1)], 2)


class TestLemmaFormulas:
    """Test the distinct index and symmetrized formulas."""

    def test_one_two_three(self) -> None:
        """Test the six signed terms for L=[1,2,3]."""
        polynomial = distinct_index_formula(Partition.of(1, 2, 3))
        assert dict(polynomial.terms) == {
            TermKey.of([1], [2], [3]): 1,
            TermKey.of([1, 2, 3]): 2,
            TermKey.of([1], [2, 3]): -1,
            TermKey.of([1, 2], [3]): -1,
            TermKey.of([1, 3], [2]): -1,
        }
        assert sum(abs(value) for value in polynomial.terms.values()) == 6

    def test_five_ones(self) -> None:
        """Test the conjugacy class coefficients for L=[1,1,1,1,1]."""
        polynomial = distinct_index_formula(Partition((1,) * 5))
        assert dict(polynomial.terms) == {
            TermKey.of([1], [1], [1], [1], [1]): 1,
            TermKey.of([1], [1], [1], [1, 1]): -10,
            TermKey.of([1], [1], [1, 1, 1]): 20,
            TermKey.of([1], [1, 1], [1, 1]): 15,
            TermKey.of([1], [1, 1, 1, 1]): -30,
            TermKey.of([1, 1], [1, 1, 1]): -20,
            TermKey.of([1, 1, 1, 1, 1]): 24,
        }

    def test_single_part(self) -> None:
        """Test the m=1 base case."""
        assert dict(distinct_index_formula(Partition.of(1)).terms) == {
            TermKey.of([1]): 1
        }

    def test_signed_term_keys(self) -> None:
        """Test the sum of sign(sigma) * term_key_of(sigma, L) over S_m."""
        partition = Partition.of(1, 1, 2, 3)
        totals: dict[TermKey, Fraction] = defaultdict(Fraction)
        for sigma in permutations_of(partition.length):
            totals[term_key_of(sigma, partition)] += sign(sigma)
        expected = FormulaPolynomial(partition.size, totals)
        assert distinct_index_formula(partition) == expected

    @pytest.mark.parametrize(
        ("parts", "expected"),
        [
            ((1, 1), {TermKey.of([1], [1]): HALF, TermKey.of([1, 1]): -HALF}),
            ((2,), {TermKey.of([2]): 1}),
            (
                (1, 1, 1),
                {
                    TermKey.of([1], [1], [1]): SIXTH,
                    TermKey.of([1], [1, 1]): -HALF,
                    TermKey.of([1, 1, 1]): THIRD,
                },
            ),
        ],
    )
    def test_symmetrized(self, parts: tuple[int, ...], expected: dict) -> None:
        """Test division by the stabilizer count."""
        assert dict(symmetrized_formula(Partition(parts)).terms) == expected

    def test_cap(self) -> None:
        """Test the resource-limit error above the permutation cap."""
        with pytest.raises(ResourceLimitError):
            distinct_index_formula(Partition((1,) * 4), EnumerationCaps(permutations=3))


class TestXkFormula:
    """Test the coefficient formula X_k."""

    @pytest.mark.parametrize(("k", "expected"), [(1, X1), (2, X2), (3, X3)])
    def test_golden(self, k: int, expected: dict) -> None:
        """Test the closed forms of X_1, X_2 and X_3 term for term."""
        polynomial = xk_formula(k)
        assert dict(polynomial.terms) == expected
        assert polynomial.degree == k
        assert polynomial.provenance == PROVENANCE_XK

    def test_display_order(self) -> None:
        """Test that X_2 lists S[2], then S[1]S[1], then S[1,1]."""
        assert list(xk_formula(2).terms) == [
            TermKey.of([2]),
            TermKey.of([1], [1]),
            TermKey.of([1, 1]),
        ]

    @pytest.mark.parametrize("k", range(1, MAX_CHECKED_K + 1))
    def test_degree_homogeneity(self, k: int) -> None:
        """Test that every key of X_k has degree k."""
        assert all(key.degree == k for key in xk_formula(k).terms)

    @pytest.mark.timeout(120)
    @pytest.mark.parametrize("k", range(1, MAX_CHECKED_K + 1))
    def test_single_factor_coefficients(self, k: int) -> None:
        """Test the coefficient of [L] for every L |- k."""
        polynomial = xk_formula(k)
        for partition in partitions_of(k):
            expected = single_factor_coefficient(partition)
            assert expected != 0
            assert polynomial.coefficient(TermKey((partition,))) == expected

    def test_single_factor_closed_form(self) -> None:
        """Test the closed form on X_3 values."""
        assert single_factor_coefficient(Partition.of(1, 1, 1)) == THIRD
        assert single_factor_coefficient(Partition.of(1, 2)) == -1
        assert stabilizer_count(Partition.of(1, 1, 1)) == 6

    @pytest.mark.timeout(120)
    @pytest.mark.parametrize("k", range(1, MAX_CHECKED_K + 1))
    def test_collapsed_equals_direct(self, k: int) -> None:
        """Test that both constructions give the same polynomial."""
        collapsed = xk_formula_collapsed(k)
        assert collapsed == xk_formula(k)
        assert tuple(collapsed.terms.items()) == tuple(xk_formula(k).terms.items())
        assert collapsed.provenance == PROVENANCE_XK_COLLAPSED

    @pytest.mark.parametrize("k", range(1, MAX_CHECKED_K + 1))
    def test_single_row_reduction(self, k: int, make_table) -> None:
        """Test that X_k of one factor is its own coefficient a_{1,k}."""
        polynomial = xk_formula(k)
        for _ in range(SINGLE_ROW_TABLES):
            table = make_table(1, k)
            assert evaluate_formula(polynomial, table) == table.entry(1, k)

    def test_auto_path_matches(self) -> None:
        """Test that a short direct path switches to set partitions."""
        caps = EnumerationCaps(direct_path_length=2)
        assert formula(6, caps) == xk_formula(6)
        assert formula(6, method="collapsed") == xk_formula(6)

    def test_auto_path_follows_permutation_cap(self) -> None:
        """Test that a low permutation cap moves the switch-over down."""
        caps = EnumerationCaps(permutations=5)
        assert formula(7, caps) == xk_formula_collapsed(7)

    def test_permutation_cap_hints_collapsed(self) -> None:
        """Test that the permutation path refuses k above its cap."""
        with pytest.raises(ResourceLimitError) as err:
            xk_formula(11)
        assert "collapsed" in str(err.value)
        assert err.value.requested == 11

    def test_set_partition_cap(self) -> None:
        """Test the collapsed path cap."""
        with pytest.raises(ResourceLimitError):
            xk_formula_collapsed(5, EnumerationCaps(set_partitions=4))
        with pytest.raises(ResourceLimitError):
            formula(5, EnumerationCaps(set_partitions=4, direct_path_length=3))

    @pytest.mark.parametrize("k", [0, -2])
    def test_rejects_non_positive(self, k: int) -> None:
        """Test k >= 1."""
        with pytest.raises(InvalidArgumentError):
            xk_formula(k)

    def test_unknown_method(self) -> None:
        """Test the method check."""
        with pytest.raises(InvalidArgumentError):
            formula(2, method="magic")
