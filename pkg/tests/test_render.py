"""Tests for formula rendering and the JSON reader."""

import json

import pytest

from prodseries.const import FORMAT_JSON, FORMAT_LATEX, FORMAT_PLAIN, PROVENANCE_JSON
from prodseries.exceptions import InvalidArgumentError, TableFormatError
from prodseries.formula import FormulaPolynomial, xk_formula
from prodseries.render import parse_formula_json, render

X2_PLAIN = "1*S[2] + 1/2*S[1]*S[1] - 1/2*S[1,1]"
X2_LATEX = r"S_{[2]} + \frac{1}{2} S_{[1]} S_{[1]} - \frac{1}{2} S_{[1,1]}"
X1_JSON = '{"k":1,"terms":[{"coeff":"1","key":[[1]]}]}'


class TestRender:
    """Test the plain, latex and json forms."""

    def test_plain_x1(self) -> None:
        """Test the one-term plain form."""
        assert render(xk_formula(1), FORMAT_PLAIN) == "1*S[1]"

    def test_plain_x2(self) -> None:
        """Test the plain form of X_2."""
        assert render(xk_formula(2)) == X2_PLAIN

    def test_latex_x2(self) -> None:
        """Test the LaTeX form of X_2."""
        assert render(xk_formula(2), FORMAT_LATEX) == X2_LATEX

    def test_latex_x3_terms(self) -> None:
        """Test that the LaTeX form of X_3 carries all six terms."""
        text = render(xk_formula(3), FORMAT_LATEX)
        assert text.startswith("S_{[3]} + S_{[1]} S_{[2]} - S_{[1,2]}")
        assert r"\frac{1}{6} S_{[1]} S_{[1]} S_{[1]}" in text
        assert text.endswith(r"+ \frac{1}{3} S_{[1,1,1]}")

    def test_json_x1(self) -> None:
        """Test the compact one-term JSON form."""
        assert render(xk_formula(1), FORMAT_JSON) == X1_JSON

    def test_json_x2(self) -> None:
        """Test the three coefficients of X_2 in JSON."""
        payload = json.loads(render(xk_formula(2), FORMAT_JSON))
        assert payload["k"] == 2
        assert [term["coeff"] for term in payload["terms"]] == ["1", "1/2", "-1/2"]
        assert [term["key"] for term in payload["terms"]] == [
            [[2]],
            [[1], [1]],
            [[1, 1]],
        ]

    def test_leading_negative_term(self) -> None:
        """Test the sign of a negative first term."""
        negated = FormulaPolynomial(
            2, {key: -value for key, value in xk_formula(2).terms.items()}
        )
        assert render(negated).startswith("-1*S[2] - 1/2*S[1]*S[1]")

    @pytest.mark.parametrize("output_format", [FORMAT_PLAIN, FORMAT_LATEX])
    def test_zero_polynomial(self, output_format: str) -> None:
        """Test the textual zero."""
        assert render(FormulaPolynomial(3, {}), output_format) == "0"

    def test_zero_polynomial_json(self) -> None:
        """Test that zero is an empty term list in JSON."""
        assert render(FormulaPolynomial(3, {}), FORMAT_JSON) == '{"k":3,"terms":[]}'

    def test_unknown_format(self) -> None:
        """Test the invalid-argument error."""
        with pytest.raises(InvalidArgumentError):
            render(xk_formula(1), "html")

    def test_render_is_deterministic(self) -> None:
        """Test byte-identical output for equal polynomials."""
        built = xk_formula(5)
        rebuilt = FormulaPolynomial(5, dict(reversed(list(built.terms.items()))))
        assert render(built, FORMAT_JSON) == render(rebuilt, FORMAT_JSON)


class TestParseFormulaJson:
    """Test reading rendered formulas back."""

    def test_reads_rendered_formula(self) -> None:
        """Test that a rendered X_4 reads back equal."""
        parsed = parse_formula_json(render(xk_formula(4), FORMAT_JSON))
        assert parsed == xk_formula(4)
        assert parsed.provenance == PROVENANCE_JSON

    def test_syntax_error_location(self) -> None:
        """Test that syntax errors carry line and column."""
        with pytest.raises(TableFormatError) as err:
            parse_formula_json('{"k": 1,\n "terms": [}')
        assert err.value.line == 2
        assert err.value.column is not None

    @pytest.mark.parametrize(
        "text",
        [
            '{"k": 0, "terms": []}',
            '{"k": 1, "terms": [{"coeff": "1", "key": [[0]]}]}',
            '{"k": 1, "terms": [{"coeff": "0", "key": [[1]]}]}',
            '{"k": 1, "terms": [{"coeff": "0.5", "key": [[1]]}]}',
            '{"k": 2, "terms": [{"coeff": "1", "key": [[1]]}]}',
            '{"k": 2, "terms": [{"coeff": "1", "key": [[2]]}, '
            '{"coeff": "1", "key": [[2]]}]}',
            '{"k": 1, "terms": [{"coeff": "1", "key": [[1]], "extra": 1}]}',
        ],
    )
    def test_rejects_malformed(self, text: str) -> None:
        """Test schema, coefficient and degree violations."""
        with pytest.raises(TableFormatError):
            parse_formula_json(text)
