"""Text forms of formula polynomials and the JSON reader used by the cache."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import voluptuous as vol

from .combinatorics import Partition
from .const import FORMAT_JSON, FORMAT_LATEX, FORMAT_PLAIN, FORMATS, PROVENANCE_JSON
from .exceptions import InvalidArgumentError, TableFormatError
from .formula import FormulaPolynomial, TermKey
from .rational import format_rational, parse_rational

ZERO_TEXT = "0"


def _positive_int(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        msg = f"expected a positive integer, got {value!r}"
        raise vol.Invalid(msg)
    return value


def _part_list(value: Any) -> list[int]:
    if not isinstance(value, list) or not value:
        msg = f"expected a non-empty list of parts, got {value!r}"
        raise vol.Invalid(msg)
    return [_positive_int(part) for part in value]


FORMULA_SCHEMA = vol.Schema(
    {
        vol.Required("k"): _positive_int,
        vol.Required("terms"): [
            {
                vol.Required("coeff"): str,
                vol.Required("key"): vol.All(list, vol.Length(min=1), [_part_list]),
            }
        ],
    }
)


def _plain_factor(factor: Partition) -> str:
    return "S[" + ",".join(str(part) for part in factor.parts) + "]"


def _plain_term(key: TermKey, magnitude: Fraction) -> str:
    return "*".join(
        [format_rational(magnitude), *(_plain_factor(f) for f in key.factors)]
    )


def _latex_factor(factor: Partition) -> str:
    return "S_{[" + ",".join(str(part) for part in factor.parts) + "]}"


def _latex_coefficient(magnitude: Fraction) -> str:
    if magnitude == 1:
        return ""
    if magnitude.denominator == 1:
        return f"{magnitude.numerator} "
    return f"\\frac{{{magnitude.numerator}}}{{{magnitude.denominator}}} "


def _latex_term(key: TermKey, magnitude: Fraction) -> str:
    return _latex_coefficient(magnitude) + " ".join(
        _latex_factor(f) for f in key.factors
    )


def _signed_join(formula: FormulaPolynomial, term_text: Any) -> str:
    if not formula:
        return ZERO_TEXT
    pieces: list[str] = []
    for index, (key, value) in enumerate(formula.terms.items()):
        text = term_text(key, abs(value))
        if index == 0:
            pieces.append(f"-{text}" if value < 0 else text)
        else:
            pieces.append(f" - {text}" if value < 0 else f" + {text}")
    return "".join(pieces)


def formula_to_dict(formula: FormulaPolynomial) -> dict[str, Any]:
    """Return the JSON-ready mapping of a formula."""
    return {
        "k": formula.degree,
        "terms": [
            {"coeff": format_rational(value), "key": key.as_lists()}
            for key, value in formula.terms.items()
        ],
    }


def render(formula: FormulaPolynomial, output_format: str = FORMAT_PLAIN) -> str:
    """
    Serialize a formula.

    plain:  ``1*S[2] + 1/2*S[1]*S[1] - 1/2*S[1,1]``
    latex:  ``S_{[2]} + \\frac{1}{2} S_{[1]} S_{[1]} - \\frac{1}{2} S_{[1,1]}``
    json:   ``{"k":2,"terms":[{"coeff":"1","key":[[2]]},...]}``

    The zero polynomial is ``0`` in plain and latex and an empty term list in
    json.
    """
    if output_format == FORMAT_PLAIN:
        return _signed_join(formula, _plain_term)
    if output_format == FORMAT_LATEX:
        return _signed_join(formula, _latex_term)
    if output_format == FORMAT_JSON:
        return json.dumps(formula_to_dict(formula), separators=(",", ":"))
    msg = f"Unknown format {output_format!r}, expected one of {FORMATS}"
    raise InvalidArgumentError(msg)


def parse_formula_json(
    text: str,
    provenance: str = PROVENANCE_JSON,
) -> FormulaPolynomial:
    """Read a formula written by ``render(..., "json")``."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as err:
        msg = f"Malformed formula JSON: {err.msg}"
        raise TableFormatError(msg, line=err.lineno, column=err.colno) from err
    try:
        payload = FORMULA_SCHEMA(payload)
    except vol.Invalid as err:
        msg = f"Invalid formula JSON: {err}"
        raise TableFormatError(msg) from err

    terms: dict[TermKey, Fraction] = {}
    for index, entry in enumerate(payload["terms"], start=1):
        try:
            coefficient = parse_rational(entry["coeff"])
            key = TermKey.of(*entry["key"])
        except InvalidArgumentError as err:
            msg = f"Invalid term {index}: {err}"
            raise TableFormatError(msg) from err
        if not coefficient:
            msg = f"Term {index} has a zero coefficient"
            raise TableFormatError(msg)
        if key in terms:
            msg = f"Term {index} repeats key {key.as_lists()}"
            raise TableFormatError(msg)
        terms[key] = coefficient
    try:
        return FormulaPolynomial(payload["k"], terms, provenance)
    except InvalidArgumentError as err:
        raise TableFormatError(str(err)) from err
