"""Exact rational helpers shared by the codecs and the CLI."""

from __future__ import annotations

from fractions import Fraction
from typing import TypeAlias

from .exceptions import InvalidArgumentError

Rational: TypeAlias = Fraction


def parse_rational(value: object) -> Fraction:
    """
    Read an exact rational.

    Accepts ints, Fractions and strings of the form "p", "p/q" or "-p/q".
    Floats and bools are rejected so that no binary rounding leaks into the
    exact path.
    """
    if isinstance(value, bool):
        msg = f"Expected a rational, got {value!r}"
        raise InvalidArgumentError(msg)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            msg = f"Decimal notation is not exact, write {value!r} as p/q"
            raise InvalidArgumentError(msg)
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as err:
            msg = f"Not a rational: {value!r}"
            raise InvalidArgumentError(msg) from err
    msg = f"Expected a rational, got {type(value).__name__}"
    raise InvalidArgumentError(msg)


def parse_rational_list(text: str) -> tuple[Fraction, ...]:
    """Read a comma separated list such as "1,1/2,-3"."""
    items = [item for item in text.split(",") if item.strip()]
    return tuple(parse_rational(item) for item in items)


def format_rational(value: Fraction | int) -> str:
    """Write a rational as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(value))
