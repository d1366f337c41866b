"""Errors raised by prodseries."""

from __future__ import annotations


class ProdSeriesError(Exception):
    """Base class for all prodseries errors."""


class InvalidArgumentError(ProdSeriesError, ValueError):
    """An argument is outside the domain of the operation."""


class TableFormatError(InvalidArgumentError):
    """A SeriesTable or formula payload could not be read."""

    def __init__(
        self,
        message: str,
        *,
        line: int | None = None,
        column: int | None = None,
        row: int | None = None,
    ) -> None:
        """Initialize with an optional source or table location."""
        location = []
        if line is not None:
            location.append(f"line {line}")
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column {column}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)
        self.line = line
        self.column = column
        self.row = row


class ResourceLimitError(ProdSeriesError):
    """An enumeration would exceed a configured cap."""

    def __init__(self, cap_name: str, cap: int, requested: int, hint: str = "") -> None:
        """Initialize with the cap that was hit."""
        message = f"{cap_name} cap is {cap}, requested {requested}"
        if hint:
            message = f"{message}; {hint}"
        super().__init__(message)
        self.cap_name = cap_name
        self.cap = cap
        self.requested = requested
