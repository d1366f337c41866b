"""On-disk cache of X_k formulas, one JSON file per k."""

from __future__ import annotations

import logging
import os
import tempfile
from pathlib import Path

from .combinatorics import EnumerationCaps
from .const import CACHE_FILE_TEMPLATE, ENV_CACHE_DIR, FORMAT_JSON, METHOD_AUTO
from .exceptions import TableFormatError
from .formula import FormulaPolynomial, formula
from .render import parse_formula_json, render

_LOGGER = logging.getLogger(__name__)


class FormulaCache:
    """Read and write rendered formulas under a directory."""

    def __init__(self, directory: str | os.PathLike[str]) -> None:
        """Initialize the cache rooted at ``directory``."""
        self.directory = Path(directory)

    @classmethod
    def from_env(cls) -> FormulaCache | None:
        """Return the cache named by the environment, if any."""
        directory = os.environ.get(ENV_CACHE_DIR)
        if not directory:
            return None
        return cls(directory)

    def path_for(self, k: int) -> Path:
        """Return the file holding X_k."""
        return self.directory / CACHE_FILE_TEMPLATE.format(k=k)

    def load(self, k: int) -> FormulaPolynomial | None:
        """Return the cached X_k, or None on a miss."""
        path = self.path_for(k)
        if not path.is_file():
            _LOGGER.debug("Formula cache miss for X_%s at %s", k, path)
            return None
        try:
            cached = parse_formula_json(path.read_text(encoding="utf-8"))
        except TableFormatError as err:
            msg = f"Corrupt formula cache file {path}: {err}"
            raise TableFormatError(msg, line=err.line, column=err.column) from err
        if cached.degree != k:
            msg = f"Formula cache file {path} holds X_{cached.degree}, not X_{k}"
            raise TableFormatError(msg)
        _LOGGER.debug("Formula cache hit for X_%s", k)
        return cached

    def store(self, polynomial: FormulaPolynomial) -> Path:
        """Write a formula and return its path."""
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path_for(polynomial.degree)
        text = render(polynomial, FORMAT_JSON) + "\n"
        # readers only ever see a complete file
        with tempfile.NamedTemporaryFile(
            "w",
            encoding="utf-8",
            dir=self.directory,
            prefix=f".{path.name}.",
            suffix=".tmp",
            delete=False,
        ) as handle:
            staging = Path(handle.name)
            handle.write(text)
        try:
            staging.replace(path)
        except OSError:
            staging.unlink(missing_ok=True)
            raise
        _LOGGER.info("Stored X_%s (%s terms) in %s", polynomial.degree, len(polynomial), path)
        return path

    def get_or_build(
        self,
        k: int,
        caps: EnumerationCaps | None = None,
        method: str = METHOD_AUTO,
    ) -> FormulaPolynomial:
        """Return the cached X_k, building and storing it on a miss."""
        cached = self.load(k)
        if cached is not None:
            return cached
        built = formula(k, caps, method)
        self.store(built)
        return built


def cached_formula(
    k: int,
    caps: EnumerationCaps | None = None,
    cache: FormulaCache | None = None,
    method: str = METHOD_AUTO,
) -> FormulaPolynomial:
    """Return X_k through the cache when one is configured."""
    if cache is None:
        return formula(k, caps, method)
    return cache.get_or_build(k, caps, method)
