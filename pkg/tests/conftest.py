"""Test constants and fixtures for prodseries."""

import logging
import random
from collections.abc import Callable, Generator
from pathlib import Path

import pytest

from prodseries.cache import FormulaCache
from prodseries.const import DEFAULT_SEED, DOMAIN, ENV_CACHE_DIR
from prodseries.series import SeriesTable
from prodseries.verify import random_table

SAMPLE_DIR = Path(__file__).resolve().parent.parent / "config"


@pytest.fixture
def rng() -> random.Random:
    """Return a generator seeded with the default seed."""
    return random.Random(DEFAULT_SEED)


@pytest.fixture
def make_table(rng: random.Random) -> Callable[[int, int], SeriesTable]:
    """Return a factory of random rational tables drawn from ``rng``."""

    def factory(n_rows: int, width: int) -> SeriesTable:
        return random_table(rng, n_rows, width)

    return factory


@pytest.fixture
def formula_cache(tmp_path: Path) -> FormulaCache:
    """Return a formula cache in a fresh directory."""
    return FormulaCache(tmp_path / "formulas")


@pytest.fixture
def sample_path() -> Callable[[str], Path]:
    """Return the path of a sample table under config/."""

    def resolve(name: str) -> Path:
        return SAMPLE_DIR / name

    return resolve


@pytest.fixture(autouse=True)
def isolate_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep a user's cache directory out of the tests."""
    monkeypatch.delenv(ENV_CACHE_DIR, raising=False)


@pytest.fixture(autouse=True)
def suppress_library_logs() -> Generator[None]:
    """Silence package loggers and undo any handler the CLI installs."""
    logger = logging.getLogger(DOMAIN)
    original_handlers = logger.handlers[:]
    original_level = logger.level
    logger.handlers.clear()
    logger.addHandler(logging.NullHandler())
    logger.setLevel(logging.CRITICAL)

    yield

    logger.handlers.clear()
    logger.handlers.extend(original_handlers)
    logger.setLevel(original_level)
    logger.propagate = True
