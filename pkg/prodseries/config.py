"""Run configuration for the command line, validated with voluptuous."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import voluptuous as vol

from .cache import FormulaCache
from .combinatorics import EnumerationCaps
from .const import (
    COMMAND_BELL,
    COMMAND_CONVERGE,
    COMMAND_EVAL,
    COMMAND_FORMULA,
    COMMAND_MULTINOMIAL,
    COMMAND_VERIFY,
    COMMANDS,
    CONF_A,
    CONF_BELL_K,
    CONF_BELL_N,
    CONF_CACHE_DIR,
    CONF_CHECK,
    CONF_COMMAND,
    CONF_DIRECT_PATH_LENGTH,
    CONF_ESTIMATE,
    CONF_FORMAT,
    CONF_GENERATOR,
    CONF_INPUT,
    CONF_K,
    CONF_K_MAX,
    CONF_MAX_PERMUTATIONS,
    CONF_MAX_SET_PARTITIONS,
    CONF_METHOD,
    CONF_MODE,
    CONF_N_LIST,
    CONF_N_MAX,
    CONF_POWER,
    CONF_SEED,
    CONF_TRIALS,
    CONF_VERBOSE,
    CONF_X0,
    CONF_XS,
    DEFAULT_DIRECT_PATH_LENGTH,
    DEFAULT_FORMAT,
    DEFAULT_K_MAX,
    DEFAULT_N_MAX,
    DEFAULT_PERMUTATION_CAP,
    DEFAULT_SEED,
    DEFAULT_SET_PARTITION_CAP,
    DEFAULT_TRIALS,
    FORMATS,
    METHOD_AUTO,
    METHODS,
    MODE_EXACT,
    MODE_FLOAT,
    MODES,
)
from .exceptions import InvalidArgumentError
from .rational import parse_rational, parse_rational_list

_LOGGER = logging.getLogger(__name__)

SEED_BITS = 64

# Options each command cannot run without
REQUIRED_OPTIONS: dict[str, list[str]] = {
    COMMAND_FORMULA: [CONF_K],
    COMMAND_EVAL: [CONF_INPUT],
    COMMAND_BELL: [CONF_BELL_N, CONF_BELL_K],
    COMMAND_MULTINOMIAL: [CONF_A, CONF_POWER],
    COMMAND_CONVERGE: [CONF_GENERATOR, CONF_K, CONF_N_LIST],
}


def _rational(value: Any) -> Fraction:
    try:
        return parse_rational(value)
    except InvalidArgumentError as err:
        raise vol.Invalid(str(err)) from err


def _rational_list(value: Any) -> tuple[Fraction, ...]:
    if isinstance(value, str):
        try:
            return parse_rational_list(value)
        except InvalidArgumentError as err:
            raise vol.Invalid(str(err)) from err
    if isinstance(value, (list, tuple)):
        return tuple(_rational(item) for item in value)
    msg = f"expected a comma separated list of rationals, got {value!r}"
    raise vol.Invalid(msg)


def _int_list(value: Any) -> tuple[int, ...]:
    items = value.split(",") if isinstance(value, str) else value
    try:
        numbers = tuple(int(item) for item in items if str(item).strip())
    except (TypeError, ValueError) as err:
        msg = f"expected a comma separated list of integers, got {value!r}"
        raise vol.Invalid(msg) from err
    if not numbers or any(number < 1 for number in numbers):
        msg = f"expected positive integers, got {value!r}"
        raise vol.Invalid(msg)
    return numbers


_POSITIVE = vol.All(vol.Coerce(int), vol.Range(min=1))
_OPTIONAL_POSITIVE = vol.Any(None, _POSITIVE)

RUN_CONFIG_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_COMMAND): vol.In(COMMANDS),
        vol.Optional(CONF_K, default=None): vol.Any(
            None, vol.All(vol.Coerce(int), vol.Range(min=0))
        ),
        vol.Optional(CONF_K_MAX, default=None): _OPTIONAL_POSITIVE,
        vol.Optional(CONF_N_MAX, default=DEFAULT_N_MAX): _POSITIVE,
        vol.Optional(CONF_TRIALS, default=DEFAULT_TRIALS): vol.All(
            vol.Coerce(int), vol.Range(min=0)
        ),
        vol.Optional(CONF_SEED, default=DEFAULT_SEED): vol.All(
            vol.Coerce(int), vol.Range(min=-(2 ** (SEED_BITS - 1)), max=2**SEED_BITS - 1)
        ),
        vol.Optional(CONF_INPUT, default=None): vol.Any(None, vol.Coerce(Path)),
        vol.Optional(CONF_FORMAT, default=DEFAULT_FORMAT): vol.In(FORMATS),
        vol.Optional(CONF_METHOD, default=METHOD_AUTO): vol.In(METHODS),
        vol.Optional(CONF_MODE, default=None): vol.Any(None, vol.In(MODES)),
        vol.Optional(CONF_CHECK, default=False): bool,
        vol.Optional(CONF_GENERATOR, default=None): vol.Any(None, str),
        vol.Optional(CONF_N_LIST, default=None): vol.Any(None, _int_list),
        vol.Optional(CONF_ESTIMATE, default=False): bool,
        vol.Optional(CONF_BELL_N, default=None): _OPTIONAL_POSITIVE,
        vol.Optional(CONF_BELL_K, default=None): _OPTIONAL_POSITIVE,
        vol.Optional(CONF_X0, default=None): vol.Any(None, _rational),
        vol.Optional(CONF_XS, default=()): _rational_list,
        vol.Optional(CONF_A, default=None): vol.Any(None, _rational_list),
        vol.Optional(CONF_POWER, default=None): _OPTIONAL_POSITIVE,
        vol.Optional(CONF_CACHE_DIR, default=None): vol.Any(None, vol.Coerce(Path)),
        vol.Optional(CONF_VERBOSE, default=0): vol.All(
            vol.Coerce(int), vol.Range(min=0)
        ),
        vol.Optional(CONF_MAX_PERMUTATIONS, default=DEFAULT_PERMUTATION_CAP): _POSITIVE,
        vol.Optional(
            CONF_MAX_SET_PARTITIONS, default=DEFAULT_SET_PARTITION_CAP
        ): _POSITIVE,
        vol.Optional(
            CONF_DIRECT_PATH_LENGTH, default=DEFAULT_DIRECT_PATH_LENGTH
        ): _POSITIVE,
    },
    extra=vol.REMOVE_EXTRA,
)


@dataclass(frozen=True)
class RunConfig:
    """One validated command line invocation."""

    command: str
    k: int | None = None
    k_max: int | None = None
    n_max: int = DEFAULT_N_MAX
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    input: Path | None = None
    format: str = DEFAULT_FORMAT
    method: str = METHOD_AUTO
    mode: str = MODE_EXACT
    check: bool = False
    generator: str | None = None
    n_list: tuple[int, ...] | None = None
    estimate: bool = False
    bell_n: int | None = None
    bell_k: int | None = None
    x0: Fraction | None = None
    xs: tuple[Fraction, ...] = ()
    a: tuple[Fraction, ...] | None = None
    power: int | None = None
    cache_dir: Path | None = None
    verbose: int = 0
    caps: EnumerationCaps = field(default_factory=EnumerationCaps)

    @classmethod
    def from_options(cls, options: dict[str, Any]) -> RunConfig:
        """Validate raw options, e.g. ``vars()`` of parsed arguments."""
        supplied = {key: value for key, value in options.items() if value is not None}
        try:
            data = RUN_CONFIG_SCHEMA(supplied)
        except vol.Invalid as err:
            msg = f"Invalid option {err.path[0] if err.path else ''}: {err.msg}"
            raise InvalidArgumentError(msg) from err

        command = data[CONF_COMMAND]
        missing = [key for key in REQUIRED_OPTIONS.get(command, []) if data[key] is None]
        if missing:
            msg = f"Command {command!r} requires {', '.join(missing)}"
            raise InvalidArgumentError(msg)
        if command == COMMAND_FORMULA and data[CONF_K] == 0:
            msg = "Command 'formula' requires k >= 1"
            raise InvalidArgumentError(msg)

        if command == COMMAND_VERIFY and data[CONF_K_MAX] is None:
            data[CONF_K_MAX] = DEFAULT_K_MAX
        if data[CONF_MODE] is None:
            data[CONF_MODE] = MODE_FLOAT if command == COMMAND_CONVERGE else MODE_EXACT

        caps = EnumerationCaps(
            permutations=data.pop(CONF_MAX_PERMUTATIONS),
            set_partitions=data.pop(CONF_MAX_SET_PARTITIONS),
            direct_path_length=data.pop(CONF_DIRECT_PATH_LENGTH),
        )
        _LOGGER.debug("Run configuration for %s: %s, %s", command, data, caps)
        return cls(caps=caps, **data)

    @property
    def cache(self) -> FormulaCache | None:
        """Return the cache named by --cache-dir, else by the environment."""
        if self.cache_dir is None:
            return FormulaCache.from_env()
        return FormulaCache(self.cache_dir)
