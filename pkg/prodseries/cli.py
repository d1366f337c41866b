"""Command line interface for prodseries."""

from __future__ import annotations

import argparse
import asyncio
import csv
import io
import json
import logging
import math
import sys
from collections.abc import Callable, Sequence
from fractions import Fraction
from typing import NoReturn

import colorlog

from .bell import BellQuery, bell_general, bell_ordinary_direct, multinomial_via_main
from .cache import cached_formula
from .config import RunConfig
from .const import (
    COMMAND_BELL,
    COMMAND_CONVERGE,
    COMMAND_EVAL,
    COMMAND_FORMULA,
    COMMAND_MULTINOMIAL,
    COMMAND_VERIFY,
    DOMAIN,
    EXIT_OK,
    EXIT_RESOURCE_LIMIT,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    FORMATS,
    METHODS,
    MODE_EXACT,
    MODES,
)
from .convergence import async_truncation_sequence, averaged_tail_estimate
from .exceptions import InvalidArgumentError, ResourceLimitError
from .rational import format_rational
from .render import render
from .series import (
    evaluate_formula,
    evaluate_formula_float,
    table_from_json,
    truncated_product,
)
from .verify import run_verification

_LOGGER = logging.getLogger(__name__)

FLOAT_AGREEMENT = 1e-9
LOG_FORMAT = "%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s"

CommandResult = tuple[str, int]


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    """Return the parser for all subcommands."""
    common = _ArgumentParser(add_help=False)
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug"
    )
    common.add_argument("--cache-dir", help="directory of cached X_k formulas")
    common.add_argument("--max-permutations", type=int)
    common.add_argument("--max-set-partitions", type=int)
    common.add_argument("--direct-path-length", type=int)

    parser = _ArgumentParser(
        prog=DOMAIN,
        description="Coefficients of products of power series with constant term 1.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    formula = commands.add_parser(
        COMMAND_FORMULA, parents=[common], help="print the formula for X_k"
    )
    formula.add_argument("--k", type=int, required=True)
    formula.add_argument("--format", choices=FORMATS)
    formula.add_argument("--method", choices=METHODS)

    evaluate = commands.add_parser(
        COMMAND_EVAL, parents=[common], help="evaluate X_1..X_k on a table"
    )
    evaluate.add_argument("--input", required=True, help="SeriesTable JSON file")
    evaluate.add_argument("--k-max", type=int)
    evaluate.add_argument("--mode", choices=MODES)
    evaluate.add_argument("--check", action="store_true")

    verify = commands.add_parser(
        COMMAND_VERIFY, parents=[common], help="run the randomized suites"
    )
    verify.add_argument("--k-max", type=int)
    verify.add_argument("--n-max", type=int)
    verify.add_argument("--trials", type=int)
    verify.add_argument("--seed", type=int)

    bell = commands.add_parser(
        COMMAND_BELL, parents=[common], help="ordinary Bell polynomial value"
    )
    bell.add_argument("--n", dest="bell_n", type=int, required=True)
    bell.add_argument("--k", dest="bell_k", type=int, required=True)
    bell.add_argument("--x0", help="leading argument; xs then holds the rest")
    bell.add_argument("--xs", help="comma separated rationals")

    multinomial = commands.add_parser(
        COMMAND_MULTINOMIAL, parents=[common], help="(1 + a_1 + ... + a_alpha)^N"
    )
    multinomial.add_argument("--a", required=True, help="comma separated rationals")
    multinomial.add_argument("--N", dest="power", type=int, required=True)

    converge = commands.add_parser(
        COMMAND_CONVERGE, parents=[common], help="X_k of the first N factors"
    )
    converge.add_argument("--gen", dest="generator", required=True)
    converge.add_argument("--k", type=int, required=True)
    converge.add_argument("--n", dest="n_list", required=True, help="e.g. 10,100")
    converge.add_argument("--mode", choices=MODES)
    converge.add_argument("--estimate", action="store_true")
    return parser


def setup_logging(verbose: int) -> None:
    """Send package logs to stderr with colors."""
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG
    handler = colorlog.StreamHandler(sys.stderr)
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT))
    logger = logging.getLogger(DOMAIN)
    for old in list(logger.handlers):
        logger.removeHandler(old)
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False


def _format_float(value: float) -> str:
    return f"{value + 0.0:.17g}"


def _format_value(value: Fraction | float) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    return _format_float(value)


def cmd_formula(config: RunConfig) -> CommandResult:
    """Print X_k in the requested format."""
    polynomial = cached_formula(config.k, config.caps, config.cache, config.method)
    return render(polynomial, config.format) + "\n", EXIT_OK


def cmd_eval(config: RunConfig) -> CommandResult:
    """Print X_1..X_{k_max} of a table as JSON."""
    try:
        text = config.input.read_text(encoding="utf-8")
    except OSError as err:
        msg = f"Cannot read {config.input}: {err.strerror}"
        raise InvalidArgumentError(msg) from err
    table = table_from_json(text)
    k_max = config.k_max or table.K
    if k_max > table.K:
        msg = f"k-max={k_max} exceeds the table truncation K={table.K}"
        raise InvalidArgumentError(msg)

    values: list[Fraction | float] = []
    for k in range(1, k_max + 1):
        polynomial = cached_formula(k, config.caps, config.cache)
        if config.mode == MODE_EXACT:
            values.append(evaluate_formula(polynomial, table))
        else:
            values.append(evaluate_formula_float(polynomial, table))
    payload: dict[str, object] = {
        "k_max": k_max,
        "mode": config.mode,
        "X": [
            format_rational(value) if isinstance(value, Fraction) else value
            for value in values
        ],
    }
    status = EXIT_OK
    if config.check:
        oracle = truncated_product(table, k_max)
        agree = [
            value == expected
            if isinstance(value, Fraction)
            else math.isclose(
                value, float(expected), rel_tol=FLOAT_AGREEMENT, abs_tol=FLOAT_AGREEMENT
            )
            for value, expected in zip(values, oracle, strict=True)
        ]
        payload["oracle"] = [format_rational(value) for value in oracle]
        payload["agree"] = agree
        payload["all_agree"] = all(agree)
        if not all(agree):
            _LOGGER.error("Formula and oracle disagree at k=%s", agree.index(False) + 1)
            status = EXIT_VERIFICATION_FAILED
    return json.dumps(payload) + "\n", status


def cmd_verify(config: RunConfig) -> CommandResult:
    """Run the verification suites and print their report."""
    report = run_verification(
        config.k_max,
        config.n_max,
        config.trials,
        config.seed,
        config.caps,
        config.cache,
    )
    status = EXIT_OK if report.ok else EXIT_VERIFICATION_FAILED
    return report.summary() + "\n", status


def cmd_bell(config: RunConfig) -> CommandResult:
    """Print B^_{n,k}, cross-checked between the two evaluation paths."""
    if config.x0 is not None:
        x0, rest = config.x0, config.xs
    elif config.xs:
        x0, rest = config.xs[0], config.xs[1:]
    else:
        msg = "bell needs --x0 or --xs"
        raise InvalidArgumentError(msg)
    via_main = bell_general(
        config.bell_n, config.bell_k, x0, rest, config.caps, config.cache
    )
    direct = bell_ordinary_direct(BellQuery(config.bell_n, config.bell_k, (x0, *rest)))
    if via_main != direct:
        _LOGGER.error(
            "Bell paths disagree: main formula %s, direct %s",
            format_rational(via_main),
            format_rational(direct),
        )
        return format_rational(via_main) + "\n", EXIT_VERIFICATION_FAILED
    return format_rational(via_main) + "\n", EXIT_OK


def cmd_multinomial(config: RunConfig) -> CommandResult:
    """Print (1 + a_1 + ... + a_alpha)^N from the alternating expansion."""
    value = multinomial_via_main(config.a, config.power, config.caps, config.cache)
    return format_rational(value) + "\n", EXIT_OK


def cmd_converge(config: RunConfig) -> CommandResult:
    """Print the truncation sequence as CSV."""
    values = asyncio.run(
        async_truncation_sequence(
            config.generator,
            config.k,
            config.n_list,
            mode=config.mode,
            caps=config.caps,
            cache=config.cache,
        )
    )
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["N", "value"])
    for size, value in zip(config.n_list, values, strict=True):
        writer.writerow([size, _format_value(value)])
    if config.estimate:
        writer.writerow(["estimate", _format_float(averaged_tail_estimate(values))])
    return buffer.getvalue(), EXIT_OK


COMMAND_HANDLERS: dict[str, Callable[[RunConfig], CommandResult]] = {
    COMMAND_FORMULA: cmd_formula,
    COMMAND_EVAL: cmd_eval,
    COMMAND_VERIFY: cmd_verify,
    COMMAND_BELL: cmd_bell,
    COMMAND_MULTINOMIAL: cmd_multinomial,
    COMMAND_CONVERGE: cmd_converge,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    try:
        config = RunConfig.from_options(vars(args))
        output, status = COMMAND_HANDLERS[config.command](config)
    except ResourceLimitError as err:
        _LOGGER.error("Resource limit reached: %s", err)
        return EXIT_RESOURCE_LIMIT
    except InvalidArgumentError as err:
        _LOGGER.error("%s", err)
        return EXIT_USAGE
    sys.stdout.write(output)
    sys.stdout.flush()
    return status
