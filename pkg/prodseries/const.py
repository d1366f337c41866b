"""Constants for the prodseries package."""

from typing import Final

DOMAIN: Final = "prodseries"

# Enumeration caps
DEFAULT_PERMUTATION_CAP: Final = 10
DEFAULT_SET_PARTITION_CAP: Final = 12
DEFAULT_DIRECT_PATH_LENGTH: Final = 9

# Construction methods
METHOD_AUTO: Final = "auto"
METHOD_PERMUTATION: Final = "permutation"
METHOD_COLLAPSED: Final = "collapsed"

METHODS: Final = [
    METHOD_AUTO,
    METHOD_PERMUTATION,
    METHOD_COLLAPSED,
]

# Provenance labels carried by formula polynomials
PROVENANCE_DISTINCT: Final = "distinct_index"
PROVENANCE_SYMMETRIZED: Final = "symmetrized"
PROVENANCE_XK: Final = "xk"
PROVENANCE_XK_COLLAPSED: Final = "xk_collapsed"
PROVENANCE_JSON: Final = "json"

# Render formats
FORMAT_PLAIN: Final = "plain"
FORMAT_LATEX: Final = "latex"
FORMAT_JSON: Final = "json"

FORMATS: Final = [
    FORMAT_PLAIN,
    FORMAT_LATEX,
    FORMAT_JSON,
]

# Evaluation modes
MODE_EXACT: Final = "exact"
MODE_FLOAT: Final = "float"

MODES: Final = [
    MODE_EXACT,
    MODE_FLOAT,
]

# Built-in row generators
GEN_ALT_QUARTIC: Final = "alt_quartic"
GEN_EULER: Final = "euler"
GEN_GEOMETRIC: Final = "geometric"
GEN_BINOMIAL: Final = "binomial"
GEN_ZERO: Final = "zero"

GENERATORS: Final = [
    GEN_ALT_QUARTIC,
    GEN_EULER,
    GEN_GEOMETRIC,
    GEN_BINOMIAL,
    GEN_ZERO,
]

# Generators taking a ":x" rational parameter
PARAMETRIC_GENERATORS: Final = [GEN_GEOMETRIC, GEN_BINOMIAL]

# Commands
COMMAND_FORMULA: Final = "formula"
COMMAND_EVAL: Final = "eval"
COMMAND_VERIFY: Final = "verify"
COMMAND_BELL: Final = "bell"
COMMAND_MULTINOMIAL: Final = "multinomial"
COMMAND_CONVERGE: Final = "converge"

COMMANDS: Final = [
    COMMAND_FORMULA,
    COMMAND_EVAL,
    COMMAND_VERIFY,
    COMMAND_BELL,
    COMMAND_MULTINOMIAL,
    COMMAND_CONVERGE,
]

# Configuration keys
CONF_COMMAND: Final = "command"
CONF_K: Final = "k"
CONF_K_MAX: Final = "k_max"
CONF_N_MAX: Final = "n_max"
CONF_TRIALS: Final = "trials"
CONF_SEED: Final = "seed"
CONF_INPUT: Final = "input"
CONF_FORMAT: Final = "format"
CONF_METHOD: Final = "method"
CONF_MODE: Final = "mode"
CONF_CHECK: Final = "check"
CONF_GENERATOR: Final = "generator"
CONF_N_LIST: Final = "n_list"
CONF_ESTIMATE: Final = "estimate"
CONF_BELL_N: Final = "bell_n"
CONF_BELL_K: Final = "bell_k"
CONF_X0: Final = "x0"
CONF_XS: Final = "xs"
CONF_A: Final = "a"
CONF_POWER: Final = "power"
CONF_CACHE_DIR: Final = "cache_dir"
CONF_VERBOSE: Final = "verbose"
CONF_MAX_PERMUTATIONS: Final = "max_permutations"
CONF_MAX_SET_PARTITIONS: Final = "max_set_partitions"
CONF_DIRECT_PATH_LENGTH: Final = "direct_path_length"

# Default values
DEFAULT_SEED: Final = 42
DEFAULT_TRIALS: Final = 100
DEFAULT_K_MAX: Final = 5
DEFAULT_N_MAX: Final = 5
DEFAULT_FORMAT: Final = FORMAT_PLAIN

# Random table entries: numerators in [-9, 9], denominators in [1, 9]
RANDOM_NUMERATOR_BOUND: Final = 9
RANDOM_DENOMINATOR_BOUND: Final = 9

# Lemma suites stay within these bounds
LEMMA_MAX_LENGTH: Final = 4
LEMMA_MAX_PART: Final = 4
LEMMA_MAX_ROWS: Final = 6

# Environment
ENV_CACHE_DIR: Final = "PRODSERIES_CACHE_DIR"
CACHE_FILE_TEMPLATE: Final = "x_{k}.json"

# Exit codes
EXIT_OK: Final = 0
EXIT_USAGE: Final = 1
EXIT_VERIFICATION_FAILED: Final = 2
EXIT_RESOURCE_LIMIT: Final = 3
