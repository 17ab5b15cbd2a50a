"""
Constants used throughout CoboScope.

This module contains all default values used for configuration,
including truncation orders, dimension bounds and cache settings.
"""

# Truncation defaults
DEFAULT_FGL_DEGREE = 6  # total (u,v)-degree D of formal group laws
DEFAULT_Q_ORDER = 6  # order N of q-series
DEFAULT_VERTEX_N_BOUND = 3  # largest n for the localization oracle
DEFAULT_ENUMERATION_BOUND = 6  # largest plane-partition size enumerated
DEFAULT_DIMENSION_BOUND = 4  # largest dimension handled by Chern-number calculus

# Vertex oracle
DEFAULT_SEED = 20240601
SPECIALIZATION_RANGE = (1, 1000)  # integer range for generic torus weights
MAX_SPECIALIZATION_ATTEMPTS = 16
VERTEX_CONVENTION_VERSION = 1  # bump to invalidate cached n_dt values

# Cache file
CACHE_ENV_VAR = "COBOSCOPE_CACHE"
DEFAULT_CACHE_FILE_NAME = ".coboscope_cache.tsv"

# Output formats
OUTPUT_FORMATS = ["text", "json"]

# Exit codes
EXIT_OK = 0
EXIT_VERIFICATION_FAILURE = 1
EXIT_USAGE_ERROR = 2

# Variable names for formal group laws
FGL_SERIES_VARIABLES = ("u", "v", "w")
FGL_PARAMETER_PREFIX = "p"
Q_VARIABLE = "q"
UNIVARIATE_VARIABLE = "t"

# Canonical aliases for hyperplane classes of product factors
HYPERPLANE_LETTER_ALIASES = ["a", "b", "c", "d"]
