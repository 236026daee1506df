import os

# Environment Variables
SEED_ENV_VAR = 'REAL_BUNDLE_SEED'
LOG_LEVEL_ENV_VAR = 'REAL_BUNDLE_LOG_LEVEL'

# File Paths
LOG_DIR = 'logs'
LOG_FILE = 'engine.log'
REFERENCE_TABLES_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data', 'reference_tables.json')

# Logging
LOG_LEVEL = os.getenv(LOG_LEVEL_ENV_VAR, 'WARNING').upper()

# Tolerances
DEFAULT_TOLERANCE = 1e-8      # membership, cocycle and involution checks (relative)
RANK_TOLERANCE = 1e-8         # singular values below max_sv * RANK_TOLERANCE * dim count as zero
WITNESS_TOLERANCE = 1e-6      # ||b^-1 h sigma(b) - canonical|| / ||canonical||
WITNESS_REFINEMENTS = 2       # extra normalization passes on b^-1 h sigma(b) before giving up
INVOLUTION_TOLERANCE = 1e-10  # ||sigma(sigma(M)) - M|| / ||M||
CONDITION_LIMIT = 1e8         # real-basis selection re-samples above this condition number

# Seeds & Sampling
DEFAULT_SEED = 20240917
DEFAULT_VERIFY_SAMPLES = 20
ORBIT_SAMPLE_SCALE = 0.6      # spread of the random coboundary b = expm(scale * X)

# Curve Classification
DEFAULT_DEGREE_WINDOW = (-4, 4)

# Census
MAX_CENSUS_CIRCLES = 12
BRUTE_FORCE_TUPLE_LIMIT = 20_000  # above this the oracle groups tuples by Stiefel-Whitney parity

# CLI
OUTPUT_FORMATS = ('table', 'json', 'tsv')
DEFAULT_OUTPUT_FORMAT = 'table'

# Verification Suites (family rows swept by `verify` and `tables`)
TABLE_GL_SIZES = (2, 3, 4, 5, 6)
TABLE_SL_SIZES = (3, 4, 5, 6)
TABLE_SO_SIZES = (4, 5, 6, 7)
TABLE_PGL_SIZES = (2, 3, 4, 5)
VERIFY_MAX_SIZE = 6
DISCRETENESS_MAX_SIZE = 5
CENSUS_RANKS = (2, 3, 4, 5)


def resolve_seed(explicit_seed=None) -> int:
    """
    Returns the seed to use: explicit flag, then REAL_BUNDLE_SEED, then the default.
    """
    if explicit_seed is not None:
        return int(explicit_seed)
    env_seed = os.getenv(SEED_ENV_VAR)
    if env_seed:
        return int(env_seed)
    return DEFAULT_SEED
