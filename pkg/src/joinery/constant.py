APP_NAME = 'joinery'
ENV_PREFIX = 'JOINERY_'

DEFAULT_PERIOD_CAP = 1_000_000
DEFAULT_LP_BOUND = 400  # product tuples
DEFAULT_TRUNCATION_BOUND = 1 << 20  # support tuples
DEFAULT_WEYL_DIRECT_LIMIT = 1 << 20  # terms summed directly
DEFAULT_WORKERS = 1

DEFAULT_TORUS_GRID = 64
DEFAULT_TORUS_TOLERANCE = 1e-8
DEFAULT_TORUS_FREQUENCIES = 8
RESONANCE_TOLERANCE = 1e-12

DIGEST_LENGTH = 16

DEFAULT_LOG_FILE_SIZE = 5_000_000  # 5 MB
DEFAULT_BACKUP_COUNT = 3

DEFAULT_ALPHA = 0.6180339887498949  # (sqrt(5) - 1) / 2
