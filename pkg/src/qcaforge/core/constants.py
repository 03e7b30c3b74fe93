# Constants for qcaforge

DEFAULT_CONFIG_PATH = "configs/config.yaml"
DEFAULT_LOGGING_CONFIG_PATH = "configs/logging.yaml"
DEFAULT_CIRCUITS_DIR = "circuits"

THREADS_ENV_VAR = "QCAFORGE_THREADS"

# File format headers
LAYOUT_HEADER = "qcaforge-layout v1"
TABLE_HEADER = "qcaforge-table v1"
VECTORS_HEADER = "qcaforge-vectors v1"

LAYOUT_SUFFIX = ".qcaforge"
TABLE_SUFFIX = ".table"

# Geometry (nm)
GRID_PITCH_NM = 20
CELL_SIZE_NM = 18.0
DOT_OFFSET_NM = 4.5  # dot centre from cell centre along x and y
DOT_DIAMETER_NM = 5.0

# Physical constants (SI)
ELEMENTARY_CHARGE = 1.602176634e-19
VACUUM_PERMITTIVITY = 8.8541878128e-12

NUM_CLOCK_ZONES = 4

MAX_EXHAUSTIVE_INPUTS = 12
