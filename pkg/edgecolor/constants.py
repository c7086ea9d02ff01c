SUCCESS = 0
BOUND_FAILURE = 1
INPUT_ERROR = 2
INTERNAL_STATE = 3
KEYBOARD_INTERRUPT = 130

DEFAULT_MAX_N = 22
DEFAULT_ORACLE_EDGES = 40
DEFAULT_SEED = 0
MAX_RECURSION = 4
MAX_NODES = 5000

TRACE_SCHEMA = 'edgecolor-trace'
TRACE_VERSION = 1
REPRO_FILE = 'edgecolor-repro.yml'

LAST_ERROR = 0
VERSION = '1.0.0'
