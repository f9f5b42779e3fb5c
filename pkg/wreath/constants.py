"""
Constants used across the wreath modules.
"""

# Breadth-first ball search
BALL_CAP = 5_000_000

# Machine runs
MAX_SILENT_STEPS = 1000
STACK_HEIGHT_FACTOR = 10
STACK_HEIGHT_SLACK = 16

# Language enumeration
ENUMERATION_CAP = 2_000_000
ENUMERATION_MAXLEN_GUIDE = 14

# Tabulating rule-defined machines for export
EXPORT_STATE_CAP = 20_000

# Two-tape logic: how far one tape may run ahead of the other
QUEUE_LIMIT = 5

# Subsidiary group ball used to measure padding counts
G_BALL_RADIUS = 12

# Default verification sizes per group selector
DEFAULT_RADIUS = {
    "ll": 6,
    "gz:z2": 4,
    "gz:z": 4,
    "f2": 3,
    "grid": 4,
}
DEFAULT_MAXLEN = {
    "ll": 6,
    "gz:z2": 5,
    "gz:z": 5,
    "f2": 8,
    "grid": 30,
}

# Padding symbol in convolutions
PAD = "#"
BRACKETS = "()[]"

# Status constants
STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_CAPPED = "capped"

# CLI exit codes
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_CAP = 3
