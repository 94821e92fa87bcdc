# src/apps/experiments/constants.py

"""Constants for the command-line experiments"""

# Process exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_NUMERICAL = 4

THRESHOLD_COLUMNS = (
    "d",
    "q_star",
    "q_low",
    "q_high",
    "conjecture",
    "binding",
    "restricted_min",
    "unrestricted_min",
)
SWEEP_COLUMNS = ("q", "worst_min_pt_eig", "verdict")
CONJECTURE_COLUMNS = ("d", "measured_q_star", "conjecture_value", "difference", "violated")
CLASSIFY_COLUMNS = ("claim", "tag", "method", "margin", "detail", "witness_kind", "witness_value")

DEFAULT_SWEEP_STEPS = 61
DEFAULT_CONJECTURE_DMAX = 4

# Sweep rows whose restricted minimum stays above -tol are reported as likely PPT
DEFAULT_SWEEP_TOLERANCE = 1e-9

# Measured thresholds this far below the closed form count as a violation
CONJECTURE_TOLERANCE = 1e-3

# JSON keys whose numbers are written at full precision
FULL_PRECISION_KEYS = frozenset({"vectors"})
