# src/apps/entanglement/constants.py

"""Constants for entanglement tests and searches"""

# Product dimension up to which PPT decides separability
PPT_EXACT_MAX_PRODUCT = 6

# Schmidt rank of one-copy distillation witnesses
WITNESS_SCHMIDT_RANK = 2

# Grid points handed to the simplex refinement, best first
SIMPLEX_REFINEMENT_STARTS = 3

# Iteration cap of each Nelder-Mead refinement, per simplex dimension
SIMPLEX_MAX_ITERATIONS_PER_DIM = 4000

# Function tolerance of the simplex refinement
SIMPLEX_VALUE_TOLERANCE = 1e-13

# Decimals used when tie-breaking equal search values on their witnesses
WITNESS_KEY_DECIMALS = 10
