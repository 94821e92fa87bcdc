# src/apps/classifiers/constants.py

"""Constants for channel classification"""

# Methods recorded on verdicts
METHOD_TRANSPOSED_CHOI_PSD = "transposed_choi_psd"
METHOD_WORST_CASE_OUTPUT = "worst_case_output_search"
METHOD_BLOCK_POSITIVITY = "block_positivity_seesaw"
METHOD_ONE_SIDED_CHOI_PPT = "one_sided_choi_ppt"
METHOD_CHOI_PPT = "choi_ppt"
METHOD_CHOI_DISTILLATION = "choi_distillation_search"
METHOD_OUTPUT_DISTILLATION = "output_distillation_search"
METHOD_PPT_INDUCING_SUBSET = "ppt_inducing_subset"
METHOD_CHOI_PSD = "choi_psd"
METHOD_CHOI_PRODUCT = "choi_product_seesaw"
METHOD_LOCAL_FACTORS = "local_factors"

DETAIL_PPT_CONSISTENT = "ppt-consistent"
DETAIL_BREAKING = "entanglement-breaking"
DETAIL_EXACT_TWO_QUBIT = "separable iff PPT on 2x2"
DETAIL_SEARCH_CONFIDENCE = "annihilating up to search confidence"

# Relative gap allowed between a stored witness value and its re-evaluation
REVERIFY_TOLERANCE = 1e-8

# Desk-scale range of the depolarizing threshold
MIN_THRESHOLD_DIMENSION = 2
MAX_THRESHOLD_DIMENSION = 5

# Restricted minima above -SIGN_TOLERANCE count as PPT outputs during bisection
SIGN_TOLERANCE = 1e-12

# Unrestricted minimum this far below the restricted one flags the restriction
RESTRICTION_TOLERANCE = 1e-6
