# src/apps/channels/constants.py

"""Constants for channel representations and files"""

# (A, B, A', B') <-> (A, A', B, B'); the permutation is its own inverse
SWAP_MIDDLE_FACTORS = (0, 2, 1, 3)

DEFAULT_CHANNEL_NAME = "channel"
