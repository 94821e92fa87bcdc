# src/apps/linalg/constants.py

"""Constants for the dense linear algebra kernel"""

# Relative gap below which neighbouring eigenvalues are treated as one cluster
DEGENERACY_TOLERANCE = 1e-10

# Entries smaller than this (relative to the first largest entry) never fix a phase
PHASE_TOLERANCE = 1e-12

LAPACK = "lapack"
JACOBI = "jacobi"
SOLVERS = (LAPACK, JACOBI)
