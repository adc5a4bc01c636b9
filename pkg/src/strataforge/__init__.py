"""strata-forge: invariants and desk-scale statistics of hyperelliptic curves
over small finite fields.

The library computes, exactly, the quantities a p-rank/Newton-polygon census
needs (zeta numerators, Hasse-Witt matrices, symplectic baselines, boundary
combinatorics) and runs reproducible experiments over exhaustive or sampled
families of curves.
"""

SCHEMA_VERSION = "strata-forge/1"

from .errors import BudgetExceededError, ConsistencyError, ExperimentFailed  # noqa: E402,F401
from .ffield import (  # noqa: E402,F401
    FieldDescriptor,
    FqElement,
    FqPoly,
    enumerate_monic,
    field_new,
    is_square,
    poly_pow,
    squarefree,
)
