"""Exact decompositions of sum-symmetric matrices and optimal quota allocation.

Library entry points
--------------------
- :func:`circuit_decompose` -- nonnegative sum-symmetric matrix -> positive circuits
- :func:`birkhoff_decompose` -- doubly balanced matrix -> weighted permutations
- :func:`optimal_partition` -- scenario -> score-maximising feasible allocation
- :mod:`sumsym.oracle` -- exhaustive checks for all of the above
"""

from .allocation import (
    Allocation,
    Item,
    Scenario,
    Treatment,
    is_sorted_partition,
    optimal_partition,
    score,
    validate,
)
from .circuits import (
    Circuit,
    WeightedPermutation,
    birkhoff_decompose,
    circuit_decompose,
    circuit_to_matrix,
    find_positive_cycle,
    permutation_to_circuits,
)
from .matrix import SquareMatrix, is_sum_symmetric, nonzero_count, sums
from .ordered_group import LexPair, Ordering, add, compare, sub
from .oracle import (
    brute_force_best,
    check_rearrangement,
    enumerate_feasible,
    overlap_matrix,
    verify_decomposition,
)

__all__ = [
    "Allocation", "Item", "Scenario", "Treatment", "is_sorted_partition",
    "optimal_partition", "score", "validate",
    "Circuit", "WeightedPermutation", "birkhoff_decompose", "circuit_decompose",
    "circuit_to_matrix", "find_positive_cycle", "permutation_to_circuits",
    "SquareMatrix", "is_sum_symmetric", "nonzero_count", "sums",
    "LexPair", "Ordering", "add", "compare", "sub",
    "brute_force_best", "check_rearrangement", "enumerate_feasible",
    "overlap_matrix", "verify_decomposition",
]
