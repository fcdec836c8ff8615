import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from sumsym import (
    Circuit,
    LexPair,
    SquareMatrix,
    WeightedPermutation,
    birkhoff_decompose,
    circuit_decompose,
    circuit_to_matrix,
    find_positive_cycle,
    is_sum_symmetric,
    nonzero_count,
    permutation_to_circuits,
)
from sumsym.circuits import sum_circuits
from sumsym.errors import (
    NegativeEntryError,
    NoCycleError,
    NotSumSymmetricError,
    TheoremViolation,
    UnbalancedMatrixError,
)
from strategies import sum_symmetric_matrices, symmetrised_rational_matrices


def simple_cycles(T):
    """Every simple cycle of the positive-support digraph, canonically rotated (exhaustive)."""
    zero = T.domain.zero
    found = set()
    for m in range(1, T.n + 1):
        for nodes in itertools.permutations(range(T.n), m):
            if nodes[0] != min(nodes):
                continue
            if all(T[nodes[a], nodes[(a + 1) % m]] > zero for a in range(m)):
                found.add(nodes)
    return found


def rotate(cycle):
    k = cycle.index(min(cycle))
    return tuple(cycle[k:] + cycle[:k])


def rebuild(circuits, n, domain):
    """Independent reconstruction through circuit_to_matrix and matrix addition."""
    total = SquareMatrix.zeros(n, domain)
    for c in circuits:
        total = total + circuit_to_matrix(c, n)
    return total


def identity(n):
    return SquareMatrix([[int(i == j) for j in range(n)] for i in range(n)])


# --- Circuit / circuit_to_matrix -------------------------------------------------

@pytest.mark.parametrize("cycle, weight, n, expected", [
    ((0,), 3, 2, [[3, 0], [0, 0]]),
    ((0, 1), 2, 2, [[0, 2], [2, 0]]),
    ((0, 1, 2), 1, 3, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
])
def test_circuit_to_matrix(cycle, weight, n, expected):
    M = circuit_to_matrix(Circuit(cycle, weight), n)
    assert M.to_lists() == expected
    assert is_sum_symmetric(M)


def test_circuit_invariants():
    assert Circuit((2, 0, 1), 1).cycle == (0, 1, 2)
    assert str(Circuit((1, 0), Fraction(3, 2))) == "CIRCUIT 1>2 @ 3/2"
    with pytest.raises(ValueError):
        Circuit((0, 0), 1)
    with pytest.raises(ValueError):
        Circuit((), 1)
    with pytest.raises(ValueError):
        Circuit((0,), 0)
    with pytest.raises(ValueError):
        Circuit((0,), LexPair(-1, 5))
    with pytest.raises(IndexError):
        circuit_to_matrix(Circuit((0, 3), 1), 3)


# --- find_positive_cycle -----------------------------------------------------------

@pytest.mark.parametrize("rows, expected", [
    ([[1, 2], [2, 1]], (0,)),
    ([[0, 2], [2, 0]], (0, 1)),
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], (0,)),
])
def test_find_positive_cycle_examples(rows, expected):
    T = SquareMatrix(rows)
    cycle = find_positive_cycle(T)
    assert cycle == expected
    assert rotate(cycle) in simple_cycles(T)


def test_two_cycle_is_the_only_cycle():
    assert simple_cycles(SquareMatrix([[0, 2], [2, 0]])) == {(0, 1)}


def test_walk_skips_zero_rows_and_returns_inner_cycle():
    # 1 -> 3 -> 2 -> 3: the cycle is {2,3}, and index 1 is not on it.
    T = SquareMatrix([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 4], [0, 0, 4, 0]])
    assert find_positive_cycle(T) == (2, 3)
    T = SquareMatrix([[0, 0, 1], [1, 0, 1], [0, 2, 0]])
    assert find_positive_cycle(T) == (0, 2, 1)
    assert rotate((0, 2, 1)) in simple_cycles(T)


def test_find_positive_cycle_errors():
    with pytest.raises(NoCycleError):
        find_positive_cycle(SquareMatrix.zeros(3))
    with pytest.raises(NotSumSymmetricError):
        find_positive_cycle(SquareMatrix([[0, 5], [0, 0]]))


@given(sum_symmetric_matrices("int"))
def test_found_cycle_is_a_real_cycle(T):
    if nonzero_count(T) == 0:
        return
    cycle = find_positive_cycle(T)
    assert rotate(cycle) in simple_cycles(T)


# --- circuit_decompose -------------------------------------------------------------

def test_decompose_zero():
    assert circuit_decompose(SquareMatrix.zeros(3)) == []


def test_decompose_two_cycle():
    T = SquareMatrix([[0, 3], [3, 0]])
    out = circuit_decompose(T)
    assert out == [Circuit((0, 1), 3)]
    assert rebuild(out, 2, "int") == T


def test_decompose_golden_trace():
    T = SquareMatrix([[1, 2], [2, 1]])
    out = circuit_decompose(T)
    assert out == [Circuit((0,), 1), Circuit((0, 1), 2), Circuit((1,), 1)]
    assert rebuild(out, 2, "int") == T


def test_decompose_lexpair():
    w = LexPair(1, 2)
    T = SquareMatrix([[LexPair(0, 0), w], [w, LexPair(0, 0)]])
    out = circuit_decompose(T)
    assert out == [Circuit((0, 1), w)]
    assert rebuild(out, 2, "lexpair") == T


def test_decompose_lexpair_non_archimedean():
    # (0,1) is positive but infinitesimal against (1,0); the minimum must be exact.
    big, tiny = LexPair(1, -7), LexPair(0, 1)
    T = sum_circuits([Circuit((0, 1, 2), big), Circuit((0, 1), tiny)], 3, "lexpair")
    out = circuit_decompose(T)
    assert rebuild(out, 3, "lexpair") == T
    assert all(c.weight > LexPair(0, 0) for c in out)


def test_decompose_rejects_bad_input():
    with pytest.raises(NegativeEntryError):
        circuit_decompose(SquareMatrix([[-1]]))
    with pytest.raises(NotSumSymmetricError) as info:
        circuit_decompose(SquareMatrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]]))
    assert info.value.index == 0
    assert (info.value.row_sum, info.value.col_sum) == ("1", "0")
    assert "index 1" in str(info.value)


def check_decomposition(T):
    out = circuit_decompose(T)
    assert rebuild(out, T.n, T.domain) == T
    assert len(out) <= nonzero_count(T)
    zero = T.domain.zero
    support = T.positive_support()
    for c in out:
        assert c.weight > zero
        assert set(c.edges()) <= support
    assert circuit_decompose(T) == out


@settings(max_examples=150)
@given(sum_symmetric_matrices("int"))
def test_reconstruction_int(T):
    check_decomposition(T)


@settings(max_examples=100)
@given(sum_symmetric_matrices("rational"))
def test_reconstruction_rational(T):
    check_decomposition(T)


@settings(max_examples=100)
@given(symmetrised_rational_matrices())
def test_reconstruction_symmetrised(T):
    check_decomposition(T)


@settings(max_examples=100)
@given(sum_symmetric_matrices("lexpair"))
def test_reconstruction_lexpair(T):
    check_decomposition(T)


# --- birkhoff_decompose --------------------------------------------------------------

def rebuild_perms(perms, n, domain):
    total = SquareMatrix.zeros(n, domain)
    for p in perms:
        total = total + p.to_matrix()
    return total


def test_birkhoff_identity():
    assert birkhoff_decompose(identity(4)) == [WeightedPermutation((0, 1, 2, 3), 1)]


def test_birkhoff_all_ones():
    T = SquareMatrix([[1, 1], [1, 1]])
    out = birkhoff_decompose(T)
    assert out == [WeightedPermutation((0, 1), 1), WeightedPermutation((1, 0), 1)]
    assert rebuild_perms(out, 2, "int") == T


def test_birkhoff_three_cycle():
    T = SquareMatrix([[0, 2, 0], [0, 0, 2], [2, 0, 0]])
    out = birkhoff_decompose(T)
    assert out == [WeightedPermutation((1, 2, 0), 2)]
    assert rebuild_perms(out, 3, "int") == T


def test_birkhoff_needs_augmenting_path():
    # Greedy row-by-row matching takes (1,1) and then strands row 3.
    T = SquareMatrix([[1, 1, 0], [1, 0, 1], [0, 1, 1]])
    out = birkhoff_decompose(T)
    assert rebuild_perms(out, 3, "int") == T
    assert sum(p.weight for p in out) == 2


def test_birkhoff_rational_and_lexpair():
    h = Fraction(1, 2)
    T = SquareMatrix([[h, h], [h, h]])
    assert rebuild_perms(birkhoff_decompose(T), 2, "rational") == T
    a, b = LexPair(1, 0), LexPair(0, 3)
    T = SquareMatrix([[a, b], [b, a]])
    out = birkhoff_decompose(T)
    assert rebuild_perms(out, 2, "lexpair") == T
    assert out[0].weight + out[1].weight == a + b


def test_birkhoff_errors():
    with pytest.raises(UnbalancedMatrixError, match="row 2"):
        birkhoff_decompose(SquareMatrix([[1, 1], [1, 2]]))
    with pytest.raises(UnbalancedMatrixError, match="column 1"):
        # Rows balanced, columns not.
        birkhoff_decompose(SquareMatrix([[2, 0], [2, 0]]))
    with pytest.raises(NegativeEntryError):
        birkhoff_decompose(SquareMatrix([[2, -1], [-1, 2]]))


def test_theorem_violation_is_distinct():
    assert not issubclass(TheoremViolation, ValueError)


def test_birkhoff_zero_matrix():
    assert birkhoff_decompose(SquareMatrix.zeros(3)) == []


# --- permutation_to_circuits ------------------------------------------------------------

@pytest.mark.parametrize("sigma, weight, expected", [
    ((0, 1, 2), 2, [Circuit((0,), 2), Circuit((1,), 2), Circuit((2,), 2)]),
    ((1, 0), 1, [Circuit((0, 1), 1)]),
    ((1, 0, 2), 5, [Circuit((0, 1), 5), Circuit((2,), 5)]),
    ((2, 0, 1), 1, [Circuit((0, 2, 1), 1)]),
])
def test_permutation_to_circuits(sigma, weight, expected):
    p = WeightedPermutation(sigma, weight)
    parts = permutation_to_circuits(p)
    assert parts == expected
    assert rebuild(parts, len(sigma), "int") == p.to_matrix()
    covered = [i for c in parts for i in c.cycle]
    assert sorted(covered) == list(range(len(sigma)))


def test_weighted_permutation_invariants():
    with pytest.raises(ValueError):
        WeightedPermutation((0, 0), 1)
    with pytest.raises(ValueError):
        WeightedPermutation((0, 1), 0)
    assert str(WeightedPermutation((1, 2, 0), 2)) == "PERM 2,3,1 @ 2"
