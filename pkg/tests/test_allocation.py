import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sumsym import (
    Allocation,
    Item,
    Scenario,
    Treatment,
    is_sorted_partition,
    optimal_partition,
    score,
    validate,
)
from sumsym.errors import InfeasibleAllocationError, ScenarioError

F = Fraction


def tiny_brute_force(sc):
    """Maximum score over all class vectors (itertools.product filtered by quotas)."""
    best = None
    for vec in itertools.product(range(sc.k), repeat=len(sc.items)):
        if tuple(vec.count(c) for c in range(sc.k)) != sc.quotas:
            continue
        total = sum(sc.potencies[c] * x.f for c, x in zip(vec, sc.items))
        best = total if best is None else max(best, total)
    return best


def abc():
    return Scenario.build({"a": 1, "b": 2, "c": 3}, [0, 1], [1, 2])


# --- validate --------------------------------------------------------------------

def test_validate_ok():
    validate(abc())


def test_quota_sum_mismatch():
    with pytest.raises(ScenarioError, match="quotas sum to 2 but there are 3 items"):
        Scenario.build({"a": 1, "b": 2, "c": 3}, [0, 1], [1, 1])


def test_potency_order():
    with pytest.raises(ScenarioError, match="treatment 1 has 2 but treatment 2 has 1"):
        Scenario.build({"a": 1, "b": 2, "c": 3}, [2, 1], [1, 2])


def test_negative_responsiveness():
    with pytest.raises(ScenarioError, match="'b'"):
        Scenario.build({"a": 1, "b": F(-1, 2)}, [0], [2])


def test_duplicate_ids():
    with pytest.raises(ScenarioError, match="duplicate"):
        Scenario.build([("a", 1), ("a", 2)], [0], [2])


def test_inexact_values_rejected():
    with pytest.raises(ScenarioError):
        Item("a", 0.5)
    with pytest.raises(ScenarioError):
        Treatment(1.5, 1)
    with pytest.raises(ScenarioError):
        Treatment(1, 1.0)


def test_negative_quota_and_no_treatments():
    with pytest.raises(ScenarioError):
        Scenario.build({"a": 1}, [0, 1], [2, -1])
    with pytest.raises(ScenarioError):
        Scenario((Item("a", 1),), ())


# --- score -------------------------------------------------------------------------

def test_score_single_class():
    sc = Scenario.build({"a": F(1, 2), "b": 3}, [F(-2, 3)], [2])
    assert score(sc, {"a": 0, "b": 0}) == F(-2, 3) * F(7, 2)


def test_score_direct_evaluation():
    assert score(abc(), {"a": 0, "b": 1, "c": 1}) == 5


def test_score_zero_responsiveness():
    sc = Scenario.build({"a": 0, "b": 0, "c": 0}, [-4, 1, 9], [1, 1, 1])
    for perm in itertools.permutations(range(3)):
        assert score(sc, dict(zip("abc", perm))) == 0


@pytest.mark.parametrize("assignment", [
    {"a": 0, "b": 0, "c": 1},
    {"a": 0, "b": 1},
    {"a": 0, "b": 1, "c": 1, "d": 1},
    {"a": 0, "b": 1, "c": 2},
    {"a": 0, "b": 1, "c": True},
])
def test_score_infeasible(assignment):
    with pytest.raises(InfeasibleAllocationError):
        score(abc(), assignment)


def test_allocation_fields():
    a = Allocation.from_assignment(abc(), {"c": 1, "a": 0, "b": 1})
    assert list(a.assignment) == ["a", "b", "c"]
    assert a.class_sizes == (1, 2)
    assert a.class_masses == (1, 5)
    assert score(abc(), a) == a.score == 5


# --- optimal_partition ------------------------------------------------------------

def test_optimal_abc():
    sc = abc()
    a = optimal_partition(sc)
    assert a.assignment == {"a": 0, "b": 1, "c": 1}
    assert a.score == 5 == tiny_brute_force(sc)


def test_degenerate_quota():
    sc = Scenario.build({"a": 1, "b": 2, "c": 3}, [0, 1], [3, 0])
    a = optimal_partition(sc)
    assert set(a.assignment.values()) == {0}
    assert a.class_sizes == (3, 0)
    assert is_sorted_partition(sc, a)


def test_constant_responsiveness_uses_id_order():
    sc = Scenario.build({"c": 2, "a": 2, "b": 2}, [1, 5], [2, 1])
    a = optimal_partition(sc)
    assert a.assignment == {"c": 1, "a": 0, "b": 0}
    assert a.score == 1 * 4 + 5 * 2


def test_negative_potencies():
    sc = Scenario.build({"a": 3, "b": 1, "c": 2}, [-1, 1], [2, 1])
    a = optimal_partition(sc)
    assert a.assignment == {"a": 1, "b": 0, "c": 0}
    assert a.score == 0 == tiny_brute_force(sc)


def test_tie_break_is_by_code_point():
    sc = Scenario.build({"b": 1, "B": 1, "a": 1}, [0, 1], [1, 2])
    assert optimal_partition(sc).assignment["B"] == 0


def test_is_sorted_partition_detects_violation():
    sc = abc()
    assert not is_sorted_partition(sc, Allocation.from_assignment(sc, {"a": 1, "b": 1, "c": 0}))
    sc = Scenario.build({"a": 1, "b": 2, "c": 3}, [0, 1, 2], [1, 0, 2])
    assert is_sorted_partition(sc, optimal_partition(sc))


# --- properties --------------------------------------------------------------------

@st.composite
def scenarios(draw, n_max=6, k_max=3):
    n = draw(st.integers(0, n_max))
    k = draw(st.integers(1, k_max))
    fvals = draw(st.lists(st.fractions(min_value=0, max_value=10, max_denominator=10),
                          min_size=n, max_size=n))
    cuts = sorted(draw(st.lists(st.integers(0, n), min_size=k - 1, max_size=k - 1)))
    bounds = [0] + cuts + [n]
    quotas = [bounds[i + 1] - bounds[i] for i in range(k)]
    potencies = sorted(draw(st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=10),
                                     min_size=k, max_size=k)))
    return Scenario.build({f"i{j}": v for j, v in enumerate(fvals)}, potencies, quotas)


@settings(max_examples=200)
@given(scenarios())
def test_optimal_is_feasible_sorted_and_maximal(sc):
    a = optimal_partition(sc)
    assert a.class_sizes == sc.quotas
    assert is_sorted_partition(sc, a)
    assert a.score == tiny_brute_force(sc)


@given(scenarios(), st.fractions(min_value=-5, max_value=5, max_denominator=7),
       st.fractions(min_value=F(1, 7), max_value=5, max_denominator=7))
def test_affine_potency_change(sc, shift, factor):
    base = optimal_partition(sc)
    moved = Scenario(sc.items, tuple(Treatment(factor * t.potency + shift, t.quota)
                                     for t in sc.treatments))
    a = optimal_partition(moved)
    assert a.assignment == base.assignment
    mass = sum((x.f for x in sc.items), F(0))
    assert a.score == factor * base.score + shift * mass


@given(scenarios())
def test_monotone_potency_transform(sc):
    # Cubing is strictly increasing on the rationals.
    cubed = Scenario(sc.items, tuple(Treatment(t.potency ** 3, t.quota) for t in sc.treatments))
    assert optimal_partition(cubed).assignment == optimal_partition(sc).assignment
