"""Quota-constrained allocation of items to treatments.

Each item ``x`` has a responsiveness ``f(x) >= 0``; treatment ``i`` has a
potency ``s_i`` (nondecreasing in ``i``, possibly negative) and a quota
``q_i``.  A feasible allocation puts exactly ``q_i`` items in class ``i``
and scores ``sum_i s_i * sum_{x in class i} f(x)``.

:func:`optimal_partition` sorts items by responsiveness and fills the
classes in order; that sorted partition maximises the score.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InfeasibleAllocationError, ScenarioError
from .ordered_group import RATIONAL, format_scalar


def _exact(value, what) -> Fraction:
    if type(value) is int:
        return Fraction(value)
    if type(value) is Fraction:
        return value
    raise ScenarioError(f"{what} must be an exact int or Fraction, got {value!r}")


@dataclass(frozen=True)
class Item:
    id: str
    f: Fraction

    def __post_init__(self):
        if not isinstance(self.id, str):
            raise ScenarioError(f"item id must be a string, got {self.id!r}")
        object.__setattr__(self, "f", _exact(self.f, f"responsiveness of item {self.id!r}"))


@dataclass(frozen=True)
class Treatment:
    potency: Fraction
    quota: int

    def __post_init__(self):
        object.__setattr__(self, "potency", _exact(self.potency, "potency"))
        if type(self.quota) is not int:
            raise ScenarioError(f"quota must be an int, got {self.quota!r}")


@dataclass(frozen=True)
class Scenario:
    """Items plus treatments sorted by potency; validated on construction."""

    items: tuple
    treatments: tuple

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        object.__setattr__(self, "treatments", tuple(self.treatments))
        validate(self)

    @classmethod
    def build(cls, f: Mapping[str, object] | Sequence[tuple],
              potencies: Sequence, quotas: Sequence[int]) -> Scenario:
        """Convenience constructor: ``Scenario.build({"a": 1, "b": 2}, [0, 1], [1, 1])``."""
        pairs = f.items() if isinstance(f, Mapping) else f
        if len(potencies) != len(quotas):
            raise ScenarioError(
                f"{len(potencies)} potencies but {len(quotas)} quotas"
            )
        return cls(
            tuple(Item(i, v) for i, v in pairs),
            tuple(Treatment(s, q) for s, q in zip(potencies, quotas)),
        )

    @property
    def k(self) -> int:
        return len(self.treatments)

    @property
    def ids(self) -> tuple:
        return tuple(x.id for x in self.items)

    @property
    def potencies(self) -> tuple:
        return tuple(t.potency for t in self.treatments)

    @property
    def quotas(self) -> tuple:
        return tuple(t.quota for t in self.treatments)

    def responsiveness(self) -> dict:
        return {x.id: x.f for x in self.items}


def validate(sc: Scenario) -> None:
    """Raise :class:`ScenarioError` describing the first broken invariant."""
    if not sc.treatments:
        raise ScenarioError("at least one treatment is required")
    seen = set()
    for x in sc.items:
        if x.id in seen:
            raise ScenarioError(f"duplicate item id {x.id!r}")
        seen.add(x.id)
        if x.f < 0:
            raise ScenarioError(
                f"item {x.id!r} has negative responsiveness {format_scalar(x.f)}"
            )
    for i, t in enumerate(sc.treatments):
        if t.quota < 0:
            raise ScenarioError(f"treatment {i + 1} has negative quota {t.quota}")
    for i in range(1, len(sc.treatments)):
        a, b = sc.treatments[i - 1].potency, sc.treatments[i].potency
        if b < a:
            raise ScenarioError(
                f"potencies must be nondecreasing: treatment {i} has "
                f"{format_scalar(a)} but treatment {i + 1} has {format_scalar(b)}"
            )
    total = sum(t.quota for t in sc.treatments)
    if total != len(sc.items):
        raise ScenarioError(
            f"quotas sum to {total} but there are {len(sc.items)} items"
        )


@dataclass(frozen=True)
class Allocation:
    """A feasible assignment together with its per-class sizes, masses and score.

    ``assignment`` maps item id to a 0-based treatment index and preserves
    the scenario's item order.
    """

    assignment: Mapping[str, int]
    class_sizes: tuple
    class_masses: tuple
    score: Fraction

    @classmethod
    def from_assignment(cls, sc: Scenario, assignment: Mapping[str, int]) -> Allocation:
        check_feasible(sc, assignment)
        sizes = [0] * sc.k
        masses = [Fraction(0)] * sc.k
        for x in sc.items:
            c = assignment[x.id]
            sizes[c] += 1
            masses[c] += x.f
        total = sum((s * m for s, m in zip(sc.potencies, masses)), Fraction(0))
        ordered = {x.id: assignment[x.id] for x in sc.items}
        return cls(ordered, tuple(sizes), tuple(masses), total)

    def classes(self, k: int) -> list:
        out = [[] for _ in range(k)]
        for item, c in self.assignment.items():
            out[c].append(item)
        return out


def check_feasible(sc: Scenario, assignment: Mapping[str, int]) -> None:
    ids = set(sc.ids)
    for item, c in assignment.items():
        if item not in ids:
            raise InfeasibleAllocationError(f"unknown item id {item!r}")
        if type(c) is not int or not 0 <= c < sc.k:
            raise InfeasibleAllocationError(
                f"item {item!r} assigned to invalid treatment {c!r}"
            )
    missing = [i for i in sc.ids if i not in assignment]
    if missing:
        raise InfeasibleAllocationError(f"item {missing[0]!r} is not assigned")
    sizes = [0] * sc.k
    for c in assignment.values():
        sizes[c] += 1
    for i, (got, want) in enumerate(zip(sizes, sc.quotas)):
        if got != want:
            raise InfeasibleAllocationError(
                f"treatment {i + 1} receives {got} items but its quota is {want}"
            )


def score(sc: Scenario, a: Allocation | Mapping[str, int]) -> Fraction:
    """Exact score of a feasible allocation (or bare assignment mapping)."""
    assignment = a.assignment if isinstance(a, Allocation) else a
    return Allocation.from_assignment(sc, assignment).score


def sorted_items(sc: Scenario) -> list:
    """Items in ascending responsiveness, ties broken by ascending id."""
    return sorted(sc.items, key=lambda x: (x.f, x.id))


def optimal_partition(sc: Scenario) -> Allocation:
    """Sorted partition: the ``q_1`` least responsive items go to treatment 1, and so on."""
    validate(sc)
    order = sorted_items(sc)
    assignment = {}
    pos = 0
    for c, q in enumerate(sc.quotas):
        for x in order[pos:pos + q]:
            assignment[x.id] = c
        pos += q
    return Allocation.from_assignment(sc, assignment)


def is_sorted_partition(sc: Scenario, a: Allocation) -> bool:
    """True iff ``max f`` over class ``i`` <= ``min f`` over class ``j`` for all nonempty ``i < j``."""
    f = sc.responsiveness()
    classes = [[f[x] for x in cls] for cls in a.classes(sc.k)]
    highest = None
    for values in classes:
        if not values:
            continue
        if highest is not None and min(values) < highest:
            return False
        highest = max(values)
    return True


def format_rational(x: Fraction) -> str:
    return RATIONAL.format(x)
