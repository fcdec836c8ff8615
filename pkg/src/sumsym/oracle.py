"""Brute-force verifiers, deliberately independent of the constructive code paths.

Exhaustive search is guarded by explicit caps; exceeding one raises
:class:`~sumsym.errors.CapExceededError` rather than sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Iterator, Sequence

from .allocation import Allocation, Scenario, check_feasible
from .circuits import Circuit
from .errors import CapExceededError, InfeasibleAllocationError
from .matrix import SquareMatrix
from .ordered_group import domain_of, format_scalar

DEFAULT_MAX_ITEMS = 10
DEFAULT_MAX_COUNT = 10**6


@dataclass(frozen=True)
class Verdict:
    ok: bool
    detail: str = ""

    def __bool__(self):
        return self.ok


def multinomial(quotas: Sequence[int]) -> int:
    out = factorial(sum(quotas))
    for q in quotas:
        out //= factorial(q)
    return out


def _check_caps(sc: Scenario, max_items: int, max_count: int) -> None:
    if len(sc.items) > max_items:
        raise CapExceededError(
            f"{len(sc.items)} items exceeds the exhaustive-search cap of {max_items}"
        )
    count = multinomial(sc.quotas)
    if count > max_count:
        raise CapExceededError(
            f"{count} feasible allocations exceeds the enumeration cap of {max_count}"
        )


def _assignment_vectors(quotas: Sequence[int], n: int) -> Iterator[tuple]:
    """Every class-index vector of length ``n`` with class sizes ``quotas``, lexicographically."""
    remaining = list(quotas)
    vec = [0] * n

    def rec(pos):
        if pos == n:
            yield tuple(vec)
            return
        for c, left in enumerate(remaining):
            if left:
                remaining[c] -= 1
                vec[pos] = c
                yield from rec(pos + 1)
                remaining[c] += 1

    if sum(quotas) == n:
        yield from rec(0)


def enumerate_feasible(sc: Scenario, max_items: int = DEFAULT_MAX_ITEMS,
                       max_count: int = DEFAULT_MAX_COUNT) -> Iterator[Allocation]:
    """Yield every feasible allocation once, in lexicographic order of class vectors."""
    _check_caps(sc, max_items, max_count)
    ids = sc.ids
    for vec in _assignment_vectors(sc.quotas, len(ids)):
        yield Allocation.from_assignment(sc, dict(zip(ids, vec)))


def brute_force_best(sc: Scenario, max_items: int = DEFAULT_MAX_ITEMS,
                     max_count: int = DEFAULT_MAX_COUNT) -> tuple:
    """Return ``(max score, lexicographically first maximiser)`` by exhaustive search.

    Scores are accumulated as integers after scaling every ``s_c * f(x)``
    product by the lcm of their denominators, which keeps the search exact
    without per-candidate Fraction arithmetic.
    """
    _check_caps(sc, max_items, max_count)
    products = [[s * x.f for s in sc.potencies] for x in sc.items]
    scale = lcm(1, *(p.denominator for row in products for p in row))
    table = [[int(p * scale) for p in row] for row in products]
    best, witness = None, None
    for vec in _assignment_vectors(sc.quotas, len(sc.items)):
        total = sum(row[c] for row, c in zip(table, vec))
        if best is None or total > best:
            best, witness = total, vec
    allocation = Allocation.from_assignment(sc, dict(zip(sc.ids, witness)))
    return Fraction(best, scale), allocation


def overlap_matrix(P: Allocation, Q: Allocation, sc: Scenario) -> SquareMatrix:
    """k x k integer matrix whose ``(i, j)`` entry counts items in class ``i`` of P and class ``j`` of Q."""
    for name, a in (("P", P), ("Q", Q)):
        if set(a.assignment) != set(sc.ids):
            raise InfeasibleAllocationError(
                f"allocation {name} is over a different item set than the scenario"
            )
        check_feasible(sc, a.assignment)
    k = sc.k
    counts = [[0] * k for _ in range(k)]
    for item in sc.ids:
        counts[P.assignment[item]][Q.assignment[item]] += 1
    return SquareMatrix(counts, "int")


def check_rearrangement(s: Sequence, u: Sequence, sigma: Sequence[int]) -> bool:
    """``sum_j s_j u_j >= sum_j s_sigma(j) u_j``; true whenever ``s`` and ``u`` are both nondecreasing."""
    if not len(s) == len(u) == len(sigma):
        raise ValueError(
            f"length mismatch: |s|={len(s)}, |u|={len(u)}, |sigma|={len(sigma)}"
        )
    if sorted(sigma) != list(range(len(sigma))):
        raise ValueError(f"sigma is not a permutation: {list(sigma)!r}")
    aligned = sum(a * b for a, b in zip(s, u))
    permuted = sum(s[sigma[j]] * u[j] for j in range(len(u)))
    return aligned >= permuted


def verify_decomposition(T: SquareMatrix, circuits: Sequence[Circuit]) -> Verdict:
    """Check that ``circuits`` have positive weights and sum exactly to ``T``.

    On failure the verdict names the first offending circuit or the first
    differing entry (1-based).
    """
    dom = T.domain
    n = T.n
    acc = [[dom.zero] * n for _ in range(n)]
    for idx, c in enumerate(circuits, 1):
        if domain_of(c.weight) is not dom:
            return Verdict(False, f"circuit {idx} weight {c.weight!r} is not in the {dom.name} domain")
        if not c.weight > dom.zero:
            return Verdict(False, f"circuit {idx} has nonpositive weight {format_scalar(c.weight)}")
        if max(c.cycle) >= n:
            return Verdict(False, f"circuit {idx} uses index {max(c.cycle) + 1} > n = {n}")
        for i, j in c.edges():
            acc[i][j] = acc[i][j] + c.weight
    for i in range(n):
        for j in range(n):
            if acc[i][j] != T[i, j]:
                return Verdict(
                    False,
                    f"entry ({i + 1},{j + 1}): circuits sum to {format_scalar(acc[i][j])} "
                    f"but matrix has {format_scalar(T[i, j])}",
                )
    return Verdict(True)
