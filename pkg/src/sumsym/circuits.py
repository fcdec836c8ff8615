"""Circuit and weighted-permutation decompositions.

:func:`circuit_decompose` peels cycles off a nonnegative sum-symmetric
matrix: walk along positive entries until a node repeats, take the cycle
between the two visits, subtract its minimum entry along the cycle and
repeat.  Each round zeroes at least one entry, so there are at most
``nonzero_count(T)`` rounds.

:func:`birkhoff_decompose` does the same for doubly balanced matrices
with perfect matchings in place of cycles.

Indices are 0-based here; the text formats and error messages are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import (
    NoCycleError,
    TheoremViolation,
    UnbalancedMatrixError,
)
from .matrix import SquareMatrix, check_sum_symmetric, sums
from .ordered_group import Scalar, domain_of, format_scalar, get_domain


@dataclass(frozen=True)
class Circuit:
    """Weighted cycle ``cycle[0] -> cycle[1] -> ... -> cycle[-1] -> cycle[0]``.

    The cycle is rotated on construction so that it starts at its smallest
    index; a one-element cycle is a self-loop.
    """

    cycle: tuple
    weight: Scalar

    def __post_init__(self):
        cycle = tuple(self.cycle)
        if not cycle:
            raise ValueError("a circuit needs at least one index")
        if any(type(i) is not int or i < 0 for i in cycle):
            raise ValueError(f"cycle indices must be nonnegative ints, got {cycle!r}")
        if len(set(cycle)) != len(cycle):
            raise ValueError(f"cycle indices must be distinct, got {cycle!r}")
        if not self.weight > domain_of(self.weight).zero:
            raise ValueError(f"circuit weight must be positive, got {self.weight!r}")
        k = cycle.index(min(cycle))
        object.__setattr__(self, "cycle", cycle[k:] + cycle[:k])

    def edges(self):
        m = len(self.cycle)
        return [(self.cycle[a], self.cycle[(a + 1) % m]) for a in range(m)]

    def __str__(self):
        path = ">".join(str(i + 1) for i in self.cycle)
        return f"CIRCUIT {path} @ {format_scalar(self.weight)}"


@dataclass(frozen=True)
class WeightedPermutation:
    """``weight`` times the permutation matrix with ones at ``(i, sigma[i])``."""

    sigma: tuple
    weight: Scalar

    def __post_init__(self):
        sigma = tuple(self.sigma)
        if sorted(sigma) != list(range(len(sigma))):
            raise ValueError(f"sigma is not a permutation of range({len(sigma)}): {sigma!r}")
        if not self.weight > domain_of(self.weight).zero:
            raise ValueError(f"permutation weight must be positive, got {self.weight!r}")
        object.__setattr__(self, "sigma", sigma)

    def __str__(self):
        images = ",".join(str(j + 1) for j in self.sigma)
        return f"PERM {images} @ {format_scalar(self.weight)}"

    def to_matrix(self) -> SquareMatrix:
        dom = domain_of(self.weight)
        n = len(self.sigma)
        rows = [[dom.zero] * n for _ in range(n)]
        for i, j in enumerate(self.sigma):
            rows[i][j] = self.weight
        return SquareMatrix(rows, dom)


def circuit_to_matrix(c: Circuit, n: int) -> SquareMatrix:
    if max(c.cycle) >= n:
        raise IndexError(
            f"circuit index {max(c.cycle) + 1} out of range for dimension {n}"
        )
    dom = domain_of(c.weight)
    rows = [[dom.zero] * n for _ in range(n)]
    for i, j in c.edges():
        rows[i][j] = c.weight
    return SquareMatrix(rows, dom)


def sum_circuits(circuits: Iterable[Circuit], n: int, domain) -> SquareMatrix:
    if isinstance(domain, str):
        domain = get_domain(domain)
    rows = [[domain.zero] * n for _ in range(n)]
    for c in circuits:
        domain.check(c.weight, "circuit weight")
        for i, j in c.edges():
            if i >= n or j >= n:
                raise IndexError(f"circuit index out of range for dimension {n}")
            rows[i][j] = rows[i][j] + c.weight
    return SquareMatrix(rows, domain)


def _walk_cycle(rows, zero) -> list:
    """Cycle found by the deterministic walk on the positive entries of ``rows``.

    Start at the first row with a positive entry and always step to the
    smallest column holding a positive entry.  Returns ``[]`` if there are
    no positive entries.
    """
    n = len(rows)
    start = next((i for i in range(n) if any(x > zero for x in rows[i])), None)
    if start is None:
        return []
    position = {}
    path = []
    node = start
    while node not in position:
        position[node] = len(path)
        path.append(node)
        nxt = next((j for j, x in enumerate(rows[node]) if x > zero), None)
        if nxt is None:
            # Sum-symmetric input never strands the walk.
            raise TheoremViolation(f"walk stranded at row {node + 1}")
        node = nxt
    return path[position[node]:]


def find_positive_cycle(T: SquareMatrix) -> tuple:
    """Cycle of distinct indices along which every entry of ``T`` is positive.

    ``T`` must be nonnegative, sum-symmetric and nonzero.  The result is in
    walk order, which need not start at its smallest index.
    """
    T.check_nonnegative()
    check_sum_symmetric(T)
    cycle = _walk_cycle(T.rows, T.domain.zero)
    if not cycle:
        raise NoCycleError("matrix has no positive entry, hence no cycle")
    return tuple(cycle)


def circuit_decompose(T: SquareMatrix) -> list:
    """Write a nonnegative sum-symmetric ``T`` as a sum of positive circuits.

    Returns the circuits in extraction order.  Raises
    :class:`~sumsym.errors.NegativeEntryError` or
    :class:`~sumsym.errors.NotSumSymmetricError` on invalid input.
    """
    T.check_nonnegative()
    check_sum_symmetric(T)
    zero = T.domain.zero
    work = T.to_lists()
    out = []
    while True:
        cycle = _walk_cycle(work, zero)
        if not cycle:
            return out
        edges = list(zip(cycle, cycle[1:] + cycle[:1]))
        weight = min(work[i][j] for i, j in edges)
        for i, j in edges:
            work[i][j] = work[i][j] - weight
        out.append(Circuit(tuple(cycle), weight))


def _perfect_matching(work, zero):
    """Row-to-column perfect matching on positive entries, or ``None``.

    Kuhn's augmenting-path search.  Rows are processed in ascending order;
    each row takes its smallest free positive column if it has one, and only
    otherwise tries to reroute matched columns, again in ascending order.
    """
    n = len(work)
    adj = [[j for j in range(n) if work[i][j] > zero] for i in range(n)]
    match_col = [-1] * n  # column -> row

    def augment(i, seen):
        for j in adj[i]:
            if match_col[j] < 0:
                seen[j] = True
                match_col[j] = i
                return True
        for j in adj[i]:
            if seen[j]:
                continue
            seen[j] = True
            if augment(match_col[j], seen):
                match_col[j] = i
                return True
        return False

    for i in range(n):
        if not augment(i, [False] * n):
            return None
    sigma = [0] * n
    for j, i in enumerate(match_col):
        sigma[i] = j
    return sigma


def check_doubly_balanced(T: SquareMatrix) -> Scalar:
    """Return the common line sum, or raise naming the first row/column that differs."""
    prof = sums(T)
    target = prof.row_sums[0]
    for kind, values in (("row", prof.row_sums), ("column", prof.col_sums)):
        for i, v in enumerate(values):
            if v != target:
                raise UnbalancedMatrixError(kind, i, format_scalar(v), format_scalar(target))
    return target


def birkhoff_decompose(T: SquareMatrix) -> list:
    """Write a doubly balanced nonnegative ``T`` as a sum of weighted permutation matrices."""
    T.check_nonnegative()
    check_doubly_balanced(T)
    zero = T.domain.zero
    work = T.to_lists()
    n = T.n
    out = []
    while any(x > zero for r in work for x in r):
        sigma = _perfect_matching(work, zero)
        if sigma is None:
            raise TheoremViolation(
                "no perfect matching on the positive entries of a balanced matrix"
            )
        weight = min(work[i][sigma[i]] for i in range(n))
        for i in range(n):
            work[i][sigma[i]] = work[i][sigma[i]] - weight
        out.append(WeightedPermutation(tuple(sigma), weight))
    return out


def permutation_to_circuits(p: WeightedPermutation) -> list:
    """Split a weighted permutation into its disjoint cycles, smallest leader first."""
    seen = [False] * len(p.sigma)
    out = []
    for start in range(len(p.sigma)):
        if seen[start]:
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i)
            i = p.sigma[i]
        out.append(Circuit(tuple(cycle), p.weight))
    return out
