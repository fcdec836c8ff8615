"""Dense exact square matrices with row/column sum bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DomainMismatchError,
    MatrixFormatError,
    NegativeEntryError,
    NotSumSymmetricError,
    ScalarParseError,
)
from .ordered_group import (
    Domain,
    Scalar,
    domain_of,
    format_scalar,
    get_domain,
    infer_domain,
)


@dataclass(frozen=True)
class SumProfile:
    row_sums: tuple
    col_sums: tuple


class SquareMatrix:
    """Immutable n x n matrix whose entries all share one scalar domain.

    The domain defaults to that of the first entry; passing it explicitly
    asserts it.  ``nonnegative=True`` makes the constructor verify the sign
    of every entry.
    """

    __slots__ = ("_rows", "_domain")

    def __init__(self, rows: Iterable[Iterable[Scalar]], domain: Domain | str | None = None,
                 *, nonnegative: bool = False):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n == 0:
            raise MatrixFormatError("matrix dimension must be at least 1")
        for i, r in enumerate(rows):
            if len(r) != n:
                raise MatrixFormatError(
                    f"row {i + 1} has {len(r)} entries, expected {n}"
                )
        if isinstance(domain, str):
            domain = get_domain(domain)
        if domain is None:
            domain = domain_of(rows[0][0])
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                if not domain.contains(x):
                    raise DomainMismatchError(
                        f"entry ({i + 1},{j + 1}) = {x!r} is not in the {domain.name} domain"
                    )
        self._rows = rows
        self._domain = domain
        if nonnegative:
            self.check_nonnegative()

    @classmethod
    def zeros(cls, n: int, domain: Domain | str = "int") -> SquareMatrix:
        if isinstance(domain, str):
            domain = get_domain(domain)
        return cls([[domain.zero] * n for _ in range(n)], domain)

    @property
    def n(self) -> int:
        return len(self._rows)

    @property
    def domain(self) -> Domain:
        return self._domain

    @property
    def rows(self) -> tuple:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self._domain is other._domain and self._rows == other._rows

    def __hash__(self):
        return hash((self._domain.name, self._rows))

    def __repr__(self):
        return f"SquareMatrix({[list(r) for r in self._rows]!r})"

    def __add__(self, other: SquareMatrix) -> SquareMatrix:
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        if other.domain is not self.domain:
            raise DomainMismatchError(
                f"cannot add {self.domain.name} and {other.domain.name} matrices"
            )
        return SquareMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
            self._domain,
        )

    def transpose(self) -> SquareMatrix:
        return SquareMatrix(zip(*self._rows), self._domain)

    def to_lists(self) -> list:
        return [list(r) for r in self._rows]

    def positive_support(self) -> set:
        zero = self._domain.zero
        return {(i, j) for i, r in enumerate(self._rows) for j, x in enumerate(r) if x > zero}

    def is_nonnegative(self) -> bool:
        zero = self._domain.zero
        return all(x >= zero for r in self._rows for x in r)

    def check_nonnegative(self) -> None:
        zero = self._domain.zero
        for i, r in enumerate(self._rows):
            for j, x in enumerate(r):
                if x < zero:
                    raise NegativeEntryError(i, j, format_scalar(x))


def _total(values, zero):
    s = zero
    for x in values:
        s = s + x
    return s


def sums(T: SquareMatrix) -> SumProfile:
    zero = T.domain.zero
    rows = T.rows
    return SumProfile(
        row_sums=tuple(_total(r, zero) for r in rows),
        col_sums=tuple(_total(c, zero) for c in zip(*rows)),
    )


def first_asymmetry(T: SquareMatrix):
    """Return ``(i, row_sum, col_sum)`` for the first index whose sums differ, else ``None``."""
    prof = sums(T)
    for i, (r, c) in enumerate(zip(prof.row_sums, prof.col_sums)):
        if r != c:
            return i, r, c
    return None


def is_sum_symmetric(T: SquareMatrix) -> bool:
    return first_asymmetry(T) is None


def check_sum_symmetric(T: SquareMatrix) -> None:
    bad = first_asymmetry(T)
    if bad is not None:
        i, r, c = bad
        raise NotSumSymmetricError(i, format_scalar(r), format_scalar(c))


def nonzero_count(T: SquareMatrix) -> int:
    zero = T.domain.zero
    return sum(1 for r in T.rows for x in r if x != zero)


# --- CSV text format -------------------------------------------------------

_HEADER_PREFIX = "# domain:"


def split_fields(line: str) -> list:
    """Split on commas that are not inside parentheses."""
    fields, depth, start = [], 0, 0
    for pos, ch in enumerate(line):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced ')'")
        elif ch == "," and depth == 0:
            fields.append(line[start:pos])
            start = pos + 1
    if depth != 0:
        raise ValueError("unbalanced '('")
    fields.append(line[start:])
    return fields


def parse_matrix_csv(text: str, domain: Domain | str | None = None) -> SquareMatrix:
    """Parse the CSV matrix format.

    Each data line holds n comma-separated scalar literals.  An optional
    first line ``# domain: int|rational|lexpair`` fixes the domain; an
    explicit ``domain`` argument must agree with it.  Without either, the
    domain is inferred from the literals and mixing is an error.  A single
    trailing newline is tolerated; blank lines and whitespace are not.
    """
    if isinstance(domain, str):
        domain = get_domain(domain)
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    first = 1
    if lines and lines[0].startswith("#"):
        header = lines[0]
        if not header.startswith(_HEADER_PREFIX):
            raise MatrixFormatError(f"unrecognised header {header!r}", line=1)
        name = header[len(_HEADER_PREFIX):].strip()
        try:
            declared = get_domain(name)
        except ValueError as exc:
            raise MatrixFormatError(str(exc), line=1) from None
        if domain is not None and domain is not declared:
            raise MatrixFormatError(
                f"header declares domain {declared.name} but {domain.name} was requested",
                line=1,
            )
        domain = declared
        lines = lines[1:]
        first = 2
    if not lines:
        raise MatrixFormatError("no matrix rows found")

    raw = []
    for offset, line in enumerate(lines):
        lineno = first + offset
        if line.strip() != line or not line:
            raise MatrixFormatError("blank line or stray whitespace", line=lineno)
        try:
            raw.append(split_fields(line))
        except ValueError as exc:
            raise MatrixFormatError(str(exc), line=lineno) from None

    if domain is None:
        seen = {infer_domain(tok).name for row in raw for tok in row}
        if "lexpair" in seen and len(seen) > 1:
            lineno = next(
                first + k for k, row in enumerate(raw)
                if any(infer_domain(t).name != "lexpair" for t in row)
            )
            raise MatrixFormatError("mixed lex-pair and numeric literals", line=lineno)
        domain = get_domain("lexpair" if "lexpair" in seen
                           else "rational" if "rational" in seen else "int")

    n = len(raw)
    rows = []
    for offset, fields in enumerate(raw):
        lineno = first + offset
        if len(fields) != n:
            raise MatrixFormatError(
                f"expected {n} entries (square matrix), found {len(fields)}", line=lineno
            )
        row = []
        for col, tok in enumerate(fields):
            try:
                row.append(domain.parse(tok))
            except ScalarParseError as exc:
                raise MatrixFormatError(f"column {col + 1}: {exc}", line=lineno) from None
        rows.append(row)
    return SquareMatrix(rows, domain)


def format_matrix_csv(T: SquareMatrix, header: bool = True) -> str:
    out = [f"{_HEADER_PREFIX} {T.domain.name}"] if header else []
    out.extend(",".join(format_scalar(x) for x in r) for r in T.rows)
    return "\n".join(out) + "\n"
