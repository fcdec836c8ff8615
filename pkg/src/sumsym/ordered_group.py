"""Exact linearly ordered Abelian groups used as matrix entry types.

Three domains are supported:

* ``int`` -- Python integers (arbitrary precision),
* ``rational`` -- :class:`fractions.Fraction` (always reduced, positive denominator),
* ``lexpair`` -- :class:`LexPair`, integer pairs under the lexicographic order.

Scalars are plain immutable Python values and support ``+``, ``-`` and the
comparison operators natively, so the generic algorithms elsewhere in the
package just use operators plus :attr:`Domain.zero`.  The module-level
:func:`add`, :func:`sub` and :func:`compare` additionally refuse to mix
domains, which Python's numeric tower would otherwise allow silently
(``1 + Fraction(1, 2)``).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Union

from .errors import DomainMismatchError, ScalarParseError


@dataclass(frozen=True, order=True)
class LexPair:
    """Pair of integers; ``(a1, a2) > (b1, b2)`` iff ``a1 > b1`` or (``a1 == b1`` and ``a2 > b2``)."""

    major: int
    minor: int

    def __post_init__(self):
        for part in (self.major, self.minor):
            if type(part) is not int:
                raise DomainMismatchError(
                    f"LexPair components must be int, got {type(part).__name__}"
                )

    def __add__(self, other):
        if not isinstance(other, LexPair):
            return NotImplemented
        return LexPair(self.major + other.major, self.minor + other.minor)

    def __sub__(self, other):
        if not isinstance(other, LexPair):
            return NotImplemented
        return LexPair(self.major - other.major, self.minor - other.minor)

    def __neg__(self):
        return LexPair(-self.major, -self.minor)

    def __str__(self):
        return f"({self.major},{self.minor})"


Scalar = Union[int, Fraction, LexPair]


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


_INT = r"(?:0|-?[1-9][0-9]*)"
_INT_RE = re.compile(_INT)
_RATIONAL_RE = re.compile(rf"({_INT})(?:/([1-9][0-9]*))?")
_LEXPAIR_RE = re.compile(rf"\(({_INT}),({_INT})\)")


def _parse_int(text: str) -> int:
    if not _INT_RE.fullmatch(text):
        raise ScalarParseError(f"invalid integer literal {text!r}")
    return int(text)


def _parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.fullmatch(text)
    if not m:
        raise ScalarParseError(f"invalid rational literal {text!r} (expected p or p/q)")
    p = int(m.group(1))
    if m.group(2) is None:
        return Fraction(p)
    q = int(m.group(2))
    if gcd(p, q) != 1:
        raise ScalarParseError(f"rational literal {text!r} is not in lowest terms")
    return Fraction(p, q)


def _parse_lexpair(text: str) -> LexPair:
    m = _LEXPAIR_RE.fullmatch(text)
    if not m:
        raise ScalarParseError(f"invalid lex-pair literal {text!r} (expected (a,b))")
    return LexPair(int(m.group(1)), int(m.group(2)))


def _format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Domain:
    name: str
    type: type
    zero: Scalar
    parse: Callable[[str], Scalar]
    format: Callable[[Scalar], str]

    def __repr__(self):
        return f"Domain({self.name!r})"

    def contains(self, x) -> bool:
        return type(x) is self.type

    def check(self, x, what="value") -> Scalar:
        if type(x) is not self.type:
            raise DomainMismatchError(
                f"{what} {x!r} is not in the {self.name} domain"
            )
        return x


INT = Domain("int", int, 0, _parse_int, str)
RATIONAL = Domain("rational", Fraction, Fraction(0), _parse_rational, _format_rational)
LEXPAIR = Domain("lexpair", LexPair, LexPair(0, 0), _parse_lexpair, str)

DOMAINS = {d.name: d for d in (INT, RATIONAL, LEXPAIR)}
_BY_TYPE = {d.type: d for d in DOMAINS.values()}


def get_domain(name: str) -> Domain:
    try:
        return DOMAINS[name]
    except KeyError:
        raise ValueError(
            f"unknown domain {name!r}; choose one of {', '.join(DOMAINS)}"
        ) from None


def domain_of(x) -> Domain:
    """Return the domain of ``x``; floats, bools and anything else are rejected."""
    try:
        return _BY_TYPE[type(x)]
    except KeyError:
        if isinstance(x, float):
            raise DomainMismatchError(
                f"floating-point value {x!r} rejected; use an exact int, Fraction or LexPair"
            ) from None
        raise DomainMismatchError(f"{x!r} is not an exact scalar") from None


def common_domain(values: Iterable) -> Domain | None:
    """Domain shared by all ``values``; ``None`` for an empty iterable."""
    dom = None
    for x in values:
        d = domain_of(x)
        if dom is None:
            dom = d
        elif d is not dom:
            raise DomainMismatchError(
                f"mixed domains: {dom.name} and {d.name} ({x!r})"
            )
    return dom


def _same(a, b) -> Domain:
    da, db = domain_of(a), domain_of(b)
    if da is not db:
        raise DomainMismatchError(f"cannot combine {da.name} {a!r} with {db.name} {b!r}")
    return da


def add(a: Scalar, b: Scalar) -> Scalar:
    _same(a, b)
    return a + b


def sub(a: Scalar, b: Scalar) -> Scalar:
    _same(a, b)
    return a - b


def compare(a: Scalar, b: Scalar) -> Ordering:
    _same(a, b)
    if a < b:
        return Ordering.LESS
    if a > b:
        return Ordering.GREATER
    return Ordering.EQUAL


def parse_scalar(text: str, domain: Domain | str) -> Scalar:
    if isinstance(domain, str):
        domain = get_domain(domain)
    return domain.parse(text)


def format_scalar(x: Scalar) -> str:
    return domain_of(x).format(x)


def infer_domain(literal: str) -> Domain:
    """Guess the domain of a single literal from its shape (used when no header is given)."""
    if literal.startswith("("):
        return LEXPAIR
    if "/" in literal:
        return RATIONAL
    return INT
