"""Text formats: scenario/allocation JSON and decomposition records.

Treatment indices in JSON and matrix indices in records are 1-based.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .allocation import Allocation, Item, Scenario, Treatment
from .errors import InputFormatError, ScalarParseError, ScenarioError
from .ordered_group import RATIONAL, Domain, format_scalar


# --- scenario / allocation JSON ---------------------------------------------

def _load_json(text: str):
    try:
        return json.loads(text, parse_float=_reject_float, parse_constant=_reject_float,
                          object_pairs_hook=_unique_keys)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc.msg}", where=f"line {exc.lineno}") from None


def _reject_float(token):
    raise InputFormatError(f"non-exact number {token} (write rationals as strings like \"3/2\")")


def _unique_keys(pairs):
    obj = {}
    for key, value in pairs:
        if key in obj:
            raise InputFormatError(f"duplicate key {key!r}")
        obj[key] = value
    return obj


def _keys(obj, where, required, optional=()):
    if not isinstance(obj, dict):
        raise InputFormatError("expected a JSON object", where)
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise InputFormatError(f"unknown field {unknown[0]!r}", where)
    for key in required:
        if key not in obj:
            raise InputFormatError(f"missing field {key!r}", where)


def _rational(value, where) -> Fraction:
    if type(value) is int:
        return Fraction(value)
    if isinstance(value, str):
        try:
            return RATIONAL.parse(value)
        except ScalarParseError as exc:
            raise InputFormatError(str(exc), where) from None
    raise InputFormatError(f"expected a rational string or integer, got {value!r}", where)


def _natural(value, where) -> int:
    if type(value) is not int or value < 0:
        raise InputFormatError(f"expected a nonnegative integer, got {value!r}", where)
    return value


@dataclass(frozen=True)
class LoadedScenario:
    """A scenario plus the map from its (potency-sorted) treatments back to file order."""

    scenario: Scenario
    file_index: tuple  # file_index[c] = position in the file of sorted treatment c

    @property
    def sorted_index(self) -> dict:
        return {f: c for c, f in enumerate(self.file_index)}


def parse_scenario(text: str, sort_treatments: bool = False) -> LoadedScenario:
    doc = _load_json(text)
    _keys(doc, "scenario", ("items", "treatments"))
    if not isinstance(doc["items"], list):
        raise InputFormatError("expected a list", "items")
    if not isinstance(doc["treatments"], list):
        raise InputFormatError("expected a list", "treatments")
    items = []
    for i, obj in enumerate(doc["items"]):
        where = f"items[{i}]"
        _keys(obj, where, ("id", "f"))
        if not isinstance(obj["id"], str):
            raise InputFormatError(f"item id must be a string, got {obj['id']!r}", f"{where}.id")
        items.append(Item(obj["id"], _rational(obj["f"], f"{where}.f")))
    treatments = []
    for i, obj in enumerate(doc["treatments"]):
        where = f"treatments[{i}]"
        _keys(obj, where, ("potency", "quota"))
        treatments.append(Treatment(_rational(obj["potency"], f"{where}.potency"),
                                    _natural(obj["quota"], f"{where}.quota")))
    order = list(range(len(treatments)))
    if sort_treatments:
        order.sort(key=lambda c: treatments[c].potency)
    try:
        sc = Scenario(tuple(items), tuple(treatments[c] for c in order))
    except ScenarioError as exc:
        raise InputFormatError(str(exc), "scenario") from None
    return LoadedScenario(sc, tuple(order))


def allocation_to_json(loaded: LoadedScenario, a: Allocation, approx: bool = False) -> str:
    k = loaded.scenario.k
    sizes = [0] * k
    masses = [""] * k
    for c, f in enumerate(loaded.file_index):
        sizes[f] = a.class_sizes[c]
        masses[f] = format_scalar(a.class_masses[c])
    doc = {
        "assignment": {item: loaded.file_index[c] + 1 for item, c in a.assignment.items()},
        "class_sizes": sizes,
        "class_masses": masses,
        "score": format_scalar(a.score),
    }
    if approx:
        doc["score_approx"] = approximate(a.score)
    return json.dumps(doc, indent=2) + "\n"


@dataclass(frozen=True)
class ClaimedAllocation:
    """An allocation file as read: the assignment plus any derived fields it claims."""

    assignment: dict  # item id -> sorted 0-based treatment index
    class_sizes: list | None = None
    class_masses: list | None = None
    score: Fraction | None = None


def parse_allocation(text: str, loaded: LoadedScenario) -> ClaimedAllocation:
    doc = _load_json(text)
    _keys(doc, "allocation", ("assignment",),
          ("class_sizes", "class_masses", "score", "score_approx"))
    raw = doc["assignment"]
    if not isinstance(raw, dict):
        raise InputFormatError("expected an object mapping item id to treatment", "assignment")
    k = loaded.scenario.k
    to_sorted = loaded.sorted_index
    assignment = {}
    for item, t in raw.items():
        if type(t) is not int or not 1 <= t <= k:
            raise InputFormatError(f"treatment index must be an integer in 1..{k}, got {t!r}",
                                   f"assignment[{item!r}]")
        assignment[item] = to_sorted[t - 1]
    sizes = masses = claimed_score = None
    if "class_sizes" in doc:
        sizes = doc["class_sizes"]
        if not isinstance(sizes, list) or len(sizes) != k:
            raise InputFormatError(f"expected a list of {k} integers", "class_sizes")
        sizes = [_natural(v, f"class_sizes[{i}]") for i, v in enumerate(sizes)]
        sizes = [sizes[f] for f in loaded.file_index]
    if "class_masses" in doc:
        masses = doc["class_masses"]
        if not isinstance(masses, list) or len(masses) != k:
            raise InputFormatError(f"expected a list of {k} rationals", "class_masses")
        masses = [_rational(v, f"class_masses[{i}]") for i, v in enumerate(masses)]
        masses = [masses[f] for f in loaded.file_index]
    if "score" in doc:
        claimed_score = _rational(doc["score"], "score")
    return ClaimedAllocation(assignment, sizes, masses, claimed_score)


def approximate(x: Fraction, digits: int = 12) -> str:
    """Decimal rendering prefixed with ``~`` so it is never mistaken for an exact value."""
    return "~" + format(float(x), f".{digits}g")


# --- decomposition records ---------------------------------------------------

_INDEX = r"[1-9][0-9]*"
_CIRCUIT_RE = re.compile(rf"CIRCUIT ({_INDEX}(?:>{_INDEX})*) @ (\S+)")
_PERM_RE = re.compile(rf"PERM ({_INDEX}(?:,{_INDEX})*) @ (\S+)")
REFINEMENT_INDENT = "  "


def format_circuits(circuits) -> list:
    return [str(c) for c in circuits]


def format_permutations(perms, refinements) -> list:
    lines = []
    for p, parts in zip(perms, refinements):
        lines.append(str(p))
        lines.extend(REFINEMENT_INDENT + str(c) for c in parts)
    return lines


@dataclass
class PermRecord:
    sigma: tuple
    weight: object
    line: int
    refinement: list = field(default_factory=list)  # [(cycle, weight, line)]


@dataclass
class Records:
    """Raw decomposition records; weights are parsed but not yet validated as positive."""

    circuits: list = field(default_factory=list)  # [(cycle, weight, line)]
    perms: list = field(default_factory=list)


def parse_records(text: str, domain: Domain) -> Records:
    out = Records()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for lineno, line in enumerate(lines, 1):
        if line.startswith("#"):
            continue
        indented = line.startswith(REFINEMENT_INDENT)
        body = line[len(REFINEMENT_INDENT):] if indented else line
        m = _CIRCUIT_RE.fullmatch(body)
        if m:
            cycle = tuple(int(t) - 1 for t in m.group(1).split(">"))
            rec = (cycle, _weight(m.group(2), domain, lineno), lineno)
            if indented:
                if not out.perms:
                    raise InputFormatError("refinement record without a preceding PERM",
                                           f"line {lineno}")
                out.perms[-1].refinement.append(rec)
            else:
                out.circuits.append(rec)
            continue
        m = _PERM_RE.fullmatch(body)
        if m and not indented:
            sigma = tuple(int(t) - 1 for t in m.group(1).split(","))
            out.perms.append(PermRecord(sigma, _weight(m.group(2), domain, lineno), lineno))
            continue
        raise InputFormatError(f"unrecognised record {line!r}", f"line {lineno}")
    return out


def _weight(token, domain, lineno):
    try:
        return domain.parse(token)
    except ScalarParseError as exc:
        raise InputFormatError(str(exc), f"line {lineno}") from None

