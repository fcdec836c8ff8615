"""Command-line front end.

Exit status: 0 success or PASS, 1 verification FAIL, 2 input or validation
error (including usage errors), 3 oracle cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .allocation import Allocation, optimal_partition
from .circuits import (
    Circuit,
    WeightedPermutation,
    birkhoff_decompose,
    circuit_decompose,
    permutation_to_circuits,
)
from .errors import CapExceededError, InfeasibleAllocationError, SumSymError
from .formats import (
    allocation_to_json,
    approximate,
    format_circuits,
    format_permutations,
    parse_allocation,
    parse_records,
    parse_scenario,
)
from .matrix import nonzero_count, parse_matrix_csv, sums
from .oracle import (
    DEFAULT_MAX_COUNT,
    DEFAULT_MAX_ITEMS,
    brute_force_best,
    multinomial,
    verify_decomposition,
)
from .ordered_group import DOMAINS, format_scalar

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    """Wraps a library error with the file it came from."""

    def __init__(self, path, exc):
        super().__init__(f"{path}: {exc}")


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(path, exc.strerror or exc) from None


def _load(path, parser, *args):
    text = _read(path)
    try:
        return parser(text, *args)
    except SumSymError as exc:
        raise InputError(path, exc) from None


# --- commands -----------------------------------------------------------------

def cmd_decompose(args):
    T = _load(args.matrix, parse_matrix_csv, args.domain)
    try:
        circuits = circuit_decompose(T)
    except SumSymError as exc:
        raise InputError(args.matrix, exc) from None
    verdict = verify_decomposition(T, circuits)
    lines = format_circuits(circuits)
    lines.append(
        f"# summary: n={T.n} domain={T.domain.name} nnz={nonzero_count(T)} "
        f"circuits={len(circuits)} reconstruction={'PASS' if verdict else 'FAIL'}"
    )
    return lines, EXIT_OK if verdict else EXIT_FAIL


def cmd_birkhoff(args):
    T = _load(args.matrix, parse_matrix_csv, args.domain)
    try:
        perms = birkhoff_decompose(T)
    except SumSymError as exc:
        raise InputError(args.matrix, exc) from None
    refinements = [permutation_to_circuits(p) for p in perms]
    verdict = verify_decomposition(T, [c for parts in refinements for c in parts])
    lines = format_permutations(perms, refinements)
    lines.append(
        f"# summary: n={T.n} domain={T.domain.name} nnz={nonzero_count(T)} "
        f"permutations={len(perms)} line_sum={format_scalar(sums(T).row_sums[0])} "
        f"reconstruction={'PASS' if verdict else 'FAIL'}"
    )
    return lines, EXIT_OK if verdict else EXIT_FAIL


def cmd_allocate(args):
    loaded = _load(args.scenario, parse_scenario, args.sort_treatments)
    a = optimal_partition(loaded.scenario)
    return [allocation_to_json(loaded, a, approx=args.approx).rstrip("\n")], EXIT_OK


def cmd_score(args):
    loaded = _load(args.scenario, parse_scenario, args.sort_treatments)
    claimed = _load(args.allocation, parse_allocation, loaded)
    try:
        a = Allocation.from_assignment(loaded.scenario, claimed.assignment)
    except SumSymError as exc:
        raise InputError(args.allocation, exc) from None
    lines = [format_scalar(a.score)]
    if args.approx:
        lines.append(f"# approx {approximate(a.score)}")
    return lines, EXIT_OK


def _verify_matrix(args):
    T = _load(args.matrix, parse_matrix_csv, args.domain)
    records = _load(args.decomposition, parse_records, T.domain)
    where = args.decomposition
    circuits = []
    try:
        for cycle, weight, line in records.circuits:
            circuits.append(_circuit(cycle, weight, line, where))
        for rec in records.perms:
            p = _permutation(rec, where)
            if len(p.sigma) != T.n:
                raise _Fail(f"{where}: line {rec.line}: permutation has length "
                            f"{len(p.sigma)}, expected {T.n}")
            expected = permutation_to_circuits(p)
            if rec.refinement:
                given = [_circuit(c, w, ln, where) for c, w, ln in rec.refinement]
                if given != expected:
                    raise _Fail(f"{where}: line {rec.line}: circuit refinement does not "
                                f"match the cycles of the permutation")
            circuits.extend(expected)
    except _Fail as fail:
        return [f"FAIL: {fail}"], EXIT_FAIL
    verdict = verify_decomposition(T, circuits)
    if not verdict:
        return [f"FAIL: {where}: {verdict.detail}"], EXIT_FAIL
    return [f"PASS: {len(records.circuits)} circuit and {len(records.perms)} permutation "
            f"records reconstruct the {T.n}x{T.n} matrix exactly"], EXIT_OK


class _Fail(Exception):
    pass


def _circuit(cycle, weight, line, where):
    try:
        return Circuit(cycle, weight)
    except ValueError as exc:
        raise _Fail(f"{where}: line {line}: {exc}") from None


def _permutation(rec, where):
    try:
        return WeightedPermutation(rec.sigma, rec.weight)
    except ValueError as exc:
        raise _Fail(f"{where}: line {rec.line}: {exc}") from None


def _verify_allocation(args):
    loaded = _load(args.scenario, parse_scenario, args.sort_treatments)
    claimed = _load(args.allocation, parse_allocation, loaded)
    sc = loaded.scenario
    try:
        a = Allocation.from_assignment(sc, claimed.assignment)
    except InfeasibleAllocationError as exc:
        return [f"FAIL: {args.allocation}: infeasible allocation: {exc}"], EXIT_FAIL
    problems = []
    if claimed.class_sizes is not None and tuple(claimed.class_sizes) != a.class_sizes:
        problems.append("class_sizes do not match the assignment")
    if claimed.class_masses is not None and tuple(claimed.class_masses) != a.class_masses:
        problems.append("class_masses do not match the assignment")
    if claimed.score is not None and claimed.score != a.score:
        problems.append(f"claimed score {format_scalar(claimed.score)} but the assignment "
                        f"scores {format_scalar(a.score)}")
    best, witness = brute_force_best(sc, args.max_items, args.max_count)
    if a.score != best:
        problems.append(f"score {format_scalar(a.score)} is below the exhaustive maximum "
                        f"{format_scalar(best)}")
    if problems:
        return [f"FAIL: {args.allocation}: {p}" for p in problems], EXIT_FAIL
    return [f"PASS: score {format_scalar(a.score)} equals the exhaustive maximum over "
            f"{multinomial(sc.quotas)} feasible allocations"], EXIT_OK


def cmd_verify(args):
    matrix_mode = args.matrix is not None or args.decomposition is not None
    alloc_mode = args.scenario is not None or args.allocation is not None
    if matrix_mode == alloc_mode:
        raise _Usage("verify needs either --matrix and --decomposition, "
                     "or --scenario and --allocation")
    if matrix_mode:
        if args.matrix is None or args.decomposition is None:
            raise _Usage("--matrix and --decomposition must be given together")
        return _verify_matrix(args)
    if args.scenario is None or args.allocation is None:
        raise _Usage("--scenario and --allocation must be given together")
    return _verify_allocation(args)


class _Usage(Exception):
    pass


# --- parser --------------------------------------------------------------------

def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumsym",
        description="Exact circuit/Birkhoff decompositions and optimal quota allocation.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(p):
        p.add_argument("-o", "--output", help="write results here instead of stdout")

    def matrix_opts(p):
        p.add_argument("--domain", choices=sorted(DOMAINS),
                       help="scalar domain (default: header or inferred from literals)")

    p = sub.add_parser("decompose", help="circuit decomposition of a sum-symmetric matrix",
                       allow_abbrev=False)
    p.add_argument("matrix", help="matrix CSV file")
    matrix_opts(p)
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("birkhoff", help="weighted-permutation decomposition of a balanced matrix",
                       allow_abbrev=False)
    p.add_argument("matrix", help="matrix CSV file")
    matrix_opts(p)
    common(p)
    p.set_defaults(func=cmd_birkhoff)

    def scenario_opts(p):
        p.add_argument("--sort-treatments", action="store_true",
                       help="sort treatments by potency instead of rejecting unsorted input")

    p = sub.add_parser("allocate", help="optimal allocation for a scenario", allow_abbrev=False)
    p.add_argument("scenario", help="scenario JSON file")
    scenario_opts(p)
    p.add_argument("--approx", action="store_true",
                   help="also print an approximate decimal score (marked with ~)")
    common(p)
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("score", help="exact score of a given allocation", allow_abbrev=False)
    p.add_argument("scenario", help="scenario JSON file")
    p.add_argument("allocation", help="allocation JSON file")
    scenario_opts(p)
    p.add_argument("--approx", action="store_true",
                   help="also print an approximate decimal score (marked with ~)")
    common(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("verify", help="check a decomposition or an allocation with an oracle",
                       allow_abbrev=False)
    p.add_argument("--matrix", help="matrix CSV file")
    p.add_argument("--decomposition", help="decompose/birkhoff output to check")
    matrix_opts(p)
    p.add_argument("--scenario", help="scenario JSON file")
    p.add_argument("--allocation", help="allocation JSON file to check")
    scenario_opts(p)
    p.add_argument("--max-items", type=_positive_int, default=DEFAULT_MAX_ITEMS,
                   help=f"refuse exhaustive search above this many items (default {DEFAULT_MAX_ITEMS})")
    p.add_argument("--max-count", type=_positive_int, default=DEFAULT_MAX_COUNT,
                   help=f"refuse exhaustive search above this many allocations (default {DEFAULT_MAX_COUNT})")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        lines, status = args.func(args)
    except _Usage as exc:
        print(f"sumsym {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"sumsym {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceededError as exc:
        print(f"sumsym {args.command}: refused: {exc}", file=sys.stderr)
        return EXIT_CAP
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
