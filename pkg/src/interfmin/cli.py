"""Command-line entry point.

Subcommands: gen (instance generators), solve (oracle / dp / dp-optsearch /
nna), check (predicates on an instance plus assignment, or the gadget
geometry suite), reduce (grid graph to 2D point set), ham (Hamiltonian path
search and the derived assignment).

Reports are line-oriented `key: value` text.  Every solve re-verifies the
reported value against a fresh interference computation on the witness before
printing; a mismatch aborts with exit code 3.  Exit codes: 0 success,
1 malformed input, 2 infeasible or refused, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field

from . import dpsolve, families, oracle, reduction, textio
from .nna import nna as run_nna
from .errors import CapExceededError, InputError, InvariantError
from .model import (
    Instance1D,
    Instance2D,
    as_rational,
    communication_graph_2d,
    count_bends,
    cross_edges,
    has_bst_property,
    interference,
    is_valid,
)


@dataclass
class RunReport:
    method: str
    value: int
    elapsed: float
    witness_path: str | None = None
    stats: dict = field(default_factory=dict)

    def lines(self, with_stats: bool) -> list[str]:
        out = [f"method: {self.method}", f"optimum: {self.value}"]
        if self.witness_path:
            out.append(f"witness_path: {self.witness_path}")
        if with_stats:
            # Timing lives behind --stats so default reports are byte-identical
            # across runs.
            out.append(f"elapsed_s: {self.elapsed:.3f}")
            for key in sorted(self.stats):
                out.append(f"{key}: {self.stats[key]}")
        return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); bad usage is exit 1 here
        self.print_usage(sys.stderr)
        raise InputError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="interfmin", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate instances")
    gen_sub = gen.add_subparsers(dest="family", required=True)
    for fam in ("p", "q"):
        sp = gen_sub.add_parser(fam)
        sp.add_argument("parameter", type=int)
        sp.add_argument("-o", "--out")
        sp.add_argument("--with-witness", action="store_true")
        if fam == "p":
            sp.add_argument("--side", choices=("left", "right"), default="left")
    sp = gen_sub.add_parser("loglower")
    sp.add_argument("parameter", type=int)
    sp.add_argument("-o", "--out")
    sp = gen_sub.add_parser("random")
    sp.add_argument("parameter", type=int)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--coord-max", type=int, default=100)
    sp.add_argument("-o", "--out")

    solve = sub.add_parser("solve", help="run a solver on a 1D or 2D instance")
    solve.add_argument("--method", required=True, choices=("oracle", "dp", "dp-optsearch", "nna"))
    solve.add_argument("instance")
    solve.add_argument("--witness-out")
    solve.add_argument("--cap", type=int, help="override the oracle enumeration cap")
    solve.add_argument("--stats", action="store_true")
    solve.add_argument("--trace", action="store_true", help="print per-round partitions (nna)")
    solve.add_argument("--dot", help="write the witness communication graph (2D only)")

    check = sub.add_parser("check", help="evaluate predicates on instance + assignment")
    check_sub = check.add_subparsers(dest="predicate", required=True)
    for pred in ("valid", "interference", "bst", "bends", "cross"):
        sp = check_sub.add_parser(pred)
        sp.add_argument("instance")
        sp.add_argument("assignment")
        if pred == "valid":
            sp.add_argument("--dot", help="write the communication graph (2D only)")
    sp = check_sub.add_parser("gadget")
    sp.add_argument("grid")
    sp.add_argument("--epsilon", default="1/64")

    red = sub.add_parser("reduce", help="grid graph to 2D gadget point set")
    red.add_argument("grid")
    red.add_argument("--epsilon", default="1/64")
    red.add_argument("-o", "--out")
    red.add_argument("--roles-out")

    ham = sub.add_parser("ham", help="Hamiltonian path tools")
    ham_sub = ham.add_subparsers(dest="action", required=True)
    sp = ham_sub.add_parser("find")
    sp.add_argument("grid")
    sp = ham_sub.add_parser("assign")
    sp.add_argument("grid")
    sp.add_argument("--epsilon", default="1/64")
    sp.add_argument("--points-out")
    sp.add_argument("--assign-out")
    return parser


def _parse_epsilon(token: str):
    eps = as_rational(token)
    if eps <= 0:
        raise InputError("epsilon must be positive")
    return eps


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _cmd_gen(args) -> int:
    witness = None
    if args.family == "p":
        fam = families.gen_p(args.parameter)
        if args.with_witness:
            witness = families.optimal_assignment_p(args.parameter, args.side)
    elif args.family == "q":
        fam = families.gen_q(args.parameter)
        if args.with_witness:
            witness = families.optimal_assignment_q(args.parameter)
    elif args.family == "loglower":
        fam = families.gen_log_lower(args.parameter)
    else:
        inst = families.random_instance_1d(args.parameter, args.seed, args.coord_max)
        _write(args.out, textio.format_points(inst))
        return 0
    _write(args.out, textio.format_points(fam.instance))
    if witness is not None:
        if args.out is None:
            raise InputError("--with-witness needs -o to derive the witness path")
        path = args.out + ".assign"
        _write(path, textio.format_assignment(witness))
    return 0


def _cmd_solve(args) -> int:
    instance = textio.parse_points(_read(args.instance))
    t0 = time.monotonic()
    stats: dict = {}
    if args.method == "oracle":
        if isinstance(instance, Instance1D):
            cap = args.cap if args.cap is not None else oracle.DEFAULT_CAP_1D
            result = oracle.brute_force_1d(instance, cap=cap)
        else:
            cap = args.cap if args.cap is not None else oracle.DEFAULT_CAP_2D
            result = oracle.brute_force_2d(instance, cap=cap)
    elif args.method in ("dp", "dp-optsearch"):
        if not isinstance(instance, Instance1D):
            raise InputError("the dp solvers need a 1D instance")
        dp_stats = dpsolve.DpStats()
        solver = dpsolve.solve_exact if args.method == "dp" else dpsolve.solve_opt_search
        result = solver(instance, dp_stats)
        stats = {"subproblems": dp_stats.subproblems, "memo_hits": dp_stats.memo_hits}
    else:
        if not isinstance(instance, Instance1D):
            raise InputError("nna needs a 1D instance")
        rounds: list = []
        witness = run_nna(instance, rounds)
        result = oracle.OracleResult(interference(instance, witness), witness)
        stats = {"rounds": len(rounds)}
        if args.trace:
            for i, comps in enumerate(rounds, start=1):
                parts = " ".join(f"[{c.lo}-{c.hi}]@{c.sink}" for c in comps)
                print(f"round {i}: {parts}")

    elapsed = time.monotonic() - t0
    if not is_valid(instance, result.witness):
        raise InvariantError("witness failed validation")
    recomputed = interference(instance, result.witness)
    if recomputed != result.optimum:
        raise InvariantError(
            f"witness interference {recomputed} != reported optimum {result.optimum}"
        )

    report = RunReport(args.method, result.optimum, elapsed, args.witness_out, stats)
    for line in report.lines(args.stats):
        print(line)
    witness_text = textio.format_assignment(result.witness)
    if args.witness_out:
        _write(args.witness_out, witness_text)
    else:
        sys.stdout.write(witness_text)
    if args.dot:
        if not isinstance(instance, Instance2D):
            raise InputError("--dot needs a 2D instance")
        _write(args.dot, textio.format_graph_dot(communication_graph_2d(instance, result.witness)))
    return 0


def _cmd_check(args) -> int:
    if args.predicate == "gadget":
        grid = reduction.GridGraph.from_vertices(textio.parse_grid(_read(args.grid)))
        red = reduction.reduce_grid(grid, _parse_epsilon(args.epsilon), run_checks=False)
        problems = reduction.geometry_violations(red)
        if problems:
            for p in problems:
                print(f"violation: {p}")
            raise InvariantError(f"{len(problems)} gadget geometry violations")
        print("gadget: ok")
        return 0

    instance = textio.parse_points(_read(args.instance))
    assignment = textio.parse_assignment(_read(args.assignment))
    if args.predicate == "valid":
        verdict = is_valid(instance, assignment)
        print(f"valid: {'true' if verdict else 'false'}")
        if getattr(args, "dot", None):
            if not isinstance(instance, Instance2D):
                raise InputError("--dot needs a 2D instance")
            _write(args.dot, textio.format_graph_dot(communication_graph_2d(instance, assignment)))
        return 0
    if args.predicate == "interference":
        print(f"interference: {interference(instance, assignment)}")
        return 0
    if not isinstance(instance, Instance1D):
        raise InputError(f"check {args.predicate} needs a 1D instance")
    if args.predicate == "bst":
        print(f"bst: {'true' if has_bst_property(instance, assignment) else 'false'}")
    elif args.predicate == "bends":
        print(f"bends: {count_bends(instance, assignment)}")
    else:
        edges = cross_edges(instance, assignment)
        print(f"cross_edges: {len(edges)}")
        for p, q in edges:
            print(f"cross: {p} {q}")
    return 0


def _roles_sidecar(red: reduction.ReductionOutput) -> str:
    lines = []
    for idx in range(red.instance.n):
        v = red.gadget_of[idx]
        lines.append(f"{idx} {v[0]} {v[1]} {red.role_of[idx]}")
    return "\n".join(lines) + "\n"


def _cmd_reduce(args) -> int:
    grid = reduction.GridGraph.from_vertices(textio.parse_grid(_read(args.grid)))
    red = reduction.reduce_grid(grid, _parse_epsilon(args.epsilon))
    _write(args.out, textio.format_points(red.instance))
    roles_path = args.roles_out
    if roles_path is None and args.out is not None:
        roles_path = args.out + ".roles"
    if roles_path is not None:
        _write(roles_path, _roles_sidecar(red))
    return 0


def _cmd_ham(args) -> int:
    grid = reduction.GridGraph.from_vertices(textio.parse_grid(_read(args.grid)))
    path = reduction.find_ham_path(grid)
    if path is None:
        print("ham_path: none")
        raise CapExceededError("the grid graph has no Hamiltonian path")
    print("ham_path: " + " ".join(f"({x},{y})" for x, y in path))
    if args.action == "find":
        return 0
    red = reduction.reduce_grid(grid, _parse_epsilon(args.epsilon))
    assignment = reduction.assignment_from_ham_path(red, path)
    value = interference(red.instance, assignment)
    if not is_valid(red.instance, assignment):
        raise InvariantError("encoded assignment failed validation")
    print(f"interference: {value}")
    if args.points_out:
        _write(args.points_out, textio.format_points(red.instance))
        _write(args.points_out + ".roles", _roles_sidecar(red))
    if args.assign_out:
        _write(args.assign_out, textio.format_assignment(assignment))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "reduce":
            return _cmd_reduce(args)
        return _cmd_ham(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
