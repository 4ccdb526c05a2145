"""Command-line entry point.

Exit-code contract (stable for shell harnesses):
  0  success
  1  I/O or parse failure
  2  precondition violation (irregular matrix, bad dimensions, ...)
  3  non-unitary operator
  4  verification failure (qwalk verify)
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import fileio
from .coins import CoinSpec, coin_matrix, evolution, named_coin, NAMED_COINS
from .errors import FileFormatError, NonUnitaryError, PreconditionError
from .linalg import Tolerance, max_norm, require_unitary
from .shift import assemble_shift, decompose_permutations, extract_graph, verify_kraus
from .walk import classical_walk, measure_position, step

EXIT_OK = 0
EXIT_IO = 1
EXIT_PRECONDITION = 2
EXIT_NON_UNITARY = 3
EXIT_VERIFY_FAILED = 4


def _tol(args) -> Tolerance:
    return Tolerance(abs_eps=args.tol) if args.tol is not None else Tolerance()


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def cmd_decompose(args) -> int:
    a = fileio.load_matrix(args.adjacency)
    grid = decompose_permutations(a)
    fileio.save_grid(grid, args.out)
    residual = max_norm(grid.block_sum() - a.T)
    print(f"m = {grid.m}")
    print(f"sum residual = {fileio.fmt_float(residual)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    grid = fileio.load_grid(args.grid)
    a = fileio.load_matrix(args.adjacency) if args.adjacency else None
    report = verify_kraus(a, grid, _tol(args))
    if report.sum_ok is None:
        print("sum: SKIPPED (no adjacency file)")
    else:
        print(f"sum: {'PASS' if report.sum_ok else 'FAIL'} "
              f"residual={fileio.fmt_float(report.sum_residual)}")
    print(f"column completeness: {'PASS' if report.column_ok else 'FAIL'} "
          f"residual={fileio.fmt_float(report.column_residual)}")
    print(f"row completeness: {'PASS' if report.row_ok else 'FAIL'} "
          f"residual={fileio.fmt_float(report.row_residual)}")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_assemble(args) -> int:
    grid = fileio.load_grid(args.grid)
    shift = assemble_shift(grid, _tol(args))
    fileio.save_matrix(shift.matrix, args.out)
    print(f"shift operator: {shift.m * shift.n}x{shift.m * shift.n} "
          f"(m={shift.m}, n={shift.n})")
    return EXIT_OK


def cmd_coin(args) -> int:
    spec = fileio.load_coin_spec(args.coin)
    fileio.save_matrix(coin_matrix(spec), args.out)
    return EXIT_OK


def cmd_evolve_op(args) -> int:
    s = fileio.load_matrix(args.shift)
    spec = fileio.load_coin_spec(args.coin)
    tol = _tol(args)
    require_unitary(s, tol, "shift operator")
    fileio.save_matrix(evolution(s, spec, tol), args.out)
    return EXIT_OK


def _distribution_rows(u, state, steps, trajectory):
    rows = []
    for t in range(steps + 1):
        if t > 0:
            state = step(u, state)
        if trajectory or t == steps:
            dist = measure_position(state)
            rows.extend((t, k, float(dist.probs[k])) for k in range(dist.n))
    return rows, state


def cmd_walk(args) -> int:
    operator = fileio.load_matrix(args.operator)
    state = fileio.load_state(args.state)
    tol = _tol(args)
    if args.coin is not None:
        spec = fileio.load_coin_spec(args.coin)
        require_unitary(operator, tol, "shift operator")
        operator = evolution(operator, spec, tol)
    require_unitary(operator, tol, "walk operator")
    if operator.shape[0] != state.m * state.n:
        raise PreconditionError(
            f"operator dimension {operator.shape[0]} does not match state "
            f"dimension {state.m * state.n}")
    rows, final = _distribution_rows(operator, state, args.steps, args.trajectory)
    fileio.write_distribution_csv(rows, args.out)
    total = float(np.sum(np.abs(final.amplitudes) ** 2))
    print(f"total probability = {fileio.fmt_float(total)}")
    return EXIT_OK


def cmd_classical(args) -> int:
    a = fileio.load_matrix(args.adjacency)
    p0 = fileio.load_probability_vector(args.init)
    rows = []
    for t in range(args.steps + 1):
        if args.trajectory or t == args.steps:
            dist = classical_walk(a, p0, t)
            rows.extend((t, k, float(dist.probs[k])) for k in range(dist.n))
    fileio.write_distribution_csv(rows, args.out)
    final = classical_walk(a, p0, args.steps)
    print(f"total probability = {fileio.fmt_float(float(final.probs.sum()))}")
    return EXIT_OK


def _extract_one(u, m, out_path, tol) -> None:
    grid, graph = extract_graph(u, m, tol)
    fileio.save_graph(graph, out_path)
    adjacency_path = Path(out_path).with_suffix(".adjacency.json")
    fileio.save_matrix(grid.block_sum().T, adjacency_path)
    print(f"m={m} n={grid.n}: {len(graph.arcs)} arcs -> {out_path} "
          f"(adjacency: {adjacency_path})")


def cmd_extract(args) -> int:
    u = fileio.load_matrix(args.unitary)
    tol = _tol(args)
    if args.all_partitions:
        base = Path(args.out)
        dim = u.shape[0]
        for m in range(1, dim + 1):
            if dim % m == 0:
                out = base.with_suffix(f".m{m}.json")
                _extract_one(u, m, out, tol)
        return EXIT_OK
    if args.m is None:
        raise PreconditionError("extract requires --m or --all-partitions")
    _extract_one(u, args.m, args.out, tol)
    return EXIT_OK


def cmd_compile(args) -> int:
    a = fileio.load_matrix(args.adjacency)
    tol = _tol(args)
    grid = decompose_permutations(a)
    shift = assemble_shift(grid, tol)
    if args.coin_file is not None:
        spec = fileio.load_coin_spec(args.coin_file)
    else:
        spec = CoinSpec.global_coin(named_coin(args.coin_name, grid.m), grid.n)
    fileio.save_matrix(evolution(shift, spec, tol), args.out)
    print(f"m = {grid.m}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwalk",
        description="Graph <-> unitary compiler and simulator for coined "
                    "discrete-time quantum walks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--tol", type=float, default=None,
                       help="absolute tolerance override")
        return p

    p = add("decompose", cmd_decompose,
            "decompose a regular adjacency matrix into permutation blocks")
    p.add_argument("adjacency")
    p.add_argument("--out", required=True)

    p = add("verify", cmd_verify,
            "check a Kraus grid against the completeness relations")
    p.add_argument("grid")
    p.add_argument("--adjacency", default=None,
                   help="also check the block sum against this adjacency matrix")

    p = add("assemble", cmd_assemble, "assemble a Kraus grid into a shift operator")
    p.add_argument("grid")
    p.add_argument("--out", required=True)

    p = add("coin", cmd_coin, "build the full coin operator from a coin spec")
    p.add_argument("coin")
    p.add_argument("--out", required=True)

    p = add("evolve-op", cmd_evolve_op,
            "compose a shift operator and a coin into the evolution operator")
    p.add_argument("shift")
    p.add_argument("coin")
    p.add_argument("--out", required=True)

    p = add("walk", cmd_walk, "run a quantum walk and write the distribution CSV")
    p.add_argument("operator", help="shift or evolution operator matrix file")
    p.add_argument("state", help="initial state file")
    p.add_argument("--coin", default=None,
                   help="coin spec file; composes with the operator first")
    p.add_argument("--steps", type=_nonneg_int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--trajectory", action="store_true",
                   help="record every step, not just the final one")

    p = add("classical", cmd_classical,
            "run the classical random-walk baseline with the same CSV schema")
    p.add_argument("adjacency")
    p.add_argument("init", help="initial probability vector file")
    p.add_argument("--steps", type=_nonneg_int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--trajectory", action="store_true")

    p = add("extract", cmd_extract,
            "read the multigraph encoded by a bipartite unitary")
    p.add_argument("unitary")
    p.add_argument("--m", type=int, default=None, help="coin dimension")
    p.add_argument("--all-partitions", action="store_true",
                   help="extract one graph per divisor of the dimension")
    p.add_argument("--out", required=True)

    p = add("compile", cmd_compile,
            "decompose, assemble and apply a coin in one invocation")
    p.add_argument("adjacency")
    p.add_argument("--coin-file", default=None)
    p.add_argument("--coin-name", default="identity", choices=NAMED_COINS)
    p.add_argument("--out", required=True)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, FileFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NonUnitaryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NON_UNITARY
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
