"""Command-line entry point: ``run``, ``vqe``, and ``bench`` subcommands.

Exit codes: 0 success, 1 usage/parse error, 2 execution error. Range flags use
``start:stop:N`` where the third field is a point count for ``vqe --grid`` and
a step for ``bench --qubits/--rounds``. Environment variables
``MPSQVM_CUTOFF``, ``MPSQVM_MAX_BOND``, and ``MPSQVM_ORACLE_QUBIT_CAP``
override defaults; explicit flags win over the environment.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import bench as bench_mod
from . import vqe as vqe_mod
from .backends import BACKENDS, execute
from .hamiltonian import HamiltonianFormatError, load_hamiltonian
from .ir import IrError, bind_parameters, flatten, num_qubits
from .mps import TruncationPolicy
from .parser import ParseError, parse


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        raise SystemExit(self._fail(message))

    def _fail(self, message: str) -> int:
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        return 1


def _env_float(name: str, default: float) -> float:
    return float(os.environ[name]) if name in os.environ else default


def _env_opt_int(name: str) -> int | None:
    return int(os.environ[name]) if name in os.environ else None


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="mpsqvm", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add_backend_flags(p: argparse.ArgumentParser, backends: bool = True) -> None:
        if backends:
            p.add_argument("--backend", choices=BACKENDS, default="mps")
        p.add_argument("--cutoff", type=float, default=None,
                       help="singular-value truncation threshold (default 1e-4)")
        p.add_argument("--max-bond", type=int, default=None,
                       help="hard bond-dimension cap (default unlimited)")
        p.add_argument("--cutoff-mode", choices=("relative", "absolute"),
                       default="relative")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", type=Path, default=None,
                       help="write result file here instead of stdout")

    run = sub.add_parser("run", parents=[], help="execute one kernel")
    run.add_argument("--source", required=True,
                     help="kernel source file (.qk) or '-' for stdin")
    run.add_argument("--kernel", required=True, help="kernel name to execute")
    run.add_argument("--args", default="",
                     help="comma-separated values for the kernel's parameters")
    run.add_argument("--qubits", type=int, default=None,
                     help="register size (default: smallest covering the program)")
    run.add_argument("--shots", type=int, default=1024)
    add_backend_flags(run)

    vqe = sub.add_parser("vqe", help="sweep <H>(theta) over a parameter grid")
    vqe.add_argument("--ansatz", required=True, help="kernel source file (.qk) or '-'")
    vqe.add_argument("--kernel", default="ansatz", help="ansatz kernel name")
    vqe.add_argument("--ham", required=True, help="Pauli Hamiltonian file")
    vqe.add_argument("--grid", default="-3.141592653589793:3.141592653589793:100",
                     help="theta grid start:stop:count")
    vqe.add_argument("--shots", type=int, default=None,
                     help="estimate terms by basis rotation + sampling")
    add_backend_flags(vqe)
    # let "--grid -3.14:3.14:100" pass a leading-minus value without "="
    vqe._negative_number_matcher = re.compile(r"^-\d")

    bench = sub.add_parser("bench", help="random-circuit memory-scaling grid")
    bench.add_argument("--qubits", default="5:85:5", help="qubit range start:stop:step")
    bench.add_argument("--rounds", default="2:10:2", help="round range start:stop:step")
    bench.add_argument("--seeds", type=int, default=10, help="random circuits per cell")
    bench.add_argument("--chi-cap", type=int, default=4096,
                       help="skip a cell once its bond dimension exceeds this")
    bench.add_argument("--time-budget", type=float, default=60.0,
                       help="per-seed wall-clock budget in seconds")
    bench.add_argument("--plot-out", type=Path, default=None,
                       help="also write a gnuplot-style surface data file")
    add_backend_flags(bench, backends=False)

    return top


def _policy_from(args: argparse.Namespace) -> TruncationPolicy:
    cutoff = args.cutoff if args.cutoff is not None else _env_float("MPSQVM_CUTOFF", 1e-4)
    max_bond = args.max_bond if args.max_bond is not None else _env_opt_int("MPSQVM_MAX_BOND")
    return TruncationPolicy(cutoff=cutoff, max_bond=max_bond,
                            relative=args.cutoff_mode == "relative")


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _get_kernel(source_text: str, name: str):
    unit = parse(source_text)
    if name not in unit.kernels:
        raise UsageError(f"kernel '{name}' not found; unit defines {sorted(unit.kernels)}")
    return unit.kernels[name]


def _cmd_run(args: argparse.Namespace) -> None:
    kernel = _get_kernel(_read_source(args.source), args.kernel)
    values = [float(v) for v in args.args.split(",") if v.strip()] if args.args else []
    program = flatten(bind_parameters(kernel, values))
    n = args.qubits
    if n is not None and program and n < num_qubits(program):
        raise UsageError(
            f"--qubits {n} is smaller than the program's qubit span {num_qubits(program)}"
        )
    record = execute(program, n, args.backend, _policy_from(args),
                     shots=args.shots, seed=args.seed)
    # wall_time is excluded from --out files so identical invocations are
    # byte-identical; timing goes to stderr instead.
    if args.out is None:
        _emit(json.dumps(record.to_json_dict(), indent=2) + "\n", None)
    else:
        _emit(json.dumps(record.to_json_dict(include_wall_time=False), indent=2) + "\n",
              args.out)
        print(f"wall_time: {record.wall_time:.6f} s", file=sys.stderr)


def _parse_grid(text: str, what: str) -> tuple[float, float, int]:
    fields = text.split(":")
    if len(fields) != 3:
        raise UsageError(f"bad {what} range {text!r}, expected start:stop:count")
    try:
        start, stop, count = float(fields[0]), float(fields[1]), int(fields[2])
    except ValueError:
        raise UsageError(f"bad {what} range {text!r}") from None
    return start, stop, count


def _parse_steps(text: str, what: str) -> list[int]:
    fields = text.split(":")
    if len(fields) != 3:
        raise UsageError(f"bad {what} range {text!r}, expected start:stop:step")
    try:
        start, stop, step = (int(f) for f in fields)
    except ValueError:
        raise UsageError(f"bad {what} range {text!r}") from None
    if step < 1 or stop < start:
        raise UsageError(f"bad {what} range {text!r}")
    return list(range(start, stop + 1, step))


def _cmd_vqe(args: argparse.Namespace) -> None:
    kernel = _get_kernel(_read_source(args.ansatz), args.kernel)
    hamiltonian = load_hamiltonian(args.ham)
    start, stop, count = _parse_grid(args.grid, "--grid")
    result = vqe_mod.sweep(
        kernel, hamiltonian, start, stop, count,
        backend=args.backend, policy=_policy_from(args),
        shots=args.shots, seed=args.seed,
    )
    rows = "".join(f"{t!r},{e!r}\n" for t, e in zip(result.thetas, result.energies))
    _emit("theta,energy\n" + rows, args.out)
    print(f"argmin_theta={result.argmin_theta!r} min_energy={result.min_energy!r}",
          file=sys.stderr)


def _cmd_bench(args: argparse.Namespace) -> None:
    records = bench_mod.run_grid(
        qubits=_parse_steps(args.qubits, "--qubits"),
        rounds=_parse_steps(args.rounds, "--rounds"),
        seeds_per_cell=args.seeds,
        policy=_policy_from(args),
        chi_budget=args.chi_cap,
        time_budget=args.time_budget,
    )
    csv_text, plot_text = bench_mod.emit_report(records)
    _emit(csv_text, args.out)
    if args.plot_out is not None:
        args.plot_out.write_text(plot_text, encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    try:
        if args.command == "run":
            _cmd_run(args)
        elif args.command == "vqe":
            _cmd_vqe(args)
        else:
            _cmd_bench(args)
    except (ParseError, HamiltonianFormatError, UsageError, FileNotFoundError) as exc:
        print(f"mpsqvm: error: {exc}", file=sys.stderr)
        return 1
    except (IrError, ValueError, RuntimeError) as exc:
        print(f"mpsqvm: execution error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
