"""Common execution contract over the two interchangeable backends.

``run_program`` applies every unitary of a flattened program on either the
MPS simulator or the dense oracle; ``execute`` additionally samples the
measured qubits and assembles a :class:`RunRecord`. Both backends share the
same sequential sampling path (one uniform variate per qubit per shot), so a
fixed seed yields identical counts across backends when truncation is off.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .dense import DenseState, dense_run
from .gates import gate_matrix
from .ir import GateKind, Instruction, num_qubits
from .mps import MpsState, TruncationPolicy

BACKENDS = ("mps", "dense")


@dataclass
class RunRecord:
    """Results of one program execution."""

    counts: dict[str, int] = field(default_factory=dict)
    max_bond_seen: int | None = None
    memory_estimate_bytes: int = 0
    trunc_error_sq: float = 0.0
    wall_time: float = 0.0

    def to_json_dict(self, include_wall_time: bool = True) -> dict:
        out = {
            "counts": self.counts,
            "max_bond_seen": self.max_bond_seen,
            "memory_estimate_bytes": self.memory_estimate_bytes,
            "trunc_error_sq": self.trunc_error_sq,
        }
        if include_wall_time:
            out["wall_time"] = self.wall_time
        return out


def mps_run(
    program: list[Instruction], n: int, policy: TruncationPolicy | None = None
) -> MpsState:
    """Apply every unitary gate in order on a fresh MPS; MEASUREs are skipped."""
    state = MpsState(n, policy)
    for instr in program:
        if instr.kind is GateKind.MEASURE:
            continue
        matrix = gate_matrix(instr)
        if instr.kind.num_qubits == 1:
            state.apply_one_qubit(matrix, instr.qubits[0])
        else:
            state.apply_two_qubit_routed(matrix, instr.qubits[0], instr.qubits[1])
    return state


def run_program(
    program: list[Instruction],
    n: int | None = None,
    backend: str = "mps",
    policy: TruncationPolicy | None = None,
) -> MpsState | DenseState:
    if n is None:
        n = num_qubits(program)
    elif n < num_qubits(program):
        raise ValueError(
            f"program touches qubit {num_qubits(program) - 1}, register has {n}"
        )
    if backend == "mps":
        return mps_run(program, n, policy)
    if backend == "dense":
        return dense_run(program, n)
    raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")


def measured_qubits(program: list[Instruction]) -> list[int]:
    """Qubits of the MEASURE instructions, in program order (with repeats)."""
    return [i.qubits[0] for i in program if i.kind is GateKind.MEASURE]


def execute(
    program: list[Instruction],
    n: int | None = None,
    backend: str = "mps",
    policy: TruncationPolicy | None = None,
    shots: int = 1024,
    seed: int | None = None,
) -> RunRecord:
    """Run the program, sample measured qubits, and collect run statistics."""
    start = time.perf_counter()
    state = run_program(program, n, backend, policy)
    record = RunRecord()
    if isinstance(state, MpsState):
        record.max_bond_seen = state.max_bond_seen
        record.memory_estimate_bytes = state.memory_estimate_bytes()
        record.trunc_error_sq = state.trunc_error_sq
    else:
        record.memory_estimate_bytes = 16 * state.amps.size
    targets = measured_qubits(program)
    if targets and shots > 0:
        rng = np.random.default_rng(seed)
        full_counts = state.sample(shots, rng)
        for bits, count in sorted(full_counts.items()):
            key = "".join(bits[q] for q in targets)
            record.counts[key] = record.counts.get(key, 0) + count
    record.wall_time = time.perf_counter() - start
    return record
