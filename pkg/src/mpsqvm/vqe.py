"""Variational sweep driver: evaluate <H>(theta) for a one-parameter ansatz.

Expectation values are computed analytically by default. With ``shots`` set,
each Hamiltonian term is instead estimated by rotating the measurement basis
per qubit (X -> H, Y -> RZ(-pi/2) then H, Z -> nothing) and sampling the
parity of the involved qubits.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi, sqrt

import numpy as np

from .backends import run_program
from .hamiltonian import PauliHamiltonian
from .ir import CompositeInstruction, GateKind, Instruction, bind_parameters, flatten, num_qubits
from .mps import TruncationPolicy


@dataclass(frozen=True)
class SweepResult:
    thetas: tuple[float, ...]
    energies: tuple[float, ...]
    argmin_theta: float
    min_energy: float


def _unitary_program(ansatz: CompositeInstruction, theta: float) -> list[Instruction]:
    if len(ansatz.formal_params) != 1:
        raise ValueError(
            f"driver supports exactly one formal parameter, "
            f"kernel '{ansatz.name}' has {len(ansatz.formal_params)}"
        )
    program = flatten(bind_parameters(ansatz, [theta]))
    return [i for i in program if i.kind is not GateKind.MEASURE]


def _basis_rotations(pauli: str) -> list[Instruction]:
    rotations: list[Instruction] = []
    for q, label in enumerate(pauli):
        if label == "X":
            rotations.append(Instruction(GateKind.H, (q,)))
        elif label == "Y":
            rotations.append(Instruction(GateKind.RZ, (q,), (-pi / 2,)))
            rotations.append(Instruction(GateKind.H, (q,)))
    return rotations


def _sampled_term(
    program: list[Instruction],
    pauli: str,
    n: int,
    backend: str,
    policy: TruncationPolicy | None,
    shots: int,
    rng: np.random.Generator,
) -> float:
    state = run_program(program + _basis_rotations(pauli), n, backend, policy)
    support = [q for q, label in enumerate(pauli) if label != "I"]
    counts = state.sample(shots, rng)
    total = 0
    for bits, count in counts.items():
        parity = sum(int(bits[q]) for q in support) % 2
        total += count if parity == 0 else -count
    return total / shots


def energy(
    ansatz: CompositeInstruction,
    theta: float,
    hamiltonian: PauliHamiltonian,
    backend: str = "mps",
    policy: TruncationPolicy | None = None,
    shots: int | None = None,
    seed: int | None = None,
) -> float:
    """<psi(theta)|H|psi(theta)> with the state prepared by the bound ansatz."""
    program = _unitary_program(ansatz, theta)
    n = hamiltonian.n
    if num_qubits(program) > n:
        raise ValueError(
            f"ansatz touches qubit {num_qubits(program) - 1}, "
            f"Hamiltonian has {n} qubit(s)"
        )
    if shots is None:
        state = run_program(program, n, backend, policy)
        return sum(c * state.expectation_pauli(p) for c, p in hamiltonian.terms)
    value = 0.0
    for idx, (coeff, pauli) in enumerate(hamiltonian.terms):
        if set(pauli) == {"I"}:
            value += coeff
            continue
        rng = np.random.default_rng([0 if seed is None else seed, idx])
        value += coeff * _sampled_term(program, pauli, n, backend, policy, shots, rng)
    return value


def sweep(
    ansatz: CompositeInstruction,
    hamiltonian: PauliHamiltonian,
    start: float = -pi,
    stop: float = pi,
    count: int = 100,
    backend: str = "mps",
    policy: TruncationPolicy | None = None,
    shots: int | None = None,
    seed: int | None = None,
) -> SweepResult:
    """Uniform inclusive grid scan; argmin ties break toward smaller theta."""
    if count < 2:
        raise ValueError("grid needs at least 2 points")
    thetas = np.linspace(start, stop, count)
    energies = [
        energy(ansatz, float(t), hamiltonian, backend, policy, shots, seed)
        for t in thetas
    ]
    best = int(np.argmin(energies))
    return SweepResult(
        thetas=tuple(float(t) for t in thetas),
        energies=tuple(energies),
        argmin_theta=float(thetas[best]),
        min_energy=float(energies[best]),
    )


def binomial_sigma(expectation: float, shots: int) -> float:
    """Standard error of a parity estimate of a Pauli term at ``shots`` samples."""
    variance = max(0.0, 1.0 - expectation**2)
    return sqrt(variance / shots)
