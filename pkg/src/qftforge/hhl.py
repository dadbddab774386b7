"""Phase-estimation / controlled-rotation template in the shape of HHL.

Register layout for ``HhlConfig(qpe, sol)``::

    qubits 0 .. qpe-1            phase-estimation register
    qubits qpe .. qpe+sol-1      solution register
    qubit  qpe+sol               auxiliary (rotation target)

This is the circuit only; no matrix A or vector b is encoded, so nothing
here claims to solve a linear system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import Circuit, simulate
from .errors import ArgumentError, SizeError
from .qft import build_iqft_reversal
from .state import MAX_QUBITS, Histogram, StateVector, barrier, cp, cry, h, sample_counts, zero_state


@dataclass(frozen=True)
class HhlConfig:
    num_qpe_qubits: int = 6
    num_solution_qubits: int = 8
    num_auxiliary_qubits: int = 1

    def __post_init__(self) -> None:
        if self.num_auxiliary_qubits != 1:
            raise ArgumentError("the template uses exactly one auxiliary qubit")
        if self.num_qpe_qubits < 1 or self.num_solution_qubits < 1:
            raise SizeError("need at least one QPE and one solution qubit")
        if self.total_qubits > MAX_QUBITS:
            raise SizeError(f"{self.total_qubits} qubits exceeds the {MAX_QUBITS}-qubit cap")

    @property
    def total_qubits(self) -> int:
        return self.num_qpe_qubits + self.num_solution_qubits + self.num_auxiliary_qubits

    @property
    def auxiliary(self) -> int:
        return self.total_qubits - 1

    @property
    def measured_qubits(self) -> tuple[int, ...]:
        """Classical slot order: solution qubits first, auxiliary last."""
        q = self.num_qpe_qubits
        return tuple(range(q, q + self.num_solution_qubits)) + (self.auxiliary,)


def build_hhl_template(cfg: HhlConfig) -> Circuit:
    qpe, sol = cfg.num_qpe_qubits, cfg.num_solution_qubits
    ops = [h(q) for q in range(qpe, qpe + sol)]
    ops.append(barrier())
    for i in range(qpe):
        ops.append(h(i))
        for j in range(sol):
            # a U gate with theta = phi = gamma = 0 is exactly CP(lambda)
            ops.append(cp(math.pi / 2 ** (i + j + 1), i, qpe + j))
    ops.append(barrier())
    ops.extend(build_iqft_reversal(qpe).embed(range(qpe), cfg.total_qubits).ops)
    ops.append(barrier())
    for i in range(qpe):
        ops.append(cry(math.pi / 2 ** (i + 1), i, cfg.auxiliary))
    ops.append(barrier())
    return Circuit(cfg.total_qubits, tuple(ops))


def run_hhl(cfg: HhlConfig, shots: int = 1024, seed: int = 0) -> tuple[StateVector, Histogram]:
    circuit = build_hhl_template(cfg)
    final = simulate(circuit, zero_state(circuit.num_qubits))
    return final, sample_counts(final, shots, seed, qubits=cfg.measured_qubits)
