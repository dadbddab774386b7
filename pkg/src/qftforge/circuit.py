"""Immutable circuits: simulation, dagger, unitary extraction and metrics."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import ArgumentError, SizeError
from .state import (
    GateKind,
    GateOp,
    StateVector,
    _check_width,
    apply_inplace,
    check_op,
)

MAX_UNITARY_QUBITS = 10


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    ops: tuple[GateOp, ...] = ()

    def __post_init__(self) -> None:
        _check_width(self.num_qubits)
        ops = tuple(self.ops)
        for op in ops:
            check_op(op, self.num_qubits)
        object.__setattr__(self, "ops", ops)

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def __add__(self, other: Circuit) -> Circuit:
        """Concatenation: ``self`` runs first, then ``other``."""
        if other.num_qubits != self.num_qubits:
            raise ArgumentError(
                f"cannot concatenate {self.num_qubits}- and {other.num_qubits}-qubit circuits"
            )
        return Circuit(self.num_qubits, self.ops + other.ops)

    def gates(self) -> tuple[GateOp, ...]:
        """The ops without barriers."""
        return tuple(op for op in self.ops if op.kind is not GateKind.BARRIER)

    def embed(self, wires: Sequence[int], num_qubits: int) -> Circuit:
        """Place this circuit onto ``wires`` of a wider register."""
        if len(wires) != self.num_qubits:
            raise ArgumentError(f"need {self.num_qubits} wires, got {len(wires)}")
        return Circuit(num_qubits, tuple(op.remap(wires) for op in self.ops))

    def render(self) -> str:
        return "\n".join(format_op(op) for op in self.ops)


def format_angle(angle: float) -> str:
    """Render an angle as a dyadic multiple of pi when it is one exactly."""
    frac = Fraction(angle / math.pi).limit_denominator(1 << 30)
    if angle == 0:
        return "0"
    dyadic = frac.denominator & (frac.denominator - 1) == 0
    if dyadic and abs(frac.numerator) < 1 << 10 and float(frac) * math.pi == angle:
        sign = "-" if frac < 0 else ""
        num, den = abs(frac.numerator), frac.denominator
        head = "pi" if num == 1 else f"{num}*pi"
        return f"{sign}{head}" if den == 1 else f"{sign}{head}/{den}"
    return repr(angle)


def format_op(op: GateOp) -> str:
    """One-line text form, e.g. ``CP(pi/2) q0,q1``."""
    if op.kind is GateKind.BARRIER:
        return "BARRIER"
    head = op.kind.value
    if op.angle is not None:
        head += f"({format_angle(op.angle)})"
    return head + " " + ",".join(f"q{q}" for q in op.qubits)


def simulate(circuit: Circuit, initial: StateVector) -> StateVector:
    if initial.num_qubits != circuit.num_qubits:
        raise ArgumentError(
            f"state has {initial.num_qubits} qubits but circuit has {circuit.num_qubits}"
        )
    n = circuit.num_qubits
    amps = initial.amplitudes.copy()
    tensor = amps.reshape((2,) * n)
    for op in circuit.ops:
        apply_inplace(tensor, n, op)
    return StateVector(n, amps)


def unitary_of(circuit: Circuit) -> np.ndarray:
    """Full matrix; column ``j`` is the image of basis state ``j``."""
    n = circuit.num_qubits
    if n > MAX_UNITARY_QUBITS:
        raise SizeError(f"unitary_of supports at most {MAX_UNITARY_QUBITS} qubits, got {n}")
    dim = 1 << n
    mat = np.eye(dim, dtype=np.complex128)
    # rows are amplitude indices, columns are the batch of input basis states
    tensor = mat.reshape((2,) * n + (dim,))
    for op in circuit.ops:
        apply_inplace(tensor, n, op)
    return mat


def inverse(circuit: Circuit) -> Circuit:
    return Circuit(circuit.num_qubits, tuple(op.dagger() for op in reversed(circuit.ops)))


def concatenate(circuits: Iterable[Circuit]) -> Circuit:
    circuits = list(circuits)
    if not circuits:
        raise ArgumentError("nothing to concatenate")
    out = circuits[0]
    for c in circuits[1:]:
        out = out + c
    return out


@dataclass(frozen=True)
class CircuitStats:
    counts_by_kind: dict[GateKind, int] = field(default_factory=dict)
    two_qubit_count: int = 0
    depth: int = 0
    nearest_neighbor_only: bool = True

    def count(self, kind: GateKind | str) -> int:
        return self.counts_by_kind.get(GateKind(kind), 0)


_TWO_QUBIT_WEIGHT = {GateKind.CP: 1, GateKind.SWAP: 1, GateKind.CRY: 1, GateKind.CSWAP: 2}


def stats(circuit: Circuit) -> CircuitStats:
    """Gate census, ASAP depth and the adjacent-wires-only flag.

    Depth counts layers where each gate occupies one layer on all of its
    qubits; a barrier pushes every qubit up to the current frontier.  CSWAP
    counts as two two-qubit gates and always clears the nearest-neighbour flag.
    """
    counts = Counter(op.kind for op in circuit.ops)
    level = [0] * circuit.num_qubits
    nn_only = True
    for op in circuit.ops:
        if op.kind is GateKind.BARRIER:
            top = max(level)
            level = [top] * circuit.num_qubits
            continue
        layer = max(level[q] for q in op.qubits) + 1
        for q in op.qubits:
            level[q] = layer
        if op.kind is GateKind.CSWAP:
            nn_only = False
        elif len(op.qubits) == 2 and abs(op.qubits[0] - op.qubits[1]) != 1:
            nn_only = False
    by_kind = {kind: counts.get(kind, 0) for kind in GateKind}
    two_q = sum(w * counts.get(k, 0) for k, w in _TWO_QUBIT_WEIGHT.items())
    return CircuitStats(by_kind, two_q, max(level, default=0), nn_only)
