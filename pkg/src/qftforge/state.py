"""Dense statevectors, gate instructions and exact gate application.

Index convention is little-endian throughout: bit ``i`` of a basis index is
the value of qubit ``i``.  Histogram keys are written with qubit (or
classical slot) 0 as the rightmost character.
"""

from __future__ import annotations

import cmath
import enum
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ArgumentError, QubitIndexError, SizeError

MAX_QUBITS = 26
NORM_TOL = 1e-12

_SQRT1_2 = 1.0 / math.sqrt(2.0)


class GateKind(str, enum.Enum):
    H = "H"
    X = "X"
    P = "P"
    CP = "CP"
    SWAP = "SWAP"
    CSWAP = "CSWAP"
    CRY = "CRY"
    BARRIER = "BARRIER"


_ARITY = {
    GateKind.H: 1,
    GateKind.X: 1,
    GateKind.P: 1,
    GateKind.CP: 2,
    GateKind.SWAP: 2,
    GateKind.CRY: 2,
    GateKind.CSWAP: 3,
    GateKind.BARRIER: 0,
}
ANGLED_KINDS = frozenset({GateKind.P, GateKind.CP, GateKind.CRY})


@dataclass(frozen=True)
class GateOp:
    """One circuit instruction.

    ``qubits`` ordering is meaningful for controlled gates: CSWAP is
    ``(control, target_a, target_b)`` and CRY is ``(control, target)``.
    CP is diagonal, so its two qubits are interchangeable.  A BARRIER carries
    no qubits; it always spans the full register.
    """

    kind: GateKind
    qubits: tuple[int, ...] = ()
    angle: float | None = None

    def __post_init__(self) -> None:
        kind = GateKind(self.kind)
        object.__setattr__(self, "kind", kind)
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)
        if len(qubits) != _ARITY[kind]:
            raise QubitIndexError(
                f"{kind.value} acts on {_ARITY[kind]} qubit(s), got {qubits}"
            )
        if len(set(qubits)) != len(qubits):
            raise QubitIndexError(f"duplicate qubits in {kind.value}{qubits}")
        if any(q < 0 for q in qubits):
            raise QubitIndexError(f"negative qubit index in {kind.value}{qubits}")
        if kind in ANGLED_KINDS:
            if self.angle is None or not math.isfinite(self.angle):
                raise ArgumentError(f"{kind.value} needs a finite angle, got {self.angle}")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise ArgumentError(f"{kind.value} takes no angle")

    def dagger(self) -> GateOp:
        if self.kind in ANGLED_KINDS:
            return GateOp(self.kind, self.qubits, -self.angle)
        return self

    def remap(self, mapping: Sequence[int]) -> GateOp:
        """Relabel qubits: local qubit ``q`` becomes ``mapping[q]``."""
        return GateOp(self.kind, tuple(mapping[q] for q in self.qubits), self.angle)


def h(q: int) -> GateOp:
    return GateOp(GateKind.H, (q,))


def x(q: int) -> GateOp:
    return GateOp(GateKind.X, (q,))


def p(angle: float, q: int) -> GateOp:
    return GateOp(GateKind.P, (q,), angle)


def cp(angle: float, control: int, target: int) -> GateOp:
    return GateOp(GateKind.CP, (control, target), angle)


def swap(a: int, b: int) -> GateOp:
    return GateOp(GateKind.SWAP, (a, b))


def cswap(control: int, a: int, b: int) -> GateOp:
    return GateOp(GateKind.CSWAP, (control, a, b))


def cry(angle: float, control: int, target: int) -> GateOp:
    return GateOp(GateKind.CRY, (control, target), angle)


def barrier() -> GateOp:
    return GateOp(GateKind.BARRIER)


@dataclass(frozen=True, eq=False)
class StateVector:
    """``2**num_qubits`` complex amplitudes of an n-qubit register."""

    num_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        _check_width(self.num_qubits)
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.num_qubits,):
            raise SizeError(
                f"expected {1 << self.num_qubits} amplitudes for "
                f"{self.num_qubits} qubits, got shape {amps.shape}"
            )
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: Iterable[complex], tol: float = 1e-10) -> StateVector:
        """Build a state from raw amplitudes, checking length and norm."""
        amps = np.asarray(list(amplitudes) if not isinstance(amplitudes, np.ndarray) else amplitudes,
                          dtype=np.complex128)
        size = amps.shape[0] if amps.ndim == 1 else 0
        if size < 2 or size & (size - 1):
            raise SizeError(f"amplitude count must be a power of two >= 2, got {amps.shape}")
        state = cls(size.bit_length() - 1, amps.copy())
        if abs(state.norm() - 1.0) > tol:
            raise ArgumentError(f"state is not normalised (norm {state.norm()!r})")
        return state

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.amplitudes.real**2 + self.amplitudes.imag**2)))

    def inner(self, other: StateVector) -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __len__(self) -> int:
        return self.amplitudes.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.amplitudes if dtype is None else self.amplitudes.astype(dtype)


def _check_width(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise SizeError(f"qubit count must be an integer, got {n!r}")
    if not 1 <= n <= MAX_QUBITS:
        raise SizeError(f"qubit count must be in [1, {MAX_QUBITS}], got {n}")


def zero_state(n: int) -> StateVector:
    _check_width(n)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n, amps)


def basis_state(n: int, j: int) -> StateVector:
    _check_width(n)
    if not 0 <= j < (1 << n):
        raise QubitIndexError(f"basis index {j} out of range for {n} qubits")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[j] = 1.0
    return StateVector(n, amps)


# --------------------------------------------------------------------------
# kernels
#
# The amplitude buffer is viewed as a tensor of shape (2,)*n (+ trailing batch
# axes).  In C order the first axis is the most significant bit, so qubit q
# lives on axis n-1-q.  Every kernel edits the buffer in place through views.
# --------------------------------------------------------------------------


def _sel(n: int, fixed: dict[int, int]) -> tuple:
    idx = [slice(None)] * n
    for q, bit in fixed.items():
        idx[n - 1 - q] = bit
    return tuple(idx)


def check_op(op: GateOp, n: int) -> None:
    for q in op.qubits:
        if q >= n:
            raise QubitIndexError(f"qubit {q} out of range for a {n}-qubit register ({op})")


def apply_inplace(tensor: np.ndarray, n: int, op: GateOp) -> None:
    """Apply ``op`` to a ``(2,)*n + batch`` tensor in place."""
    kind = op.kind
    q = op.qubits
    if kind is GateKind.BARRIER:
        return
    if kind is GateKind.H:
        s0, s1 = _sel(n, {q[0]: 0}), _sel(n, {q[0]: 1})
        a = tensor[s0].copy()
        b = tensor[s1]
        tensor[s0] = (a + b) * _SQRT1_2
        tensor[s1] = (a - b) * _SQRT1_2
    elif kind is GateKind.X:
        _exchange(tensor, _sel(n, {q[0]: 0}), _sel(n, {q[0]: 1}))
    elif kind is GateKind.P:
        tensor[_sel(n, {q[0]: 1})] *= cmath.exp(1j * op.angle)
    elif kind is GateKind.CP:
        tensor[_sel(n, {q[0]: 1, q[1]: 1})] *= cmath.exp(1j * op.angle)
    elif kind is GateKind.SWAP:
        _exchange(tensor, _sel(n, {q[0]: 0, q[1]: 1}), _sel(n, {q[0]: 1, q[1]: 0}))
    elif kind is GateKind.CSWAP:
        _exchange(
            tensor,
            _sel(n, {q[0]: 1, q[1]: 0, q[2]: 1}),
            _sel(n, {q[0]: 1, q[1]: 1, q[2]: 0}),
        )
    elif kind is GateKind.CRY:
        c, s = math.cos(op.angle / 2), math.sin(op.angle / 2)
        s0, s1 = _sel(n, {q[0]: 1, q[1]: 0}), _sel(n, {q[0]: 1, q[1]: 1})
        a = tensor[s0].copy()
        b = tensor[s1]
        tensor[s0] = c * a - s * b
        tensor[s1] = s * a + c * b
    else:  # pragma: no cover - enum is closed
        raise ArgumentError(f"unknown gate kind {kind}")


def _exchange(tensor: np.ndarray, s0: tuple, s1: tuple) -> None:
    tmp = tensor[s0].copy()
    tensor[s0] = tensor[s1]
    tensor[s1] = tmp


def apply_gate(state: StateVector, op: GateOp) -> StateVector:
    """Return ``op`` applied to ``state``; the input is left untouched."""
    check_op(op, state.num_qubits)
    amps = state.amplitudes.copy()
    apply_inplace(amps.reshape((2,) * state.num_qubits), state.num_qubits, op)
    return StateVector(state.num_qubits, amps)


def probabilities(state: StateVector) -> np.ndarray:
    a = state.amplitudes
    return a.real * a.real + a.imag * a.imag


def marginal_probabilities(state: StateVector, qubits: Sequence[int]) -> np.ndarray:
    """Distribution of the sub-register ``qubits``; entry bit ``i`` = ``qubits[i]``."""
    n = state.num_qubits
    qubits = list(qubits)
    if not qubits:
        raise ArgumentError("need at least one qubit to marginalise onto")
    if len(set(qubits)) != len(qubits) or any(not 0 <= q < n for q in qubits):
        raise QubitIndexError(f"invalid qubit selection {qubits} for {n} qubits")
    probs = probabilities(state).reshape((2,) * n)
    keep_axes = [n - 1 - q for q in reversed(qubits)]
    drop_axes = tuple(ax for ax in range(n) if ax not in keep_axes)
    marg = probs.sum(axis=drop_axes) if drop_axes else probs
    # remaining axes are in ascending axis order; reorder so the last
    # entry of `qubits` is the most significant bit
    order = sorted(keep_axes)
    marg = np.transpose(marg, [order.index(ax) for ax in keep_axes])
    return np.ascontiguousarray(marg).reshape(-1)


# --------------------------------------------------------------------------
# sampling
# --------------------------------------------------------------------------

_MASK64 = (1 << 64) - 1


class Xorshift64Star:
    """xorshift64* generator (Vigna 2016), seeded through one splitmix64 step.

    Pure integer arithmetic, so a given seed yields the same stream on every
    platform.  ``random()`` takes the top 53 bits as a double in [0, 1).
    """

    def __init__(self, seed: int) -> None:
        z = (int(seed) + 0x9E3779B97F4A7C15) & _MASK64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        z ^= z >> 31
        self.state = z or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        s = self.state
        s ^= s >> 12
        s ^= (s << 25) & _MASK64
        s ^= s >> 27
        self.state = s
        return (s * 0x2545F4914F6CDD1D) & _MASK64

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


@dataclass(frozen=True)
class Histogram:
    counts: dict[str, int]
    shots: int
    seed: int

    def to_dict(self) -> dict:
        return {"shots": self.shots, "seed": self.seed, "counts": dict(self.counts)}

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def as_ints(self) -> dict[int, int]:
        return {int(k, 2): v for k, v in self.counts.items()}


def sample_indices(probs: np.ndarray, shots: int, seed: int) -> np.ndarray:
    """Inverse-CDF draws of outcome indices; returns a count per index."""
    if isinstance(shots, bool) or not isinstance(shots, (int, np.integer)) or shots < 1:
        raise ArgumentError(f"shots must be a positive integer, got {shots!r}")
    cdf = np.cumsum(probs)
    total = float(cdf[-1])
    rng = Xorshift64Star(seed)
    draws = np.fromiter((rng.random() * total for _ in range(shots)), dtype=np.float64, count=shots)
    idx = np.searchsorted(cdf, draws, side="right")
    np.minimum(idx, len(cdf) - 1, out=idx)
    return np.bincount(idx, minlength=len(cdf))


def sample_counts(
    state: StateVector,
    shots: int,
    seed: int,
    qubits: Sequence[int] | None = None,
) -> Histogram:
    """Sample ``shots`` measurement outcomes.

    With ``qubits`` given, only that sub-register is measured and classical
    slot ``i`` holds ``qubits[i]``; otherwise every qubit is read out in order.
    """
    if qubits is None:
        width = state.num_qubits
        probs = probabilities(state)
    else:
        width = len(qubits)
        probs = marginal_probabilities(state, qubits)
    tally = sample_indices(probs, shots, seed)
    counts = {format(k, f"0{width}b"): int(c) for k, c in enumerate(tally) if c}
    return Histogram(dict(sorted(counts.items())), int(shots), int(seed))
