"""QFT circuit builders and the exact oracles used to check them.

Two forward constructions are provided:

* ``build_qft_textbook`` - H followed by a fan of controlled phases on each
  wire (wire 0 first, controls from the wires below it), closed by
  floor(n/2) reversal swaps.
* ``build_qft_interleaved`` - every stage starts with H on wire 0 and walks a
  cascade of controlled-phase + SWAP pairs down the register, so every
  two-qubit gate touches adjacent wires.

Both circuits treat wire 0 as the most significant digit, so in the
little-endian index convention each equals the DFT on wire-reversed labels:
``R @ dft_matrix(n) @ R`` where ``R`` reverses the qubit order.  That
relabeling is recorded per variant as ``readout_permutation``.  The
swap-first IQFT and the hand-written interleaved IQFT are the exact daggers
of these circuits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .circuit import MAX_UNITARY_QUBITS, Circuit, inverse, unitary_of
from .errors import ArgumentError, QubitIndexError, SizeError, UnsupportedError
from .state import MAX_QUBITS, StateVector, _check_width, cp, h, swap

MAX_FACTORIZED_QUBITS = 20


# --------------------------------------------------------------------------
# oracles
# --------------------------------------------------------------------------


def _root_of_unity_power(e: int, n: int) -> complex:
    """``exp(2*pi*i * e / 2**n)`` with the exponent reduced mod 2**n first."""
    e %= 1 << n
    return complex(np.exp(2j * math.pi * (e / (1 << n))))


def dft_matrix(n: int) -> np.ndarray:
    """Entry ``(k, j)`` is ``w**(k*j) / sqrt(2**n)`` with ``w = exp(2 pi i / 2**n)``."""
    if not isinstance(n, int) or not 1 <= n <= MAX_UNITARY_QUBITS:
        raise SizeError(f"dft_matrix supports 1..{MAX_UNITARY_QUBITS} qubits, got {n}")
    dim = 1 << n
    k = np.arange(dim, dtype=np.int64)
    expo = np.outer(k, k) & (dim - 1)
    return np.exp(2j * np.pi * (expo / dim)) / math.sqrt(dim)


def factorized_qft_state(n: int, j: int, omega_qubits: int | None = None) -> StateVector:
    """QFT|j> assembled as a tensor product of single-qubit states.

    Qubit ``m`` carries ``(|0> + w**(2**m * j)|1>) / sqrt(2)``, so the most
    significant factor sits leftmost in the Kronecker product and the result
    equals column ``j`` of ``dft_matrix(n)`` with no relabeling.

    ``omega_qubits`` picks the root of unity ``w = exp(2 pi i / 2**omega_qubits)``
    (default ``n``); a larger value builds the low factors of a wider QFT.
    """
    if not isinstance(n, int) or not 1 <= n <= MAX_FACTORIZED_QUBITS:
        raise SizeError(f"factorized_qft_state supports 1..{MAX_FACTORIZED_QUBITS} qubits, got {n}")
    width = n if omega_qubits is None else omega_qubits
    if width < n:
        raise ArgumentError(f"omega_qubits ({width}) must be at least n ({n})")
    if not 0 <= j < (1 << width):
        raise QubitIndexError(f"index {j} out of range for {width} qubits")
    amps = np.ones(1, dtype=np.complex128)
    for m in reversed(range(n)):
        factor = np.array([1.0, _root_of_unity_power((1 << m) * j, width)]) / math.sqrt(2.0)
        amps = np.kron(amps, factor)
    return StateVector(n, amps)


def binary_fraction_phase(bits: Sequence[int]) -> float:
    """``2*pi*[0.x1 x2 ... xm]`` for binary digits ``x1..xm``."""
    bits = list(bits)
    if not 1 <= len(bits) <= 53:
        raise ArgumentError(f"need 1..53 digits, got {len(bits)}")
    value = 0
    for b in bits:
        if b not in (0, 1):
            raise ArgumentError(f"non-binary digit {b!r}")
        value = (value << 1) | int(b)
    return 2.0 * math.pi * math.ldexp(value, -len(bits))


# --------------------------------------------------------------------------
# qubit permutations
# --------------------------------------------------------------------------

Permutation = tuple[int, ...]


def identity_permutation(n: int) -> Permutation:
    return tuple(range(n))


def reversal_permutation(n: int) -> Permutation:
    return tuple(reversed(range(n)))


def permute_index(k: int, perm: Sequence[int]) -> int:
    """Move bit ``q`` of ``k`` to bit ``perm[q]``."""
    out = 0
    for q, target in enumerate(perm):
        out |= ((k >> q) & 1) << target
    return out


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    dim = 1 << len(perm)
    mat = np.zeros((dim, dim))
    for k in range(dim):
        mat[permute_index(k, perm), k] = 1.0
    return mat


def relabel_unitary(u: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    """Express ``u`` with wire ``q`` renamed to ``perm[q]`` (``P u P^T``)."""
    dim = u.shape[0]
    idx = np.array([permute_index(k, perm) for k in range(dim)])
    out = np.empty_like(u)
    out[np.ix_(idx, idx)] = u
    return out


def relabel_state(state: StateVector, perm: Sequence[int]) -> StateVector:
    idx = np.array([permute_index(k, perm) for k in range(len(state))])
    amps = np.empty_like(state.amplitudes)
    amps[idx] = state.amplitudes
    return StateVector(state.num_qubits, amps)


# --------------------------------------------------------------------------
# builders
# --------------------------------------------------------------------------


def _check_builder_width(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= MAX_QUBITS:
        raise SizeError(f"QFT builders support 1..{MAX_QUBITS} qubits, got {n!r}")


def build_qft_textbook(n: int) -> Circuit:
    _check_builder_width(n)
    ops = []
    for w in range(n):
        ops.append(h(w))
        for c in range(w + 1, n):
            ops.append(cp(math.pi / (1 << (c - w)), c, w))
    for i in range(n // 2):
        ops.append(swap(i, n - 1 - i))
    return Circuit(n, tuple(ops))


def build_qft_interleaved(n: int) -> Circuit:
    """Stage ``s``: H on wire 0, then CP(pi/2**(t+1)) and SWAP on (t, t+1)
    for ``t`` in ``0 .. n-2-s``."""
    _check_builder_width(n)
    ops = []
    for stage in range(n):
        ops.append(h(0))
        for t in range(n - 1 - stage):
            ops.append(cp(math.pi / (1 << (t + 1)), t, t + 1))
            ops.append(swap(t, t + 1))
    return Circuit(n, tuple(ops))


def build_iqft_reversal(n: int) -> Circuit:
    """Swap-first inverse QFT, loop for loop as the usual manual IQFT routine."""
    _check_builder_width(n)
    ops = [swap(i, n - 1 - i) for i in range(n // 2)]
    for i in reversed(range(n)):
        ops.append(h(i))
        for j in reversed(range(i)):
            ops.append(cp(-math.pi / (1 << (i - j)), j, i))
    return Circuit(n, tuple(ops))


def _iqft_interleaved_4() -> Circuit:
    q0, q1, q2, q3 = range(4)
    pi = math.pi
    ops = (
        h(q0),
        swap(q0, q1), cp(-pi * 0.5, q0, q1),
        h(q0),
        swap(q1, q2), cp(-pi * 0.25, q1, q2),
        swap(q0, q1), cp(-pi * 0.5, q0, q1),
        h(q0),
        swap(q2, q3), cp(-pi * 0.125, q2, q3),
        swap(q1, q2), cp(-pi * 0.25, q1, q2),
        swap(q0, q1), cp(-pi * 0.5, q0, q1),
        h(q0),
    )
    return Circuit(4, ops)


def build_iqft_interleaved(n: int = 4, *, generalized: bool = False) -> Circuit:
    """Inverse of the interleaved QFT.

    ``n == 4`` returns the hand-written 16-instruction sequence.  Other widths
    raise ``UnsupportedError`` unless ``generalized=True``, in which case the
    circuit is the dagger of ``build_qft_interleaved(n)`` (identical to the
    hand-written form at ``n == 4``).
    """
    _check_builder_width(n)
    if n == 4:
        return _iqft_interleaved_4()
    if not generalized:
        raise UnsupportedError(
            f"the transcribed interleaved IQFT is 4 qubits wide; pass generalized=True for n={n}"
        )
    return inverse(build_qft_interleaved(n))


# --------------------------------------------------------------------------
# variants
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class QftVariant:
    """A forward QFT construction and how its wires map onto the DFT.

    ``readout`` is ``"identity"`` or ``"reversal"``: the circuit's unitary,
    with wire ``q`` renamed by the corresponding permutation, equals
    ``dft_matrix(n)``.
    """

    tag: str
    builder: Callable[[int], Circuit]
    readout: str

    def readout_permutation(self, n: int) -> Permutation:
        return identity_permutation(n) if self.readout == "identity" else reversal_permutation(n)

    def build(self, n: int) -> Circuit:
        return self.builder(n)

    def dft_view(self, n: int) -> np.ndarray:
        """Circuit unitary relabeled into the DFT's wire order."""
        return relabel_unitary(unitary_of(self.builder(n)), self.readout_permutation(n))


TEXTBOOK = QftVariant("textbook", build_qft_textbook, "reversal")
INTERLEAVED = QftVariant("interleaved", build_qft_interleaved, "reversal")
VARIANTS = {v.tag: v for v in (TEXTBOOK, INTERLEAVED)}


def get_variant(tag: str) -> QftVariant:
    try:
        return VARIANTS[tag]
    except KeyError:
        raise ArgumentError(f"unknown QFT variant {tag!r}; choose from {sorted(VARIANTS)}") from None


def discover_readout(builder: Callable[[int], Circuit], n: int = 3, tol: float = 1e-10) -> str:
    """Find which relabeling (identity, then reversal) turns ``builder(n)`` into the DFT."""
    u = unitary_of(builder(n))
    target = dft_matrix(n)
    for name, perm in (("identity", identity_permutation(n)), ("reversal", reversal_permutation(n))):
        if np.max(np.abs(relabel_unitary(u, perm) - target)) < tol:
            return name
    raise ArgumentError("circuit matches the DFT under neither identity nor reversal")
