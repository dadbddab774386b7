"""Order finding for N = 15, a = 7 on an 8-qubit register.

Layout: counting register on qubits 0-3, work register on qubits 4-7.  The
controlled multiplier is a five-CSWAP network on the work register; counting
qubit 0 fires it once and counting qubit 1 twice.  Higher powers are the
identity because the multiplier has order 4.

Note on the multiplier: with qubit 4 as the least significant work bit the
CSWAP network maps x -> 2x mod 15, not 7x.  Both maps have order 4, so phase
estimation sees the same eigenphases s/4 and the classical half (which uses
a = 7) recovers r = 4 either way.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .circuit import Circuit, simulate
from .errors import ArgumentError, QubitIndexError, UnsupportedError
from .qft import build_iqft_interleaved
from .state import (
    Histogram,
    StateVector,
    barrier,
    cswap,
    h,
    marginal_probabilities,
    sample_counts,
    x,
    zero_state,
)

N_COUNT = 4
N_WORK = 4
COUNTING = tuple(range(N_COUNT))
WORK = tuple(range(N_COUNT, N_COUNT + N_WORK))

_MUL_PAIRS = ((0, 2), (1, 3), (0, 1), (1, 2), (2, 3))

# Wire k of the interleaved IQFT lands on counting qubit IQFT_WIRES[mode][k].
# "readout" routes through the variant's wire reversal so the block is an exact
# inverse DFT on the counting register; "listing" mounts it straight on 0..3,
# which leaves only y = 0 exact and smears the other three peaks.
IQFT_WIRES = {"readout": (3, 2, 1, 0), "listing": (0, 1, 2, 3)}


def build_mul7_mod15(control: int, targets: tuple[int, int, int, int]) -> list:
    """Controlled five-CSWAP multiplier on ``targets`` (LSB first)."""
    qubits = (control, *targets)
    if len(targets) != 4:
        raise QubitIndexError(f"need exactly 4 target qubits, got {len(targets)}")
    if len(set(qubits)) != 5 or min(qubits) < 0:
        raise QubitIndexError(f"need 5 distinct non-negative qubits, got {qubits}")
    return [cswap(control, targets[a], targets[b]) for a, b in _MUL_PAIRS]


def multiplier_table() -> dict[int, int]:
    """Where the multiplier sends each 4-bit work value when its control is on."""
    table = {}
    for value in range(16):
        bits = [(value >> i) & 1 for i in range(4)]
        for a, b in _MUL_PAIRS:
            bits[a], bits[b] = bits[b], bits[a]
        table[value] = sum(bit << i for i, bit in enumerate(bits))
    return table


def build_shor15(a: int = 7, *, iqft_wiring: str = "readout") -> Circuit:
    if a != 7:
        raise UnsupportedError(f"only a = 7 is encoded by the CSWAP multiplier, got {a}")
    if iqft_wiring not in IQFT_WIRES:
        raise ArgumentError(f"iqft_wiring must be one of {sorted(IQFT_WIRES)}")
    width = N_COUNT + N_WORK
    ops = [h(q) for q in COUNTING]
    ops.append(x(WORK[0]))
    ops.append(barrier())
    for i in COUNTING:
        # 7**(2**i) mod 15: 7, 4, 1, 1 -> the multiplier 1, 2, 0, 0 times
        for _ in range({0: 1, 1: 2}.get(i, 0)):
            ops.extend(build_mul7_mod15(i, WORK))
    ops.append(barrier())
    iqft = build_iqft_interleaved(4).embed(IQFT_WIRES[iqft_wiring], width)
    ops.extend(iqft.ops)
    ops.append(barrier())
    return Circuit(width, tuple(ops))


def counting_distribution(circuit: Circuit | None = None) -> dict[int, float]:
    """Exact probability of each counting-register value y."""
    circuit = circuit or build_shor15()
    final = simulate(circuit, zero_state(circuit.num_qubits))
    probs = marginal_probabilities(final, COUNTING)
    return {y: float(pr) for y, pr in enumerate(probs)}


# --------------------------------------------------------------------------
# classical post-processing
# --------------------------------------------------------------------------


def convergents(num: int, den: int) -> Iterator[Fraction]:
    """Successive continued-fraction convergents of ``num/den``."""
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    while den:
        a, rem = divmod(num, den)
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield Fraction(p, q)
        num, den = den, rem


def continued_fraction_period(y: int, t: int, N: int) -> int | None:
    """Smallest convergent denominator r <= N within 1/2**(t+1) of y/2**t."""
    if t < 1 or N < 2:
        raise ArgumentError(f"need t >= 1 and N >= 2, got t={t}, N={N}")
    if not 0 <= y < (1 << t):
        raise ArgumentError(f"measurement {y} out of range for {t} bits")
    if y == 0:
        return None
    phase = Fraction(y, 1 << t)
    bound = Fraction(1, 1 << (t + 1))
    for c in convergents(y, 1 << t):
        if c.denominator > N:
            break
        if abs(phase - c) <= bound:
            return c.denominator
    return None


class ShorStatus(str, enum.Enum):
    SUCCESS = "Success"
    TRIVIAL_MEASUREMENT = "TrivialMeasurement"
    INVALID_PERIOD = "InvalidPeriod"


@dataclass(frozen=True)
class ShorOutcome:
    measured_value: int
    candidate_period: int | None
    factors: tuple[int, int] | None
    status: ShorStatus
    raw_period: int | None = None

    def to_dict(self) -> dict:
        return {
            "y": self.measured_value,
            "raw_period": self.raw_period,
            "period": self.candidate_period,
            "factors": list(self.factors) if self.factors else None,
            "status": self.status.value,
        }


def _check_supported(N: int, a: int) -> None:
    if (N, a) != (15, 7):
        raise UnsupportedError(f"only N = 15, a = 7 is supported, got N={N}, a={a}")


def analyze_measurement(y: int, t: int = N_COUNT, N: int = 15, a: int = 7) -> ShorOutcome:
    """Period candidate, multiple-repair and factor extraction for one outcome."""
    raw = continued_fraction_period(y, t, N)
    if raw is None:
        status = ShorStatus.TRIVIAL_MEASUREMENT if y == 0 else ShorStatus.INVALID_PERIOD
        return ShorOutcome(y, None, None, status)
    r = next((k * raw for k in range(1, N // raw + 1) if pow(a, k * raw, N) == 1), None)
    if r is None or r % 2:
        return ShorOutcome(y, r, None, ShorStatus.INVALID_PERIOD, raw)
    half = pow(a, r // 2, N)
    if half == N - 1:
        return ShorOutcome(y, r, None, ShorStatus.INVALID_PERIOD, raw)
    f1, f2 = sorted((math.gcd(half - 1, N), math.gcd(half + 1, N)))
    if f1 in (1, N) or f2 in (1, N) or f1 * f2 != N:
        return ShorOutcome(y, r, None, ShorStatus.INVALID_PERIOD, raw)
    return ShorOutcome(y, r, (f1, f2), ShorStatus.SUCCESS, raw)


@dataclass
class ShorResult:
    histogram: Histogram
    outcomes: dict[int, ShorOutcome] = field(default_factory=dict)

    @property
    def success_rate(self) -> float:
        ok = sum(
            c for y, c in self.histogram.as_ints().items()
            if self.outcomes[y].status is ShorStatus.SUCCESS
        )
        return ok / self.histogram.shots

    @property
    def factors(self) -> tuple[int, int] | None:
        found = {o.factors for o in self.outcomes.values() if o.factors}
        return min(found) if found else None

    def to_dict(self) -> dict:
        return {
            "shots": self.histogram.shots,
            "seed": self.histogram.seed,
            "counts": dict(self.histogram.counts),
            "outcomes": [self.outcomes[y].to_dict() for y in sorted(self.outcomes)],
            "success_rate": self.success_rate,
            "factors": list(self.factors) if self.factors else None,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def shor_factor(
    N: int = 15,
    a: int = 7,
    shots: int = 2048,
    seed: int = 0,
    *,
    iqft_wiring: str = "readout",
    final_state: StateVector | None = None,
) -> ShorResult:
    _check_supported(N, a)
    if final_state is None:
        circuit = build_shor15(a, iqft_wiring=iqft_wiring)
        final_state = simulate(circuit, zero_state(circuit.num_qubits))
    hist = sample_counts(final_state, shots, seed, qubits=COUNTING)
    # one analysis per distinct outcome, visited in key order
    outcomes = {y: analyze_measurement(y, N_COUNT, N, a) for y in sorted(hist.as_ints())}
    return ShorResult(hist, outcomes)
