"""Statevector simulation and verification of textbook and swap-interleaved QFT circuits."""

from .circuit import Circuit, CircuitStats, inverse, simulate, stats, unitary_of
from .errors import ArgumentError, QftForgeError, QubitIndexError, SizeError, UnsupportedError
from .hhl import HhlConfig, build_hhl_template
from .qft import (
    INTERLEAVED,
    TEXTBOOK,
    QftVariant,
    binary_fraction_phase,
    build_iqft_interleaved,
    build_iqft_reversal,
    build_qft_interleaved,
    build_qft_textbook,
    dft_matrix,
    factorized_qft_state,
)
from .shor import (
    ShorOutcome,
    ShorStatus,
    build_mul7_mod15,
    build_shor15,
    continued_fraction_period,
    shor_factor,
)
from .state import (
    GateKind,
    GateOp,
    Histogram,
    StateVector,
    apply_gate,
    basis_state,
    probabilities,
    sample_counts,
    zero_state,
)

__version__ = "0.1.0"
