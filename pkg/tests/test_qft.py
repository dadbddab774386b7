import cmath
import math

import numpy as np
import pytest

from oracles import circuit_matrix, dft_reference, reversal_matrix, reverse_bits
from qftforge.circuit import inverse, simulate, stats, unitary_of
from qftforge.errors import ArgumentError, QubitIndexError, SizeError, UnsupportedError
from qftforge.qft import (
    INTERLEAVED,
    TEXTBOOK,
    binary_fraction_phase,
    build_iqft_interleaved,
    build_iqft_reversal,
    build_qft_interleaved,
    build_qft_textbook,
    dft_matrix,
    discover_readout,
    factorized_qft_state,
    get_variant,
    permutation_matrix,
    relabel_state,
    relabel_unitary,
    reversal_permutation,
)
from qftforge.state import basis_state, cp, h, swap

R2 = 1 / math.sqrt(2)
PI = math.pi


# ---- dft_matrix -----------------------------------------------------------


def test_dft_one_qubit_is_hadamard():
    assert np.allclose(dft_matrix(1), np.array([[1, 1], [1, -1]]) * R2, atol=1e-16)


def test_dft_two_qubit_entry():
    assert abs(dft_matrix(2)[1, 1] - 0.5j) < 1e-16


@pytest.mark.parametrize("n", range(1, 8))
def test_dft_matches_elementwise_reference(n):
    assert np.max(np.abs(dft_matrix(n) - dft_reference(n))) < 1e-12


def test_dft_unitary():
    d = dft_matrix(3)
    assert np.max(np.abs(d @ d.conj().T - np.eye(8))) < 1e-12


def test_dft_size_guard():
    with pytest.raises(SizeError):
        dft_matrix(11)
    with pytest.raises(SizeError):
        dft_matrix(0)


# ---- factorized state -----------------------------------------------------


def test_factorized_one_qubit():
    assert np.allclose(factorized_qft_state(1, 1).amplitudes, [R2, -R2], atol=1e-16)


def test_factorized_uniform_for_zero():
    assert np.allclose(factorized_qft_state(2, 0).amplitudes, [0.5] * 4, atol=1e-16)


def test_factorized_three_qubit_column():
    assert np.max(np.abs(factorized_qft_state(3, 5).amplitudes - dft_matrix(3)[:, 5])) < 1e-12


@pytest.mark.parametrize("n", range(1, 6))
def test_factorization_identity(n):
    d = dft_reference(n)
    for j in range(2**n):
        s = factorized_qft_state(n, j)
        assert abs(s.norm() - 1) < 1e-12
        # no global phase allowance
        assert np.max(np.abs(s.amplitudes - d[:, j])) < 1e-12


def _explicit_three_qubit_product(j):
    # (|0> + w^4j |1>)(|0> + w^2j |1>)(|0> + w^j |1>) / sqrt(8), leftmost = top bit
    w = cmath.exp(2j * PI / 8)
    out = np.zeros(8, dtype=complex)
    for a2 in (0, 1):
        for a1 in (0, 1):
            for a0 in (0, 1):
                out[a2 * 4 + a1 * 2 + a0] = (w ** (4 * j)) ** a2 * (w ** (2 * j)) ** a1 * (w**j) ** a0
    return out / math.sqrt(8)


@pytest.mark.parametrize("j", range(8))
def test_factorized_three_qubit_written_out(j):
    assert np.max(np.abs(factorized_qft_state(3, j).amplitudes - _explicit_three_qubit_product(j))) < 1e-12


@pytest.mark.parametrize("n", range(2, 6))
def test_recursive_build_up(n):
    # prepend the top factor to the n-1 lower factors taken with the n-qubit root
    for j in range(2**n):
        w_pow = cmath.exp(2j * PI * ((2 ** (n - 1) * j) % 2**n) / 2**n)
        head = np.array([1, w_pow]) * R2
        lower = factorized_qft_state(n - 1, j, omega_qubits=n).amplitudes
        assert np.max(np.abs(np.kron(head, lower) - factorized_qft_state(n, j).amplitudes)) < 1e-12


def test_recursive_build_up_reduces_to_smaller_qft_for_even_j():
    # for even j the lower factors are exactly QFT_{n-1}|j/2>
    for j in range(0, 16, 2):
        lower = factorized_qft_state(3, j, omega_qubits=4).amplitudes
        assert np.max(np.abs(lower - factorized_qft_state(3, j // 2).amplitudes)) < 1e-12


def test_factorized_errors():
    with pytest.raises(QubitIndexError):
        factorized_qft_state(2, 4)
    with pytest.raises(SizeError):
        factorized_qft_state(21, 0)
    with pytest.raises(ArgumentError):
        factorized_qft_state(3, 0, omega_qubits=2)


# ---- binary fractions -----------------------------------------------------


def test_binary_fraction_examples():
    assert binary_fraction_phase([1]) == PI
    assert binary_fraction_phase([0, 1]) == PI / 2
    assert binary_fraction_phase([1, 1, 1]) == 2 * PI * 7 / 8


def test_binary_fraction_errors():
    with pytest.raises(ArgumentError):
        binary_fraction_phase([0, 2])
    with pytest.raises(ArgumentError):
        binary_fraction_phase([])
    with pytest.raises(ArgumentError):
        binary_fraction_phase([0] * 54)


@pytest.mark.parametrize("n", range(1, 6))
def test_binary_fraction_matches_root_powers(n):
    w = cmath.exp(2j * PI / 2**n)
    for j in range(2**n):
        for m in range(n):
            bits = [(j >> i) & 1 for i in reversed(range(m + 1))]  # b_m ... b_0
            lhs = cmath.exp(1j * binary_fraction_phase(bits))
            rhs = w ** (2 ** (n - 1 - m) * j)
            assert abs(lhs - rhs) < 1e-12


# ---- builders -------------------------------------------------------------


def test_textbook_small():
    assert build_qft_textbook(1).ops == (h(0),)
    s = stats(build_qft_textbook(2))
    assert (s.count("H"), s.count("CP"), s.count("SWAP")) == (2, 1, 1)


def test_interleaved_small():
    assert build_qft_interleaved(1).ops == (h(0),)


def test_interleaved_four_qubit_sequence():
    expected = (
        h(0),
        cp(PI * 0.5, 0, 1), swap(0, 1),
        cp(PI * 0.25, 1, 2), swap(1, 2),
        cp(PI * 0.125, 2, 3), swap(2, 3),
        h(0),
        cp(PI * 0.5, 0, 1), swap(0, 1),
        cp(PI * 0.25, 1, 2), swap(1, 2),
        h(0),
        cp(PI * 0.5, 0, 1), swap(0, 1),
        h(0),
    )
    assert build_qft_interleaved(4).ops == expected
    s = stats(build_qft_interleaved(4))
    assert (s.count("H"), s.count("CP"), s.count("SWAP")) == (4, 6, 6)
    assert s.nearest_neighbor_only


@pytest.mark.parametrize("builder", [build_qft_textbook, build_qft_interleaved])
def test_builder_size_guard(builder):
    with pytest.raises(SizeError):
        builder(0)
    with pytest.raises(SizeError):
        builder(27)


def test_readout_discovered_at_three_qubits():
    assert discover_readout(build_qft_textbook) == TEXTBOOK.readout == "reversal"
    assert discover_readout(build_qft_interleaved) == INTERLEAVED.readout == "reversal"


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("variant", [TEXTBOOK, INTERLEAVED], ids=lambda v: v.tag)
def test_variant_equals_dft_under_readout(n, variant):
    u = circuit_matrix(variant.build(n))  # dense oracle, not the simulator
    rev = reversal_matrix(n)
    assert np.max(np.abs(rev @ u @ rev - dft_reference(n))) < 1e-10
    assert np.max(np.abs(variant.dft_view(n) - dft_matrix(n))) < 1e-10


def test_relabel_helpers_agree_with_reversal_matrix():
    u = unitary_of(build_qft_interleaved(3))
    r = permutation_matrix(reversal_permutation(3))
    assert np.array_equal(r, reversal_matrix(3).real)
    assert np.max(np.abs(relabel_unitary(u, reversal_permutation(3)) - r @ u @ r.T)) < 1e-15


@pytest.mark.parametrize("j", range(8))
def test_interleaved_on_basis_matches_product_state(j):
    # wire q of the circuit is digit n-1-q, so relabel input and output
    n = 3
    out = simulate(build_qft_interleaved(n), basis_state(n, reverse_bits(j, n)))
    ref = relabel_state(factorized_qft_state(n, j), reversal_permutation(n))
    assert np.max(np.abs(out.amplitudes - ref.amplitudes)) < 1e-10


def test_iqft_reversal_small():
    assert build_iqft_reversal(1).ops == (h(0),)
    assert build_iqft_reversal(2).ops == (swap(0, 1), h(1), cp(-PI / 2, 0, 1), h(0))


@pytest.mark.parametrize("n", range(1, 7))
def test_iqft_reversal_inverts_textbook(n):
    prod = circuit_matrix(build_iqft_reversal(n)) @ circuit_matrix(build_qft_textbook(n))
    assert np.max(np.abs(prod - np.eye(2**n))) < 1e-9


def test_iqft_interleaved_transcription():
    c = build_iqft_interleaved(4)
    assert len(c) == 16
    assert c.ops[:4] == (h(0), swap(0, 1), cp(-PI * 0.5, 0, 1), h(0))
    assert c.ops == inverse(build_qft_interleaved(4)).ops
    s = stats(c)
    assert (s.count("H"), s.count("CP"), s.count("SWAP")) == (4, 6, 6)


def test_iqft_interleaved_inverts_forward():
    prod = circuit_matrix(build_iqft_interleaved(4)) @ circuit_matrix(build_qft_interleaved(4))
    assert np.max(np.abs(prod - np.eye(16))) < 1e-9


@pytest.mark.parametrize("j", range(16))
def test_iqft_interleaved_recovers_basis(j):
    rev = reversal_permutation(4)
    prepared = relabel_state(factorized_qft_state(4, j), rev)
    out = simulate(build_iqft_interleaved(4), prepared)
    assert np.max(np.abs(out.amplitudes - relabel_state(basis_state(4, j), rev).amplitudes)) < 1e-10


def test_iqft_interleaved_other_widths():
    with pytest.raises(UnsupportedError):
        build_iqft_interleaved(3)
    for n in (1, 2, 3, 5, 6):
        c = build_iqft_interleaved(n, generalized=True)
        prod = unitary_of(c) @ unitary_of(build_qft_interleaved(n))
        assert np.max(np.abs(prod - np.eye(2**n))) < 1e-9


def test_get_variant():
    assert get_variant("textbook") is TEXTBOOK
    with pytest.raises(ArgumentError):
        get_variant("fast")
