import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matchgeo import gates
from matchgeo.errors import ValidationError
from matchgeo.gates import (
    FSWAP, G_HH, IDENTITY, SWAP, H, X, Z,
    embed, equal_up_to_global_phase, exchange_conjugate, is_matchgate, is_parity_preserving,
    make_gate, random_matchgate,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_canonical_verdicts():
    assert not is_matchgate(SWAP)
    assert is_matchgate(FSWAP)
    assert is_matchgate(G_HH)
    assert is_matchgate(IDENTITY)


def test_fswap_is_swap_with_sign():
    expected = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]])
    assert np.array_equal(FSWAP.matrix, expected)


def test_embed_block_positions():
    a = np.array([[1, 2], [3, 4]])
    b = np.array([[5, 6], [7, 8]])
    m = embed(a, b)
    assert m[0, 0] == 1 and m[0, 3] == 2 and m[3, 0] == 3 and m[3, 3] == 4
    assert m[1, 1] == 5 and m[1, 2] == 6 and m[2, 1] == 7 and m[2, 2] == 8
    assert m[0, 1] == 0 and m[1, 3] == 0


def test_make_gate_flags_determinant_mismatch():
    g = make_gate(np.eye(2), X)
    assert np.array_equal(g.matrix, SWAP.matrix)
    assert not g.matchgate


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_perturbing_det_b_flips_the_flag(seed):
    g = random_matchgate(np.random.default_rng(seed))
    m = np.array(g.matrix)
    assert is_matchgate(m)
    m[1, 1] += 1e-3
    assert not is_matchgate(m)


def test_make_gate_rejects_non_unitary():
    with pytest.raises(ValidationError):
        make_gate(np.array([[1, 1], [0, 1]]), np.array([[1, 1], [0, 1]]))


def test_cz_is_parity_preserving_but_not_a_matchgate():
    cz = np.diag([1, 1, 1, -1]).astype(complex)
    assert is_parity_preserving(cz)
    assert not is_matchgate(cz)


def test_leakage_between_blocks_is_rejected():
    m = np.eye(4, dtype=complex)
    m[[0, 1]] = m[[1, 0]]
    assert not is_parity_preserving(m)
    assert not is_matchgate(m)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_random_matchgates_are_matchgates(seed):
    g = random_matchgate(np.random.default_rng(seed))
    assert is_matchgate(g)
    assert np.allclose(g.matrix.conj().T @ g.matrix, np.eye(4), atol=1e-12)
    assert abs(np.linalg.det(g.A) - np.linalg.det(g.B)) < 1e-10


@settings(max_examples=30, deadline=None)
@given(seeds, seeds)
def test_matchgates_close_under_products(s1, s2):
    g1 = random_matchgate(np.random.default_rng(s1))
    g2 = random_matchgate(np.random.default_rng(s2))
    assert is_matchgate(g1.matrix @ g2.matrix)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_exchange_conjugate_swaps_operand_order(seed):
    g = random_matchgate(np.random.default_rng(seed))
    p = np.eye(4)[[0, 2, 1, 3]]
    assert np.allclose(exchange_conjugate(g).matrix, p @ g.matrix @ p, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(seeds, st.floats(min_value=-np.pi, max_value=np.pi))
def test_global_phase_equality(seed, phi):
    g = random_matchgate(np.random.default_rng(seed))
    assert equal_up_to_global_phase(g.matrix, np.exp(1j * phi) * g.matrix)


def test_generators_from_pauli_products():
    g = gates.gate_from_generators([0, 0, 0, 0, 0, 0])
    assert np.allclose(g.matrix, np.eye(4))
    assert is_matchgate(gates.xx_rotation(0.3))


def test_logical_gate_uses_same_block_twice():
    g = gates.logical_gate(H)
    assert np.allclose(g.A, H) and np.allclose(g.B, H)
    assert np.allclose(gates.g_rz(0.4).A, gates.rz(0.4))


def test_z_block_definition_of_fswap():
    assert np.allclose(FSWAP.A, Z) and np.allclose(FSWAP.B, X)
