import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matchgeo import circuits as C
from matchgeo.errors import ValidationError
from matchgeo.gates import H, SWAP, equal_up_to_global_phase, haar_unitary2, random_matchgate, rz

seeds = st.integers(0, 2**32 - 1)


def test_gate_validation():
    with pytest.raises(ValidationError):
        C.CZ(1, 1)
    with pytest.raises(ValidationError):
        C.RZ(0, float("nan"))
    with pytest.raises(ValidationError):
        C.LogicalCircuit(2, (C.Hgate(2),))
    with pytest.raises(ValidationError):
        C.LogicalCircuit(0, ())


def test_unitary_convention_little_endian():
    u = C.circuit_unitary(C.LogicalCircuit(2, (C.Hgate(0),)))
    assert np.allclose(u, np.kron(np.eye(2), H))
    cz = C.circuit_unitary(C.LogicalCircuit(2, (C.CZ(0, 1),)))
    assert np.allclose(cz, np.diag([1, 1, 1, -1]))


def test_gate_order_is_left_to_right():
    c = C.LogicalCircuit(1, (C.Hgate(0), C.RZ(0, 0.3)))
    assert np.allclose(C.circuit_unitary(c), rz(0.3) @ H)


def test_cz_lowering():
    for a, b in ((0, 1), (1, 0), (0, 2)):
        u = C.circuit_unitary(C.LogicalCircuit(3, tuple(C.cz_as_matchgates(a, b))))
        ref = C.circuit_unitary(C.LogicalCircuit(3, (C.CZ(a, b),)))
        assert equal_up_to_global_phase(u, ref)


def test_swap_lowering():
    u = C.circuit_unitary(C.LogicalCircuit(2, tuple(C.swap_as_matchgates(0, 1))))
    assert equal_up_to_global_phase(u, SWAP.matrix)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_euler_decomposition(seed):
    u = haar_unitary2(np.random.default_rng(seed))
    c = C.LogicalCircuit(1, tuple(C.euler_h_rz(u, 0)))
    assert [g.kind for g in c.gates] == ["RZ", "H", "RZ", "H", "RZ"]
    assert equal_up_to_global_phase(C.circuit_unitary(c), u)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_matchgate_lowering(seed):
    g = random_matchgate(np.random.default_rng(seed))
    items = C.matchgate_as_rz_h_cz(g, 0, 1)
    assert {x.kind for x in items} <= {"RZ", "H", "CZ"}
    u = C.circuit_unitary(C.LogicalCircuit(2, tuple(items)))
    assert equal_up_to_global_phase(u, C.circuit_unitary(C.LogicalCircuit(2, (C.MG(0, 1, g),))))


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(0, 10), st.booleans())
def test_lower_preserves_unitary(seed, k, m, native):
    circ = C.random_circuit(k, m, np.random.default_rng(seed))
    low = C.lower(circ, native_mg=native)
    assert [i for i, _ in low] == sorted(i for i, _ in low)
    u = C.circuit_unitary(C.LogicalCircuit(k, tuple(g for _, g in low)))
    assert equal_up_to_global_phase(u, C.circuit_unitary(circ))


def test_random_circuit_is_reproducible():
    a = C.random_circuit(3, 10, np.random.default_rng(5))
    b = C.random_circuit(3, 10, np.random.default_rng(5))
    assert np.array_equal(C.circuit_unitary(a), C.circuit_unitary(b))
    assert {g.kind for g in C.random_circuit(1, 20, np.random.default_rng(0)).gates} <= {"RZ", "H"}
