import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matchgeo import statevector as sv
from matchgeo.errors import ResourceLimitError, ValidationError
from matchgeo.gadgets import GateSequence
from matchgeo.gates import FSWAP, TwoQubitGate, random_matchgate
from matchgeo.statevector import GateApplication


def kron_oracle(n, matrix, u, v):
    """Full 2^n operator: permute (u, v) to the top two factors and embed."""
    full = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for col in range(2 ** n):
        bu, bv = (col >> u) & 1, (col >> v) & 1
        local = 2 * bu + bv
        rest = col & ~((1 << u) | (1 << v))
        for out in range(4):
            row = rest | ((out >> 1) << u) | ((out & 1) << v)
            full[row, col] += matrix[out, local]
    return full


def random_state(rng, n, batch=None):
    shape = (2 ** n,) if batch is None else (2 ** n, batch)
    psi = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return psi / np.linalg.norm(psi, axis=0)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_apply_matches_kron_oracle(backend, rng, n):
    for _ in range(10):
        u, v = rng.choice(n, size=2, replace=False)
        m = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))[0]
        app = GateApplication(TwoQubitGate(m), (int(u), int(v)))
        psi = random_state(rng, n, batch=3)
        got = sv.run_sequence(psi, [app])
        assert np.allclose(got, kron_oracle(n, m, u, v) @ psi, atol=1e-12)


def test_backends_agree(rng):
    backends = sv.available_backends()
    if len(backends) < 2:
        pytest.skip("compiled kernels not built")
    apps = [GateApplication(random_matchgate(rng), tuple(int(x) for x in rng.choice(7, 2, replace=False)))
            for _ in range(50)]
    psi = random_state(rng, 7, batch=4)
    outs = []
    prev = sv.backend_name()
    try:
        for b in backends:
            sv.set_backend(b)
            outs.append(sv.run_sequence(psi, apps))
    finally:
        sv.set_backend(prev)
    assert np.allclose(outs[0], outs[1], atol=1e-13)


def test_norm_preserved_over_long_sequence(backend, rng):
    n = 6
    pool = [random_matchgate(rng) for _ in range(16)]
    apps = []
    for _ in range(10_000):
        u, v = rng.choice(n, size=2, replace=False)
        apps.append(GateApplication(pool[rng.integers(16)], (int(u), int(v))))
    out = sv.run_sequence(random_state(rng, n), apps)
    assert abs(np.linalg.norm(out) - 1) < 1e-9


def test_little_endian_convention():
    s = sv.init_state(3, {0: "1"})
    assert s.amplitudes[1] == 1
    s = s.apply(GateApplication(FSWAP, (0, 2)))
    assert s.amplitudes[4] == 1


def test_states_are_values():
    s = sv.init_state(2)
    t = s.apply(GateApplication(FSWAP, (0, 1)))
    assert s.amplitudes[0] == 1 and t is not s
    with pytest.raises(ValueError):
        s.amplitudes[0] = 0


def test_fidelity_and_ancilla_checks():
    s = sv.init_state(3, {1: "+"})
    assert sv.fidelity(s, s) == pytest.approx(1)
    st_ = sv.ancilla_intact(s, 1, "+")
    assert st_.defect < 1e-15 and not st_.entangled
    assert sv.ancilla_intact(s, 1, "0").defect == pytest.approx(0.5)


def test_entangled_ancilla_is_flagged():
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1 / np.sqrt(2)
    st_ = sv.ancilla_intact(bell, 0, "0")
    assert st_.entangled and st_.defect == pytest.approx(0.5)


def test_cap_enforced(monkeypatch):
    with pytest.raises(ResourceLimitError):
        sv.init_state(5, cap=4)
    monkeypatch.setenv("MATCHGEO_MAX_QUBITS", "3")
    with pytest.raises(ResourceLimitError):
        sv.init_state(4)


def test_bad_inputs():
    with pytest.raises(ValidationError):
        GateApplication(FSWAP, (1, 1))
    with pytest.raises(ValidationError):
        sv.init_state(2).apply(GateApplication(FSWAP, (0, 2)))
    with pytest.raises(ValidationError):
        sv.set_backend("fortran")
    with pytest.raises(ValidationError):
        sv.init_state(2, {0: "x"})


def test_subspace_equality_detects_difference(rng):
    g = random_matchgate(rng)
    a = [GateApplication(g, (0, 1))]
    assert sv.operators_equal_on_subspace(a, a, {2: "0"}, 3)
    assert not sv.operators_equal_on_subspace(a, [GateApplication(FSWAP, (0, 1))], {2: "0"}, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_inverse_sequence_restores_state(seed, n):
    rng = np.random.default_rng(seed)
    apps = [GateApplication(random_matchgate(rng), tuple(int(x) for x in rng.choice(n, 2, replace=False)))
            for _ in range(8)]
    seq = GateSequence(apps)
    psi = random_state(rng, n)
    back = sv.run_sequence(sv.run_sequence(psi, seq.apps), seq.reversed_inverse().apps)
    assert np.allclose(back, psi, atol=1e-12)


def test_pure_python_fallback_selected_by_environment():
    import os
    import subprocess
    import sys
    env = dict(os.environ, MATCHGEO_PURE_PYTHON="1")
    code = "from matchgeo import statevector as s; print(s.backend_name(), s.available_backends())"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python ['python']"
