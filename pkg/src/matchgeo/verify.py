"""Oracle check of a schedule against the dense logical unitary."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .circuits import LogicalCircuit, circuit_unitary
from .errors import ValidationError
from .statevector import (
    SINGLE_QUBIT_STATES,
    SPANNING_INPUTS,
    AncillaStatus,
    GateApplication,
    ancilla_intact,
    check_cap,
    product_state,
    run_sequence,
)

PLUS = "+"


@dataclass(frozen=True)
class VerificationReport:
    """``worst_fidelity`` is ``min_j |<expected_j|actual_j>|``.

    ``worst_aligned`` is ``min_j Re(c_j e^{-i phi})`` with one common phase
    ``phi``.  The run passes iff ``1 - max(worst_aligned, 0) <= tol``, so
    per-input phase drift fails.  ``invalid_gates`` lists operations that are
    not unitary matchgates.
    """

    passed: bool
    worst_fidelity: float
    worst_aligned: float
    phase: float
    phase_spread: float
    ancillas: Mapping[int, AncillaStatus]
    layout_restored: bool
    simulated_qubits: int
    inputs: int
    tol: float
    invalid_gates: tuple[int, ...] = ()

    @property
    def max_ancilla_defect(self) -> float:
        return max((a.defect for a in self.ancillas.values()), default=0.0)

    def lines(self) -> list[str]:
        out = [
            f"verdict: {'PASS' if self.passed else 'FAIL'} (tol {self.tol:g})",
            f"worst fidelity: {self.worst_fidelity:.15f}",
            f"worst phase-aligned overlap: {self.worst_aligned:.15f}",
            f"common phase: {self.phase:.12f} rad, spread {self.phase_spread:.3e}",
            f"max ancilla defect: {self.max_ancilla_defect:.3e}",
        ]
        for v, st in sorted(self.ancillas.items()):
            flag = " entangled" if st.entangled else ""
            out.append(f"  ancilla {v}: defect {st.defect:.3e}{flag}")
        out.append(f"layout restored: {self.layout_restored}")
        out.append(f"simulated qubits: {self.simulated_qubits}, inputs: {self.inputs}")
        if self.invalid_gates:
            out.append(f"warning: {len(self.invalid_gates)} gate(s) are not unitary matchgates, "
                       f"first at operation {self.invalid_gates[0]}")
        return out


def logical_inputs(k: int) -> np.ndarray:
    """Columns: all ``4**k`` products of ``{0, 1, +, +i}``; qubit ``q`` is bit ``q``."""
    cols = [product_state([SINGLE_QUBIT_STATES[s] for s in choice])
            for choice in itertools.product(SPANNING_INPUTS, repeat=k)]
    return np.array(cols).T


def embed(psi: np.ndarray, hosts, ancillas: Mapping[int, str], index: Mapping[int, int]) -> np.ndarray:
    """Physical register states for logical columns ``psi`` on compact indices ``index``."""
    k = len(hosts)
    n = len(index)
    masks = [sum(1 << index[v] for v in h) for h in hosts]
    comp = np.zeros(2 ** k, dtype=np.int64)
    for x in range(2 ** k):
        comp[x] = sum(masks[q] for q in range(k) if (x >> q) & 1)
    plus = [index[v] for v, s in ancillas.items() if s == PLUS and v in index]
    anc = np.zeros(2 ** len(plus), dtype=np.int64)
    for y in range(2 ** len(plus)):
        anc[y] = sum(1 << plus[i] for i in range(len(plus)) if (y >> i) & 1)
    amp = 2.0 ** (-len(plus) / 2)
    out = np.zeros((2 ** n, psi.shape[1]), dtype=complex)
    rows = (comp[:, None] | anc[None, :]).reshape(-1)
    out[rows] = np.repeat(psi * amp, len(anc), axis=0)
    return out


def verify(circuit: LogicalCircuit, schedule, tol: float = 1e-8, cap: int | None = None) -> VerificationReport:
    """Run the schedule on every spanning logical input and compare with the circuit.

    Only vertices touched by a gate or hosting a logical qubit are simulated;
    untouched ancillas are trivially intact.
    """
    if circuit.k != schedule.k:
        raise ValidationError(f"circuit has {circuit.k} qubits, schedule hosts {schedule.k}")
    touched = {v for app in schedule.ops for v in app.pair}
    hosted = {v for h in schedule.initial_hosts + schedule.final_hosts for v in h}
    active = sorted(touched | hosted)
    check_cap(len(active), cap)
    index = {v: i for i, v in enumerate(active)}
    for v in touched - hosted:
        if v not in schedule.initial_ancillas or v not in schedule.final_ancillas:
            raise ValidationError(f"vertex {v} is used but has no ancilla role")

    psi = logical_inputs(circuit.k)
    ideal = circuit_unitary(circuit) @ psi
    start = embed(psi, schedule.initial_hosts, schedule.initial_ancillas, index)
    apps = [GateApplication(a.gate, (index[a.pair[0]], index[a.pair[1]]), a.label) for a in schedule.ops]
    actual = run_sequence(start, apps)
    expected = embed(ideal, schedule.final_hosts, schedule.final_ancillas, index)

    # a loaded non-unitary gate can change the norm; compare directions only
    norms = np.linalg.norm(actual, axis=0)
    actual = actual / np.where(norms > 0, norms, 1.0)
    c = np.einsum("ij,ij->j", expected.conj(), actual)
    total = c.sum()
    phi = float(np.angle(total)) if abs(total) > 0 else 0.0
    rot = c * np.exp(-1j * phi)
    worst_fid = float(np.min(np.abs(c)))
    worst_al = float(np.min(rot.real))
    spread = float(np.max(np.abs(np.angle(rot))))

    anc_status = {}
    for v, s in schedule.final_ancillas.items():
        if v not in index:
            continue
        worst = None
        for j in range(actual.shape[1]):
            st = ancilla_intact(actual[:, j], index[v], s)
            if worst is None or st.defect > worst.defect or (st.entangled and not worst.entangled):
                worst = st
        anc_status[v] = worst

    return VerificationReport(
        passed=1 - max(worst_al, 0.0) <= tol,
        worst_fidelity=worst_fid,
        worst_aligned=worst_al,
        phase=phi,
        phase_spread=spread,
        ancillas=anc_status,
        layout_restored=schedule.layout_restored,
        simulated_qubits=len(active),
        inputs=psi.shape[1],
        tol=tol,
        invalid_gates=tuple(schedule.invalid_gates()),
    )
