"""Logical circuits over {RZ, H, CZ, MG} and their lowering rules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ValidationError
from .gates import FSWAP, H, TwoQubitGate, is_matchgate, parity_blocks, rz, xx_rotation, CZ_MATRIX

KINDS = ("RZ", "H", "CZ", "MG")


@dataclass(frozen=True)
class LogicalGate:
    kind: str
    qubits: tuple[int, ...]
    theta: float = 0.0
    gate: TwoQubitGate | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown logical gate kind {self.kind!r}")
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        arity = 1 if self.kind in ("RZ", "H") else 2
        if len(self.qubits) != arity:
            raise ValidationError(f"{self.kind} takes {arity} qubit(s)")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValidationError(f"{self.kind} needs two distinct qubits")
        if self.kind == "MG" and (self.gate is None or not is_matchgate(self.gate)):
            raise ValidationError("MG payload must be a matchgate")
        if not np.isfinite(self.theta):
            raise ValidationError("rotation angle must be finite")


def RZ(q: int, theta: float) -> LogicalGate:
    return LogicalGate("RZ", (q,), theta=float(theta))


def Hgate(q: int) -> LogicalGate:
    return LogicalGate("H", (q,))


def CZ(a: int, b: int) -> LogicalGate:
    return LogicalGate("CZ", (a, b))


def MG(a: int, b: int, gate: TwoQubitGate) -> LogicalGate:
    return LogicalGate("MG", (a, b), gate=gate)


@dataclass(frozen=True)
class LogicalCircuit:
    k: int
    gates: tuple[LogicalGate, ...] = ()

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError("a circuit needs at least one logical qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        for i, g in enumerate(self.gates):
            if any(not 0 <= q < self.k for q in g.qubits):
                raise ValidationError(f"gate {i} addresses a qubit outside 0..{self.k - 1}")

    def __len__(self) -> int:
        return len(self.gates)


# -- reference semantics ------------------------------------------------------

def _embed_1q(m: np.ndarray, q: int, k: int) -> np.ndarray:
    # qubit q is bit q of the index, so it is factor k-1-q of the Kronecker product
    out = np.eye(1)
    for j in reversed(range(k)):
        out = np.kron(out, m if j == q else np.eye(2))
    return out


def _embed_2q(m: np.ndarray, a: int, b: int, k: int) -> np.ndarray:
    dim = 2 ** k
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        ba, bb = (col >> a) & 1, (col >> b) & 1
        local = 2 * ba + bb
        rest = col & ~((1 << a) | (1 << b))
        for row_local in range(4):
            amp = m[row_local, local]
            if amp == 0:
                continue
            row = rest | ((row_local >> 1) << a) | ((row_local & 1) << b)
            out[row, col] += amp
    return out


def gate_unitary(g: LogicalGate, k: int) -> np.ndarray:
    if g.kind == "RZ":
        return _embed_1q(rz(g.theta), g.qubits[0], k)
    if g.kind == "H":
        return _embed_1q(H, g.qubits[0], k)
    if g.kind == "CZ":
        return _embed_2q(CZ_MATRIX, *g.qubits, k)
    return _embed_2q(g.gate.matrix, *g.qubits, k)


def circuit_unitary(circuit: LogicalCircuit) -> np.ndarray:
    """Dense reference unitary; logical qubit ``q`` is bit ``q``."""
    u = np.eye(2 ** circuit.k, dtype=complex)
    for g in circuit.gates:
        u = gate_unitary(g, circuit.k) @ u
    return u


# -- lowering -------------------------------------------------------------------

def cz_as_matchgates(a: int, b: int) -> list[LogicalGate]:
    """CZ up to global phase: H on both, ``exp(i pi/4 XX)``, H on both, ``Rz(pi/2)`` on both."""
    return [Hgate(a), Hgate(b), MG(a, b, xx_rotation(np.pi / 4)), Hgate(a), Hgate(b),
            RZ(a, np.pi / 2), RZ(b, np.pi / 2)]


def swap_as_matchgates(a: int, b: int) -> list[LogicalGate]:
    """SWAP up to global phase as ``FSWAP . CZ``."""
    return cz_as_matchgates(a, b) + [MG(a, b, FSWAP)]


def zxz_angles(u: np.ndarray) -> tuple[float, float, float, complex]:
    """``u = phase * Rz(alpha) Rx(beta) Rz(gamma)``; returns ``(alpha, beta, gamma, phase)``."""
    u = np.asarray(u, dtype=complex)
    det = np.linalg.det(u)
    phase = np.sqrt(det)
    su = u / phase
    c = abs(su[0, 0])
    s = abs(su[0, 1])
    beta = 2 * np.arctan2(s, c)
    plus = -2 * np.angle(su[0, 0]) if c > 1e-12 else 0.0
    minus = -2 * np.angle(1j * su[0, 1]) if s > 1e-12 else 0.0
    alpha = (plus + minus) / 2
    gamma = (plus - minus) / 2
    return float(alpha), float(beta), float(gamma), complex(phase)


def euler_h_rz(u: np.ndarray, q: int) -> list[LogicalGate]:
    """Any single-qubit unitary as ``Rz H Rz H Rz`` (program order), up to global phase."""
    alpha, beta, gamma, _ = zxz_angles(u)
    return [RZ(q, gamma), Hgate(q), RZ(q, beta), Hgate(q), RZ(q, alpha)]


def _zz(a: int, b: int, theta: float) -> list[LogicalGate]:
    # exp(-i theta ZZ) = CNOT (I x Rz(2 theta)) CNOT with CNOT = (I x H) CZ (I x H)
    return [Hgate(b), CZ(a, b), Hgate(b), RZ(b, 2 * theta), Hgate(b), CZ(a, b), Hgate(b)]


def matchgate_as_rz_h_cz(gate: TwoQubitGate, a: int, b: int) -> list[LogicalGate]:
    """Lower ``G(A, B)`` on ``(a, b)`` to RZ/H/CZ, up to global phase.

    ``G(Rz(x), Rz(y)) = Rz((x+y)/2) (x) Rz((x-y)/2)`` and
    ``G(Rx(x), Rx(y)) = exp(-i[(x+y)/4 XX + (y-x)/4 YY])``.
    """
    A, B = parity_blocks(gate.matrix)
    a1, a2, a3, _ = zxz_angles(A)
    b1, b2, b3, _ = zxz_angles(B)

    def zpair(x, y):
        return [RZ(a, (x + y) / 2), RZ(b, (x - y) / 2)]

    txx = (a2 + b2) / 4
    tyy = (b2 - a2) / 4
    xx = [Hgate(a), Hgate(b)] + _zz(a, b, txx) + [Hgate(a), Hgate(b)]
    # Y = V Z V^dag with V = S H; S equals Rz(pi/2) up to phase
    yy = ([RZ(a, -np.pi / 2), Hgate(a), RZ(b, -np.pi / 2), Hgate(b)] + _zz(a, b, tyy)
          + [Hgate(a), RZ(a, np.pi / 2), Hgate(b), RZ(b, np.pi / 2)])
    return zpair(a3, b3) + xx + yy + zpair(a1, b1)


def lower(circuit: LogicalCircuit, native_mg: bool) -> list[tuple[int, LogicalGate]]:
    """Pairs ``(source index, gate)``; MG is expanded to RZ/H/CZ unless ``native_mg``."""
    out = []
    for i, g in enumerate(circuit.gates):
        if g.kind == "MG" and not native_mg:
            out.extend((i, x) for x in matchgate_as_rz_h_cz(g.gate, *g.qubits))
        else:
            out.append((i, g))
    return out


def random_circuit(k: int, m: int, rng: np.random.Generator,
                   kinds: Sequence[str] = KINDS) -> LogicalCircuit:
    from .gates import random_matchgate

    gates = []
    for _ in range(m):
        kind = kinds[int(rng.integers(len(kinds)))] if k > 1 else ("RZ", "H")[int(rng.integers(2))]
        if kind == "RZ":
            gates.append(RZ(int(rng.integers(k)), float(rng.uniform(-np.pi, np.pi))))
        elif kind == "H":
            gates.append(Hgate(int(rng.integers(k))))
        else:
            a, b = (int(x) for x in rng.choice(k, size=2, replace=False))
            gates.append(CZ(a, b) if kind == "CZ" else MG(a, b, random_matchgate(rng)))
    return LogicalCircuit(k, tuple(gates))


def gates_from(items: Iterable[LogicalGate]) -> tuple[LogicalGate, ...]:
    return tuple(items)
