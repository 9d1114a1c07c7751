"""Dense statevector oracle.

Qubit ``q`` is bit ``q`` of the amplitude index (little-endian).  Gates act on
an ordered pair ``(u, v)`` with ``u`` as the left tensor factor of the 4x4
matrix.  The inner loop lives in a compiled extension when it is available;
``MATCHGEO_PURE_PYTHON=1`` forces the numpy fallback.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ResourceLimitError, ValidationError
from .gates import TwoQubitGate

from . import _kernels_py

try:
    if os.environ.get("MATCHGEO_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-python backend requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

_backend = _compiled if _compiled is not None else _kernels_py

DEFAULT_MAX_QUBITS = 20
NORM_TOL = 1e-12

SINGLE_QUBIT_STATES = {
    "0": np.array([1, 0], dtype=complex),
    "1": np.array([0, 1], dtype=complex),
    "+": np.array([1, 1], dtype=complex) / np.sqrt(2),
    "-": np.array([1, -1], dtype=complex) / np.sqrt(2),
    "+i": np.array([1, 1j], dtype=complex) / np.sqrt(2),
}
SPANNING_INPUTS = ("0", "1", "+", "+i")


def backend_name() -> str:
    return _backend.BACKEND


def available_backends() -> list[str]:
    return ["cython", "python"] if _compiled is not None else ["python"]


def set_backend(name: str) -> None:
    """Select ``"cython"`` or ``"python"`` for subsequent gate applications."""
    global _backend
    if name == "python":
        _backend = _kernels_py
    elif name == "cython":
        if _compiled is None:
            raise ValidationError("compiled kernels are not built")
        _backend = _compiled
    else:
        raise ValidationError(f"unknown backend {name!r}")


def max_qubits() -> int:
    raw = os.environ.get("MATCHGEO_MAX_QUBITS")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValidationError(f"MATCHGEO_MAX_QUBITS must be an integer, got {raw!r}") from None
    return DEFAULT_MAX_QUBITS


def check_cap(n: int, cap: int | None = None) -> None:
    cap = max_qubits() if cap is None else cap
    if n > cap:
        raise ResourceLimitError(f"{n} qubits exceeds the statevector cap of {cap}")


@dataclass(frozen=True)
class GateApplication:
    """A gate on an ordered vertex pair; ``label`` records its role in a gadget."""

    gate: TwoQubitGate
    pair: tuple[int, int]
    label: str = ""

    def __post_init__(self):
        u, v = self.pair
        if u == v:
            raise ValidationError(f"gate pair must be two distinct vertices, got {self.pair}")
        object.__setattr__(self, "pair", (int(u), int(v)))


def single_qubit_state(spec) -> np.ndarray:
    if isinstance(spec, str):
        try:
            return SINGLE_QUBIT_STATES[spec].copy()
        except KeyError:
            raise ValidationError(f"unknown single-qubit state {spec!r}") from None
    vec = np.asarray(spec, dtype=complex).reshape(2)
    nrm = np.linalg.norm(vec)
    if nrm == 0:
        raise ValidationError("zero single-qubit amplitude pair")
    return vec / nrm


def product_state(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product with ``factors[q]`` on qubit ``q``."""
    out = np.ones(1, dtype=complex)
    for f in factors:
        out = np.kron(f, out)
    return out


class QuantumState:
    """Value-like n-qubit pure state; ``apply`` returns a new state."""

    __slots__ = ("n", "amplitudes")

    def __init__(self, n: int, amplitudes: np.ndarray):
        amps = np.ascontiguousarray(amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != 2 ** n:
            raise ValidationError(f"expected {2 ** n} amplitudes, got {amps.shape[0]}")
        if abs(np.linalg.norm(amps) - 1) > NORM_TOL * 10 ** 3:
            raise ValidationError("state is not normalised")
        amps.setflags(write=False)
        self.n = n
        self.amplitudes = amps

    def apply(self, app: GateApplication) -> "QuantumState":
        return apply(self, app)

    def __repr__(self) -> str:
        return f"QuantumState(n={self.n})"


def init_state(n: int, roles: Mapping[int, object] | None = None, cap: int | None = None) -> QuantumState:
    """Product state; each vertex gets its named or explicit state, default ``|0>``."""
    if n < 1:
        raise ValidationError("need at least one qubit")
    check_cap(n, cap)
    roles = roles or {}
    factors = [SINGLE_QUBIT_STATES["0"]] * n
    for v, spec in roles.items():
        if not 0 <= v < n:
            raise ValidationError(f"vertex {v} out of range")
        factors[v] = single_qubit_state(spec)
    return QuantumState(n, product_state(factors))


def _check_pair(n: int, pair: tuple[int, int]) -> None:
    u, v = pair
    if not (0 <= u < n and 0 <= v < n) or u == v:
        raise ValidationError(f"invalid vertex pair {pair} for {n} qubits")


def apply_inplace(batch: np.ndarray, app: GateApplication) -> None:
    """Apply one gate to every column of a ``(2**n, B)`` complex array."""
    n = batch.shape[0].bit_length() - 1
    _check_pair(n, app.pair)
    _backend.apply_two_qubit(batch, np.ascontiguousarray(app.gate.matrix), app.pair[0], app.pair[1])


def run_sequence(batch: np.ndarray, apps: Iterable[GateApplication]) -> np.ndarray:
    """Apply ``apps`` left to right to a copy of ``batch`` (1-D or 2-D)."""
    work = np.array(batch, dtype=complex, order="C")
    flat = work.ndim == 1
    if flat:
        work = work.reshape(-1, 1)
    for app in apps:
        apply_inplace(work, app)
    return work.reshape(-1) if flat else work


def apply(state: QuantumState, app: GateApplication) -> QuantumState:
    _check_pair(state.n, app.pair)
    return QuantumState(state.n, run_sequence(state.amplitudes, [app]))


def fidelity(s1: QuantumState, s2: QuantumState) -> float:
    """``|<s1|s2>|`` (not squared)."""
    if s1.n != s2.n:
        raise ValidationError(f"size mismatch: {s1.n} vs {s2.n} qubits")
    return float(abs(np.vdot(s1.amplitudes, s2.amplitudes)))


def reduced_density_matrix(amplitudes: np.ndarray, vertex: int) -> np.ndarray:
    n = amplitudes.shape[0].bit_length() - 1
    t = amplitudes.reshape(2 ** (n - 1 - vertex), 2, 2 ** vertex)
    return np.einsum("aib,ajb->ij", t, t.conj())


@dataclass(frozen=True)
class AncillaStatus:
    """``defect`` is ``1 - <e|rho|e>``; ``entangled`` flags a mixed reduced state."""

    defect: float
    purity: float
    entangled: bool

    def __float__(self) -> float:
        return self.defect


def ancilla_intact(state: QuantumState | np.ndarray, vertex: int, expected="0") -> AncillaStatus:
    amps = state.amplitudes if isinstance(state, QuantumState) else np.asarray(state)
    n = amps.shape[0].bit_length() - 1
    if not 0 <= vertex < n:
        raise ValidationError(f"vertex {vertex} out of range")
    rho = reduced_density_matrix(amps, vertex)
    e = single_qubit_state(expected)
    overlap = float(np.real(e.conj() @ rho @ e))
    purity = float(np.real(np.trace(rho @ rho)))
    return AncillaStatus(max(0.0, 1.0 - overlap), purity, purity < 1 - 1e-10)


def spanning_product_inputs(n: int, clamped: Mapping[int, str]) -> np.ndarray:
    """Columns are product states: clamped vertices fixed, free ones over {0,1,+,+i}."""
    free = [v for v in range(n) if v not in clamped]
    cols = []
    for choice in itertools.product(SPANNING_INPUTS, repeat=len(free)):
        factors = [None] * n
        for v, spec in clamped.items():
            factors[v] = single_qubit_state(spec)
        for v, spec in zip(free, choice):
            factors[v] = SINGLE_QUBIT_STATES[spec]
        cols.append(product_state(factors))
    return np.ascontiguousarray(np.array(cols).T)


def subspace_deviation(seq_a: Sequence[GateApplication], seq_b: Sequence[GateApplication],
                       clamped: Mapping[int, str], n: int, cap: int | None = None) -> float:
    """Max entry deviation between the two outputs after one common phase is removed."""
    check_cap(n, cap)
    inputs = spanning_product_inputs(n, clamped)
    out_a = run_sequence(inputs, seq_a)
    out_b = run_sequence(inputs, seq_b)
    ip = np.vdot(out_b, out_a)
    phase = ip / abs(ip) if abs(ip) > 0 else 1.0
    return float(np.max(np.abs(out_a - phase * out_b)))


def operators_equal_on_subspace(seq_a: Sequence[GateApplication], seq_b: Sequence[GateApplication],
                                clamped: Mapping[int, str], n: int, tol: float = 1e-10,
                                cap: int | None = None) -> bool:
    """True iff both sequences agree, up to one common global phase, on the clamped subspace."""
    return subspace_deviation(seq_a, seq_b, clamped, n, cap) <= tol
