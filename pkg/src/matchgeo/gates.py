"""Matchgate algebra.

A two-qubit gate ``G(A, B)`` acts as ``A`` on the even-parity pair
``{|00>, |11>}`` and as ``B`` on the odd-parity pair ``{|01>, |10>}``.  It is a
matchgate when ``det A == det B``.

Basis ordering is ``|00>, |01>, |10>, |11>`` with the FIRST operand of an
oriented pair as the left tensor factor (the high bit of the local index).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ValidationError

#: Tolerance for algebraic identities built from exact constants.
TOL_ALG = 1e-10

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = (X + Z) / np.sqrt(2)

# local indices of the two parity blocks
_EVEN = (0, 3)
_ODD = (1, 2)
_OFF_PATTERN = np.ones((4, 4), dtype=bool)
for _blk in (_EVEN, _ODD):
    for _r in _blk:
        for _c in _blk:
            _OFF_PATTERN[_r, _c] = False

PAULI_PRODUCTS = {
    "XX": np.kron(X, X),
    "YY": np.kron(Y, Y),
    "XY": np.kron(X, Y),
    "YX": np.kron(Y, X),
    "IZ": np.kron(I2, Z),
    "ZI": np.kron(Z, I2),
}


def rz(theta: float) -> np.ndarray:
    """Determinant-one Z rotation ``diag(e^{-i theta/2}, e^{i theta/2})``."""
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def _check_unitary(m: np.ndarray, name: str, tol: float) -> None:
    if not np.all(np.isfinite(m)):
        raise ValidationError(f"{name} has non-finite entries")
    dev = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
    if dev > tol:
        raise ValidationError(f"{name} is not unitary (max |U^dag U - I| = {dev:.3g})")


def as_unitary2(m, name: str = "block", tol: float = TOL_ALG) -> np.ndarray:
    """Validate and return a 2x2 complex unitary as a fresh array."""
    arr = np.array(m, dtype=complex)
    if arr.shape != (2, 2):
        raise ValidationError(f"{name} must be 2x2, got shape {arr.shape}")
    _check_unitary(arr, name, tol)
    return arr


def embed(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Place ``a`` on the even block and ``b`` on the odd block of a 4x4 matrix."""
    m = np.zeros((4, 4), dtype=complex)
    for blk, sub in ((_EVEN, a), (_ODD, b)):
        for r in range(2):
            for c in range(2):
                m[blk[r], blk[c]] = sub[r, c]
    return m


def parity_blocks(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return the (even, odd) 2x2 blocks of a 4x4 matrix, ignoring other entries."""
    a = m[np.ix_(_EVEN, _EVEN)].copy()
    b = m[np.ix_(_ODD, _ODD)].copy()
    return a, b


def is_parity_preserving(m: np.ndarray, tol: float = TOL_ALG) -> bool:
    m = np.asarray(m)
    if m.shape != (4, 4):
        return False
    return bool(np.max(np.abs(m[_OFF_PATTERN]), initial=0.0) <= tol)


def is_matchgate(g, tol: float = TOL_ALG) -> bool:
    """True iff ``g`` is a parity-preserving unitary with ``|det A - det B| <= tol``.

    Matrices that are not unitary or not parity-preserving give ``False``.
    """
    m = g.matrix if isinstance(g, TwoQubitGate) else np.asarray(g, dtype=complex)
    if m.shape != (4, 4) or not np.all(np.isfinite(m)):
        return False
    if np.max(np.abs(m.conj().T @ m - np.eye(4))) > tol:
        return False
    if not is_parity_preserving(m, tol):
        return False
    a, b = parity_blocks(m)
    return bool(abs(np.linalg.det(a) - np.linalg.det(b)) <= tol)


@dataclass(frozen=True, eq=False)
class TwoQubitGate:
    """Immutable 4x4 unitary, optionally carrying its parity blocks.

    ``name`` is a display label only; identity of a gate is its matrix.
    """

    matrix: np.ndarray
    blocks: tuple[np.ndarray, np.ndarray] | None = None
    name: str = ""
    matchgate: bool = field(init=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValidationError(f"gate matrix must be 4x4, got {m.shape}")
        _check_unitary(m, "gate matrix", TOL_ALG)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if self.blocks is not None:
            a, b = (np.array(x, dtype=complex) for x in self.blocks)
            for x in (a, b):
                x.setflags(write=False)
            object.__setattr__(self, "blocks", (a, b))
        object.__setattr__(self, "matchgate", is_matchgate(m, TOL_ALG))

    @property
    def A(self) -> np.ndarray:
        return parity_blocks(self.matrix)[0] if self.blocks is None else self.blocks[0]

    @property
    def B(self) -> np.ndarray:
        return parity_blocks(self.matrix)[1] if self.blocks is None else self.blocks[1]

    def __matmul__(self, other: "TwoQubitGate") -> "TwoQubitGate":
        return TwoQubitGate(self.matrix @ other.matrix)

    def allclose(self, other: "TwoQubitGate", tol: float = TOL_ALG) -> bool:
        return bool(np.max(np.abs(self.matrix - other.matrix)) <= tol)

    def __repr__(self) -> str:
        label = self.name or "G"
        return f"TwoQubitGate({label}, matchgate={self.matchgate})"


def make_gate(a, b, name: str = "") -> TwoQubitGate:
    """Build ``G(A, B)``; raises :class:`ValidationError` naming a non-unitary block."""
    a = as_unitary2(a, "A")
    b = as_unitary2(b, "B")
    return TwoQubitGate(embed(a, b), blocks=(a, b), name=name)


def gate_from_generators(coeffs: Sequence[float]) -> TwoQubitGate:
    """``exp(i * sum_k c_k P_k)`` for ``P = (XX, YY, XY, YX, IZ, ZI)``.

    Uses the Hermitian eigendecomposition of the generator so the result is
    unitary to rounding.
    """
    c = np.asarray(coeffs, dtype=float)
    if c.shape != (6,) or not np.all(np.isfinite(c)):
        raise ValidationError("expected six finite generator coefficients")
    h = sum(ck * p for ck, p in zip(c, PAULI_PRODUCTS.values()))
    w, v = np.linalg.eigh(h)
    u = (v * np.exp(1j * w)) @ v.conj().T
    # generators never leave the parity pattern; drop rounding noise there
    u[_OFF_PATTERN] = 0.0
    return TwoQubitGate(u)


def equal_up_to_global_phase(u, v, tol: float = TOL_ALG) -> bool:
    """True iff ``max|u - e^{i phi} v| <= tol``, phase taken from v's largest entry."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise ValidationError(f"shape mismatch: {u.shape} vs {v.shape}")
    return global_phase_deviation(u, v)[0] <= tol


def global_phase_deviation(u: np.ndarray, v: np.ndarray) -> tuple[float, complex]:
    """Return ``(max|u - phase * v|, phase)`` with the phase read off v's largest entry."""
    if v.size == 0:
        return 0.0, 1.0 + 0j
    k = int(np.argmax(np.abs(v)))
    vk = v.flat[k]
    if abs(vk) == 0:
        return float(np.max(np.abs(u))), 1.0 + 0j
    uk = u.flat[k]
    phase = uk / abs(uk) * abs(vk) / vk if abs(uk) > 0 else 1.0 + 0j
    return float(np.max(np.abs(u - phase * v))), complex(phase)


_SWAP_PERM = np.array([0, 2, 1, 3])


def exchange_conjugate(g: TwoQubitGate) -> TwoQubitGate:
    """``SWAP . g . SWAP``: the same physical gate with the operands listed in reverse.

    In block form ``G(A, B) -> G(A, X B X)``.
    """
    if not is_parity_preserving(g.matrix):
        raise ValidationError("exchange_conjugate needs a parity-preserving gate")
    m = g.matrix[np.ix_(_SWAP_PERM, _SWAP_PERM)]
    blocks = None
    if g.blocks is not None:
        blocks = (g.blocks[0], X @ g.blocks[1] @ X)
    return TwoQubitGate(m, blocks=blocks, name=g.name)


def is_fswap(g: TwoQubitGate, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(g.matrix - FSWAP.matrix)) <= tol)


def canonical_gates() -> dict[str, TwoQubitGate]:
    """Named gates used throughout the package (all exact constants)."""
    return {
        "I": IDENTITY,
        "FSWAP": FSWAP,
        "SWAP": SWAP,
        "HH": G_HH,
        "XX": G_XX,
    }


IDENTITY = make_gate(I2, I2, name="I")
FSWAP = make_gate(Z, X, name="FSWAP")
SWAP = make_gate(I2, X, name="SWAP")
G_HH = make_gate(H, H, name="G(H,H)")
G_XX = make_gate(X, X, name="G(X,X)")
CZ_MATRIX = np.diag([1, 1, 1, -1]).astype(complex)


def g_rz(theta: float) -> TwoQubitGate:
    """``G(Rz, Rz) = Rz(theta) (x) I`` on an oriented pair."""
    r = rz(theta)
    return make_gate(r, r, name=f"Rz({theta!r})")


def rz_pair(alpha: float, beta: float) -> TwoQubitGate:
    """``Rz(alpha) (x) Rz(beta)`` as the matchgate ``G(Rz(alpha+beta), Rz(alpha-beta))``."""
    return make_gate(rz(alpha + beta), rz(alpha - beta), name=f"RzRz({alpha!r},{beta!r})")


def xx_rotation(theta: float) -> TwoQubitGate:
    """``exp(i theta XX)``, a matchgate acting as ``exp(i theta X)`` on both blocks."""
    r = np.cos(theta) * I2 + 1j * np.sin(theta) * X
    return make_gate(r, r, name=f"expXX({theta!r})")


def logical_gate(a) -> TwoQubitGate:
    """``G(A, A)``: a single-qubit gate on a 2-to-1 encoded block."""
    a = as_unitary2(a, "A")
    return make_gate(a, a)


def haar_unitary2(rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_matchgate(rng: np.random.Generator) -> TwoQubitGate:
    """Haar-like ``A`` and ``B`` rescaled so their determinants agree."""
    a = haar_unitary2(rng)
    b = haar_unitary2(rng)
    # multiply b by a phase fixing det b to det a
    b = b * np.sqrt(np.linalg.det(a) / np.linalg.det(b))
    return make_gate(a, b)
