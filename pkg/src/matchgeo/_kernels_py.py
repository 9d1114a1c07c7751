"""Pure numpy fallback for the compiled kernels; same semantics as ``_kernels.pyx``."""

from functools import lru_cache

import numpy as np

BACKEND = "python"


@lru_cache(maxsize=256)
def _quad_indices(dim: int, u: int, v: int) -> np.ndarray:
    rows = np.arange(dim)
    base = rows[((rows >> u) & 1 == 0) & ((rows >> v) & 1 == 0)]
    bu, bv = 1 << u, 1 << v
    idx = np.stack([base, base | bv, base | bu, base | bu | bv])
    idx.setflags(write=False)
    return idx


def apply_two_qubit(state: np.ndarray, gate: np.ndarray, u: int, v: int) -> None:
    """Apply ``gate`` to qubits ``(u, v)`` of every column of ``state`` in place."""
    idx = _quad_indices(state.shape[0], u, v)
    block = state[idx]
    state[idx] = np.einsum("ab,bmk->amk", gate, block)
