"""Exact resource counts recomputed from a schedule, checked against known bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gates import FSWAP

#: Bound constants for hole-sea routing: f-SWAPs per two-qubit gate <= c * log2(n).
TREE_C_MG = 4
TREE_C_CZ = 20


@dataclass(frozen=True)
class BoundCheck:
    name: str
    limit: float
    observed: float
    passed: bool

    def line(self) -> str:
        verdict = "ok" if self.passed else "VIOLATED"
        return f"{self.name}: observed {self.observed:g} vs limit {self.limit:g} [{verdict}]"


@dataclass(frozen=True)
class ResourceReport:
    """Counts are exact; ``fswaps`` includes f-SWAPs that are themselves logical payload.

    ``overhead_fswaps[i]`` counts f-SWAPs attributed to logical gate ``i``
    that are not its payload.
    """

    total_gates: int
    fswaps: int
    overhead_fswaps: tuple[int, ...]
    h_fswaps: tuple[int, ...]
    two_qubit_fswaps: tuple[tuple[str, int], ...]
    gadget_invocations: int
    gadget_fswaps: int
    physical_qubits: int
    logical_gates: int
    bounds: tuple[BoundCheck, ...] = ()

    @property
    def passed(self) -> bool:
        return all(b.passed for b in self.bounds)

    def lines(self) -> list[str]:
        out = [
            f"total gates: {self.total_gates}",
            f"f-SWAPs: {self.fswaps}",
            f"f-SWAPs per logical H: {list(self.h_fswaps)}",
            f"f-SWAPs per two-qubit gate: {[c for _, c in self.two_qubit_fswaps]}",
            f"gadget invocations: {self.gadget_invocations} (gadget f-SWAPs {self.gadget_fswaps})",
            f"physical qubits: {self.physical_qubits}",
        ]
        out += [b.line() for b in self.bounds]
        return out


def _is_fswap(app) -> bool:
    return bool(np.array_equal(app.gate.matrix, FSWAP.matrix))


def count_resources(schedule) -> ResourceReport:
    """Recount every figure from ``schedule.ops`` and its provenance tags."""
    m = len(schedule.logical_kinds)
    per_gate = [0] * m
    total_f = 0
    gadget_f = 0
    invocations = 0
    for app, idx in zip(schedule.ops, schedule.provenance):
        f = _is_fswap(app)
        total_f += f
        if f and app.label != "payload":
            per_gate[idx] += 1
        if f and app.label == "gadget":
            gadget_f += 1
        if app.label == "gadget-payload":
            invocations += 1
    kinds = schedule.logical_kinds
    h_f = tuple(per_gate[i] for i in range(m) if kinds[i] == "H")
    two_f = tuple((kinds[i], per_gate[i]) for i in range(m) if kinds[i] in ("CZ", "MG"))
    physical = len(schedule.roles())
    report = dict(
        total_gates=len(schedule.ops), fswaps=total_f, overhead_fswaps=tuple(per_gate),
        h_fswaps=h_f, two_qubit_fswaps=two_f, gadget_invocations=invocations,
        gadget_fswaps=gadget_f, physical_qubits=physical, logical_gates=m,
    )
    return ResourceReport(**report, bounds=tuple(_bounds(schedule, report)))


def _bounds(schedule, r) -> list[BoundCheck]:
    s, info = schedule.strategy, schedule.info
    worst_h = max(r["h_fswaps"], default=0)
    out = []
    if s == "CycleRotation":
        n = info["cycle_length"]
        out.append(BoundCheck("f-SWAPs per H <= n^2/2 (n = cycle length)", n * n / 2, worst_h, worst_h <= n * n / 2))
    elif s == "ChainCenterShuttle":
        n = info["chain_length"]
        out.append(BoundCheck("f-SWAPs per H <= n^2 (n = chain length)", n * n, worst_h, worst_h <= n * n))
    elif s == "StarHubBinaryTreeLeaves":
        lg = math.log2(schedule.graph.n)
        for kind, c in (("MG", TREE_C_MG), ("CZ", TREE_C_CZ)):
            worst = max((f for kk, f in r["two_qubit_fswaps"] if kk == kind), default=0)
            out.append(BoundCheck(f"f-SWAPs per {kind} <= {c}*log2(n)", c * lg, worst, worst <= c * lg))
    elif s == "HairCombFswapEncoded":
        out.append(BoundCheck("gadget f-SWAPs = 4 per gadget", 4 * r["gadget_invocations"],
                              r["gadget_fswaps"], r["gadget_fswaps"] == 4 * r["gadget_invocations"]))
    elif s == "WheelHub":
        out.append(BoundCheck("f-SWAPs per H = 0 (shared hub)", 0, worst_h, worst_h == 0))
    elif s == "HairCombHGadget" and info.get("nn_model") and info.get("distinct_teeth"):
        m, k = r["logical_gates"], schedule.k
        out.append(BoundCheck("gate count = logical gate count (NN model)", m, r["total_gates"],
                              r["total_gates"] == m))
        out.append(BoundCheck("physical qubits = 2k", 2 * k, r["physical_qubits"],
                              r["physical_qubits"] == 2 * k))
    return out
