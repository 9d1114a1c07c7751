"""Universality certificates: structural witnesses that license a compilation strategy.

A certificate is only emitted together with a concrete placement, so it can
be handed straight to :func:`matchgeo.compiler.compile_with`.  When a search
runs out of budget without a witness the verdict is *unknown*, never
"not universal".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .graphs import InteractionGraph, PathSearch, Role, enumerate_cycles
from .placement import (
    DEFAULT_BUDGET,
    Placement,
    Strategy,
    chain_pendant_encoded,
    cycle_rotation,
    hair_comb_h_gadget,
    star_hub_tree_leaves,
)
from .errors import ValidationError


class Condition(str, enum.Enum):
    LARGE_CYCLE = "LargeCycle"
    T_STRUCTURE_PATH = "TStructurePath"
    DEGREE3_PATH = "Degree3Path"
    ANCILLA_CONNECTABLE_SET = "AncillaConnectableSet"
    PENDANT_ON_CHAIN = "PendantOnChain"


@dataclass(frozen=True)
class UniversalityCertificate:
    condition: Condition
    witness: tuple[int, ...]
    placement: Placement
    overhead: str

    @property
    def strategy(self) -> Strategy:
        return self.placement.strategy

    @property
    def roles(self) -> dict[int, Role]:
        return self.placement.roles()

    def line(self) -> str:
        return (f"{self.condition.value}: witness {list(self.witness)} -> {self.strategy.value} "
                f"(overhead {self.overhead})")


@dataclass(frozen=True)
class AnalysisResult:
    certificates: tuple[UniversalityCertificate, ...]
    exhausted: tuple[Condition, ...]

    @property
    def unknown(self) -> bool:
        """No certificate and at least one search was cut short."""
        return not self.certificates and bool(self.exhausted)


def _large_cycle(g, k, budget):
    cycles, complete = enumerate_cycles(g, budget)
    gen = cycle_rotation(g, k, budget, min_length=k + 2)
    p = next(gen, None)
    if p is None:
        return None, not complete
    n = len(p.info["cycle"])
    return UniversalityCertificate(Condition.LARGE_CYCLE, p.info["cycle"], p,
                                   f"<= n^2/2 f-SWAPs per H, n = {n}"), False


def _t_structure_path(g, k, budget):
    search = hair_comb_h_gadget(g, k, budget, pendant_only=True)
    p = next(search, None)
    if p is None:
        return None, _path_exhausted(g, k, budget)
    return UniversalityCertificate(Condition.T_STRUCTURE_PATH, p.info["path"], p,
                                   "0 f-SWAPs per H; one extra qubit per logical qubit"), False


def _path_exhausted(g, length, budget) -> bool:
    search = PathSearch(g, length, budget)
    for _ in search:
        pass
    return search.exhausted


def _degree3_path(g, k, budget):
    search = PathSearch(g, 2 * k, budget)
    for path in search:
        if all(g.degree(v) > 2 for v in path):
            head = path[:k]
            on = set(head)
            teeth = []
            for v in head:
                side = sorted((w for w in g.neighbors(v) if w not in on), key=lambda w: (g.degree(w) != 1, w))
                teeth.append(side[0])
            p = Placement(Strategy.HAIR_COMB_H_GADGET, tuple((v,) for v in head),
                          {t: "+" for t in teeth}, {"path": head, "teeth": tuple(teeth)})
            return UniversalityCertificate(Condition.DEGREE3_PATH, path, p,
                                           "0 f-SWAPs per H; SWAP templates for distant pairs"), False
    return None, search.exhausted


def _ancilla_set(g, k, budget):
    p = next(star_hub_tree_leaves(g, k, budget), None)
    if p is None:
        return None, False
    return UniversalityCertificate(Condition.ANCILLA_CONNECTABLE_SET, p.info["set"], p,
                                   "f-SWAPs per gate <= 2 x (diameter of the |0> region + 1)"), False


def _pendant_on_chain(g, k, budget):
    p = next(chain_pendant_encoded(g, k, budget), None)
    if p is None:
        return None, _path_exhausted(g, 2 * k + 1, budget)
    return UniversalityCertificate(Condition.PENDANT_ON_CHAIN, p.info["path"] + (p.info["alpha"],), p,
                                   "2-to-1 encoding; constant f-SWAPs per CZ plus block moves"), False


_SEARCHES = (
    (Condition.LARGE_CYCLE, _large_cycle),
    (Condition.T_STRUCTURE_PATH, _t_structure_path),
    (Condition.DEGREE3_PATH, _degree3_path),
    (Condition.ANCILLA_CONNECTABLE_SET, _ancilla_set),
    (Condition.PENDANT_ON_CHAIN, _pendant_on_chain),
)


def analyze(graph: InteractionGraph, k: int, budget: int = DEFAULT_BUDGET) -> AnalysisResult:
    """Every certificate found within ``budget``, in condition order.

    Witnesses are sized for ``max(k, 2)`` logical qubits so that a lone qubit
    on a bare chain or cycle is never mistaken for a universal geometry.
    """
    if k < 1:
        raise ValidationError("k must be at least 1")
    if budget <= 0:
        return AnalysisResult((), tuple(c for c, _ in _SEARCHES))
    need = max(k, 2)
    certs = []
    exhausted = []
    for cond, search in _SEARCHES:
        cert, ran_out = search(graph, need, budget)
        if cert is not None:
            if need != k:
                cert = _shrink(cert, k)
            certs.append(cert)
        elif ran_out:
            exhausted.append(cond)
    return AnalysisResult(tuple(certs), tuple(exhausted))


def _shrink(cert: UniversalityCertificate, k: int) -> UniversalityCertificate:
    """Reuse a witness sized for more qubits with only the first ``k`` hosts."""
    p = cert.placement
    keep = p.hosts[:k]
    anc = dict(p.ancillas)
    info = dict(p.info)
    if p.strategy in (Strategy.CYCLE_ROTATION, Strategy.CHAIN_CENTER_SHUTTLE):
        for h in p.hosts[k:]:
            anc[h[0]] = "0"
    elif p.strategy == Strategy.HAIR_COMB_H_GADGET:
        info["path"] = p.info["path"][:k]
        info["teeth"] = p.info["teeth"][:k]
        anc = {t: "+" for t in info["teeth"]}
    elif p.strategy == Strategy.STAR_HUB_BINARY_TREE_LEAVES:
        for h in p.hosts[k:]:
            anc[h[0]] = "0"
    elif p.strategy == Strategy.CHAIN_PENDANT_ENCODED:
        info["path"] = p.info["path"][:2 * k + 1]
    return UniversalityCertificate(cert.condition, cert.witness,
                                   Placement(p.strategy, keep, anc, info), cert.overhead)


def describe(result: AnalysisResult) -> list[str]:
    if result.certificates:
        return [c.line() for c in result.certificates]
    if result.unknown:
        return ["unknown (budget exhausted)"]
    return ["no certificate found"]
