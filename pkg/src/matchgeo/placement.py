"""Where logical qubits and ancillas sit for each compilation strategy.

Each finder is a generator of :class:`Placement` candidates in a fixed,
deterministic order.  All structure searches are budgeted; a finder that runs
out of budget simply stops yielding.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .graphs import InteractionGraph, PathSearch, Role, enumerate_cycles

DEFAULT_BUDGET = 200_000

ZERO = "0"
PLUS = "+"


class Strategy(str, enum.Enum):
    HAIR_COMB_H_GADGET = "HairCombHGadget"
    HAIR_COMB_FSWAP_ENCODED = "HairCombFswapEncoded"
    CYCLE_ROTATION = "CycleRotation"
    CHAIN_CENTER_SHUTTLE = "ChainCenterShuttle"
    CHAIN_PENDANT_ENCODED = "ChainPendantEncoded"
    STAR_HUB_BINARY_TREE_LEAVES = "StarHubBinaryTreeLeaves"
    WHEEL_HUB = "WheelHub"

    @property
    def encoded(self) -> bool:
        return self in (Strategy.HAIR_COMB_FSWAP_ENCODED, Strategy.CHAIN_PENDANT_ENCODED)


AUTO_ORDER = tuple(Strategy)


@dataclass(frozen=True)
class Placement:
    """Initial hosts per logical qubit plus the ancilla clamps.

    ``info`` holds the structure the router needs (path, cycle, teeth, ...).
    """

    strategy: Strategy
    hosts: tuple[tuple[int, ...], ...]
    ancillas: Mapping[int, str]
    info: Mapping[str, object] = field(default_factory=dict)

    def roles(self) -> dict[int, Role]:
        out = {}
        for h in self.hosts:
            for v in h:
                out[v] = Role.COMPUTATIONAL
        for v, s in self.ancillas.items():
            out[v] = Role.ANCILLA_PLUS if s == PLUS else Role.ANCILLA_ZERO
        return out

    def consistent_with(self, graph: InteractionGraph) -> bool:
        """Designated graph roles must agree with this placement."""
        mine = self.roles()
        for v, r in enumerate(graph.roles):
            if r == Role.UNASSIGNED:
                continue
            if mine.get(v, Role.UNASSIGNED) != r:
                return False
        return True


def _side_neighbors(g: InteractionGraph, v: int, exclude, pendant_only: bool = False) -> list[int]:
    """Neighbours of ``v`` outside ``exclude``, degree-1 vertices first then by id."""
    cands = [w for w in g.neighbors(v) if w not in exclude]
    if pendant_only:
        cands = [w for w in cands if g.degree(w) == 1]
    return sorted(cands, key=lambda w: (g.degree(w) != 1, w))


def hair_comb_h_gadget(g: InteractionGraph, k: int, budget: int = DEFAULT_BUDGET,
                       pendant_only: bool = False) -> Iterator[Placement]:
    """A path of ``k`` vertices, each with an off-path ``|+>`` tooth (teeth may be shared)."""
    for path in PathSearch(g, k, budget):
        on = set(path)
        teeth = []
        for v in path:
            side = _side_neighbors(g, v, on, pendant_only)
            if not side:
                break
            teeth.append(side[0])
        else:
            yield Placement(Strategy.HAIR_COMB_H_GADGET, tuple((v,) for v in path),
                            {t: PLUS for t in teeth}, {"path": path, "teeth": tuple(teeth)})


def hair_comb_fswap_encoded(g: InteractionGraph, k: int, budget: int = DEFAULT_BUDGET) -> Iterator[Placement]:
    """A path of ``2k`` vertices; every odd-indexed one has an off-path ``|0>`` tooth."""
    for path in PathSearch(g, 2 * k, budget):
        on = set(path)
        teeth = {}
        for idx in range(1, 2 * k, 2):
            side = _side_neighbors(g, path[idx], on)
            if not side:
                break
            teeth[idx] = side[0]
        else:
            hosts = tuple((path[2 * s], path[2 * s + 1]) for s in range(k))
            yield Placement(Strategy.HAIR_COMB_FSWAP_ENCODED, hosts,
                            {t: ZERO for t in teeth.values()},
                            {"path": path, "teeth": tuple(teeth[i] for i in sorted(teeth))})


def _orient(cyc, start: int) -> tuple[int, ...]:
    i = cyc.index(start)
    rot = list(cyc[i:]) + list(cyc[:i])
    if len(rot) > 2 and rot[1] > rot[-1]:
        rot = [rot[0]] + rot[1:][::-1]
    return tuple(rot)


def cycle_rotation(g: InteractionGraph, k: int, budget: int = DEFAULT_BUDGET,
                   min_length: int | None = None) -> Iterator[Placement]:
    """A cycle with at least one spare vertex and an off-cycle ``|+>`` neighbour.

    Logical qubits fill the cycle contiguously from the attach vertex; the
    rest of the cycle holds ``|0>`` holes.
    """
    min_length = k + 1 if min_length is None else min_length
    cycles, _ = enumerate_cycles(g, budget)
    for cyc in sorted(cycles, key=lambda c: (len(c), sorted(c))):
        if len(cyc) < min_length:
            continue
        on = set(cyc)
        for attach in sorted(on):
            side = _side_neighbors(g, attach, on)
            if not side:
                continue
            ring = _orient(cyc, attach)
            anc = {v: ZERO for v in ring[k:]}
            anc[side[0]] = PLUS
            yield Placement(Strategy.CYCLE_ROTATION, tuple((v,) for v in ring[:k]), anc,
                            {"cycle": ring, "plus": side[0]})


def chain_center_shuttle(g: InteractionGraph, k: int, budget: int = DEFAULT_BUDGET) -> Iterator[Placement]:
    """A path of ``m`` vertices whose index ``c`` has a ``|+>`` pendant, ``k <= min(c+1, m-c)``."""
    for m in range(2 * k - 1, g.n + 1):
        for path in PathSearch(g, m, budget):
            on = set(path)
            centres = sorted(range(m), key=lambda c: (abs(2 * c - (m - 1)), c))
            for c in centres:
                if min(c + 1, m - c) < k:
                    continue
                side = _side_neighbors(g, path[c], on)
                if not side:
                    continue
                anc = {v: ZERO for v in path[k:]}
                anc[side[0]] = PLUS
                yield Placement(Strategy.CHAIN_CENTER_SHUTTLE, tuple((v,) for v in path[:k]), anc,
                                {"path": path, "centre": c, "plus": side[0]})


def chain_pendant_encoded(g: InteractionGraph, k: int, budget: int = DEFAULT_BUDGET) -> Iterator[Placement]:
    """A path ``beta, c1, ..., c_{2k}`` with a ``|+>`` vertex ``alpha`` hanging off ``c1``."""
    for path in PathSearch(g, 2 * k + 1, budget):
        on = set(path)
        side = _side_neighbors(g, path[1], on)
        if not side:
            continue
        alpha, beta = side[0], path[0]
        blocks = tuple((path[1 + 2 * s], path[2 + 2 * s]) for s in range(k))
        yield Placement(Strategy.CHAIN_PENDANT_ENCODED, blocks, {alpha: PLUS, beta: ZERO},
                        {"path": path, "alpha": alpha, "beta": beta})


def ancilla_connectable_set(g: InteractionGraph, size: int) -> list[int]:
    """Greedy pick by (degree, id) keeping the rest connected and adjacent to every pick."""
    chosen: list[int] = []
    for v in sorted(range(g.n), key=lambda x: (g.degree(x), x)):
        if len(chosen) == size:
            break
        trial = chosen + [v]
        rest = set(range(g.n)) - set(trial)
        if not rest or not g.is_connected(exclude=trial):
            continue
        if all(any(w in rest for w in g.neighbors(x)) for x in trial):
            chosen = trial
    return chosen


def star_hub_tree_leaves(g: InteractionGraph, k: int, budget: int = DEFAULT_BUDGET) -> Iterator[Placement]:
    """``k`` computational vertices plus one ``|+>`` site, all touching one connected ``|0>`` sea."""
    chosen = ancilla_connectable_set(g, k + 1)
    if len(chosen) < k + 1:
        return
    plus = chosen[0]
    anc = {v: ZERO for v in range(g.n) if v not in chosen}
    anc[plus] = PLUS
    yield Placement(Strategy.STAR_HUB_BINARY_TREE_LEAVES, tuple((v,) for v in chosen[1:]), anc,
                    {"plus": plus, "set": tuple(chosen)})


def wheel_hub(g: InteractionGraph, k: int, budget: int = DEFAULT_BUDGET) -> Iterator[Placement]:
    """A hub adjacent to every vertex of a rim cycle with at least ``k + 1`` vertices."""
    for hub in sorted(range(g.n), key=lambda v: (-g.degree(v), v)):
        nbrs = list(g.neighbors(hub))
        if len(nbrs) < max(3, k + 1):
            continue
        index = {v: i for i, v in enumerate(nbrs)}
        sub = InteractionGraph(len(nbrs), frozenset((index[u], index[v]) for u, v in g.edges
                                                    if u in index and v in index))
        cycles, _ = enumerate_cycles(sub, budget)
        rims = sorted((tuple(nbrs[i] for i in c) for c in cycles if len(c) >= k + 1),
                      key=lambda c: (len(c), sorted(c)))
        for rim in rims:
            ring = _orient(rim, min(rim))
            anc = {v: ZERO for v in ring[k:]}
            anc[hub] = PLUS
            yield Placement(Strategy.WHEEL_HUB, tuple((v,) for v in ring[:k]), anc,
                            {"cycle": ring, "plus": hub})


FINDERS = {
    Strategy.HAIR_COMB_H_GADGET: hair_comb_h_gadget,
    Strategy.HAIR_COMB_FSWAP_ENCODED: hair_comb_fswap_encoded,
    Strategy.CYCLE_ROTATION: cycle_rotation,
    Strategy.CHAIN_CENTER_SHUTTLE: chain_center_shuttle,
    Strategy.CHAIN_PENDANT_ENCODED: chain_pendant_encoded,
    Strategy.STAR_HUB_BINARY_TREE_LEAVES: star_hub_tree_leaves,
    Strategy.WHEEL_HUB: wheel_hub,
}

PRECONDITIONS = {
    Strategy.HAIR_COMB_H_GADGET: "a path of k vertices, each with an off-path |+> neighbour",
    Strategy.HAIR_COMB_FSWAP_ENCODED: "a path of 2k vertices whose odd positions have off-path |0> teeth",
    Strategy.CYCLE_ROTATION: "a cycle of at least k+1 vertices with an off-cycle |+> neighbour",
    Strategy.CHAIN_CENTER_SHUTTLE: "a path with a |+> pendant at index c where k <= min(c+1, m-c)",
    Strategy.CHAIN_PENDANT_ENCODED: "a path of 2k+1 vertices with a pendant on its second vertex",
    Strategy.STAR_HUB_BINARY_TREE_LEAVES: "k+1 vertices touching a connected remainder of |0> holes",
    Strategy.WHEEL_HUB: "a hub adjacent to every vertex of a cycle of at least k+1 vertices",
}


def find_placement(g: InteractionGraph, k: int, strategy: Strategy,
                   budget: int = DEFAULT_BUDGET) -> Placement | None:
    """First candidate consistent with the graph's designated roles, or ``None``."""
    for p in FINDERS[Strategy(strategy)](g, k, budget):
        if p.consistent_with(g):
            return p
    return None
