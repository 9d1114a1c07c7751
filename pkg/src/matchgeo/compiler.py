"""Compile logical circuits onto interaction graphs.

A router per strategy turns each logical gate into nearest-neighbour
matchgates.  Every emitted application is tagged with the index of the logical
gate that caused it.  Strategies that shuttle states (cycle, chain) leave the
register wherever the last gate put it; the schedule records the final hosts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .circuits import LogicalCircuit, LogicalGate, cz_as_matchgates, lower
from .errors import CompilationError, MatchgeoError, TopologyError
from .gadgets import (
    GateSequence,
    HSlot,
    appendix_cz_procedure,
    block_swap,
    bring_adjacent,
    encoded_cz_nnn,
    fswap_gadget,
    move_state,
    swap_via_matchgates_and_h,
)
from .gates import G_HH, H, TwoQubitGate, g_rz, is_matchgate, logical_gate, rz
from .graphs import InteractionGraph, Role, find_t_structures
from .placement import (
    AUTO_ORDER,
    DEFAULT_BUDGET,
    PLUS,
    PRECONDITIONS,
    ZERO,
    Placement,
    Strategy,
    find_placement,
)
from .statevector import GateApplication


@dataclass(frozen=True)
class PhysicalSchedule:
    """Oriented matchgate program on ``graph`` plus initial and final layouts.

    ``provenance[i]`` is the logical gate index that produced ``ops[i]``.
    Hosts are one vertex per logical qubit, or two for 2-to-1 encoded ones.
    """

    graph: InteractionGraph
    strategy: str
    k: int
    initial_hosts: tuple[tuple[int, ...], ...]
    final_hosts: tuple[tuple[int, ...], ...]
    initial_ancillas: Mapping[int, str]
    final_ancillas: Mapping[int, str]
    ops: tuple[GateApplication, ...] = ()
    provenance: tuple[int, ...] = ()
    logical_kinds: tuple[str, ...] = ()
    info: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.ops) != len(self.provenance):
            raise MatchgeoError("every operation needs exactly one provenance tag")
        for app in self.ops:
            if not self.graph.has_edge(*app.pair):
                raise TopologyError(f"scheduled gate on {app.pair} is not an edge")

    def invalid_gates(self) -> list[int]:
        """Indices of operations that are not unitary matchgates (only possible for loaded files)."""
        return [i for i, app in enumerate(self.ops) if not is_matchgate(app.gate.matrix)]

    def roles(self) -> dict[int, Role]:
        out = {v: Role.COMPUTATIONAL for h in self.initial_hosts for v in h}
        for v, s in self.initial_ancillas.items():
            out[v] = Role.ANCILLA_PLUS if s == PLUS else Role.ANCILLA_ZERO
        return out

    @property
    def layout_restored(self) -> bool:
        return self.initial_hosts == self.final_hosts

    def __len__(self) -> int:
        return len(self.ops)


# -- routers --------------------------------------------------------------------

class _Router:
    """Shared emission machinery; subclasses place and move states."""

    native_mg = True

    def __init__(self, graph: InteractionGraph, placement: Placement):
        self.g = graph
        self.p = placement
        self.ops: list[GateApplication] = []
        self.prov: list[int] = []
        self.current = -1
        self.known = set(placement.ancillas) | {v for h in placement.hosts for v in h}

    def emit(self, items) -> None:
        if isinstance(items, GateApplication):
            items = [items]
        for app in items:
            if not self.g.has_edge(*app.pair):
                raise CompilationError(f"internal routing produced non-edge {app.pair}")
            self.ops.append(app)
            self.prov.append(self.current)

    def run(self, idx: int, gate: LogicalGate) -> None:
        self.current = idx
        q = gate.qubits
        if gate.kind == "H":
            self.h(q[0])
        elif gate.kind == "RZ":
            self.rz(q[0], gate.theta)
        elif gate.kind == "CZ":
            self.cz(*q)
        else:
            self.mg(q[0], q[1], gate.gate)

    def anchor(self, v: int) -> int:
        """A neighbour to pair with for a gate acting as ``U (x) I``."""
        nb = [w for w in self.g.neighbors(v) if w in self.known]
        return min(nb) if nb else min(self.g.neighbors(v))

    def cz(self, a: int, b: int) -> None:
        for g in cz_as_matchgates(a, b):
            if g.kind == "H":
                self.h(g.qubits[0])
            elif g.kind == "RZ":
                self.rz(g.qubits[0], g.theta)
            else:
                self.mg(g.qubits[0], g.qubits[1], g.gate)

    def final_hosts(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.p.hosts)

    def final_ancillas(self) -> dict[int, str]:
        return dict(self.p.ancillas)


class _TokenRouter(_Router):
    """Single-vertex hosts; ``host`` maps logical qubit to its current vertex."""

    def host(self, t: int) -> int:
        raise NotImplementedError

    def rz(self, t: int, theta: float) -> None:
        v = self.host(t)
        self.emit(GateApplication(g_rz(theta), (v, self.anchor(v)), "rz"))

    def adjacent(self, a: int, b: int) -> None:
        raise NotImplementedError

    def mg(self, a: int, b: int, gate: TwoQubitGate, label: str = "payload") -> None:
        self.adjacent(a, b)
        self.emit(GateApplication(gate, (self.host(a), self.host(b)), label))

    def exchange(self, a: int, b: int) -> None:
        raise NotImplementedError

    def swap_tokens(self, a: int, b: int) -> None:
        """Exchange two adjacent logical states with matchgates and Hadamards, then relabel."""
        for item in swap_via_matchgates_and_h():
            if isinstance(item, HSlot):
                self.h((a, b)[item.operand])
            else:
                self.mg(a, b, item, "swap")
        self.exchange(a, b)

    def final_hosts(self):
        return tuple((self.host(t),) for t in range(len(self.p.hosts)))


class _HairCombRouter(_TokenRouter):
    """Logical qubits on a path, each with a ``|+>`` tooth; distant pairs meet by SWAPs."""

    def __init__(self, graph, placement):
        super().__init__(graph, placement)
        self.path = placement.info["path"]
        self.teeth = placement.info["teeth"]
        self.order = list(range(len(self.path)))  # position -> token

    def host(self, t):
        return self.path[self.order.index(t)]

    def h(self, t):
        i = self.order.index(t)
        self.emit(GateApplication(G_HH, (self.path[i], self.teeth[i]), "h-gadget"))

    def rz(self, t, theta):
        i = self.order.index(t)
        self.emit(GateApplication(g_rz(theta), (self.path[i], self.teeth[i]), "rz"))

    def exchange(self, a, b):
        i, j = self.order.index(a), self.order.index(b)
        self.order[i], self.order[j] = b, a

    def adjacent(self, a, b):
        pass

    def mg(self, a, b, gate, label="payload"):
        walked = []
        while abs(self.order.index(a) - self.order.index(b)) > 1:
            i = self.order.index(a)
            step = 1 if self.order.index(b) > i else -1
            other = self.order[i + step]
            self.swap_tokens(a, other)
            walked.append(other)
        self.emit(GateApplication(gate, (self.host(a), self.host(b)), label))
        for other in reversed(walked):
            self.swap_tokens(a, other)


class _RingRouter(_TokenRouter):
    """Contiguous block of states on a cycle; the rest of the cycle is ``|0>``."""

    def __init__(self, graph, placement):
        super().__init__(graph, placement)
        self.ring = placement.info["cycle"]
        self.plus = placement.info["plus"]
        self.L = len(self.ring)
        self.k = len(placement.hosts)
        self.start = 0
        self.order = list(range(self.k))

    def at(self, pos: int) -> int:
        return self.ring[pos % self.L]

    def host(self, t):
        return self.at(self.start + self.order.index(t))

    def rotate(self, direction: int) -> None:
        s, k = self.start, self.k
        if direction > 0:
            for p in range(s + k - 1, s - 1, -1):
                self.emit(move_state(self.g, [self.at(p), self.at(p + 1)]).apps)
            self.start += 1
        else:
            for p in range(s, s + k):
                self.emit(move_state(self.g, [self.at(p), self.at(p - 1)]).apps)
            self.start -= 1

    def bring_to_attach(self, t: int) -> None:
        fwd = (-(self.start + self.order.index(t))) % self.L
        back = self.L - fwd
        for _ in range(fwd if fwd <= back else back):
            self.rotate(1 if fwd <= back else -1)

    def h(self, t):
        self.bring_to_attach(t)
        self.emit(GateApplication(G_HH, (self.ring[0], self.plus), "h-gadget"))

    def exchange(self, a, b):
        i, j = self.order.index(a), self.order.index(b)
        self.order[i], self.order[j] = b, a

    def adjacent(self, a, b):
        i, j = self.order.index(a), self.order.index(b)
        if abs(i - j) == 1:
            return
        if {i, j} == {0, self.k - 1}:
            # carry the block's first state backwards round the holes to the far end
            s = self.start
            walk = [self.at(s - d) for d in range(self.L - self.k + 1)]
            self.emit(move_state(self.g, walk).apps)
            self.start += 1
            self.order = self.order[1:] + self.order[:1]
            return
        while abs(self.order.index(a) - self.order.index(b)) > 1:
            j = self.order.index(b)
            toward = j - 1 if self.order.index(a) < j else j + 1
            self.swap_tokens(b, self.order[toward])

    def final_ancillas(self):
        anc = {self.at(self.start + d): ZERO for d in range(self.k, self.L)}
        anc[self.plus] = PLUS
        return anc


class _WheelRouter(_RingRouter):
    """Rim cycle with a shared ``|+>`` hub: every rim vertex has a Hadamard site."""

    def h(self, t):
        self.emit(GateApplication(G_HH, (self.host(t), self.plus), "h-gadget"))


class _ChainRouter(_TokenRouter):
    """States shuttle along a path; the ``|+>`` pendant hangs off index ``centre``."""

    def __init__(self, graph, placement):
        super().__init__(graph, placement)
        self.path = placement.info["path"]
        self.c = placement.info["centre"]
        self.plus = placement.info["plus"]
        self.k = len(placement.hosts)
        self.order = list(range(self.k))  # left-to-right tokens
        self.pos = {t: t for t in range(self.k)}

    def host(self, t):
        return self.path[self.pos[t]]

    def move(self, t: int, target: int) -> None:
        src = self.pos[t]
        if src == target:
            return
        step = 1 if target > src else -1
        walk = [self.path[x] for x in range(src, target + step, step)]
        self.emit(move_state(self.g, walk).apps)
        self.pos[t] = target

    def h(self, t):
        j = self.order.index(t)
        tgt = {}
        for i, tok in enumerate(self.order):
            if i < j:
                tgt[tok] = min(self.pos[tok], self.c - (j - i))
            elif i > j:
                tgt[tok] = max(self.pos[tok], self.c + (i - j))
        for tok in reversed(self.order[j + 1:]):
            self.move(tok, tgt[tok])
        for tok in self.order[:j]:
            self.move(tok, tgt[tok])
        self.move(t, self.c)
        self.emit(GateApplication(G_HH, (self.path[self.c], self.plus), "h-gadget"))

    def exchange(self, a, b):
        i, j = self.order.index(a), self.order.index(b)
        self.order[i], self.order[j] = b, a
        self.pos[a], self.pos[b] = self.pos[b], self.pos[a]

    def adjacent(self, a, b):
        while abs(self.order.index(a) - self.order.index(b)) > 1:
            j = self.order.index(b)
            toward = j - 1 if self.order.index(a) < j else j + 1
            self.swap_tokens(b, self.order[toward])
        self._close(a, b)

    def _close(self, a, b):
        left, right = sorted((a, b), key=lambda t: self.pos[t])
        self.move(left, self.pos[right] - 1)

    def final_ancillas(self):
        used = set(self.pos.values())
        anc = {self.path[x]: ZERO for x in range(len(self.path)) if x not in used}
        anc[self.plus] = PLUS
        return anc


class _StarRouter(_TokenRouter):
    """Hole-sea routing: states travel through the connected ``|0>`` remainder and back."""

    def __init__(self, graph, placement):
        super().__init__(graph, placement)
        self.plus = placement.info["plus"]
        self.layout = {v: s for v, s in placement.ancillas.items()}
        for t, (v,) in enumerate(placement.hosts):
            self.layout[v] = t

    def host(self, t):
        return next(v for v, tok in self.layout.items() if tok == t)

    def h(self, t):
        v = self.host(t)
        if self.g.has_edge(v, self.plus):
            self.emit(GateApplication(G_HH, (v, self.plus), "h-gadget"))
            return
        seq, moved, back = bring_adjacent(self.g, self.layout, t, PLUS)
        self.emit(seq.apps)
        self.emit(GateApplication(G_HH, (next(u for u, x in moved.items() if x == t), self.plus),
                                  "h-gadget"))
        self.emit(back.apps)

    def mg(self, a, b, gate, label="payload"):
        seq, moved, back = bring_adjacent(self.g, self.layout, a, b)
        self.emit(seq.apps)
        where = {x: u for u, x in moved.items()}
        self.emit(GateApplication(gate, (where[a], where[b]), label))
        self.emit(back.apps)


class _EncodedRouter(_Router):
    """2-to-1 encoded blocks in slots along a path; CZ needs neighbouring slots."""

    native_mg = False

    def __init__(self, graph, placement):
        super().__init__(graph, placement)
        self.slots = list(range(len(placement.hosts)))  # slot -> token

    def block(self, slot: int) -> tuple[int, int]:
        raise NotImplementedError

    def h(self, t):
        self.emit(GateApplication(logical_gate(H), self.block(self.slots.index(t)), "logical"))

    def rz(self, t, theta):
        self.emit(GateApplication(logical_gate(rz(theta)), self.block(self.slots.index(t)), "logical"))

    def mg(self, a, b, gate):
        raise CompilationError("encoded strategies lower matchgates before routing")

    def swap_slots(self, s: int) -> None:
        (p0, p1), (p2, p3) = self.block(s), self.block(s + 1)
        self.emit(block_swap((p0, p1, p2, p3), self.g).apps)
        self.slots[s], self.slots[s + 1] = self.slots[s + 1], self.slots[s]

    def gather(self, a: int, b: int, into: int) -> list[int]:
        """Move ``a`` to slot ``into`` and ``b`` to ``into + 1``; returns the swaps made."""
        done = []
        for tok, dest in ((a, into), (b, into + 1)):
            while self.slots.index(tok) > dest:
                s = self.slots.index(tok) - 1
                self.swap_slots(s)
                done.append(s)
            while self.slots.index(tok) < dest:
                s = self.slots.index(tok)
                self.swap_slots(s)
                done.append(s)
        return done

    def undo(self, done: Sequence[int]) -> None:
        for s in reversed(done):
            self.swap_slots(s)


class _FswapEncodedRouter(_EncodedRouter):
    def __init__(self, graph, placement):
        super().__init__(graph, placement)
        self.path = placement.info["path"]
        self.teeth = placement.info["teeth"]

    def block(self, slot):
        return self.path[2 * slot], self.path[2 * slot + 1]

    def cz(self, a, b):
        first, second = sorted((a, b), key=self.slots.index)
        into = self.slots.index(first)
        done = self.gather(first, second, into)
        quad = self.path[2 * into: 2 * into + 4]
        self.emit(encoded_cz_nnn(quad, self.teeth[into], self.g).apps)
        self.undo(done)


class _PendantEncodedRouter(_EncodedRouter):
    def __init__(self, graph, placement):
        super().__init__(graph, placement)
        self.path = placement.info["path"]
        self.alpha = placement.info["alpha"]
        self.beta = placement.info["beta"]

    def block(self, slot):
        return self.path[1 + 2 * slot], self.path[2 + 2 * slot]

    def cz(self, a, b):
        first, second = sorted((a, b), key=self.slots.index)
        done = self.gather(first, second, 0)
        self.emit(appendix_cz_procedure(self.g, self.path[1:5], self.alpha, self.beta).apps)
        self.undo(done)


ROUTERS = {
    Strategy.HAIR_COMB_H_GADGET: _HairCombRouter,
    Strategy.HAIR_COMB_FSWAP_ENCODED: _FswapEncodedRouter,
    Strategy.CYCLE_ROTATION: _RingRouter,
    Strategy.CHAIN_CENTER_SHUTTLE: _ChainRouter,
    Strategy.CHAIN_PENDANT_ENCODED: _PendantEncodedRouter,
    Strategy.STAR_HUB_BINARY_TREE_LEAVES: _StarRouter,
    Strategy.WHEEL_HUB: _WheelRouter,
}


def _info(strategy: Strategy, placement: Placement, circuit: LogicalCircuit) -> dict[str, int]:
    if strategy in (Strategy.CYCLE_ROTATION, Strategy.WHEEL_HUB):
        return {"cycle_length": len(placement.info["cycle"])}
    if strategy == Strategy.CHAIN_CENTER_SHUTTLE:
        return {"chain_length": len(placement.info["path"])}
    if strategy == Strategy.HAIR_COMB_H_GADGET:
        nn = all(g.kind in ("RZ", "H") or (g.kind == "MG" and abs(g.qubits[0] - g.qubits[1]) == 1)
                 for g in circuit.gates)
        return {"nn_model": int(nn), "distinct_teeth": int(len(set(placement.info["teeth"])) == circuit.k)}
    return {}


def compile_with(circuit: LogicalCircuit, graph: InteractionGraph, placement: Placement) -> PhysicalSchedule:
    """Route ``circuit`` for a fixed placement."""
    if len(placement.hosts) != circuit.k:
        raise CompilationError(f"placement hosts {len(placement.hosts)} qubits, circuit needs {circuit.k}")
    strategy = Strategy(placement.strategy)
    router = ROUTERS[strategy](graph, placement)
    try:
        for idx, gate in lower(circuit, router.native_mg):
            router.run(idx, gate)
    except CompilationError:
        raise
    except MatchgeoError as exc:
        raise CompilationError(f"{strategy.value}: routing failed: {exc}") from exc
    return PhysicalSchedule(
        graph=graph,
        strategy=strategy.value,
        k=circuit.k,
        initial_hosts=tuple(placement.hosts),
        final_hosts=router.final_hosts(),
        initial_ancillas=dict(sorted(placement.ancillas.items())),
        final_ancillas=dict(sorted(router.final_ancillas().items())),
        ops=tuple(router.ops),
        provenance=tuple(router.prov),
        logical_kinds=tuple(g.kind for g in circuit.gates),
        info=_info(strategy, placement, circuit),
    )


def compile(circuit: LogicalCircuit, graph: InteractionGraph, strategy="auto",
            placement: Placement | None = None, budget: int = DEFAULT_BUDGET):
    """Compile and account resources; returns ``(schedule, report)``.

    ``strategy`` is a :class:`Strategy`, its name, or ``"auto"`` (first
    applicable in the fixed order).
    """
    from .resources import count_resources

    if placement is None:
        if isinstance(strategy, str) and strategy.lower() == "auto":
            candidates = AUTO_ORDER
        else:
            try:
                candidates = (Strategy(strategy),)
            except ValueError:
                raise CompilationError(f"unknown strategy {strategy!r}") from None
        failures = []
        for s in candidates:
            placement = find_placement(graph, circuit.k, s, budget)
            if placement is not None:
                break
            failures.append(f"{s.value}: needs {PRECONDITIONS[s]}")
        else:
            head = "no applicable strategy" if len(candidates) > 1 else "strategy not applicable"
            raise CompilationError(f"{head} for k={circuit.k}: " + "; ".join(failures))
    schedule = compile_with(circuit, graph, placement)
    return schedule, count_resources(schedule)


def simulate_nnn_gate(graph: InteractionGraph, i: int, gate: TwoQubitGate, j: int | None = None) -> GateSequence:
    """Matchgate on ``(i, i+2)`` of a backbone through the ``|0>`` tooth of ``i+1``.

    Four f-SWAPs and one payload gate.
    """
    j = i + 2 if j is None else j
    if j != i + 2:
        raise TopologyError("only next-nearest pairs (i, i+2) are supported")
    mid = i + 1
    teeth = [t.pendant for t in find_t_structures(graph) if t.spine == mid and t.pendant not in (i, j)]
    if not teeth:
        raise TopologyError(f"vertex {mid} has no pendant to use as a |0> hole")
    return fswap_gadget(i, mid, j, teeth[0], gate, graph)
