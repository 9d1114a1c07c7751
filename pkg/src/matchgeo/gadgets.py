"""Gate sequences built only from nearest-neighbour matchgates.

Every constructor returns a :class:`GateSequence`: a left-to-right program of
oriented gate applications plus the ancilla clamps under which it does its
job.  Operator products written right-to-left are transcribed so that the
rightmost factor runs first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping, Sequence

import numpy as np

from .errors import ConfigurationError, RoutingError, TopologyError, ValidationError
from .gates import (
    FSWAP,
    G_HH,
    G_XX,
    H,
    TwoQubitGate,
    is_matchgate,
    logical_gate,
    rz_pair,
    xx_rotation,
)
from .graphs import InteractionGraph, shortest_path
from .statevector import GateApplication

ZERO = "0"
PLUS = "+"


@dataclass(frozen=True)
class GateSequence:
    apps: tuple[GateApplication, ...] = ()
    clamps: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "apps", tuple(self.apps))
        object.__setattr__(self, "clamps", dict(self.clamps))
        for app in self.apps:
            if not app.gate.matchgate:
                raise ValidationError(f"non-matchgate {app.gate!r} in sequence at {app.pair}")

    def __len__(self) -> int:
        return len(self.apps)

    def __iter__(self):
        return iter(self.apps)

    def __add__(self, other: "GateSequence") -> "GateSequence":
        clamps = dict(self.clamps)
        clamps.update(other.clamps)
        return GateSequence(self.apps + other.apps, clamps)

    def reversed_inverse(self) -> "GateSequence":
        """Inverse program: reversed order, each gate conjugate-transposed."""
        inv = []
        for app in reversed(self.apps):
            m = app.gate.matrix.conj().T
            g = app.gate if np.array_equal(m, app.gate.matrix) else TwoQubitGate(m, name=app.gate.name + "^-1")
            inv.append(GateApplication(g, app.pair, app.label))
        return GateSequence(inv, self.clamps)

    def fswap_count(self) -> int:
        return sum(1 for a in self.apps if np.array_equal(a.gate.matrix, FSWAP.matrix))

    def check_edges(self, graph: InteractionGraph) -> None:
        for app in self.apps:
            if not graph.has_edge(*app.pair):
                raise TopologyError(f"gate on {app.pair} but the graph has no such edge")


def _f(u: int, v: int, label: str = "route") -> GateApplication:
    return GateApplication(FSWAP, (u, v), label)


def _require_edges(graph: InteractionGraph | None, pairs) -> None:
    if graph is None:
        return
    for u, v in pairs:
        if not graph.has_edge(u, v):
            raise TopologyError(f"gadget needs edge {{{u},{v}}}")


def _require_matchgate(g: TwoQubitGate) -> None:
    if not is_matchgate(g):
        raise ValidationError("gadget payload must be a matchgate")


def fswap_gadget(i_prev: int, i: int, i_next: int, ancilla: int, g: TwoQubitGate,
                 graph: InteractionGraph | None = None) -> GateSequence:
    """Next-nearest-neighbour ``g`` on ``(i_prev, i_next)`` through a ``|0>`` pendant on ``i``.

    Program: hide ``i`` in the ancilla, slide ``i_prev`` onto ``i``, apply ``g``
    on ``(i, i_next)``, then undo.  Five gates, four of them f-SWAPs.
    """
    _require_matchgate(g)
    _require_edges(graph, [(ancilla, i), (i, i_prev), (i, i_next)])
    apps = [
        _f(ancilla, i, "gadget"),
        _f(i, i_prev, "gadget"),
        GateApplication(g, (i, i_next), "gadget-payload"),
        _f(i, i_prev, "gadget"),
        _f(ancilla, i, "gadget"),
    ]
    return GateSequence(apps, {ancilla: ZERO})


def third_neighbor_gadget(chain_ids: Sequence[int], ancillas: Sequence[int], g: TwoQubitGate,
                          graph: InteractionGraph | None = None) -> GateSequence:
    """``g`` on the chain ends ``(c0, c3)`` of ``c0-c1-c2-c3`` using ``|0>`` pendants on c1, c2.

    Eight f-SWAPs and one payload gate.
    """
    _require_matchgate(g)
    c0, c1, c2, c3 = chain_ids
    a1, a2 = ancillas
    _require_edges(graph, [(a1, c1), (a2, c2), (c0, c1), (c1, c2), (c2, c3)])
    hide = [
        _f(a1, c1, "gadget"),
        _f(c1, c0, "gadget"),
        _f(a2, c2, "gadget"),
        _f(c2, c1, "gadget"),
    ]
    apps = hide + [GateApplication(g, (c2, c3), "gadget-payload")] + hide[::-1]
    return GateSequence(apps, {a1: ZERO, a2: ZERO})


def h_gadget(i: int, ancilla: int, graph: InteractionGraph | None = None) -> GateSequence:
    """Hadamard on ``i`` as ``G(H, H)`` on ``(i, ancilla)`` with the ancilla in ``|+>``."""
    _require_edges(graph, [(i, ancilla)])
    return GateSequence([GateApplication(G_HH, (i, ancilla), "h-gadget")], {ancilla: PLUS})


def hole_route(graph: InteractionGraph, hole_at: int, path: Sequence[int]) -> tuple[GateSequence, int]:
    """Walk the ``|0>`` hole along ``path``; every other state on it steps back by one.

    Returns the sequence and the final hole position.
    """
    if not path or path[0] != hole_at:
        raise ValidationError("path must start at the hole")
    _require_edges(graph, zip(path, path[1:]))
    apps = [_f(a, b) for a, b in zip(path, path[1:])]
    return GateSequence(apps, {hole_at: ZERO}), path[-1]


def move_state(graph: InteractionGraph, path: Sequence[int], label: str = "route") -> GateSequence:
    """Carry the state at ``path[0]`` to ``path[-1]``; every later vertex must hold ``|0>``."""
    _require_edges(graph, zip(path, path[1:]))
    return GateSequence([_f(a, b, label) for a, b in zip(path, path[1:])],
                        {v: ZERO for v in path[1:]})


Layout = Mapping[int, Hashable]


def bring_adjacent(graph: InteractionGraph, layout: Layout, qubit_a: Hashable, qubit_b: Hashable):
    """Slide ``qubit_a``'s state through holes until it neighbours ``qubit_b``.

    ``layout`` maps vertex -> token, with :data:`ZERO` marking holes.  Returns
    ``(sequence, new_layout, inverse_sequence)``; the inverse restores the
    original placement.
    """
    where = {tok: v for v, tok in layout.items()}
    try:
        va, vb = where[qubit_a], where[qubit_b]
    except KeyError as exc:
        raise RoutingError(f"token {exc.args[0]!r} not in layout") from None
    if graph.has_edge(va, vb):
        return GateSequence(), dict(layout), GateSequence()
    blocked = [v for v, tok in layout.items() if tok != ZERO and v not in (va, vb)]
    blocked += [v for v in range(graph.n) if v not in layout]
    try:
        path = shortest_path(graph, va, vb, avoid=blocked)
    except RoutingError:
        raise RoutingError(
            f"no path of |0> holes joins {qubit_a!r}@{va} and {qubit_b!r}@{vb}") from None
    walk = path[:-1]
    seq = move_state(graph, walk)
    new = dict(layout)
    new[va], new[walk[-1]] = ZERO, qubit_a
    inverse = move_state(graph, walk[::-1])
    return seq, new, inverse


# -- 2-to-1 encoding ----------------------------------------------------------

def encode_logical(blocks: Sequence[tuple[int, int]], bits: Sequence[int],
                   graph: InteractionGraph | None = None) -> GateSequence:
    """Prepare ``|b>_L`` per block from ``|00>``; ``|1>_L = |11>`` via ``G(X, X)``."""
    if len(blocks) != len(bits):
        raise ValidationError("one bit per block")
    _require_edges(graph, blocks)
    apps = [GateApplication(G_XX, tuple(blk), "encode") for blk, b in zip(blocks, bits) if b]
    return GateSequence(apps)


def logical_single(block: tuple[int, int], a, graph: InteractionGraph | None = None) -> GateSequence:
    """Logical single-qubit gate ``A`` as ``G(A, A)`` on the block."""
    _require_edges(graph, [block])
    return GateSequence([GateApplication(logical_gate(a), tuple(block), "logical")])


def logical_swap_through(psi_vertex: int, block_pair: tuple[int, int],
                         graph: InteractionGraph | None = None) -> GateSequence:
    """Move the state at ``psi_vertex`` through an encoded block.

    ``psi_vertex`` neighbours ``block_pair[0]``.  Afterwards the block sits on
    ``(psi_vertex, block_pair[0])`` and the state on ``block_pair[1]``.  The
    f-SWAP sign appears either never or twice, so no phase is left behind.
    """
    b1, b2 = block_pair
    _require_edges(graph, [(psi_vertex, b1), (b1, b2)])
    return GateSequence([_f(psi_vertex, b1, "swap-through"), _f(b1, b2, "swap-through")])


def block_swap(path: Sequence[int], graph: InteractionGraph | None = None) -> GateSequence:
    """Exchange two adjacent encoded blocks on ``path = (p0, p1, p2, p3)``.

    Two swap-throughs, four f-SWAPs; exact on the encoded subspace.
    """
    p0, p1, p2, p3 = path
    return logical_swap_through(p2, (p1, p0), graph) + logical_swap_through(p3, (p2, p1), graph)


# -- SWAP and CZ from matchgates plus Hadamards ----------------------------------

@dataclass(frozen=True)
class HSlot:
    """Placeholder for a Hadamard on operand 0 or 1 of the template edge."""

    operand: int


def swap_via_matchgates_and_h() -> tuple:
    """SWAP on one oriented edge as matchgates and marked Hadamard slots.

    ``SWAP = FSWAP . CZ`` with ``CZ ~ (Rz(pi/2) x Rz(pi/2)) (H x H) exp(i pi/4 XX) (H x H)``.
    Items run left to right; equality with SWAP holds up to a global phase.
    """
    return (
        HSlot(0), HSlot(1),
        xx_rotation(np.pi / 4),
        HSlot(0), HSlot(1),
        rz_pair(np.pi / 2, np.pi / 2),
        FSWAP,
    )


def template_matrix(template, with_h: bool = True) -> np.ndarray:
    """4x4 operator of a template; with ``with_h=False`` the H slots are dropped."""
    h0 = np.kron(H, np.eye(2))
    h1 = np.kron(np.eye(2), H)
    m = np.eye(4, dtype=complex)
    for item in template:
        if isinstance(item, HSlot):
            if with_h:
                m = (h0 if item.operand == 0 else h1) @ m
        else:
            m = item.matrix @ m
    return m


HProvider = Callable[[tuple[int, ...]], GateSequence]


def expand_template(template, pair: tuple[int, int], h_provider: HProvider,
                    label: str = "template") -> GateSequence:
    """Realise a template on ``pair``; runs of H slots are batched into one provider call."""
    out = GateSequence()
    pending: list[int] = []
    for item in list(template) + [None]:
        if isinstance(item, HSlot):
            v = pair[item.operand]
            if v not in pending:
                pending.append(v)
            continue
        if pending:
            out = out + h_provider(tuple(pending))
            pending = []
        if item is not None:
            out = out + GateSequence([GateApplication(item, pair, label)])
    return out


def controlz_template() -> tuple:
    """``CZ = G(H,H) G(X,X) SWAP G(H,H)`` on the interface pair, SWAP expanded.

    Items run left to right, so the rightmost operator factor comes first.
    """
    return (G_HH,) + swap_via_matchgates_and_h() + (G_XX, G_HH)


def encoded_cz_sequence(interface: tuple[int, int], h_provider: HProvider) -> GateSequence:
    """Physical CZ on ``interface`` (one qubit of each logical block): logical CZ on the code.

    ``interface[0]`` belongs to the first logical qubit.  ``h_provider`` must
    apply a Hadamard to each listed vertex and leave every other state in place.
    """
    return expand_template(controlz_template(), tuple(interface), h_provider)


def local_h_provider(plus_of: Mapping[int, int]) -> HProvider:
    """Provider for vertices that each neighbour a dedicated or shared ``|+>`` ancilla."""
    def provide(vertices):
        seq = GateSequence()
        for v in vertices:
            seq = seq + h_gadget(v, plus_of[v])
        return seq
    return provide


def encoded_cz_nnn(path: Sequence[int], tooth: int, graph: InteractionGraph | None = None) -> GateSequence:
    """Logical CZ between blocks ``(p0, p1)`` and ``(p2, p3)`` from f-SWAPs alone.

    A next-nearest f-SWAP on ``(p0, p2)`` through the ``|0>`` tooth of ``p1``
    crosses the two logical values once; two nearest-neighbour f-SWAPs restore
    the block order and cross them twice more, leaving ``(-1)^{xy}``.
    """
    p0, p1, p2, p3 = path
    _require_edges(graph, [(p0, p1), (p1, p2), (p2, p3)])
    return (fswap_gadget(p0, p1, p2, tooth, FSWAP, graph)
            + GateSequence([_f(p0, p1, "gadget-fix"), _f(p1, p2, "gadget-fix")]))


def appendix_cz_procedure(graph: InteractionGraph, chain_ids: Sequence[int], alpha: int, beta: int) -> GateSequence:
    """Logical CZ between blocks ``(c1, c2)`` and ``(c3, c4)`` next to a pendant.

    ``alpha`` holds ``|+>`` and ``beta`` holds ``|0>``; both neighbour ``c1``.
    Steps: pull the state of ``c3`` through the first block onto ``c1``; run
    the controlled-Z template on ``(c2, c1)``, shuttling ``c1``'s state into
    ``beta`` and the ``|+>`` onto ``c1`` whenever Hadamards are due; finally
    push everything back.  Ancillas end where and as they started.
    """
    c1, c2, c3, c4 = chain_ids
    for anc in (alpha, beta):
        if not graph.has_edge(anc, c1):
            raise ConfigurationError(f"ancilla {anc} must neighbour the interface vertex {c1}")
    if alpha == beta or alpha in chain_ids or beta in chain_ids:
        raise ConfigurationError("ancillas must be two distinct vertices off the blocks")
    _require_edges(graph, [(c1, c2), (c2, c3), (c3, c4)])

    interleave = GateSequence([_f(c3, c2, "swap-through"), _f(c2, c1, "swap-through")])

    def provider(vertices):
        into_h = [_f(beta, c1, "h-route"), _f(c1, alpha, "h-route")]
        back = [_f(c1, alpha, "h-route"), _f(beta, c1, "h-route")]
        hosts = {c1: beta, c2: c2}
        apps = list(into_h)
        for v in vertices:
            apps.append(GateApplication(G_HH, (hosts[v], c1), "h-gadget"))
        return GateSequence(apps + back)

    body = encoded_cz_sequence((c2, c1), provider)
    undo = GateSequence([_f(c2, c1, "swap-through"), _f(c3, c2, "swap-through")])
    return GateSequence((interleave + body + undo).apps, {alpha: PLUS, beta: ZERO})
