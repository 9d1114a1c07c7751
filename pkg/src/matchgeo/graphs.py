"""Interaction graphs, the named geometry families, and structure searches.

Vertex numbering per family is fixed so that schedules are reproducible:

* ``chain(n)``: ``0..n-1`` in order.
* ``triangular_ladder(n)``: chain ``0..n-1`` plus next-nearest edges ``{i, i+2}``.
* ``hair_comb(n)``: backbone ``0..n-1``; tooth of backbone vertex ``i`` is ``n+i``.
* ``cycle(n)``: ``0..n-1`` with the closing edge ``{n-1, 0}``.
* ``cycle_with_pendant(n, attach)``: cycle ``0..n-1``, pendant ``n`` on ``attach``.
* ``chain_with_pendant(n, attach)``: chain ``0..n-1``, pendant ``n`` on ``attach``.
* ``star(n)``: hub ``0``, leaves ``1..n-1``.
* ``wheel(n)``: hub ``0``, rim cycle ``1..n``.
* ``complete_binary_tree(depth)``: heap order, root ``0``, children ``2i+1, 2i+2``.
* ``square_lattice(w, h)``: vertex ``(x, y) -> y*w + x``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import RoutingError, ValidationError


class Role(str, enum.Enum):
    COMPUTATIONAL = "computational"
    ANCILLA_ZERO = "ancilla_zero"
    ANCILLA_PLUS = "ancilla_plus"
    UNASSIGNED = "unassigned"


@dataclass(frozen=True)
class TStructure:
    spine: int
    pendant: int


@dataclass(frozen=True)
class InteractionGraph:
    """Undirected simple graph on vertices ``0..n-1`` with per-vertex roles."""

    n: int
    edges: frozenset
    roles: tuple = field(default=())
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"vertex count must be a positive integer, got {self.n!r}")
        norm = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValidationError(f"edge {{{u},{v}}} out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))
        roles = tuple(Role(r) for r in self.roles) if self.roles else (Role.UNASSIGNED,) * self.n
        if len(roles) != self.n:
            raise ValidationError("role assignment must cover every vertex")
        object.__setattr__(self, "roles", roles)
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in sorted(norm):
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, roles: Mapping[int, str] | None = None,
                   name: str = "") -> "InteractionGraph":
        edge_list = [tuple(e) for e in edges]
        seen = set()
        for u, v in edge_list:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValidationError(f"duplicate edge {{{u},{v}}}")
            seen.add(key)
        role_tuple: tuple = ()
        if roles:
            rl = [Role.UNASSIGNED] * n
            for v, r in roles.items():
                if not 0 <= int(v) < n:
                    raise ValidationError(f"role given for unknown vertex {v}")
                rl[int(v)] = Role(r)
            role_tuple = tuple(rl)
        return cls(n, frozenset(edge_list), role_tuple, name)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def with_roles(self, roles: Mapping[int, Role]) -> "InteractionGraph":
        rl = [Role.UNASSIGNED] * self.n
        for v, r in roles.items():
            rl[v] = Role(r)
        return InteractionGraph(self.n, self.edges, tuple(rl), self.name)

    def is_connected(self, exclude: Iterable[int] = ()) -> bool:
        excl = set(exclude)
        rest = [v for v in range(self.n) if v not in excl]
        if not rest:
            return True
        return len(_bfs_component(self, rest[0], excl)) == len(rest)

    def __repr__(self) -> str:
        return f"InteractionGraph({self.name or 'graph'}, n={self.n}, |E|={len(self.edges)})"


def _bfs_component(g: InteractionGraph, start: int, excl: set) -> set:
    seen = {start}
    dq = deque([start])
    while dq:
        u = dq.popleft()
        for w in g.neighbors(u):
            if w not in seen and w not in excl:
                seen.add(w)
                dq.append(w)
    return seen


# -- families ---------------------------------------------------------------

def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValidationError(msg)


def chain(n: int) -> InteractionGraph:
    _need(n >= 1, "chain needs n >= 1")
    return InteractionGraph(n, frozenset((i, i + 1) for i in range(n - 1)), name=f"chain({n})")


def triangular_ladder(n: int) -> InteractionGraph:
    _need(n >= 3, "triangular_ladder needs n >= 3")
    e = {(i, i + 1) for i in range(n - 1)} | {(i, i + 2) for i in range(n - 2)}
    return InteractionGraph(n, frozenset(e), name=f"triangular_ladder({n})")


def hair_comb(n: int) -> InteractionGraph:
    _need(n >= 1, "hair_comb needs n >= 1")
    e = {(i, i + 1) for i in range(n - 1)} | {(i, n + i) for i in range(n)}
    return InteractionGraph(2 * n, frozenset(e), name=f"hair_comb({n})")


def cycle(n: int) -> InteractionGraph:
    _need(n >= 3, "cycle needs n >= 3")
    e = {(i, (i + 1) % n) for i in range(n)}
    return InteractionGraph(n, frozenset(e), name=f"cycle({n})")


def cycle_with_pendant(n: int, attach: int = 0) -> InteractionGraph:
    _need(n >= 3, "cycle_with_pendant needs n >= 3")
    _need(0 <= attach < n, f"attach vertex {attach} not on the cycle")
    e = {(i, (i + 1) % n) for i in range(n)} | {(attach, n)}
    return InteractionGraph(n + 1, frozenset(e), name=f"cycle_with_pendant({n},{attach})")


def chain_with_pendant(n: int, attach: int) -> InteractionGraph:
    _need(n >= 2, "chain_with_pendant needs n >= 2")
    _need(0 <= attach < n, f"attach vertex {attach} not on the chain")
    e = {(i, i + 1) for i in range(n - 1)} | {(attach, n)}
    return InteractionGraph(n + 1, frozenset(e), name=f"chain_with_pendant({n},{attach})")


def star(n: int) -> InteractionGraph:
    _need(n >= 2, "star needs n >= 2")
    return InteractionGraph(n, frozenset((0, i) for i in range(1, n)), name=f"star({n})")


def wheel(n: int) -> InteractionGraph:
    _need(n >= 3, "wheel needs a rim of at least 3")
    e = {(0, i) for i in range(1, n + 1)} | {(i, i % n + 1) for i in range(1, n + 1)}
    return InteractionGraph(n + 1, frozenset(e), name=f"wheel({n})")


def complete_binary_tree(depth: int) -> InteractionGraph:
    _need(depth >= 1, "complete_binary_tree needs depth >= 1")
    size = 2 ** (depth + 1) - 1
    e = {((i - 1) // 2, i) for i in range(1, size)}
    return InteractionGraph(size, frozenset(e), name=f"complete_binary_tree({depth})")


def square_lattice(w: int, h: int) -> InteractionGraph:
    _need(w >= 1 and h >= 1 and w * h >= 2, "square_lattice needs at least two sites")
    e = set()
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                e.add((v, v + 1))
            if y + 1 < h:
                e.add((v, v + w))
    return InteractionGraph(w * h, frozenset(e), name=f"square_lattice({w},{h})")


FAMILIES = {
    "chain": chain,
    "triangular_ladder": triangular_ladder,
    "hair_comb": hair_comb,
    "cycle": cycle,
    "cycle_with_pendant": cycle_with_pendant,
    "chain_with_pendant": chain_with_pendant,
    "star": star,
    "wheel": wheel,
    "complete_binary_tree": complete_binary_tree,
    "square_lattice": square_lattice,
}


def build_family(family: str, *params: int) -> InteractionGraph:
    try:
        builder = FAMILIES[family]
    except KeyError:
        raise ValidationError(f"unknown graph family {family!r}") from None
    try:
        return builder(*params)
    except TypeError as exc:
        raise ValidationError(f"bad parameters for {family}: {exc}") from None


# -- structure ----------------------------------------------------------------

def find_t_structures(g: InteractionGraph) -> list[TStructure]:
    out = []
    for p in range(g.n):
        if g.degree(p) == 1:
            out.append(TStructure(g.neighbors(p)[0], p))
    out.sort(key=lambda t: (t.spine, t.pendant))
    return out


def shortest_path(g: InteractionGraph, u: int, v: int, avoid: Iterable[int] = ()) -> list[int]:
    """BFS shortest path from ``u`` to ``v``; ties go to the smallest next vertex.

    Vertices in ``avoid`` may not be used as intermediate steps.
    """
    for x in (u, v):
        if not 0 <= x < g.n:
            raise ValidationError(f"vertex {x} out of range")
    if u == v:
        return [u]
    blocked = set(avoid) - {u, v}
    # BFS from the target gives each vertex its distance; walking forward
    # greedily by smallest id then yields the lexicographically least path.
    dist = {v: 0}
    dq = deque([v])
    while dq:
        x = dq.popleft()
        for w in g.neighbors(x):
            if w not in dist and w not in blocked:
                dist[w] = dist[x] + 1
                dq.append(w)
    if u not in dist:
        raise RoutingError(f"vertices {u} and {v} are not connected")
    path = [u]
    while path[-1] != v:
        x = path[-1]
        path.append(min(w for w in g.neighbors(x) if dist.get(w, -1) == dist[x] - 1))
    return path


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a budgeted exhaustive search.

    ``exact`` is False when the node budget ran out; ``value`` is then the
    best lower bound found so far.
    """

    value: int
    exact: bool
    witness: tuple[int, ...] = ()
    expansions: int = 0


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self) -> bool:
        self.used += 1
        return self.used <= self.limit


def longest_cycle_exact(g: InteractionGraph, budget: int = 1_000_000) -> SearchResult:
    """Exact longest simple cycle length by DFS (0 for forests)."""
    if budget <= 0:
        raise ValidationError("budget must be positive")
    bud = _Budget(budget)
    best: tuple[int, tuple] = (0, ())
    complete = True
    for start in range(g.n):
        found, ok = _cycles_from(g, start, bud, lambda c: True)
        for c in found:
            if len(c) > best[0]:
                best = (len(c), tuple(c))
        if not ok:
            complete = False
            break
    return SearchResult(best[0], complete, best[1], bud.used)


def _cycles_from(g, start, bud, accept, limit=None):
    """Cycles whose smallest vertex is ``start``; returns (accepted, finished)."""
    found = []
    path = [start]
    on = {start}

    def dfs(x):
        for w in g.neighbors(x):
            if w < start:
                continue
            if not bud.spend():
                return False
            if w == start and len(path) >= 3 and path[1] < path[-1]:
                if accept(path):
                    found.append(list(path))
                    if limit and len(found) >= limit:
                        return False
            elif w not in on and w != start:
                path.append(w)
                on.add(w)
                ok = dfs(w)
                path.pop()
                on.discard(w)
                if not ok:
                    return False
        return True

    ok = dfs(start)
    if limit and len(found) >= limit:
        ok = True
    return found, ok


def enumerate_cycles(g: InteractionGraph, budget: int):
    """All simple cycles (each once) found within ``budget`` expansions.

    Returns ``(cycles, complete)``.
    """
    bud = _Budget(budget)
    out = []
    for start in range(g.n):
        found, ok = _cycles_from(g, start, bud, lambda c: True)
        out.extend(found)
        if not ok:
            return out, False
    return out, True


class PathSearch:
    """Budgeted DFS over simple paths with exactly ``length`` vertices.

    Iterate to receive paths; after iteration ``exhausted`` tells whether the
    budget ran out before the search space did.
    """

    def __init__(self, g: InteractionGraph, length: int, budget: int):
        self.g = g
        self.length = length
        self.budget = _Budget(budget)
        self.exhausted = False

    def __iter__(self):
        g, length = self.g, self.length
        if length < 1 or length > g.n:
            return
        for s in range(g.n):
            stack = [(s, iter(g.neighbors(s)))]
            path = [s]
            on = {s}
            if length == 1:
                yield (s,)
                continue
            while stack:
                x, it = stack[-1]
                w = next(it, None)
                if w is None:
                    stack.pop()
                    on.discard(path.pop())
                    continue
                if w in on:
                    continue
                if not self.budget.spend():
                    self.exhausted = True
                    return
                path.append(w)
                if len(path) == length:
                    yield tuple(path)
                    path.pop()
                    continue
                on.add(w)
                stack.append((w, iter(g.neighbors(w))))
