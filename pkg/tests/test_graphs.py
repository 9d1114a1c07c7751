import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from matchgeo import graphs as G
from matchgeo.errors import RoutingError, ValidationError
from matchgeo.graphs import InteractionGraph, PathSearch, Role


def to_nx(g: InteractionGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.sorted_edges())
    return h


@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=2, max_value=8))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return InteractionGraph.from_edges(n, edges)


@pytest.mark.parametrize("family,params,n,m", [
    ("chain", (5,), 5, 4),
    ("triangular_ladder", (5,), 5, 7),
    ("hair_comb", (4,), 8, 7),
    ("cycle", (6,), 6, 6),
    ("cycle_with_pendant", (6, 2), 7, 7),
    ("chain_with_pendant", (6, 1), 7, 6),
    ("star", (7,), 7, 6),
    ("wheel", (8,), 9, 16),
    ("complete_binary_tree", (3,), 15, 14),
    ("square_lattice", (3, 2), 6, 7),
])
def test_family_sizes(family, params, n, m):
    g = G.build_family(family, *params)
    assert g.n == n and len(g.edges) == m
    assert g.is_connected()


def test_family_numbering():
    assert G.hair_comb(4).has_edge(1, 5)
    assert G.cycle_with_pendant(6, 2).has_edge(2, 6)
    assert G.wheel(5).has_edge(5, 1) and G.wheel(5).degree(0) == 5
    assert G.complete_binary_tree(2).neighbors(1) == (0, 3, 4)


def test_bad_family_parameters():
    with pytest.raises(ValidationError):
        G.build_family("nope", 3)
    with pytest.raises(ValidationError):
        G.cycle(2)
    with pytest.raises(ValidationError):
        G.chain_with_pendant(4, 7)


def test_graph_validation():
    with pytest.raises(ValidationError):
        InteractionGraph.from_edges(3, [(0, 0)])
    with pytest.raises(ValidationError):
        InteractionGraph.from_edges(3, [(0, 5)])


def test_roles_round_trip():
    g = G.chain(3).with_roles({1: Role.ANCILLA_ZERO})
    assert g.roles[1] == Role.ANCILLA_ZERO and g.roles[0] == Role.UNASSIGNED


def test_t_structures():
    ts = G.find_t_structures(G.chain_with_pendant(6, 1))
    assert [(t.spine, t.pendant) for t in ts] == [(1, 0), (1, 6), (4, 5)]


def test_shortest_path_is_lexicographically_least():
    assert G.shortest_path(G.cycle(6), 0, 3) == [0, 1, 2, 3]
    assert G.shortest_path(G.cycle(6), 0, 3, avoid=[1]) == [0, 5, 4, 3]
    with pytest.raises(RoutingError):
        G.shortest_path(G.chain(4), 0, 3, avoid=[2])


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_longest_cycle_matches_networkx(g):
    res = G.longest_cycle_exact(g)
    expected = max((len(c) for c in nx.simple_cycles(to_nx(g))), default=0)
    assert res.exact
    assert res.value == (expected if expected >= 3 else 0)
    w = res.witness
    assert all(g.has_edge(w[i], w[(i + 1) % len(w)]) for i in range(len(w)))


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_enumerated_cycles_match_networkx(g):
    cycles, complete = G.enumerate_cycles(g, 10**6)
    ref = [c for c in nx.simple_cycles(to_nx(g)) if len(c) >= 3]
    assert complete
    assert sorted(sorted(c) for c in cycles) == sorted(sorted(c) for c in ref)


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.integers(min_value=1, max_value=5))
def test_path_search_finds_all_paths(g, length):
    found = list(PathSearch(g, length, 10**6))
    assert all(len(set(p)) == length for p in found)
    assert all(g.has_edge(p[i], p[i + 1]) for p in found for i in range(length - 1))
    h = to_nx(g)
    if length == 1:
        ref = {(v,) for v in range(g.n)}
    else:
        ref = {tuple(p) for s in range(g.n) for t in range(g.n) if s != t
               for p in nx.all_simple_paths(h, s, t) if len(p) == length}
    assert set(found) == ref


def test_path_search_budget_exhaustion():
    search = PathSearch(G.complete_binary_tree(4), 7, 5)
    list(search)
    assert search.exhausted
