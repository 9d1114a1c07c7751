import pytest

from matchgeo import circuits as C, graphs as G
from matchgeo.analyzer import Condition, analyze, describe
from matchgeo.compiler import compile_with
from matchgeo.errors import ValidationError
from matchgeo.verify import verify

EXPECTED = {
    "wheel(8)": (G.wheel(8), {Condition.LARGE_CYCLE, Condition.DEGREE3_PATH}),
    "star(7)": (G.star(7), {Condition.ANCILLA_CONNECTABLE_SET}),
    "hair_comb(4)": (G.hair_comb(4), {Condition.T_STRUCTURE_PATH}),
    "complete_binary_tree(3)": (G.complete_binary_tree(3), {Condition.ANCILLA_CONNECTABLE_SET}),
    "cycle_with_pendant(8,0)": (G.cycle_with_pendant(8, 0), {Condition.LARGE_CYCLE}),
    "chain_with_pendant(9,1)": (G.chain_with_pendant(9, 1), {Condition.PENDANT_ON_CHAIN}),
}


@pytest.mark.parametrize("name", list(EXPECTED))
def test_expected_conditions_found(name):
    g, conds = EXPECTED[name]
    res = analyze(g, 2)
    assert conds <= {c.condition for c in res.certificates}
    assert not res.unknown


@pytest.mark.parametrize("name", list(EXPECTED))
@pytest.mark.parametrize("k", [1, 2])
def test_certificates_compile(name, k):
    g, _ = EXPECTED[name]
    probe = C.LogicalCircuit(k, (C.Hgate(0), C.CZ(0, 1)) if k > 1 else (C.Hgate(0), C.RZ(0, 0.4)))
    for cert in analyze(g, k).certificates:
        assert cert.placement.consistent_with(g)
        assert all(0 <= v < g.n for v in cert.witness)
        assert verify(probe, compile_with(probe, g, cert.placement)).passed


@pytest.mark.parametrize("g", [G.chain(8), G.cycle(8)])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_bare_chain_and_cycle_get_nothing(g, k):
    res = analyze(g, k)
    assert res.certificates == ()
    assert describe(res) == ["no certificate found"]


def test_zero_budget_is_unknown():
    res = analyze(G.wheel(8), 2, budget=0)
    assert res.unknown
    assert describe(res) == ["unknown (budget exhausted)"]


def test_small_budget_never_claims_non_universal():
    res = analyze(G.complete_binary_tree(4), 3, budget=3)
    assert res.certificates or res.unknown
    assert describe(res) != ["no certificate found"]


def test_bad_k():
    with pytest.raises(ValidationError):
        analyze(G.star(5), 0)


def test_short_chain_is_a_two_tooth_comb():
    # chain(4) is hair_comb(2) up to labels
    res = analyze(G.chain(4), 2)
    assert Condition.T_STRUCTURE_PATH in {c.condition for c in res.certificates}
