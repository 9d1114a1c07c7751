import math

import numpy as np
import pytest

from matchgeo import circuits as C, graphs as G
from matchgeo.compiler import compile
from matchgeo.gates import random_matchgate
from matchgeo.placement import Placement, Strategy
from matchgeo.resources import TREE_C_CZ, TREE_C_MG, count_resources


def far_leaf_placement(depth):
    """Two logical qubits on the outermost leaves; the |+> leaf is next to the first."""
    g = G.complete_binary_tree(depth)
    first, last = 2 ** depth - 1, g.n - 1
    plus = first + 1
    anc = {v: "0" for v in range(g.n) if v not in (first, last, plus)}
    anc[plus] = "+"
    return g, Placement(Strategy.STAR_HUB_BINARY_TREE_LEAVES, ((first,), (last,)), anc,
                        {"plus": plus, "set": (plus, first, last)})


def test_counts_are_recomputed_from_ops():
    circ = C.LogicalCircuit(2, (C.Hgate(1), C.CZ(0, 1)))
    s, r = compile(circ, G.cycle_with_pendant(6, 0), "CycleRotation")
    assert r.total_gates == len(s.ops)
    assert r.fswaps == sum(1 for a in s.ops if a.gate.name == "FSWAP" or np.array_equal(
        a.gate.matrix, np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]])))
    assert sum(r.overhead_fswaps) <= r.fswaps
    assert r.logical_gates == 2 and len(r.h_fswaps) == 1
    assert r == count_resources(s)


@pytest.mark.parametrize("depth", [3, 4, 5])
def test_tree_bounds_hold_at_far_leaves(depth):
    g, p = far_leaf_placement(depth)
    circ = C.LogicalCircuit(2, (C.MG(0, 1, random_matchgate(np.random.default_rng(depth))), C.CZ(1, 0)))
    s, r = compile(circ, g, placement=p)
    lg = math.log2(g.n)
    mg = dict(r.two_qubit_fswaps)["MG"]
    cz = dict(r.two_qubit_fswaps)["CZ"]
    assert mg <= TREE_C_MG * lg and cz <= TREE_C_CZ * lg
    assert r.passed


def test_hair_comb_nn_model_equalities(rng):
    for k in (2, 3, 4):
        gates = []
        for _ in range(8):
            t = rng.integers(3)
            if t == 0:
                gates.append(C.Hgate(int(rng.integers(k))))
            elif t == 1:
                gates.append(C.RZ(int(rng.integers(k)), float(rng.uniform(-3, 3))))
            else:
                a = int(rng.integers(k - 1))
                gates.append(C.MG(a, a + 1, random_matchgate(rng)))
        s, r = compile(C.LogicalCircuit(k, tuple(gates)), G.hair_comb(k), "HairCombHGadget")
        assert r.total_gates == len(gates)
        assert r.physical_qubits == 2 * k
        assert r.passed and len(r.bounds) == 2


def test_fswap_encoded_gadget_accounting():
    circ = C.LogicalCircuit(3, (C.CZ(0, 2), C.CZ(1, 2), C.CZ(0, 1)))
    _, r = compile(circ, G.hair_comb(6), "HairCombFswapEncoded")
    assert r.gadget_invocations == 3
    assert r.gadget_fswaps == 4 * r.gadget_invocations
    assert r.passed


def test_wheel_h_is_free():
    circ = C.LogicalCircuit(3, tuple(C.Hgate(q) for q in (0, 1, 2, 1)))
    _, r = compile(circ, G.wheel(6), "WheelHub")
    assert r.h_fswaps == (0, 0, 0, 0) and r.passed


def test_report_lines():
    _, r = compile(C.LogicalCircuit(1, (C.Hgate(0),)), G.chain_with_pendant(5, 2), "ChainCenterShuttle")
    text = "\n".join(r.lines())
    assert "f-SWAPs per H <= n^2" in text and "[ok]" in text
