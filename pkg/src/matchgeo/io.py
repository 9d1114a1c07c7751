"""Text formats: graph and certificate JSON, circuit files, schedule files.

Complex numbers are written as ``re,im`` with 17 significant digits so that a
write/read round trip is bit-exact.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .analyzer import UniversalityCertificate
from .circuits import CZ, MG, RZ, Hgate, LogicalCircuit
from .compiler import PhysicalSchedule
from .errors import MatchgeoError, ParseError, ValidationError
from .gates import TwoQubitGate, make_gate
from .graphs import InteractionGraph, Role
from .statevector import GateApplication

GRAPH_KEYS = {"n", "edges", "roles"}


@dataclass(frozen=True, eq=False)
class UncheckedGate:
    """A loaded 4x4 matrix that failed the unitarity check; kept so the oracle can judge it."""

    matrix: np.ndarray
    name: str = "unchecked"
    matchgate: bool = field(default=False, init=False)


def fmt_real(x: float) -> str:
    return format(float(x), ".17g")


def fmt_complex(z: complex) -> str:
    return f"{fmt_real(z.real)},{fmt_real(z.imag)}"


def parse_complex(tok: str, line: int | None = None) -> complex:
    try:
        re_s, im_s = tok.split(",")
        return complex(float(re_s), float(im_s))
    except ValueError:
        raise ParseError(f"bad complex entry {tok!r} (expected re,im)", line) from None


# -- graphs ------------------------------------------------------------------------

def graph_to_dict(g: InteractionGraph) -> dict:
    out = {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
    roles = {str(v): r.value for v, r in enumerate(g.roles) if r != Role.UNASSIGNED}
    if roles:
        out["roles"] = roles
    return out


def graph_from_dict(d) -> InteractionGraph:
    if not isinstance(d, dict):
        raise ParseError("graph document must be an object")
    extra = set(d) - GRAPH_KEYS
    if extra:
        raise ParseError(f"unknown graph keys: {sorted(extra)}")
    if "n" not in d or "edges" not in d:
        raise ParseError("graph document needs 'n' and 'edges'")
    n, edges = d["n"], d["edges"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError("'n' must be an integer")
    if not isinstance(edges, list) or not all(
            isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e) for e in edges):
        raise ParseError("'edges' must be a list of [u, v] integer pairs")
    roles = d.get("roles") or {}
    if not isinstance(roles, dict):
        raise ParseError("'roles' must map vertex ids to role names")
    try:
        parsed_roles = {int(v): Role(r) for v, r in roles.items()}
        return InteractionGraph.from_edges(n, edges, parsed_roles)
    except (ValueError, MatchgeoError) as exc:
        raise ParseError(str(exc)) from None


def dumps_graph(g: InteractionGraph) -> str:
    return json.dumps(graph_to_dict(g), sort_keys=True)


def loads_graph(text: str) -> InteractionGraph:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    return graph_from_dict(d)


def graph_hash(g: InteractionGraph) -> str:
    edges = ";".join(f"{u}-{v}" for u, v in g.sorted_edges())
    return hashlib.sha256(f"{g.n}|{edges}".encode()).hexdigest()


# -- circuits ----------------------------------------------------------------------

def _lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body.split()


def _int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line) from None


def _float(tok: str, line: int) -> float:
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"expected a number, got {tok!r}", line) from None


def loads_circuit(text: str) -> LogicalCircuit:
    """Parse ``qubits k`` then one gate per line: RZ, H, CZ, or MG with 8 entries of A then B."""
    k = None
    gates = []
    for no, tok in _lines(text):
        op = tok[0].upper()
        if k is None:
            if op != "QUBITS" or len(tok) != 2:
                raise ParseError("first line must be 'qubits k'", no)
            k = _int(tok[1], no)
            if k < 1:
                raise ParseError("qubit count must be positive", no)
            continue
        try:
            if op == "RZ" and len(tok) == 3:
                gates.append(RZ(_int(tok[1], no), _float(tok[2], no)))
            elif op == "H" and len(tok) == 2:
                gates.append(Hgate(_int(tok[1], no)))
            elif op == "CZ" and len(tok) == 3:
                gates.append(CZ(_int(tok[1], no), _int(tok[2], no)))
            elif op == "MG" and len(tok) == 11:
                e = [parse_complex(t, no) for t in tok[3:]]
                a = np.array(e[:4]).reshape(2, 2)
                b = np.array(e[4:]).reshape(2, 2)
                gates.append(MG(_int(tok[1], no), _int(tok[2], no), make_gate(a, b)))
            else:
                raise ParseError(f"malformed gate line {' '.join(tok)!r}", no)
            LogicalCircuit(k, (gates[-1],))
        except ParseError:
            raise
        except MatchgeoError as exc:
            raise ParseError(str(exc), no) from None
    if k is None:
        raise ParseError("empty circuit file (missing 'qubits k')")
    return LogicalCircuit(k, tuple(gates))


def dumps_circuit(c: LogicalCircuit) -> str:
    out = [f"qubits {c.k}"]
    for g in c.gates:
        if g.kind == "RZ":
            out.append(f"RZ {g.qubits[0]} {fmt_real(g.theta)}")
        elif g.kind == "H":
            out.append(f"H {g.qubits[0]}")
        elif g.kind == "CZ":
            out.append(f"CZ {g.qubits[0]} {g.qubits[1]}")
        else:
            ents = list(g.gate.A.reshape(-1)) + list(g.gate.B.reshape(-1))
            out.append(f"MG {g.qubits[0]} {g.qubits[1]} " + " ".join(fmt_complex(z) for z in ents))
    return "\n".join(out) + "\n"


# -- schedules ---------------------------------------------------------------------

def _hosts(hosts) -> str:
    return " ".join("-".join(str(v) for v in h) for h in hosts)


def _anc(anc) -> str:
    return " ".join(f"{v}:{s}" for v, s in sorted(anc.items())) or "-"


def dumps_schedule(s: PhysicalSchedule) -> str:
    """Header lines then ``G u v <16 entries> <logical index> <label>`` per gate."""
    out = [
        "schedule v1",
        f"graph-hash {graph_hash(s.graph)}",
        f"vertices {s.graph.n}",
        "edges " + " ".join(f"{u}-{v}" for u, v in s.graph.sorted_edges()),
        f"strategy {s.strategy}",
        f"qubits {s.k}",
        "logical " + (" ".join(s.logical_kinds) or "-"),
        "info " + (" ".join(f"{k}={v}" for k, v in sorted(s.info.items())) or "-"),
        f"initial-hosts {_hosts(s.initial_hosts)}",
        f"final-hosts {_hosts(s.final_hosts)}",
        f"initial-ancillas {_anc(s.initial_ancillas)}",
        f"final-ancillas {_anc(s.final_ancillas)}",
    ]
    for app, idx in zip(s.ops, s.provenance):
        ents = " ".join(fmt_complex(z) for z in app.gate.matrix.reshape(-1))
        out.append(f"G {app.pair[0]} {app.pair[1]} {ents} {idx} {app.label or '-'}")
    return "\n".join(out) + "\n"


_HEADERS = ("schedule", "graph-hash", "vertices", "edges", "strategy", "qubits", "logical", "info",
            "initial-hosts", "final-hosts", "initial-ancillas", "final-ancillas")


def loads_schedule(text: str) -> PhysicalSchedule:
    head: dict[str, tuple[int, list[str]]] = {}
    ops, prov = [], []
    for no, tok in _lines(text):
        key = tok[0]
        if key == "G":
            if len(tok) != 21:
                raise ParseError("gate line needs u v, 16 entries, logical index and label", no)
            u, v = _int(tok[1], no), _int(tok[2], no)
            m = np.array([parse_complex(t, no) for t in tok[3:19]]).reshape(4, 4)
            if not np.all(np.isfinite(m)):
                raise ParseError("non-finite gate entry", no)
            try:
                gate = TwoQubitGate(m)
            except ValidationError:
                gate = UncheckedGate(m)
            try:
                ops.append(GateApplication(gate, (u, v), "" if tok[20] == "-" else tok[20]))
            except MatchgeoError as exc:
                raise ParseError(str(exc), no) from None
            prov.append(_int(tok[19], no))
        elif key in _HEADERS:
            if key in head:
                raise ParseError(f"duplicate header {key!r}", no)
            head[key] = (no, tok[1:])
        else:
            raise ParseError(f"unknown line type {key!r}", no)
    missing = [h for h in _HEADERS if h not in head]
    if missing:
        raise ParseError(f"missing header(s): {', '.join(missing)}")

    def hosts(key):
        no, toks = head[key]
        try:
            return tuple(tuple(int(x) for x in t.split("-")) for t in toks)
        except ValueError:
            raise ParseError(f"bad {key}", no) from None

    def anc(key):
        no, toks = head[key]
        out = {}
        for t in toks:
            if t == "-":
                continue
            v, _, s = t.partition(":")
            if s not in ("0", "+"):
                raise ParseError(f"bad ancilla entry {t!r}", no)
            out[_int(v, no)] = s
        return out

    no, toks = head["vertices"]
    n = _int(toks[0], no) if len(toks) == 1 else None
    if n is None:
        raise ParseError("bad vertices header", no)
    no, toks = head["edges"]
    try:
        edges = [tuple(int(x) for x in t.split("-")) for t in toks]
        graph = InteractionGraph.from_edges(n, edges)
    except (ValueError, MatchgeoError) as exc:
        raise ParseError(f"bad edges: {exc}", no) from None
    no, toks = head["graph-hash"]
    if toks != [graph_hash(graph)]:
        raise ParseError("graph hash does not match the edge list", no)
    no, toks = head["info"]
    info = {}
    for t in toks:
        if t != "-":
            key, _, val = t.partition("=")
            info[key] = _int(val, no)
    kinds = tuple(t for t in head["logical"][1] if t != "-")
    for idx in prov:
        if not 0 <= idx < len(kinds):
            raise ParseError(f"provenance index {idx} outside the logical gate list")
    try:
        return PhysicalSchedule(
            graph=graph,
            strategy=head["strategy"][1][0],
            k=_int(head["qubits"][1][0], head["qubits"][0]),
            initial_hosts=hosts("initial-hosts"),
            final_hosts=hosts("final-hosts"),
            initial_ancillas=anc("initial-ancillas"),
            final_ancillas=anc("final-ancillas"),
            ops=tuple(ops),
            provenance=tuple(prov),
            logical_kinds=kinds,
            info=info,
        )
    except MatchgeoError as exc:
        raise ParseError(str(exc)) from None


# -- certificates ------------------------------------------------------------------

def certificate_to_dict(c: UniversalityCertificate) -> dict:
    p = c.placement
    return {
        "condition": c.condition.value,
        "strategy": c.strategy.value,
        "witness": list(c.witness),
        "roles": {str(v): r.value for v, r in sorted(c.roles.items())},
        "hosts": [list(h) for h in p.hosts],
        "overhead": c.overhead,
    }


def dumps_certificates(certs) -> str:
    return json.dumps([certificate_to_dict(c) for c in certs], indent=2, sort_keys=True)
