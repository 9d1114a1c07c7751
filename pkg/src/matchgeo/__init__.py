"""Universal matchgate computation on nearest-neighbour interaction graphs.

Typical use::

    from matchgeo import graphs, circuits, compile, verify

    circ = circuits.LogicalCircuit(2, (circuits.Hgate(0), circuits.CZ(0, 1)))
    schedule, report = compile(circ, graphs.wheel(6))
    assert verify(circ, schedule).passed
"""

from .analyzer import AnalysisResult, Condition, UniversalityCertificate, analyze
from .circuits import LogicalCircuit
from .compiler import PhysicalSchedule, compile, compile_with
from .errors import (
    CompilationError,
    ConfigurationError,
    MatchgeoError,
    ParseError,
    ResourceLimitError,
    RoutingError,
    TopologyError,
    ValidationError,
)
from .gates import TwoQubitGate, is_matchgate, make_gate
from .graphs import InteractionGraph, build_family
from .placement import Placement, Strategy
from .resources import ResourceReport, count_resources
from .verify import VerificationReport, verify

__version__ = "0.1.0"

__all__ = [
    "AnalysisResult", "CompilationError", "Condition", "ConfigurationError", "InteractionGraph",
    "LogicalCircuit", "MatchgeoError", "ParseError", "PhysicalSchedule", "Placement",
    "ResourceLimitError", "ResourceReport", "RoutingError", "Strategy", "TopologyError",
    "TwoQubitGate", "UniversalityCertificate", "ValidationError", "VerificationReport",
    "analyze", "build_family", "compile", "compile_with", "count_resources", "is_matchgate",
    "make_gate", "verify",
]
