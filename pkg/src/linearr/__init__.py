"""Line arrangements, their multiple-point graph, and the lower central series of the complement's group."""

__version__ = "0.1.0"

from .arrangement import Arrangement, ArrangementError, Line, parse_line, validate
from .geometry import IncidenceLattice, build_lattice, closure_of, projectivize
from .graph import beta, build_graph, find_minimal_cycle
from .classify import classify, ClassificationOutcome, DecompositionReport, ObstructionCertificate
from .lcs import g2g3
from .pairing import pairing, stabilizer, check_stabilizer_theorem
from .presentation import pi1_presentation, point_quotient

__all__ = [
    "Arrangement", "ArrangementError", "Line", "parse_line", "validate",
    "IncidenceLattice", "build_lattice", "closure_of", "projectivize",
    "beta", "build_graph", "find_minimal_cycle",
    "classify", "ClassificationOutcome", "DecompositionReport", "ObstructionCertificate",
    "g2g3", "pairing", "stabilizer", "check_stabilizer_theorem",
    "pi1_presentation", "point_quotient",
]
