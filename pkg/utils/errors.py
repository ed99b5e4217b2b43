"""Exception types shared by the engines, the parsers and the command line."""
from typing import Optional


class KneserLabError(Exception):
    """Base class for every error raised on purpose by this project"""


class SetSystemError(KneserLabError, ValueError):
    """Invalid set system or invalid construction parameters"""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ParseError(SetSystemError):
    """Malformed input file"""


class HypergraphError(KneserLabError, ValueError):
    """Malformed hypergraph"""


class SingletonEdgeError(HypergraphError):
    """A one-vertex edge makes the hypergraph uncolorable for every m"""

    def __init__(self, edge_index: int):
        super().__init__(f"edge {edge_index} has a single vertex; no m-coloring exists for any m")
        self.edge_index = edge_index


class CertificateError(KneserLabError, ValueError):
    """Certificate does not match its hypergraph or fails verification"""


class CapExceededError(KneserLabError):
    """An engine cap was hit. Raised instead of truncating results."""

    def __init__(self, cap: str, limit, detail: str = ""):
        message = f"{cap} exceeded (limit {limit})"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)
        self.cap = cap
        self.limit = limit


class ClosedFormDomainError(KneserLabError, ValueError):
    """Closed-form evaluator called outside the range where its formula holds"""
