"""
Weak-saturation exception handling and standardized error codes.
"""

from enum import Enum
from typing import Optional


class WsatErrorCodes:
    """Standardized error codes for laboratory operations"""

    # Parameter errors
    INVALID_PARAMETER = "INVALID_PARAMETER"
    NEGATIVE_BLOCK = "NEGATIVE_BLOCK"
    INVALID_PRIME = "INVALID_PRIME"
    INVALID_RANGE = "INVALID_RANGE"

    # Graph consistency errors
    NOT_SPANNING_SUBGRAPH = "NOT_SPANNING_SUBGRAPH"
    VERTEX_COUNT_MISMATCH = "VERTEX_COUNT_MISMATCH"
    SAME_SIDE_EDGE = "SAME_SIDE_EDGE"
    EDGE_OUT_OF_RANGE = "EDGE_OUT_OF_RANGE"
    LOOP_EDGE = "LOOP_EDGE"

    # Pattern errors
    EDGELESS_PATTERN = "EDGELESS_PATTERN"
    PATTERN_TOO_LARGE = "PATTERN_TOO_LARGE"
    INVALID_PATTERN_LITERAL = "INVALID_PATTERN_LITERAL"

    # Format errors
    INVALID_EDGE_LIST = "INVALID_EDGE_LIST"
    INVALID_HOST_LITERAL = "INVALID_HOST_LITERAL"
    INVALID_TRACE = "INVALID_TRACE"

    # Witness / trace validation
    WITNESS_EDGE_MISSING = "WITNESS_EDGE_MISSING"
    WITNESS_SHAPE_MISMATCH = "WITNESS_SHAPE_MISMATCH"
    WITNESS_ANCHOR_UNCOVERED = "WITNESS_ANCHOR_UNCOVERED"
    WITNESS_SIDE_MISMATCH = "WITNESS_SIDE_MISMATCH"
    TRACE_DUPLICATE_EDGE = "TRACE_DUPLICATE_EDGE"
    TRACE_EDGE_PRESENT = "TRACE_EDGE_PRESENT"
    TRACE_EDGE_NOT_IN_HOST = "TRACE_EDGE_NOT_IN_HOST"
    FINGERPRINT_MISMATCH = "FINGERPRINT_MISMATCH"

    # Certificates
    FAMILY_NOT_GENERAL_POSITION = "FAMILY_NOT_GENERAL_POSITION"
    NULLSPACE_DIMENSION = "NULLSPACE_DIMENSION"
    ZERO_COEFFICIENT = "ZERO_COEFFICIENT"

    # Search
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


class Side(Enum):
    """Class of a vertex inside a complete bipartite host"""

    LEFT = "left"
    RIGHT = "right"


class ValidationResult:
    """Result of a validation operation"""

    def __init__(self, is_valid: bool, error_code: Optional[str] = None, error_message: Optional[str] = None):
        self.is_valid = is_valid
        self.error_code = error_code
        self.error_message = error_message

    def __bool__(self) -> bool:
        return self.is_valid

    def __repr__(self) -> str:
        if self.is_valid:
            return "ValidationResult(valid=True)"
        return f"ValidationResult(valid=False, error={self.error_code})"


class WsatException(Exception):
    """Base exception for laboratory operations"""

    def __init__(self, error_code: str, message: str):
        self.error_code = error_code
        self.message = message
        super().__init__(f"{error_code}: {message}")


class InvalidParameterError(WsatException, ValueError):
    """Parameters outside an operation's domain (negative blocks, bad primes, bad ranges)"""

    def __init__(self, message: str, error_code: str = WsatErrorCodes.INVALID_PARAMETER):
        super().__init__(error_code, message)


class GraphMismatchError(WsatException, ValueError):
    """Graphs that do not fit together (not a spanning subgraph, wrong sides, wrong order)"""

    def __init__(self, message: str, error_code: str = WsatErrorCodes.NOT_SPANNING_SUBGRAPH):
        super().__init__(error_code, message)


class PatternTooLargeError(WsatException, ValueError):
    """Pattern has more vertices than the host graph"""

    def __init__(self, pattern_vertices: int, host_vertices: int):
        self.pattern_vertices = pattern_vertices
        self.host_vertices = host_vertices
        super().__init__(
            WsatErrorCodes.PATTERN_TOO_LARGE,
            f"pattern on {pattern_vertices} vertices cannot embed in a graph on {host_vertices}",
        )


class FormatError(WsatException, ValueError):
    """Malformed edge list, pattern literal, host literal or trace document"""

    def __init__(self, message: str, error_code: str = WsatErrorCodes.INVALID_EDGE_LIST):
        super().__init__(error_code, message)


class BudgetExceededError(WsatException):
    """Exhaustive search ran out of verification calls"""

    def __init__(self, budget: int, last_completed_m: Optional[int]):
        self.budget = budget
        self.last_completed_m = last_completed_m
        super().__init__(
            WsatErrorCodes.BUDGET_EXCEEDED,
            f"budget of {budget} verification calls exhausted (last completed m={last_completed_m})",
        )


class CertificateError(WsatException):
    """Algebraic certificate could not be built (bad family or degenerate dependence)"""

    pass
