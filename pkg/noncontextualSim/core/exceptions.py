"""
Exception hierarchy for the simulator and the handler that maps it onto
management command exit statuses
"""
from django.core.management.base import CommandError
import logging

logger = logging.getLogger(__name__)

EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2


class NoncontextualSimError(Exception):
    """Base class for every error raised by the simulator"""
    def __init__(self, message="Simulation error"):
        self.message = message
        super().__init__(self.message)


class InputError(NoncontextualSimError):
    """Raised for malformed or out-of-range input; commands exit with status 2"""


class PauliParseError(InputError):
    """Raised when a Pauli label cannot be parsed"""
    def __init__(self, position=None, label='', message=None):
        self.position = position
        self.label = label
        if message is None:
            if position is None:
                message = "Empty Pauli label"
            else:
                message = f"Invalid Pauli character {label[position - 1]!r} at position {position} in {label!r}"
        super().__init__(message)


class DimensionMismatchError(InputError):
    """Raised when operators or vectors of different sizes are combined"""
    def __init__(self, expected=None, actual=None, message=None):
        self.expected = expected
        self.actual = actual
        super().__init__(message or f"Dimension mismatch: expected {expected}, got {actual}")


class HamiltonianFormatError(InputError):
    """Raised when Hamiltonian text is malformed"""
    def __init__(self, reason="Unknown", message=None):
        self.reason = reason
        super().__init__(message or f"Invalid Hamiltonian: {reason}")


class EpistemicStateError(InputError):
    """Raised for epistemic states or ontology tables that break their invariants"""
    def __init__(self, reason="Unknown", message=None):
        self.reason = reason
        super().__init__(message or f"Invalid epistemic state: {reason}")


class ObjectiveError(InputError):
    """Raised when an objective cannot be compiled or evaluated"""
    def __init__(self, reason="Unknown", message=None):
        self.reason = reason
        super().__init__(message or f"Objective error: {reason}")


class InfeasibleInstanceError(InputError):
    """Raised when a random noncontextual instance cannot have the requested structure"""
    def __init__(self, n=None, cliques=None, generators=None, message=None):
        self.n = n
        self.cliques = cliques
        self.generators = generators
        super().__init__(
            message or f"No noncontextual instance with n={n}, N={cliques}, |G|={generators}"
        )


class SizeLimitError(InputError):
    """Raised when a dense construction would exceed its configured cap"""
    def __init__(self, size=None, limit=None, what="size", message=None):
        self.size = size
        self.limit = limit
        super().__init__(message or f"{what} {size} exceeds limit {limit}")


class DistributionSizeError(SizeLimitError):
    """Raised when a joint distribution table would be too large"""
    def __init__(self, bits=None, limit=None, message=None):
        super().__init__(bits, limit, what="Joint table bits", message=message)


class OracleSizeError(SizeLimitError):
    """Raised when exact diagonalization is requested beyond the qubit cap"""
    def __init__(self, qubits=None, limit=None, message=None):
        super().__init__(qubits, limit, what="Qubit count", message=message)


class RunConfigError(InputError):
    """Raised when command options fail validation"""
    def __init__(self, field=None, reason="Unknown", message=None):
        self.field = field
        self.reason = reason
        super().__init__(message or (f"Invalid option {field}: {reason}" if field else f"Invalid options: {reason}"))


class StructureError(NoncontextualSimError):
    """Raised when a contextual term set is asked for its noncontextual structure"""
    def __init__(self, triple=None, message=None):
        self.triple = tuple(triple) if triple else None
        if message is None and self.triple:
            a, b, c = (str(op) for op in self.triple)
            message = f"Contextual: {a} commutes with {b}, {b} commutes with {c}, but {a} anticommutes with {c}"
        super().__init__(message or "Contextual term set")


class ContractViolationError(NoncontextualSimError):
    """Raised when an operation is called outside its precondition"""
    def __init__(self, operation="operation", reason="precondition failed", message=None):
        self.operation = operation
        self.reason = reason
        super().__init__(message or f"{operation}: {reason}")


class ConsistencyError(NoncontextualSimError):
    """Raised when sign bookkeeping or a reconstruction check fails"""
    def __init__(self, reason="Unknown", message=None):
        self.reason = reason
        super().__init__(message or f"Internal consistency check failed: {reason}")


def command_exception_handler(exc, context):
    """Convert an exception raised inside a management command into a CommandError"""

    command = context.get('command', 'N/A')
    source = context.get('input', 'N/A')

    if isinstance(exc, CommandError):
        return exc

    if isinstance(exc, InputError):
        logger.error(
            f"Command input error: {type(exc).__name__} - {str(exc)} | "
            f"Command: {command} | Input: {source}"
        )
        return CommandError(str(exc), returncode=EXIT_INPUT_ERROR)

    # Unexpected exceptions keep their traceback in the log
    logger.error(
        f"Command failed: {type(exc).__name__} - {str(exc)} | "
        f"Command: {command} | Input: {source}",
        exc_info=True
    )
    return CommandError(f"{type(exc).__name__}: {exc}", returncode=EXIT_INPUT_ERROR)
