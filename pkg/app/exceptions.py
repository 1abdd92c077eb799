from typing import Optional
from app.logger import logger


class PancyclicError(Exception):
    """Base exception for domain errors."""

    status_code: int = 422
    default_code: str = "PANCYCLIC_ERROR"

    def __init__(self, detail: str, error_code: Optional[str] = None):
        super().__init__(detail)
        self.detail = detail
        self.error_code = error_code or self.default_code
        logger.error(
            "Domain error",
            status_code=self.status_code,
            detail=detail,
            error_code=self.error_code,
        )


class ValidationError(PancyclicError):
    """Malformed chord diagram, graph or text input."""
    default_code = "VALIDATION_ERROR"


class AdjacentEndpoints(ValidationError):
    default_code = "ADJACENT_ENDPOINTS"


class DuplicateChord(ValidationError):
    default_code = "DUPLICATE_CHORD"


class VertexOutOfRange(ValidationError):
    default_code = "VERTEX_OUT_OF_RANGE"


class ChordParseError(ValidationError):
    default_code = "CHORD_PARSE_ERROR"


class GraphParseError(ValidationError):
    default_code = "GRAPH_PARSE_ERROR"


class LimitError(PancyclicError):
    """Instance exceeds a configured work limit."""
    default_code = "LIMIT_EXCEEDED"


class ChordLimitExceeded(LimitError):
    default_code = "CHORD_LIMIT_EXCEEDED"


class NTooLargeForOracle(LimitError):
    default_code = "N_TOO_LARGE_FOR_ORACLE"


class InstanceTooLarge(LimitError):
    default_code = "INSTANCE_TOO_LARGE"


class TooLarge(LimitError):
    default_code = "TOO_LARGE"


class ParameterError(PancyclicError):
    """Parameters outside the domain of an operation."""
    default_code = "PARAMETER_ERROR"


class KTooLarge(ParameterError):
    default_code = "K_TOO_LARGE"


class NTooSmall(ParameterError):
    default_code = "N_TOO_SMALL"


class KBelow3(ParameterError):
    default_code = "K_BELOW_3"


class BadStage(ParameterError):
    default_code = "BAD_STAGE"


class NTooSmallForFamily(ParameterError):
    default_code = "N_TOO_SMALL_FOR_FAMILY"


class DomainError(ParameterError):
    default_code = "DOMAIN_ERROR"


class InvalidInstance(ParameterError):
    default_code = "INVALID_INSTANCE"


class NotFoundError(PancyclicError):
    status_code = 404
    default_code = "NOT_FOUND"


class NoHamiltonCycle(NotFoundError):
    default_code = "NO_HAMILTON_CYCLE"
