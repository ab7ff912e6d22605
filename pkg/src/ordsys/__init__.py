"""Ordinal systems, limit-successor systems and counting systems, checked
on finite models and on CNF ordinals."""

from .report import Check, CheckReport, Status
from .errors import (
    ContractError, DomainError, InvariantViolation, OrdsysError, ParseError,
    PreconditionError, ResourceLimitError,
)

__version__ = "0.1.0"

__all__ = [
    "Check", "CheckReport", "Status", "ContractError", "DomainError", "InvariantViolation",
    "OrdsysError", "ParseError", "PreconditionError", "ResourceLimitError",
]
