"""Quantum query-model lab for the superposition MAC forgery bound."""

from .errors import DegenerateInputError, DomainError, ResourceError
from .games import simplified_bound, theorem_bound

__all__ = ["DegenerateInputError", "DomainError", "ResourceError", "simplified_bound", "theorem_bound"]
__version__ = "0.1.0"
