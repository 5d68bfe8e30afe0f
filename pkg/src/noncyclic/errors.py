"""Exception types shared across the package."""

from __future__ import annotations


class NoncyclicError(Exception):
    """Base class for errors raised by this package."""


class StructuralError(NoncyclicError, ValueError):
    """A multiplication table or element index is malformed."""


class SpecParseError(NoncyclicError, ValueError):
    """A group-spec string does not match the grammar."""


class CapacityError(NoncyclicError, ValueError):
    """A requested construction exceeds the configured order cap."""


class ContractViolationError(NoncyclicError, ValueError):
    """An operation was called outside its documented precondition."""


class InfeasiblePathError(NoncyclicError, ValueError):
    """The requested multipartite path/endpoint combination cannot exist."""


class StitchingError(NoncyclicError, RuntimeError):
    """A constructive cycle builder failed to find a guaranteed bridge vertex.

    Reaching this indicates a bug: the existence of every bridge is backed by a
    structure theorem, so the error message carries the block position to aid
    diagnosis.
    """
