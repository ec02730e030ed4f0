from __future__ import annotations


class ToolkitError(ValueError):
    """Base class for every error raised by the toolkit."""


class DomainError(ToolkitError):
    pass


class BracketError(ToolkitError):
    pass


class PoleError(ToolkitError):
    pass


class UnsupportedCompositionError(ToolkitError):
    pass


class DegenerateError(ToolkitError):
    """sigma1 is undetermined because |sigma0| = 1."""


class MembershipError(ToolkitError):
    pass


class InternalInconsistencyError(ToolkitError):
    """A closed-form branch was selected whose formula is undefined there."""
