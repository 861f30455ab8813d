"""Exception types shared across the toolkit."""

from __future__ import annotations


class IrkitError(ValueError):
    """Base class for all toolkit errors."""


class ParseError(IrkitError):
    """Input text is not well formed for the target formalism.

    ``offset`` is the byte offset of the offending token in the input (or the
    input length for an unexpected end of input); ``expected`` lists the token
    shapes that would have been accepted at that point.
    """

    def __init__(self, message: str, offset: int | None = None,
                 expected: tuple[str, ...] = ()):
        detail = message
        if offset is not None:
            detail = f"{message} (at byte offset {offset})"
        if expected:
            detail = f"{detail}; expected one of: {', '.join(expected)}"
        super().__init__(detail)
        self.offset = offset
        self.expected = tuple(expected)


class TransformError(IrkitError):
    """A transformation cannot be applied to this (otherwise valid) input."""


class InversionError(IrkitError):
    """A reversible transformation cannot be undone on the given input."""


class ConfigError(IrkitError):
    """Invalid combination of options."""
