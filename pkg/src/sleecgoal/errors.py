"""Exception types shared across the toolchain."""

from __future__ import annotations


class ParseError(Exception):
    """Syntax error with a 1-based source position."""

    def __init__(self, message: str, line: int = 0, col: int = 0,
                 expected: frozenset[str] = frozenset()):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected

    def __str__(self) -> str:
        return f"{self.line}:{self.col}: {self.message}"


class MissingAttribute(ParseError):
    """A required goal/task attribute row is absent."""

    def __init__(self, attribute: str, owner: str, line: int = 0, col: int = 0):
        super().__init__(f"{owner}: missing required attribute '{attribute}'", line, col)
        self.attribute = attribute
        self.owner = owner


class TranslationError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class BoundTooSmall(ValueError):
    def __init__(self, bound: int, minimum: int):
        super().__init__(
            f"bound {bound} is too small for the deadlines in this spec; "
            f"use --bound {minimum} or more"
        )
        self.bound = bound
        self.minimum = minimum


class InstanceTooLarge(ValueError):
    pass
