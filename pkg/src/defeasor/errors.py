"""Shared exception types."""


class DefeasorError(Exception):
    """Base class for every error raised by this package."""


class ParseError(DefeasorError):
    """Malformed statement in one of the text formats."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InputError(DefeasorError):
    """Well-formed input that violates an operation's contract."""


class CyclicRuleBaseError(DefeasorError):
    """Argument construction exceeded the height cap."""


class PriorityCycleError(DefeasorError):
    """The declared rule preferences are not a strict partial order."""


class CorpusError(DefeasorError):
    """A bundled or user-supplied corpus case could not be loaded."""
