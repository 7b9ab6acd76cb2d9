"""Shared exception types."""


class ParseError(ValueError):
    """Malformed input text; carries a 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NoWitnessError(ValueError):
    """The group lacks the witness needed for a recolouring gadget."""


class NoPropertyTError(NoWitnessError):
    """The group lacks the colour-uniformisation property for the requested colour."""


class CapExceededError(RuntimeError):
    """A configured state or work budget was exceeded."""
