from typing import Iterable, Optional


class QcaForgeError(Exception):
    """Base exception for qcaforge."""
    pass


class ConfigurationError(QcaForgeError):
    """Raised when configuration values or overrides are invalid."""
    pass


class LayoutError(QcaForgeError):
    """Raised when a layout breaks one of its invariants."""

    def __init__(self, message: str, violations: Iterable[str] = ()):
        self.violations = list(violations)
        if self.violations:
            message = f"{message}: " + "; ".join(self.violations)
        super().__init__(message)


class ParseError(QcaForgeError):
    """Raised when a text file cannot be parsed. Carries the offending line."""

    def __init__(self, message: str, source: Optional[str] = None, line: Optional[int] = None):
        self.source = source
        self.line = line
        location = source or "<text>"
        if line is not None:
            location = f"{location}:{line}"
        super().__init__(f"{location}: {message}")


class LayoutParseError(ParseError):
    pass


class TableParseError(ParseError):
    pass


class VectorParseError(ParseError):
    pass


class DisconnectedError(QcaForgeError):
    """Raised when no adjacency path joins two cells."""
    pass


class ZoneOrderError(QcaForgeError):
    """Raised when a zone plan skips a clock phase."""
    pass


class SimulationError(QcaForgeError):
    """Raised when a simulation cannot be set up (bad vectors, unknown labels)."""
    pass


class TruthTableError(QcaForgeError):
    """Raised when a truth table does not fit the circuit it is checked against."""
    pass


class RenderError(QcaForgeError):
    pass
