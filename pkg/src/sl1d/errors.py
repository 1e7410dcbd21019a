"""Exception hierarchy for the sl1d package."""


class SL1DError(Exception):
    """Base class for all sl1d errors."""


class ConfigError(SL1DError):
    """Invalid tower or run configuration."""


class PrecisionMismatch(SL1DError):
    """Operands live in different towers or at different working precisions."""


class NotAUnit(SL1DError):
    """Element has nonzero valuation where a unit is required."""


class NotCentral(SL1DError):
    """Element is not a central (constant-field) series."""


class NotUnramified(SL1DError):
    """Element does not generate an unramified extension."""


class UndeterminedAtPrecision(SL1DError):
    """Every stored coefficient is central, but the element is a truncation."""


class BadInput(SL1DError):
    """Operation precondition violated."""


class EmptyFiber(SL1DError):
    """Requested twisted-quotient fiber is empty."""


class WindowViolation(SL1DError):
    """Congruence window (r, m) outside the valid range for the operation."""


class WindowMismatch(SL1DError):
    """Windows of a pairing's two arguments are not dual to each other."""


class InsufficientPrecision(SL1DError):
    """Requested output precision exceeds what the operand precision supports."""


class JumpNotBelowM(SL1DError):
    """Orbit-size formulas require the jump to lie strictly below the level."""


class TooLarge(SL1DError):
    """Enumeration would exceed the configured guard limits."""


class GuardExceeded(TooLarge):
    """A run-configuration guard was exceeded before allocation."""


class DegenerateLayer(SL1DError):
    """Heisenberg layer with vanishing residue; no lift data exists."""


class BadRepresentative(SL1DError):
    """Representative fails the trace/jump preconditions of its level."""


class VerificationFailed(SL1DError):
    """An induced-character check failed; carries the first failing check."""
