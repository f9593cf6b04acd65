"""Typed errors raised by the library.

Every error carries a short machine-readable reason; CLI and suite code
turn these into diagnostics without string matching.
"""


class WittkitError(Exception):
    pass


class TowerMismatch(WittkitError):
    """Operands belong to unrelated field towers."""


class DivisionByZero(WittkitError):
    pass


class IrreducibilityUnknown(WittkitError):
    """No irreducibility certificate could be produced within budget."""


class UnsupportedInseparableStep(WittkitError):
    """Purely inseparable steps must have the shape X^p - b for a current p-basis element b."""


class DegreeCapExceeded(WittkitError):
    pass


class NotSimpleStep(WittkitError):
    pass


class ZeroSubspace(WittkitError):
    pass


class SingularInput(WittkitError):
    pass


class DimensionMismatch(WittkitError):
    pass


class OddDimension(WittkitError):
    pass


class ZeroScalar(WittkitError):
    pass


class InseparableContext(WittkitError):
    pass


class GenerationExhausted(WittkitError):
    pass


class BoundExceeded(WittkitError):
    pass


class DslError(WittkitError):
    """Base for CLI script errors; carries line/column."""

    def __init__(self, message, line=None, col=None):
        self.message, self.line, self.col = message, line, col
        loc = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(message + loc)


class DslSyntaxError(DslError):
    pass


class UnknownIdentifier(DslError):
    pass


class TypeMismatch(DslError):
    pass
