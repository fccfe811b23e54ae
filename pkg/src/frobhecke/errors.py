"""Exception types.

Every error carries a short ``code`` (the class name) so the command line
can report it uniformly.  ``exit_code`` separates bad input (2) from a
failed verification or a broken invariant (1).
"""

from __future__ import annotations


class FrobHeckeError(Exception):
    exit_code = 2

    @property
    def code(self) -> str:
        return type(self).__name__


class InputError(FrobHeckeError):
    exit_code = 2


class VerificationError(FrobHeckeError):
    exit_code = 1


# algebra validation: the data parsed but describes no Frobenius superalgebra
class NotAssociative(VerificationError): pass
class NoUnit(VerificationError): pass
class ParityViolation(VerificationError): pass
class DegenerateTrace(VerificationError): pass
class InhomogeneousTrace(VerificationError): pass
class InternalInconsistency(VerificationError): pass
class NoSolution(VerificationError): pass

# malformed input
class MalformedAlgebra(InputError): pass
class BadCayleyTable(InputError): pass
class MixedVariant(InputError): pass
class VariantMismatch(InputError): pass
class WrongVariant(InputError): pass
class IndexOutOfRange(InputError): pass
class InverseDotInDegenerate(InputError): pass
class UnknownLabel(InputError): pass
class IncompatibleObjects(InputError): pass
class IllTypedWord(InputError): pass
class LevelNotOne(InputError): pass
class NotMonic(InputError): pass
class NotPinLabel(InputError): pass
class RegularityInconclusive(NotPinLabel): pass


class GrammarError(InputError):
    """Parse failure; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")

    @property
    def code(self) -> str:
        return "SyntaxError"


# engine failures: these signal a bug, never bad input
class NotDivisible(VerificationError): pass
class DivisionFailure(VerificationError): pass
class RegularityFailure(VerificationError): pass
class NonTermination(VerificationError): pass
