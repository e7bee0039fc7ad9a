"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SkewBraceError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SkewBraceError):
    pass


class NotAssociative(ValidationError):
    def __init__(self, triple):
        super().__init__(f"multiplication is not associative at {triple}")
        self.triple = triple


class NoIdentityAtZero(ValidationError):
    def __init__(self, msg="index 0 is not the identity; renumber so the identity is 0"):
        super().__init__(msg)


class NotLatinSquare(ValidationError):
    pass


class DotNotGroup(ValidationError):
    pass


class CircNotGroup(ValidationError):
    pass


class BraceAxiomFails(ValidationError):
    def __init__(self, triple):
        a, b, c = triple
        super().__init__(f"brace axiom fails for a={a}, b={b}, c={c}")
        self.triple = triple


class NotNormal(SkewBraceError):
    pass


class NotClosed(SkewBraceError):
    pass


class NotIdeal(SkewBraceError):
    pass


class InternalDisagreement(SkewBraceError):
    """Two independent computations of the same object disagree (a bug)."""


class BudgetExceeded(SkewBraceError):
    pass


class ArityMismatch(SkewBraceError):
    pass


class NotInClassIn(SkewBraceError):
    pass


class BadIdeals(SkewBraceError):
    pass


class DiagramFails(SkewBraceError):
    pass


class WitnessInvalid(SkewBraceError):
    pass


class NotAbelianCoefficients(SkewBraceError):
    pass


class IdentityFails(SkewBraceError):
    def __init__(self, which, witness):
        super().__init__(f"cocycle identity {which} fails at {witness}")
        self.which = which
        self.witness = witness


class NotInsideAnnihilator(SkewBraceError):
    pass


class ModulusTooSmall(SkewBraceError):
    pass


class QuotientMismatch(SkewBraceError):
    pass


class HypothesisUnmet(SkewBraceError):
    pass


class NotBraceHom(SkewBraceError):
    pass


class ParseError(SkewBraceError):
    def __init__(self, line, col, msg):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line = line
        self.col = col
