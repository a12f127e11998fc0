"""Exception hierarchy shared by all modules."""


class CMHermError(Exception):
    pass


class NotDivisible(CMHermError, ArithmeticError):
    """Raised by exact division when no polynomial quotient exists."""


class NotInvariant(CMHermError):
    pass


class NotSymmetric(CMHermError, ValueError):
    pass


class NotQuasiInvariant(CMHermError, ValueError):
    pass


class SingularGram(CMHermError):
    pass


class PoleAtAlpha(CMHermError):
    pass


class NonPolynomialResult(CMHermError):
    pass


class EigenCheckFailed(CMHermError):
    pass


class ExtensionFailed(CMHermError):
    pass


class DegenerateNormalization(CMHermError):
    """The BA constant phi(0,0) vanished, so the dual-basis normalisation is undefined."""
