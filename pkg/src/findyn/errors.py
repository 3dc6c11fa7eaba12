"""Exception hierarchy shared by every findyn module."""


class FDSError(Exception):
    """Base class for all errors raised by findyn."""


class DivisionByZero(FDSError, ZeroDivisionError):
    pass


class ModulusMismatch(FDSError, ValueError):
    pass


class InvalidModulus(FDSError, ValueError):
    pass


class ZeroPolynomial(FDSError, ValueError):
    pass


class ConstantPolynomial(FDSError, ValueError):
    pass


class NotCoprimeToX(FDSError, ValueError):
    pass


class ArityMismatch(FDSError, ValueError):
    pass


class IncompleteTable(FDSError, ValueError):
    pass


class WrongCharacteristic(FDSError, ValueError):
    pass


class IndexOutOfRange(FDSError, IndexError):
    pass


class BudgetExceeded(FDSError):
    """Raised when an exhaustive computation would exceed its enumeration budget."""


class NotAffine(FDSError, ValueError):
    pass


class DimensionMismatch(FDSError, ValueError):
    pass


class NotMonomial(FDSError, ValueError):
    pass


class NotPermutation(FDSError, ValueError):
    pass


class GraphNotSymmetric(FDSError, ValueError):
    pass


class ConvergenceFailure(FDSError, RuntimeError):
    pass


class InvalidParams(FDSError, ValueError):
    pass


class ParseError(FDSError, ValueError):
    """Malformed polynomial or Boolean expression text."""


class SpecSyntaxError(FDSError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SpecSemanticError(FDSError, ValueError):
    pass
