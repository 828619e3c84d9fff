"""Exception types raised by primecx."""


class PrimecxError(Exception):
    """Base class for all library errors."""


class DenominatorNotInverted(PrimecxError, ValueError):
    pass


class FactorCapExceeded(PrimecxError, ArithmeticError):
    def __init__(self, n, cap):
        super().__init__(f"cannot factor {n}: no divisor found below cap {cap}")
        self.n = n
        self.cap = cap


class PNotPrime(PrimecxError, ValueError):
    pass


class NotFree(PrimecxError, ValueError):
    pass


class ClosureViolation(PrimecxError, ValueError):
    def __init__(self, index, generator):
        super().__init__(f"differential does not preserve the family at index {index}: {generator}")
        self.index = index
        self.generator = generator


class NotCoprime(PrimecxError, ValueError):
    pass


class TooManyElements(PrimecxError, ValueError):
    pass


class SchemaError(PrimecxError, ValueError):
    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class ValidationError(PrimecxError, ValueError):
    def __init__(self, index, reason):
        super().__init__(f"index {index}: {reason}")
        self.index = index
        self.reason = reason
