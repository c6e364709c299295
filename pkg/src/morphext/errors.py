"""Exception hierarchy shared by every module."""


class MorphicError(Exception):
    """Base class for all library errors."""


class DomainError(MorphicError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParseError(DomainError):
    """Malformed morphism file, word, or order string."""

    def __init__(self, message, line=None, position=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"position {position}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.position = position


class NotProlongableError(DomainError):
    pass


class FiniteWordError(MorphicError):
    """A lazy word ran out of symbols; subshift operations need infinite words."""


class ResourceError(MorphicError):
    """A configured symbol or work cap was exceeded."""


class NotFixedPointError(DomainError):
    pass


class NotInMxError(DomainError):
    pass


class InconsistencyError(MorphicError):
    """An identity guaranteed by theory failed; indicates an upstream bug."""


class AmbiguityError(MorphicError):
    def __init__(self, message, survivors=()):
        super().__init__(message)
        self.survivors = list(survivors)


class VerificationError(MorphicError):
    pass


class PeriodDetectionError(MorphicError):
    pass


class FactorizationError(MorphicError):
    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position
