"""Exception hierarchy shared by every module."""


class QsrgError(Exception):
    """Base class for all errors raised by this package."""


class NotAGroup(QsrgError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class NotASubgroup(QsrgError):
    pass


class NotNormal(QsrgError):
    pass


class NotAbelian(QsrgError):
    pass


class OrderBoundExceeded(QsrgError):
    pass


class UnsupportedFamily(QsrgError):
    pass


class SubgroupNotProper(QsrgError):
    pass


class BadConnectionSet(QsrgError):
    pass


class NumericMismatch(QsrgError):
    """Eigensolver output disagrees with the exact integer multiplicities."""


class NotRegular(QsrgError):
    pass


class NotQsrg(QsrgError):
    def __init__(self, message: str, witness: tuple[tuple[int, int], tuple[int, int]]):
        super().__init__(message)
        self.witness = witness


class InvalidIndex(QsrgError):
    pass


class ParseError(QsrgError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
