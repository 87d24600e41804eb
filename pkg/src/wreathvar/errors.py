"""Exception hierarchy shared by every module of the package."""


class GroupError(Exception):
    """Base class for all errors raised by wreathvar."""


class ClosureExceedsCap(GroupError):
    pass


class DegreeMismatch(GroupError):
    pass


class ForeignElement(GroupError):
    pass


class NotNormal(GroupError):
    pass


class OrderCapExceeded(GroupError):
    pass


class NotAbelian(GroupError):
    pass


class ExponentMismatch(GroupError):
    pass


class TrivialGroupError(GroupError):
    pass


class BadParameter(GroupError):
    pass


class ArityMismatch(GroupError):
    pass


class ScanCapExceeded(GroupError):
    pass


class PreconditionFailed(GroupError):
    pass


class ParseError(GroupError):
    """Raised by the DSL parsers; carries the 0-based offending position."""

    def __init__(self, position: int, message: str):
        self.position = position
        self.message = message
        super().__init__(f"at position {position}: {message}")
