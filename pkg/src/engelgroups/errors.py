"""Exception hierarchy shared by every module of the package."""


class GroupError(Exception):
    """Base class for all errors raised by engelgroups."""


class DegreeMismatch(GroupError, ValueError):
    pass


class InvalidPermutation(GroupError, ValueError):
    pass


class ParseError(GroupError, ValueError):
    """Malformed text input.

    ``line`` and ``column`` are 1-based when known; ``offset`` is the 0-based
    position inside the offending string.
    """

    def __init__(self, message, *, line=None, column=None, offset=None):
        self.line = line
        self.column = column
        self.offset = offset
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if offset is not None:
            where.append(f"offset {offset}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class CapExceeded(GroupError):
    """An exhaustive computation would exceed a configured size cap."""


class IndexCapExceeded(CapExceeded):
    pass


class NotSubgroup(GroupError, ValueError):
    pass


class NotMember(GroupError, ValueError):
    pass


class NotNormalized(GroupError, ValueError):
    pass


class NotSoluble(GroupError, ValueError):
    pass


class TwistNotNormalizing(GroupError, ValueError):
    pass


class PremiseFailed(GroupError, ValueError):
    pass


class UnknownConstructor(GroupError, ValueError):
    pass
