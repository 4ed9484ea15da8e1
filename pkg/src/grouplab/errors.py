"""Exception types shared across the package."""


class GroupLabError(Exception):
    """Base class for all package errors."""


class DegreeMismatch(GroupLabError, ValueError):
    """Two permutations of different degrees were combined."""


class CapExceeded(GroupLabError, RuntimeError):
    """Base class for resource-cap violations. `cap_name` names the cap."""

    cap_name = "cap"

    def __init__(self, message, limit=None):
        super().__init__(message)
        self.limit = limit


class ClosureCapExceeded(CapExceeded):
    cap_name = "max-order"


class LatticeCapExceeded(CapExceeded):
    cap_name = "max-subgroups"


class SearchCapExceeded(CapExceeded):
    cap_name = "max-pairs"


class TrivialGroup(GroupLabError, ValueError):
    """Operation undefined on the one-element group."""


class NotNormal(GroupLabError, ValueError):
    """A quotient was requested by a non-normal subgroup."""


class UnknownName(GroupLabError, ValueError):
    """Group expression names a constructor that does not exist."""


class ParseError(GroupLabError, ValueError):
    """Group expression or cycle string failed to parse.

    Carries the byte offset of the failure and the tokens that would have
    been accepted there.
    """

    def __init__(self, message, offset, expected=()):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.expected = tuple(expected)
