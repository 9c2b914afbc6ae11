"""Exception hierarchy for nslen.

Every error raised on purpose by the library derives from :class:`NslenError`,
so the CLI can map the whole family onto exit code 2.
"""

from typing import List, Optional


class NslenError(Exception):
    """Root of all nslen errors."""


class DegreeMismatch(NslenError, ValueError):
    pass


class NotAMember(NslenError, ValueError):
    pass


class CapExceeded(NslenError):
    def __init__(self, message: str, order: Optional[int] = None, cap: Optional[int] = None):
        super().__init__(message)
        self.order = order
        self.cap = cap


class IndexCapExceeded(CapExceeded):
    """A coset action would exceed the index cap.

    ``partial_series`` lists the orders of the layers found before the cap was hit.
    """

    def __init__(self, message: str, order: Optional[int] = None, cap: Optional[int] = None):
        super().__init__(message, order, cap)
        self.partial_series: List[str] = []


class ExactCapExceeded(CapExceeded):
    pass


class NotInvariant(NslenError, ValueError):
    pass


class NotNormal(NslenError, ValueError):
    pass


class NotInImage(NslenError, ValueError):
    pass


class MalformedFile(NslenError, ValueError):
    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None,
                 field: Optional[str] = None):
        where = []
        if path:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field!r}")
        prefix = ", ".join(where) + ": " if where else ""
        super().__init__(prefix + message)
        self.path = path
        self.line = line
        self.field = field


class UnsupportedConstruction(NslenError, ValueError):
    pass


class WordSyntaxError(NslenError, ValueError):
    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class RepeatedVariable(WordSyntaxError):
    pass


class ArityMismatch(NslenError, ValueError):
    pass


class RadicalNotTrivial(NslenError):
    """A minimal normal subgroup turned out abelian or p-soluble.

    Carries the subgroup so the caller can fold it into the radical and retry.
    """

    def __init__(self, message: str, subgroup=None):
        super().__init__(message)
        self.subgroup = subgroup


class PreconditionError(NslenError, ValueError):
    pass


class ConfigError(NslenError, ValueError):
    pass
