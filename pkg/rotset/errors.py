"""
Exceptions raised by rotset, and the exit code the command line uses for each.
"""


class RotsetError(Exception):
    exit_code = 1

    def __init__(self, msg):
        super().__init__(msg)
        self.msg = msg

    def __str__(self):
        return self.msg


class ParseError(RotsetError):
    exit_code = 2


class ValidationError(RotsetError):
    """A system, chart, lift or parameter record breaks its invariants."""

    exit_code = 3

    def __init__(self, msg, violations=None):
        super().__init__(msg)
        self.violations = list(violations or [])

    def __str__(self):
        if not self.violations:
            return self.msg
        return self.msg + ": " + "; ".join(self.violations)


class Inadmissible(ValidationError):
    pass


class JunctionInadmissible(Inadmissible):
    pass


class NotInChart(ValidationError):
    pass


class ItineraryTooShort(ValidationError):
    pass


class ChartCheckFailed(ValidationError):
    pass


class EmptySystem(RotsetError):
    exit_code = 4


class NoCycles(RotsetError):
    exit_code = 4


class CapExceeded(RotsetError):
    exit_code = 5

    def __init__(self, what, size, cap):
        super().__init__("%s needs %s items, over the cap of %s" % (what, size, cap))
        self.size = size
        self.cap = cap


class DepthExceeded(CapExceeded):
    def __init__(self, index, limit):
        RotsetError.__init__(
            self,
            "index %s is beyond the materialized schedule (|i| <= %s)" % (index, limit),
        )
        self.size = index
        self.cap = limit


class NonFinite(RotsetError):
    exit_code = 6


__all__ = [
    "RotsetError",
    "ParseError",
    "ValidationError",
    "Inadmissible",
    "JunctionInadmissible",
    "NotInChart",
    "ItineraryTooShort",
    "ChartCheckFailed",
    "EmptySystem",
    "NoCycles",
    "CapExceeded",
    "DepthExceeded",
    "NonFinite",
]
