"""Exception hierarchy. Every error carries a stable ``code`` used by the CLI."""

from __future__ import annotations


class DPColorError(Exception):
    code = "error"


class InvalidGraph(DPColorError):
    code = "invalid_graph"


class InvalidCover(DPColorError):
    code = "invalid_cover"

    def __init__(self, message: str, edge: tuple[int, int] | None = None):
        super().__init__(message)
        self.edge = edge


class ParseError(DPColorError):
    code = "parse_error"

    def __init__(self, message: str, location: str | None = None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class SearchExhausted(DPColorError):
    code = "search_exhausted"


class ReductionUnsound(DPColorError):
    code = "reduction_unsound"


class InvalidPivot(DPColorError):
    code = "invalid_pivot"


class NotABlock(DPColorError):
    code = "not_a_block"


class BadPartition(DPColorError):
    code = "bad_partition"


class ParityMismatch(DPColorError):
    code = "parity_mismatch"


class BadBijection(DPColorError):
    code = "bad_bijection"


class TooLarge(DPColorError):
    code = "too_large"


class NotCritical(DPColorError):
    code = "not_critical"


class PreconditionFailed(DPColorError):
    code = "precondition_failed"


class BadSplit(DPColorError):
    code = "bad_split"
