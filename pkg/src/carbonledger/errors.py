"""Exception hierarchy shared by every carbonledger module.

Each class carries a machine-readable ``code`` so the HTTP service and the
CLI can map failures onto their wire contracts without string matching.
"""

from __future__ import annotations


class CarbonLedgerError(Exception):
    """Base class for all errors raised by this package."""

    code = "internal"


class ValidationError(CarbonLedgerError):
    """An input violates a documented invariant (bad factor, bad hour, ...)."""

    code = "validation_error"


class NotFoundError(CarbonLedgerError):
    """A required catalog file or directory does not exist."""

    code = "not_found"


class ParseError(CarbonLedgerError):
    """A catalog file is malformed; carries the offending file and line."""

    code = "parse_error"

    def __init__(self, message: str, *, file: str | None = None, line: int | None = None):
        self.file = file
        self.line = line
        where = ""
        if file is not None:
            where = f" [{file}" + (f":{line}" if line is not None else "") + "]"
        super().__init__(message + where)


class DuplicateKeyError(CarbonLedgerError):
    """Two catalog rows share the same id."""

    code = "duplicate_key"

    def __init__(self, key: str, *, file: str | None = None, line: int | None = None):
        self.key = key
        where = f" in {file}" if file else ""
        super().__init__(f"duplicate key {key!r}{where}")


class UnknownKeyError(CarbonLedgerError):
    """A cross-reference names a key that does not resolve in the catalog."""

    code = "reference_error"

    def __init__(self, key: str, kind: str = "key"):
        self.key = key
        self.kind = kind
        super().__init__(f"unknown {kind} {key!r}")


class MissingHourlyDataError(CarbonLedgerError):
    """An hourly computation was requested for a region without the data."""

    code = "missing_hourly_data"


class WriteError(CarbonLedgerError):
    """Persisting a catalog failed."""

    code = "write_error"
