"""Exception hierarchy shared by the parsers, metrics and the CLI."""

from __future__ import annotations

from typing import Optional


class AuaError(Exception):
    """Base class for every error raised by this package."""


class ParseError(AuaError):
    """Input could not be tokenized or decoded.

    ``line`` is 1-based (JSON-lines), ``offset`` is a byte offset into the
    decoded text, ``entry`` is a BibTeX entry key.
    """

    def __init__(
        self,
        message: str,
        *,
        line: Optional[int] = None,
        offset: Optional[int] = None,
        entry: Optional[str] = None,
    ) -> None:
        self.message = message
        self.line = line
        self.offset = offset
        self.entry = entry
        where = []
        if line is not None:
            where.append(f"line {line}")
        if entry is not None:
            where.append(f"entry {entry!r}")
        if offset is not None:
            where.append(f"byte {offset}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class ValidationError(AuaError, ValueError):
    """Input parsed but violates a data-model invariant."""

    def __init__(
        self,
        message: str,
        *,
        line: Optional[int] = None,
        field: Optional[str] = None,
        entry: Optional[str] = None,
    ) -> None:
        self.line = line
        self.field = field
        self.entry = entry
        where = []
        if line is not None:
            where.append(f"line {line}")
        if entry is not None:
            where.append(f"entry {entry!r}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class InvalidName(ValidationError):
    pass


class EmptyAuthorSet(AuaError, ValueError):
    pass


class UnknownGender(AuaError, ValueError):
    pass


class DegenerateCensus(AuaError, ValueError):
    pass


class MissingCareerData(AuaError, ValueError):
    pass


class InvalidConfig(AuaError, ValueError):
    pass


class InvalidInput(AuaError, ValueError):
    pass
